//! Exact computations with operads of rooted trees, rooted Greg trees and
//! forests of rooted (Greg) hypertrees.
//!
//! Forests are written in a compact notation: a white vertex is its label,
//! a black vertex is `B`, each incoming edge is `<...>` with the members of a
//! hyperedge separated by commas, and a forest of several trees is `{...}`.
//! For instance `1<2,3>` is a root carrying one hyperedge and `B<1><2>` is
//! the binary Greg corolla.

pub mod axioms;
pub mod cohomology;
pub mod differential;
pub mod enumerate;
mod error;
pub mod forest;
pub mod lincomb;
pub mod linalg;
pub mod oeis;
pub mod operad;
pub mod reduce;
pub mod relations;
pub mod shape;
pub mod suboperad;
pub mod verify;

pub use enumerate::{count_bigraded, enumerate, GradedDims};
pub use error::{Error, Result};
pub use forest::{Color, Family, HyperForest, Node};
pub use lincomb::LinComb;
pub use operad::{act, compose, compose_lin, compose_reduced, insert_labeled, Perm};
pub use reduce::reduce;

/// Whether black vertices are oriented.
///
/// With `Koszul`, black vertices have degree one and reordering them
/// changes signs; with `Ignore`, every structural coefficient is `+1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Signs {
    #[default]
    Ignore,
    Koszul,
}

impl Signs {
    pub(crate) fn apply(self, sign: i32) -> i64 {
        match self {
            Signs::Ignore => 1,
            Signs::Koszul => sign as i64,
        }
    }
}
