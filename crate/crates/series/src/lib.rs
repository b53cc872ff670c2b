//! Truncated power series in `t` whose coefficients are polynomials in two
//! grading variables `u` and `v` with exact rational coefficients.
//!
//! The crate provides the usual formal calculus (`exp`, `log`, composition,
//! compositional reversion) and the closed-form Hilbert series of the
//! hypertree operads together with the implicit species equations that
//! they solve.

mod error;
pub mod hilbert;
mod poly;
mod series;

pub use error::SeriesError;
pub use hilbert::{dual_dims, hilbert, koszul_check, species_solution, SeriesId};
pub use poly::Poly;
pub use series::PowerSeries;

pub use num::BigRational;
