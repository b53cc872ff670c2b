//! Insertion compositions, the symmetric group action and generators.

use crate::error::{Error, Result};
use crate::forest::{bfs_paths, container_mut, node_at, node_at_mut, HyperForest, Node};
use crate::lincomb::LinComb;
use crate::reduce::Reducer;
use crate::Signs;

/// Inserts `t` at the white vertex `i` of `s`; label sets must be disjoint.
///
/// The vertex `i` is replaced by the roots of `t` (inside the edge that held
/// it, or in the root list), and each edge that entered `i` is grafted, as
/// one edge, on some vertex of `t`. The result is the sum over all such
/// graftings. Black vertices are oriented as those of `s` followed by those
/// of `t`.
pub fn insert_labeled(s: &HyperForest, i: u32, t: &HyperForest, signs: Signs) -> Result<LinComb> {
    insert_raw(s.roots().to_vec(), i, t.roots().to_vec(), signs)
}

fn insert_raw(s_roots: Vec<Node>, i: u32, mut t_roots: Vec<Node>, signs: Signs) -> Result<LinComb> {
    let path = bfs_paths(&s_roots)
        .into_iter()
        .find(|(_, n)| n.label() == Some(i))
        .map(|(p, _)| p)
        .ok_or(Error::LabelNotFound(i))?;
    let s_blacks: usize = s_roots.iter().map(Node::black_count).sum();
    HyperForest::shifted_marks(&mut t_roots, s_blacks as u32);
    let edges = node_at(&s_roots, &path).groups.clone();
    let targets: Vec<_> = bfs_paths(&t_roots).into_iter().map(|(p, _)| p).collect();
    let mut out = LinComb::zero();
    let mut choice = vec![0usize; edges.len()];
    loop {
        let mut graft = t_roots.clone();
        for (e, &c) in edges.iter().zip(&choice) {
            node_at_mut(&mut graft, &targets[c]).groups.push(e.clone());
        }
        let mut roots = s_roots.clone();
        let (holder, at) = container_mut(&mut roots, &path);
        holder.splice(at..=at, graft);
        let (f, sign) = HyperForest::canonicalize(roots);
        out.add_int(f, signs.apply(sign));
        // Next assignment of edges to vertices of `t`.
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < targets.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    Ok(out)
}

/// The partial composition `s ∘_i t` on forests labeled `1..n` and `1..m`:
/// the labels of `t` become `i..i+m-1` and the labels of `s` above `i` move
/// up by `m - 1`.
pub fn compose(s: &HyperForest, i: u32, t: &HyperForest, signs: Signs) -> Result<LinComb> {
    let n = s.arity() as u32;
    let m = t.arity() as u32;
    if i == 0 || i > n {
        return Err(Error::LabelNotFound(i));
    }
    // Label 0 marks the insertion point.
    let s_roots = s.relabeled_roots(|b| match b {
        b if b < i => b,
        b if b == i => 0,
        b => b + m - 1,
    });
    let t_roots = t.relabeled_roots(|a| a + i - 1);
    insert_raw(s_roots, 0, t_roots, signs)
}

/// Bilinear extension of [`compose`].
pub fn compose_lin(s: &LinComb, i: u32, t: &LinComb, signs: Signs) -> Result<LinComb> {
    let mut out = LinComb::zero();
    for (a, x) in s.iter() {
        for (b, y) in t.iter() {
            out.add_scaled(&compose(a, i, b, signs)?, &(x * y));
        }
    }
    Ok(out)
}

/// Composition in the reduced operad: compose, then normalize.
pub fn compose_reduced(s: &LinComb, i: u32, t: &LinComb, signs: Signs) -> Result<LinComb> {
    Ok(Reducer::new(signs).reduce(&compose_lin(s, i, t, signs)?))
}

/// A permutation of `{1..n}`, stored as the list of images of `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((1..=n as u32).collect())
    }

    /// The cycle `(a b c ...)`: `a -> b -> c -> ... -> a`.
    pub fn cycle(n: usize, cycle: &[u32]) -> Perm {
        let mut p = Perm::identity(n);
        for (k, &a) in cycle.iter().enumerate() {
            p.0[a as usize - 1] = cycle[(k + 1) % cycle.len()];
        }
        p
    }

    pub fn apply(&self, a: u32) -> u32 {
        self.0.get(a as usize - 1).copied().unwrap_or(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&a| {
            let ok = a >= 1 && (a as usize) <= seen.len() && !seen[a as usize - 1];
            if ok {
                seen[a as usize - 1] = true;
            }
            ok
        })
    }
}

/// Relabels every white vertex `a` as `sigma(a)`.
pub fn act_forest(sigma: &Perm, f: &HyperForest, signs: Signs) -> LinComb {
    let (g, sign) = HyperForest::canonicalize(f.relabeled_roots(|a| sigma.apply(a)));
    let mut out = LinComb::zero();
    out.add_int(g, signs.apply(sign));
    out
}

pub fn act(sigma: &Perm, v: &LinComb, signs: Signs) -> LinComb {
    v.map_linear(|f| act_forest(sigma, f, signs))
}

/// The permutation of `s ∘_i t` induced by `sigma` acting on `s`, so that
/// `act(sigma, s) ∘_{sigma(i)} t = act(induced, s ∘_i t)`.
pub fn induced_perm(sigma: &Perm, i: u32, m: u32) -> Perm {
    let n = sigma.len() as u32;
    let pos = |b: u32, at: u32| if b < at { b } else { b + m - 1 };
    let si = sigma.apply(i);
    let mut images = vec![0; (n + m - 1) as usize];
    for b in 1..=n {
        if b != i {
            images[pos(b, i) as usize - 1] = pos(sigma.apply(b), si);
        }
    }
    for a in 1..=m {
        images[(i + a - 1) as usize - 1] = si + a - 1;
    }
    Perm(images)
}

/// The binary generators and their combinations.
pub mod gens {
    use super::*;

    fn tree(s: &str) -> HyperForest {
        HyperForest::parse(s).expect("generator notation")
    }

    /// `x = 1<2>`
    pub fn x() -> LinComb {
        tree("1<2>").into()
    }

    /// `y = 2<1>`
    pub fn y() -> LinComb {
        tree("2<1>").into()
    }

    /// `c = {1,2}`
    pub fn c() -> LinComb {
        tree("{1,2}").into()
    }

    /// `g = B<1><2>`
    pub fn g() -> LinComb {
        tree("B<1><2>").into()
    }

    /// `l = x - y`
    pub fn l() -> LinComb {
        &x() - &y()
    }

    pub fn unit() -> LinComb {
        HyperForest::unit(1).into()
    }

    /// `1<2><3>...<n>`
    pub fn x_n(n: u32) -> HyperForest {
        HyperForest::tree((2..=n).fold(Node::white(1), |r, a| r.with_group(vec![Node::white(a)])))
    }

    /// `{1,2,...,n}`
    pub fn c_n(n: u32) -> HyperForest {
        HyperForest::from_roots((1..=n).map(Node::white).collect())
    }

    /// `B<1><2>...<n>`
    pub fn g_n(n: u32) -> HyperForest {
        HyperForest::tree((1..=n).fold(Node::black(), |r, a| r.with_group(vec![Node::white(a)])))
    }

    /// `1<2,...,n>`
    pub fn h_n(n: u32) -> HyperForest {
        HyperForest::tree(Node::white(1).with_group((2..=n).map(Node::white).collect()))
    }

    pub fn by_name(name: &str) -> Option<LinComb> {
        Some(match name {
            "x" => x(),
            "y" => y(),
            "c" => c(),
            "g" => g(),
            "l" => l(),
            "1" | "id" => unit(),
            _ => return None,
        })
    }
}
