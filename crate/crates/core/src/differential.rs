//! The differentials of `Greg_{-1}` and of the reduced dg operad.
//!
//! On Greg trees both come from one combinatorial operator `D`. With the
//! new black vertex placed first in the orientation, `D(f)` is the sum of
//!
//! * `+` every split of a vertex `w` into `w` and a new black vertex right
//!   above it, the edges of `w` being distributed between the two;
//! * `-` every split of a white vertex `w` into a new black vertex at the
//!   place of `w` and `w` right above it, distributing the edges of `w`;
//! * `-` every graft of a new black leaf on a vertex;
//! * `+` for each tree, a new black root below that tree.
//!
//! Terms with black vertices of fewer than two edges cancel in pairs.
//! `Greg_{-1}` uses `d = D`, so that `d(x) = -g`; the reduced operad uses
//! `d = -D`, so that `d(x) = g`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::Zero;

use crate::error::{Error, Result};
use crate::forest::{bfs_paths, container_mut, node_at_mut, Family, HyperForest, Node};
use crate::lincomb::LinComb;
use crate::operad::insert_labeled;
use crate::reduce::Reducer;
use crate::shape::{height, reconstruct_raw, shape_decompose};
use crate::Signs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Greg trees, `d(x) = d(y) = -g`.
    GregMinusOne,
    /// Reduced forests, `d(x) = g`, `d(c) = 0`.
    DgComGreg,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::GregMinusOne, Convention::DgComGreg];

    pub fn family(self) -> Family {
        match self {
            Convention::GregMinusOne => Family::Greg,
            Convention::DgComGreg => Family::FRG,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::GregMinusOne => "Greg-1",
            Convention::DgComGreg => "dgComGreg",
        }
    }

    fn sign(self) -> i64 {
        match self {
            Convention::GregMinusOne => 1,
            Convention::DgComGreg => -1,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "greg-1" | "greg_-1" | "gregminusone" | "greg" => Ok(Convention::GregMinusOne),
            "dgcomgreg" | "dg" => Ok(Convention::DgComGreg),
            _ => Err(Error::InvalidStructure(format!("unknown convention `{s}`"))),
        }
    }
}

fn new_black(groups: Vec<Vec<Node>>) -> Node {
    let mut b = Node::black();
    b.groups = groups;
    b
}

fn split_groups(groups: &[Vec<Node>], mask: usize) -> (Vec<Vec<Node>>, Vec<Vec<Node>>) {
    let mut kept = Vec::new();
    let mut moved = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        if mask >> i & 1 == 1 {
            moved.push(g.clone());
        } else {
            kept.push(g.clone());
        }
    }
    (kept, moved)
}

/// `D(f)` before cancellation and normalization, in canonical forms that
/// may contain black vertices with fewer than two edges.
pub fn raw_terms(f: &HyperForest) -> LinComb {
    let mut base = f.roots().to_vec();
    // The new black vertex gets mark 0.
    HyperForest::shifted_marks(&mut base, 1);
    let mut out = LinComb::zero();
    let mut push = |roots: Vec<Node>, sign: i64| {
        let (g, s) = HyperForest::canonicalize(roots);
        out.add_int(g, sign * s as i64);
    };
    for (path, node) in bfs_paths(&base) {
        let m = node.groups.len();
        for mask in 0..1usize << m {
            let (kept, moved) = split_groups(&node.groups, mask);
            // New black vertex above.
            let mut roots = base.clone();
            let v = node_at_mut(&mut roots, &path);
            v.groups = kept.clone();
            v.groups.push(vec![new_black(moved.clone())]);
            push(roots, 1);
            // New black vertex below a white one.
            if !node.is_black() {
                let mut roots = base.clone();
                let (holder, at) = container_mut(&mut roots, &path);
                let mut w = holder[at].clone();
                w.groups = kept;
                let mut groups = moved;
                groups.push(vec![w]);
                holder[at] = new_black(groups);
                push(roots, -1);
            }
        }
        let mut roots = base.clone();
        node_at_mut(&mut roots, &path).groups.push(vec![Node::black()]);
        push(roots, -1);
    }
    for j in 0..base.len() {
        let mut roots = base.clone();
        let tree = roots[j].clone();
        roots[j] = new_black(vec![vec![tree]]);
        push(roots, 1);
    }
    out
}

fn check_family(f: &HyperForest, conv: Convention) -> Result<()> {
    if conv.family().admits(f) {
        Ok(())
    } else {
        Err(Error::FamilyMismatch {
            family: conv.family(),
            forest: f.to_string(),
        })
    }
}

enum Piece {
    /// Every vertex is an isolated root.
    Leaves,
    /// A white vertex with simple edges to leaves, or a black one with
    /// leaves.
    Corolla,
    /// `f = ±a ∘_k b` with the vertex `k` a leaf of `a`, for a label `k`
    /// not in `f`.
    Split(HyperForest, u32, HyperForest),
}

fn decompose(f: &HyperForest) -> Piece {
    let roots = f.roots();
    let glue = f.labels().last().map_or(1, |m| m + 1);
    let canon = |r: Vec<Node>| HyperForest::canonicalize(r).0;
    if roots.len() >= 2 {
        let Some(j) = roots.iter().position(|r| !r.groups.is_empty()) else {
            return Piece::Leaves;
        };
        let mut a = roots.to_vec();
        let b = std::mem::replace(&mut a[j], Node::white(glue));
        return Piece::Split(canon(a), glue, canon(vec![b]));
    }
    let inner = bfs_paths(roots)
        .into_iter()
        .find(|(p, n)| p.len() > 1 && !n.groups.is_empty())
        .map(|(p, _)| p);
    if let Some(path) = inner {
        let mut a = roots.to_vec();
        let b = std::mem::replace(node_at_mut(&mut a, &path), Node::white(glue));
        return Piece::Split(canon(a), glue, canon(vec![b]));
    }
    let root = &roots[0];
    match root.groups.iter().position(|g| g.len() > 1) {
        Some(k) if !root.is_black() => {
            let mut a = root.clone();
            let b = std::mem::replace(&mut a.groups[k], vec![Node::white(glue)]);
            Piece::Split(canon(vec![a]), glue, canon(b))
        }
        _ => Piece::Corolla,
    }
}

/// Computes differentials, sharing normal forms between calls.
///
/// On Greg trees the combinatorial operator above is the differential. On
/// reduced forests the differential is the derivation determined by its
/// values on corollas: every forest is split as `a ∘_k b` at a leaf and
/// `d(a ∘_k b) = d(a) ∘_k b + (-1)^{|a|} a ∘_k d(b)`, with `d(c_k) = 0`.
pub struct Differential {
    conv: Convention,
    reducer: Reducer,
    memo: HashMap<HyperForest, LinComb>,
}

impl Differential {
    pub fn new(conv: Convention) -> Self {
        Differential {
            conv,
            reducer: Reducer::new(Signs::Koszul),
            memo: HashMap::new(),
        }
    }

    pub fn convention(&self) -> Convention {
        self.conv
    }

    fn operator_terms(&mut self, f: &HyperForest) -> Result<LinComb> {
        let raw = raw_terms(f);
        if let Some((bad, _)) = raw.iter().find(|(g, _)| !g.is_valid()) {
            return Err(Error::UncancelledTerm(bad.to_string()));
        }
        let sign = crate::reduce::int(self.conv.sign());
        Ok(self.reducer.reduce(&raw).scale(&sign))
    }

    fn insert(&mut self, a: &LinComb, glue: u32, b: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (x, p) in a.iter() {
            for (y, q) in b.iter() {
                out.add_scaled(&insert_labeled(x, glue, y, Signs::Koszul)?, &(p * q));
            }
        }
        Ok(self.reducer.reduce(&out))
    }

    fn derive(&mut self, f: &HyperForest) -> Result<LinComb> {
        if let Some(v) = self.memo.get(f) {
            return Ok(v.clone());
        }
        let out = match decompose(f) {
            Piece::Leaves => LinComb::zero(),
            Piece::Corolla => self.operator_terms(f)?,
            Piece::Split(a, glue, b) => {
                let glued = insert_labeled(&a, glue, &b, Signs::Koszul)?;
                let eps = glued.coeff(f);
                if glued.len() != 1 || eps.is_zero() {
                    return Err(Error::InvalidStructure(format!("cannot split {f} as {a} o {b}")));
                }
                let (da, db) = (self.derive(&a)?, self.derive(&b)?);
                let (av, bv) = (LinComb::from_forest(a.clone()), LinComb::from_forest(b));
                let mut sum = self.insert(&da, glue, &bv)?;
                let second = self.insert(&av, glue, &db)?;
                let sign = if a.greg_weight() % 2 == 0 { 1 } else { -1 };
                sum.add_scaled(&second, &crate::reduce::int(sign));
                sum.scale(&eps)
            }
        };
        self.memo.insert(f.clone(), out.clone());
        Ok(out)
    }

    pub fn apply_forest(&mut self, f: &HyperForest) -> Result<LinComb> {
        check_family(f, self.conv)?;
        match self.conv {
            Convention::GregMinusOne => self.operator_terms(f),
            Convention::DgComGreg => self.derive(f),
        }
    }

    pub fn apply(&mut self, v: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (f, c) in v.iter() {
            out.add_scaled(&self.apply_forest(f)?, c);
        }
        Ok(out)
    }
}

pub fn differential(f: &HyperForest, conv: Convention) -> Result<LinComb> {
    Differential::new(conv).apply_forest(f)
}

pub fn differential_lin(v: &LinComb, conv: Convention) -> Result<LinComb> {
    Differential::new(conv).apply(v)
}

/// The part of `d(f)` of the same height as `f`.
pub fn d0(f: &HyperForest, conv: Convention) -> Result<LinComb> {
    let h = height(f);
    Ok(differential(f, conv)?.filter(|g| height(g) == h))
}

/// The part of `d(f)` with the same shape as `f`.
///
/// This is the associated graded differential of the splitting of each
/// arity by shapes. It differs from [`d0`]: a term such as
/// `1<2,3><4> -> 1<2,B<3><4>>` keeps the height but changes the shape, and
/// `1<2<3,4>> -> B<1><2<3,4>>` keeps the shape but lowers the height.
pub fn d_shape(f: &HyperForest) -> Result<LinComb> {
    let shape = shape_decompose(f)?.shape;
    let d = differential(f, Convention::DgComGreg)?;
    let mut out = LinComb::zero();
    for (g, c) in d.iter() {
        if shape_decompose(g)?.shape == shape {
            out.add_scaled(&LinComb::from_forest(g.clone()), c);
        }
    }
    Ok(out)
}

/// `d_shape(f)` computed on the shape decomposition of `f`: the differential
/// of each maximal subtree `M_i`, put back in place, with the sign
/// `(-1)^{|M_1| + ... + |M_{i-1}|}` for the blocks oriented in order.
pub fn d_shape_by_subtrees(f: &HyperForest) -> Result<LinComb> {
    let dec = shape_decompose(f)?;
    let mut blocks: Vec<Node> = Vec::new();
    let mut offsets = Vec::new();
    let mut offset = 0u32;
    for m in &dec.subtrees {
        let mut roots = m.roots().to_vec();
        HyperForest::shifted_marks(&mut roots, offset);
        offsets.push(offset);
        offset += m.black_count() as u32;
        blocks.extend(roots);
    }
    let (g, eps) = HyperForest::canonicalize(reconstruct_raw(&dec.shape, &blocks)?);
    if &g != f {
        return Err(Error::InvalidStructure(format!("{f} is not rebuilt from its shape")));
    }
    let mut d = Differential::new(Convention::DgComGreg);
    let mut out = LinComb::zero();
    for (i, m) in dec.subtrees.iter().enumerate() {
        for (term, c) in d.apply_forest(m)?.iter() {
            let [root] = term.roots() else {
                return Err(Error::InvalidStructure(format!("d({m}) has the forest term {term}")));
            };
            let mut pieces = blocks.clone();
            for (j, p) in pieces.iter_mut().enumerate() {
                if j > i {
                    HyperForest::shifted_marks(std::slice::from_mut(p), 1);
                }
            }
            let mut replaced = vec![root.clone()];
            HyperForest::shifted_marks(&mut replaced, offsets[i]);
            pieces[i] = replaced.pop().expect("one root");
            let (h, s) = HyperForest::canonicalize(reconstruct_raw(&dec.shape, &pieces)?);
            let sign = eps as i64 * s as i64 * if offsets[i] % 2 == 0 { 1 } else { -1 };
            out.add_scaled(&LinComb::from_forest(h), &(c * crate::reduce::int(sign)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> HyperForest {
        HyperForest::parse(s).unwrap()
    }

    fn d(s: &str, conv: Convention) -> String {
        differential(&f(s), conv).unwrap().to_string()
    }

    #[test]
    fn generators() {
        assert_eq!(d("1<2>", Convention::DgComGreg), "B<1><2>");
        assert_eq!(d("1<2>", Convention::GregMinusOne), "-B<1><2>");
        assert_eq!(d("2<1>", Convention::GregMinusOne), "-B<1><2>");
        assert_eq!(d("{1,2}", Convention::DgComGreg), "0");
        for conv in Convention::ALL {
            assert_eq!(d("B<1><2>", conv), "0");
            assert_eq!(d("1", conv), "0");
        }
    }

    #[test]
    fn hyperedge_root() {
        assert_eq!(d("1<2,3>", Convention::DgComGreg), "{2,B<1><3>} + {3,B<1><2>}");
    }

    #[test]
    fn family_is_checked() {
        assert!(matches!(
            differential(&f("{1,2}"), Convention::GregMinusOne),
            Err(Error::FamilyMismatch { .. })
        ));
    }
}

#[cfg(test)]
mod subtree_tests {
    use super::*;
    use crate::enumerate::enumerate;

    #[test]
    fn shape_part_acts_on_maximal_subtrees() {
        for n in 1..=4 {
            for f in enumerate(Family::FRG, n).unwrap() {
                assert_eq!(d_shape(&f).unwrap(), d_shape_by_subtrees(&f).unwrap(), "{f}");
            }
        }
    }
}
