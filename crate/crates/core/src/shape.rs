//! Height functions and the shape decomposition of reduced forests.

use std::collections::HashSet;

use crate::enumerate::enumerate;
use crate::error::{Error, Result};
use crate::forest::{Color, Family, HyperForest, Node};

fn weighted_height(n: &Node, below: usize, counts: &impl Fn(&Node) -> bool) -> usize {
    let here = below + counts(n) as usize;
    n.groups
        .iter()
        .map(|g| (g.len() - 1) * here + g.iter().map(|m| weighted_height(m, here, counts)).sum::<usize>())
        .sum()
}

/// Sum over hyperedges of their weight times the number of white vertices
/// on the path from the hyperedge down to the root. The forest-level
/// weight (several trees) is not counted. The differential does not raise it.
pub fn height(f: &HyperForest) -> usize {
    let white = |n: &Node| !n.is_black();
    f.roots().iter().map(|r| weighted_height(r, 0, &white)).sum()
}

/// Like [`height`], but counting every vertex on the path, black or white.
/// Each rewriting step lowers it by at least the weight of the rewritten
/// hyperedge.
pub fn rewrite_height(f: &HyperForest) -> usize {
    let any = |_: &Node| true;
    f.roots().iter().map(|r| weighted_height(r, 0, &any)).sum()
}

/// The shape of a reduced forest and its maximal subtrees.
///
/// A maximal subtree is a connected piece joined by simple edges; it is a
/// Greg tree. The shape replaces each piece with more than one white vertex
/// by the black corolla on those whites, keeping every hyperedge where it
/// was.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub shape: HyperForest,
    /// Maximal subtrees with their original labels, in canonical form.
    pub subtrees: Vec<HyperForest>,
}

impl Decomposition {
    /// Label sets of the maximal subtrees, sorted.
    pub fn partition(&self) -> Vec<Vec<u32>> {
        let mut p: Vec<Vec<u32>> = self.subtrees.iter().map(HyperForest::labels).collect();
        p.sort();
        p
    }
}

/// Strips the hyperedges off a piece, collecting them per white label.
fn strip(n: &Node, hyper: &mut Vec<(u32, Vec<Vec<Node>>)>) -> Node {
    let mut out = Node {
        color: n.color,
        groups: Vec::new(),
        mark: n.mark,
    };
    let mut mine = Vec::new();
    for g in &n.groups {
        if g.len() == 1 {
            out.groups.push(vec![strip(&g[0], hyper)]);
        } else {
            mine.push(g.clone());
        }
    }
    if let Some(l) = n.label() {
        hyper.push((l, mine));
    }
    out
}

fn shape_of(n: &Node, subtrees: &mut Vec<Node>) -> Node {
    let mut hyper = Vec::new();
    let piece = strip(n, &mut hyper);
    let shaped: Vec<Node> = hyper
        .into_iter()
        .map(|(l, groups)| {
            let mut w = Node::white(l);
            w.groups = groups
                .iter()
                .map(|g| g.iter().map(|m| shape_of(m, subtrees)).collect())
                .collect();
            w
        })
        .collect();
    subtrees.push(piece);
    if shaped.len() == 1 {
        shaped.into_iter().next().unwrap()
    } else {
        let mut b = Node::black();
        b.groups = shaped.into_iter().map(|w| vec![w]).collect();
        b
    }
}

pub fn shape_decompose(f: &HyperForest) -> Result<Decomposition> {
    if !f.is_reduced() {
        return Err(Error::NotReduced(f.to_string()));
    }
    let mut pieces = Vec::new();
    let roots: Vec<Node> = f.roots().iter().map(|r| shape_of(r, &mut pieces)).collect();
    let mut subtrees: Vec<HyperForest> = pieces.into_iter().map(HyperForest::tree).collect();
    subtrees.sort_by_key(|t| t.labels());
    Ok(Decomposition {
        shape: HyperForest::from_roots(roots),
        subtrees,
    })
}

fn attach(n: &mut Node, hyper: &[(u32, Vec<Vec<Node>>)]) {
    for g in &mut n.groups {
        for m in g {
            attach(m, hyper);
        }
    }
    if let Some(l) = n.label() {
        if let Some((_, groups)) = hyper.iter().find(|(w, _)| *w == l) {
            n.groups.extend(groups.iter().cloned());
        }
    }
}

fn rebuild(n: &Node, subtrees: &[Node]) -> Result<Node> {
    let whites: Vec<&Node> = match n.color {
        Color::White(_) => vec![n],
        Color::Black => n.groups.iter().map(|g| &g[0]).collect(),
    };
    let mut hyper = Vec::new();
    let mut labels = Vec::new();
    for w in &whites {
        let l = w.label().ok_or_else(|| Error::InvalidStructure("shape corolla has a black child".into()))?;
        labels.push(l);
        let groups = w
            .groups
            .iter()
            .map(|g| g.iter().map(|m| rebuild(m, subtrees)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        hyper.push((l, groups));
    }
    labels.sort_unstable();
    let mut piece = subtrees
        .iter()
        .find(|t| {
            let mut ls = t.labels();
            ls.sort_unstable();
            ls == labels
        })
        .cloned()
        .ok_or_else(|| Error::InvalidStructure(format!("no subtree with labels {labels:?}")))?;
    attach(&mut piece, &hyper);
    Ok(piece)
}

/// Inverse of [`shape_decompose`], keeping the black marks of `subtrees`.
pub(crate) fn reconstruct_raw(shape: &HyperForest, subtrees: &[Node]) -> Result<Vec<Node>> {
    shape.roots().iter().map(|r| rebuild(r, subtrees)).collect()
}

pub fn reconstruct(shape: &HyperForest, subtrees: &[HyperForest]) -> Result<HyperForest> {
    let nodes: Vec<Node> = subtrees
        .iter()
        .map(|t| match t.roots() {
            [r] => Ok(r.clone()),
            _ => Err(Error::InvalidStructure(format!("subtree `{t}` is not a tree"))),
        })
        .collect::<Result<_>>()?;
    Ok(HyperForest::from_roots(reconstruct_raw(shape, &nodes)?))
}

/// Counts of the distinct shapes of arity `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ShapeCounts {
    /// Shapes of rooted hypertrees, over all partitions of `1..n`.
    pub trees: u64,
    /// Shapes of forests, over all partitions of `1..n`.
    pub forests: u64,
    /// Shapes of rooted hypertrees whose maximal subtrees are single
    /// vertices, that is with `n` labeled parts.
    pub trees_on_parts: u64,
    pub forests_on_parts: u64,
}

pub fn shape_counts(n: usize) -> Result<ShapeCounts> {
    let mut shapes = HashSet::new();
    for f in enumerate(Family::FH, n)? {
        let d = shape_decompose(&f)?;
        let atomic = d.subtrees.len() == n;
        shapes.insert((d.shape, atomic));
    }
    let mut c = ShapeCounts::default();
    for (s, atomic) in &shapes {
        let tree = s.roots().len() == 1;
        c.trees += tree as u64;
        c.forests += 1;
        c.trees_on_parts += (tree && *atomic) as u64;
        c.forests_on_parts += *atomic as u64;
    }
    Ok(c)
}
