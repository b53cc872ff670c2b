//! Forests of rooted Greg hypertrees.
//!
//! A vertex stores each of its incoming edges as a *group*: the list of
//! subtrees attached to it by that edge. A group of one member is a simple
//! edge, a group of `m >= 2` members is a hyperedge of weight `m - 1`.
//! Black vertices are unlabeled; white vertices carry distinct labels.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    White(u32),
    Black,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Rooted trees.
    RT,
    /// Rooted Greg trees.
    Greg,
    /// Forests of rooted hypertrees.
    FH,
    /// Forests of rooted Greg hypertrees.
    FG,
    /// Reduced forests: black vertices carry only simple edges.
    FRG,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::RT, Family::Greg, Family::FH, Family::FG, Family::FRG];

    pub fn name(self) -> &'static str {
        match self {
            Family::RT => "RT",
            Family::Greg => "Greg",
            Family::FH => "FH",
            Family::FG => "FG",
            Family::FRG => "FRG",
        }
    }

    pub fn allows_black(self) -> bool {
        !matches!(self, Family::RT | Family::FH)
    }

    pub fn allows_hyperedges(self) -> bool {
        matches!(self, Family::FH | Family::FG | Family::FRG)
    }

    /// Default enumeration cap.
    pub fn default_cap(self) -> usize {
        match self {
            Family::RT | Family::Greg | Family::FH => 6,
            Family::FG | Family::FRG => 5,
        }
    }

    pub fn admits(self, f: &HyperForest) -> bool {
        if f.validate_structure().is_err() {
            return false;
        }
        let single = f.roots.len() == 1;
        match self {
            Family::RT => single && f.black_count() == 0 && f.hyperedge_count() == 0,
            Family::Greg => single && f.hyperedge_count() == 0,
            Family::FH => f.black_count() == 0,
            Family::FG => true,
            Family::FRG => f.is_reduced(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidStructure(format!("unknown family `{s}`")))
    }
}

/// A vertex together with everything above it.
///
/// `mark` orders black vertices for sign bookkeeping; it is ignored by
/// comparison and hashing. In canonical forests the marks of the black
/// vertices are their breadth-first indices.
#[derive(Clone, Debug)]
pub struct Node {
    pub color: Color,
    pub groups: Vec<Vec<Node>>,
    pub(crate) mark: u32,
}

/// Lexicographic comparison where a proper prefix sorts after the longer
/// sequence.
fn cmp_seq<T>(a: &[T], b: &[T], f: impl Fn(&T, &T) -> Ordering) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match f(x, y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}

fn cmp_group(a: &[Node], b: &[Node]) -> Ordering {
    cmp_seq(a, b, Node::cmp)
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.color
            .cmp(&other.color)
            .then_with(|| cmp_seq(&self.groups, &other.groups, |g, h| cmp_group(g, h)))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl Hash for Node {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.color.hash(state);
        state.write_usize(self.groups.len());
        for g in &self.groups {
            state.write_usize(g.len());
            for m in g {
                m.hash(state);
            }
        }
    }
}

impl Node {
    pub fn white(label: u32) -> Self {
        Node {
            color: Color::White(label),
            groups: Vec::new(),
            mark: 0,
        }
    }

    pub fn black() -> Self {
        Node {
            color: Color::Black,
            groups: Vec::new(),
            mark: 0,
        }
    }

    pub fn with_group(mut self, members: Vec<Node>) -> Self {
        self.groups.push(members);
        self
    }

    pub fn is_black(&self) -> bool {
        self.color == Color::Black
    }

    pub fn label(&self) -> Option<u32> {
        match self.color {
            Color::White(l) => Some(l),
            Color::Black => None,
        }
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Node)) {
        f(self);
        for g in &self.groups {
            for m in g {
                m.visit(f);
            }
        }
    }

    pub fn black_count(&self) -> usize {
        let mut k = 0;
        self.visit(&mut |n| k += n.is_black() as usize);
        k
    }

    pub fn labels(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.visit(&mut |n| out.extend(n.label()));
        out
    }

    fn relabel(&mut self, f: &impl Fn(u32) -> u32) {
        if let Color::White(l) = self.color {
            self.color = Color::White(f(l));
        }
        for g in &mut self.groups {
            for m in g {
                m.relabel(f);
            }
        }
    }

    fn shift_marks(&mut self, by: u32) {
        if self.is_black() {
            self.mark += by;
        }
        for g in &mut self.groups {
            for m in g {
                m.shift_marks(by);
            }
        }
    }

    /// Sorts everything above this vertex. Returns `false` when two equal
    /// siblings carry an odd number of black vertices, in which case the
    /// oriented forest equals its own negative.
    fn sort(&mut self) -> bool {
        let mut ok = true;
        for g in &mut self.groups {
            for m in g.iter_mut() {
                ok &= m.sort();
            }
            g.sort();
            ok &= no_odd_twins(g, |m| m.black_count());
        }
        self.groups.sort_by(|a, b| cmp_group(a, b));
        ok &= no_odd_twins_by(&self.groups, |a, b| cmp_group(a, b) == Ordering::Equal, |g| {
            g.iter().map(Node::black_count).sum()
        });
        ok
    }

    fn write(&self, out: &mut String) {
        match self.color {
            Color::White(l) => out.push_str(&l.to_string()),
            Color::Black => out.push('B'),
        }
        for g in &self.groups {
            out.push('<');
            for (i, m) in g.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                m.write(out);
            }
            out.push('>');
        }
    }
}

fn no_odd_twins<T: Eq>(sorted: &[T], blacks: impl Fn(&T) -> usize) -> bool {
    no_odd_twins_by(sorted, |a, b| a == b, blacks)
}

fn no_odd_twins_by<T>(sorted: &[T], eq: impl Fn(&T, &T) -> bool, blacks: impl Fn(&T) -> usize) -> bool {
    sorted
        .windows(2)
        .all(|w| !(eq(&w[0], &w[1]) && blacks(&w[0]) % 2 == 1))
}

/// Address of a vertex: the root index followed by (group, member) pairs.
pub type Path = Vec<usize>;

/// A forest of rooted Greg hypertrees, stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HyperForest {
    roots: Vec<Node>,
}

impl Ord for HyperForest {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_seq(&self.roots, &other.roots, Node::cmp)
    }
}

impl PartialOrd for HyperForest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl HyperForest {
    /// Canonicalizes a raw list of roots.
    ///
    /// The black vertices of `roots` are oriented by their marks. The
    /// returned sign is the sign of the permutation from that orientation to
    /// the canonical breadth-first one, or `0` if the oriented forest is
    /// its own negative.
    pub fn canonicalize(mut roots: Vec<Node>) -> (HyperForest, i32) {
        let mut ok = true;
        for r in &mut roots {
            ok &= r.sort();
        }
        roots.sort();
        ok &= no_odd_twins(&roots, |r| r.black_count());
        let mut forest = HyperForest { roots };
        let marks = forest.remark();
        let sign = if !ok {
            0
        } else if odd_permutation(&marks) {
            -1
        } else {
            1
        };
        (forest, sign)
    }

    /// Canonicalizes, discarding the orientation sign.
    pub fn from_roots(roots: Vec<Node>) -> HyperForest {
        Self::canonicalize(roots).0
    }

    pub fn tree(root: Node) -> HyperForest {
        Self::from_roots(vec![root])
    }

    /// The single white vertex `label`, the operadic unit in arity one.
    pub fn unit(label: u32) -> HyperForest {
        Self::tree(Node::white(label))
    }

    pub fn roots(&self) -> &[Node] {
        &self.roots
    }

    pub fn into_roots(self) -> Vec<Node> {
        self.roots
    }

    /// Resets marks to breadth-first indices and returns the old marks in
    /// breadth-first order.
    fn remark(&mut self) -> Vec<u32> {
        let mut old = Vec::new();
        let mut queue: VecDeque<&mut Node> = self.roots.iter_mut().collect();
        while let Some(n) = queue.pop_front() {
            if n.is_black() {
                old.push(n.mark);
                n.mark = old.len() as u32 - 1;
            }
            for g in &mut n.groups {
                queue.extend(g.iter_mut());
            }
        }
        old
    }

    /// Vertices in breadth-first order (bottom to top, left to right).
    pub fn bfs(&self) -> Vec<(Path, &Node)> {
        bfs_paths(&self.roots)
    }

    pub fn arity(&self) -> usize {
        self.roots.iter().map(|r| r.labels().len()).sum()
    }

    pub fn labels(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.roots.iter().flat_map(Node::labels).collect();
        out.sort_unstable();
        out
    }

    pub fn black_count(&self) -> usize {
        self.roots.iter().map(Node::black_count).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.bfs().len()
    }

    fn groups(&self) -> impl Iterator<Item = (&Node, &Vec<Node>)> {
        self.bfs()
            .into_iter()
            .flat_map(|(_, n)| n.groups.iter().map(move |g| (n, g)))
    }

    pub fn hyperedge_count(&self) -> usize {
        self.groups().filter(|(_, g)| g.len() >= 2).count()
    }

    /// Number of trees minus one plus the weights of all hyperedges.
    pub fn hypertree_weight(&self) -> usize {
        self.roots.len() - 1 + self.groups().map(|(_, g)| g.len() - 1).sum::<usize>()
    }

    /// Number of black vertices.
    pub fn greg_weight(&self) -> usize {
        self.black_count()
    }

    /// No black vertex carries a hyperedge.
    pub fn is_reduced(&self) -> bool {
        self.groups().all(|(n, g)| !n.is_black() || g.len() == 1)
    }

    /// Every black vertex has at least two groups and every group is
    /// nonempty; labels are distinct.
    pub fn validate_structure(&self) -> Result<()> {
        for (_, n) in self.bfs() {
            if n.is_black() && n.groups.len() < 2 {
                return Err(Error::InvalidStructure(format!(
                    "black vertex with {} incoming edges in `{self}`",
                    n.groups.len()
                )));
            }
            if n.groups.iter().any(|g| g.is_empty()) {
                return Err(Error::InvalidStructure(format!("empty edge in `{self}`")));
            }
        }
        let labels = self.labels();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidStructure(format!("repeated label in `{self}`")));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate_structure().is_ok()
    }

    /// Full validation: structure, and labels exactly `{1..n}`.
    pub fn validate(&self) -> Result<()> {
        self.validate_structure()?;
        let labels = self.labels();
        if labels.iter().enumerate().any(|(i, &l)| l as usize != i + 1) {
            return Err(Error::InvalidStructure(format!(
                "labels of `{self}` are not 1..{}",
                labels.len()
            )));
        }
        Ok(())
    }

    /// Relabels white vertices, keeping black marks; the result is raw.
    pub fn relabeled_roots(&self, f: impl Fn(u32) -> u32) -> Vec<Node> {
        let mut roots = self.roots.clone();
        for r in &mut roots {
            r.relabel(&f);
        }
        roots
    }

    /// Roots with the marks of all black vertices raised by `by`.
    pub(crate) fn shifted_marks(roots: &mut [Node], by: u32) {
        for r in roots {
            r.shift_marks(by);
        }
    }

    pub fn find_label(&self, label: u32) -> Option<Path> {
        self.bfs()
            .into_iter()
            .find(|(_, n)| n.label() == Some(label))
            .map(|(p, _)| p)
    }

    pub fn parse(s: &str) -> Result<HyperForest> {
        let f = Parser::new(s).forest()?;
        f.validate()?;
        Ok(f)
    }

    /// Parses without requiring the labels to be `1..n`.
    pub fn parse_labeled(s: &str) -> Result<HyperForest> {
        let f = Parser::new(s).forest()?;
        f.validate_structure()?;
        Ok(f)
    }
}

pub(crate) fn bfs_paths(roots: &[Node]) -> Vec<(Path, &Node)> {
    let mut out = Vec::new();
    let mut queue: VecDeque<(Path, &Node)> =
        roots.iter().enumerate().map(|(i, r)| (vec![i], r)).collect();
    while let Some((p, n)) = queue.pop_front() {
        for (gi, g) in n.groups.iter().enumerate() {
            for (mi, m) in g.iter().enumerate() {
                let mut q = p.clone();
                q.extend([gi, mi]);
                queue.push_back((q, m));
            }
        }
        out.push((p, n));
    }
    out
}

pub(crate) fn node_at<'a>(roots: &'a [Node], path: &[usize]) -> &'a Node {
    let mut n = &roots[path[0]];
    for pair in path[1..].chunks(2) {
        n = &n.groups[pair[0]][pair[1]];
    }
    n
}

pub(crate) fn node_at_mut<'a>(roots: &'a mut [Node], path: &[usize]) -> &'a mut Node {
    let mut n = &mut roots[path[0]];
    for pair in path[1..].chunks(2) {
        n = &mut n.groups[pair[0]][pair[1]];
    }
    n
}

/// The list holding the vertex at `path` (a group of its parent, or the
/// root list) and its index there.
pub(crate) fn container_mut<'a>(roots: &'a mut Vec<Node>, path: &[usize]) -> (&'a mut Vec<Node>, usize) {
    let len = path.len();
    if len == 1 {
        return (roots, path[0]);
    }
    let parent = node_at_mut(roots, &path[..len - 2]);
    (&mut parent.groups[path[len - 2]], path[len - 1])
}

fn odd_permutation(seq: &[u32]) -> bool {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            odd ^= seq[i] > seq[j];
        }
    }
    odd
}

impl fmt::Display for HyperForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.roots.len() == 1 {
            self.roots[0].write(&mut out);
        } else {
            out.push('{');
            for (i, r) in self.roots.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                r.write(&mut out);
            }
            out.push('}');
        }
        f.write_str(&out)
    }
}

impl FromStr for HyperForest {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        HyperForest::parse(s)
    }
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            input: self.input.to_string(),
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn forest(&mut self) -> Result<HyperForest> {
        let roots = if self.peek() == Some(b'{') {
            self.pos += 1;
            self.list(b'}')?
        } else {
            vec![self.node()?]
        };
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(HyperForest::from_roots(roots))
    }

    fn list(&mut self, close: u8) -> Result<Vec<Node>> {
        let mut out = vec![self.node()?];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    out.push(self.node()?);
                }
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.err(format!("expected `,` or `{}`", close as char)),
            }
        }
    }

    fn node(&mut self) -> Result<Node> {
        let mut node = match self.peek() {
            Some(b'B') => {
                self.pos += 1;
                Node::black()
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                match self.input[start..self.pos].parse::<u32>() {
                    Ok(l) if l > 0 => Node::white(l),
                    _ => {
                        self.pos = start;
                        return self.err("labels are positive integers");
                    }
                }
            }
            _ => return self.err("expected a label or `B`"),
        };
        while self.peek() == Some(b'<') {
            self.pos += 1;
            node.groups.push(self.list(b'>')?);
        }
        Ok(node)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> HyperForest {
        HyperForest::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["1", "1<2><3>", "1<2,3>", "{1,2}", "B<1><2>", "{5,B<1<4>><2,3>}"] {
            assert_eq!(f(s).to_string(), s);
        }
    }

    #[test]
    fn children_order_is_irrelevant() {
        assert_eq!(f("B<2><1>"), f("B<1><2>"));
        assert_eq!(f("1<3><2>"), f("1<2><3>"));
        assert_eq!(f("{2,1<3,4>}").to_string(), "{1<3,4>,2}");
        assert_eq!(f("1<3,2>").to_string(), "1<2,3>");
    }

    #[test]
    fn longer_sorts_first() {
        let a = f("1<2<3>>");
        let b = f("1<2><3>");
        assert!(a < b);
        assert!(f("{1<3>,2}") < f("{1,2<3>}"));
        assert!(f("2<1>") < f("B<1><2>"));
    }

    #[test]
    fn parser_rejects_bad_input() {
        for s in ["", "1<", "1<>", "{1,3}", "1<1>", "B<1>", "B", "0", "1 2", "x"] {
            assert!(HyperForest::parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn weights() {
        let w = |s: &str| (f(s).hypertree_weight(), f(s).greg_weight());
        assert_eq!(w("1<2>"), (0, 0));
        assert_eq!(w("{1,2}"), (1, 0));
        assert_eq!(w("1<2,3>"), (1, 0));
        assert_eq!(w("{B<1><2,3>,4}"), (2, 1));
    }

    #[test]
    fn orientation_sign_follows_marks() {
        // B<B<1><2>><3>: the lower black comes first in breadth-first order.
        let mut upper = Node::black().with_group(vec![Node::white(1)]).with_group(vec![Node::white(2)]);
        upper.mark = 0;
        let mut lower = Node::black().with_group(vec![upper]).with_group(vec![Node::white(3)]);
        lower.mark = 1;
        let (g, sign) = HyperForest::canonicalize(vec![lower.clone()]);
        assert_eq!(sign, -1);
        let (_, again) = HyperForest::canonicalize(g.roots().to_vec());
        assert_eq!(again, 1);
        lower.mark = 5;
        assert_eq!(HyperForest::canonicalize(vec![lower]).1, -1);
    }

    #[test]
    fn family_membership() {
        assert!(Family::RT.admits(&f("1<2<3>>")));
        assert!(!Family::RT.admits(&f("B<1><2>")));
        assert!(Family::Greg.admits(&f("B<1><2>")));
        assert!(!Family::Greg.admits(&f("{1,2}")));
        assert!(Family::FH.admits(&f("1<2,3>")));
        assert!(Family::FG.admits(&f("B<1,2><3>")));
        assert!(!Family::FRG.admits(&f("B<1,2><3>")));
        assert!(Family::FRG.admits(&f("1<B<2><3>,4>")));
    }
}
