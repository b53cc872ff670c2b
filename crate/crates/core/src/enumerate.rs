//! Exhaustive generation of every family in a given arity.

use std::collections::{BTreeMap, HashMap};

use hyperop_series::Poly;
use num::{BigInt, BigRational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{Family, HyperForest, Node};

/// Set partitions of the bits of `mask`, each as a list of block masks.
fn set_partitions(mask: u32) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask & !low;
    let mut out = Vec::new();
    // Every submask of `rest` joins `low` in the first block.
    let mut sub = rest;
    loop {
        let block = low | sub;
        for mut tail in set_partitions(rest & !sub) {
            tail.insert(0, block);
            out.push(tail);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

fn cartesian<T: Clone>(choices: &[&Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options.iter() {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

struct Generator {
    family: Family,
    trees: HashMap<u32, Vec<Node>>,
    groups: HashMap<u32, Vec<Vec<Node>>>,
}

impl Generator {
    fn new(family: Family) -> Self {
        Generator {
            family,
            trees: HashMap::new(),
            groups: HashMap::new(),
        }
    }

    /// Trees whose white labels are exactly the bits of `mask`.
    fn trees(&mut self, mask: u32) -> Vec<Node> {
        if let Some(t) = self.trees.get(&mask) {
            return t.clone();
        }
        let mut out = Vec::new();
        for bit in 0..32 {
            if mask & (1 << bit) == 0 {
                continue;
            }
            for blocks in set_partitions(mask & !(1 << bit)) {
                for groups in self.group_choices(&blocks, false) {
                    let mut n = Node::white(bit + 1);
                    n.groups = groups;
                    out.push(n);
                }
            }
        }
        if self.family.allows_black() {
            for blocks in set_partitions(mask).into_iter().filter(|b| b.len() >= 2) {
                for groups in self.group_choices(&blocks, true) {
                    let mut n = Node::black();
                    n.groups = groups;
                    out.push(n);
                }
            }
        }
        self.trees.insert(mask, out.clone());
        out
    }

    fn group_choices(&mut self, blocks: &[u32], on_black: bool) -> Vec<Vec<Vec<Node>>> {
        let options: Vec<Vec<Vec<Node>>> = blocks
            .iter()
            .map(|&b| {
                if on_black && self.family == Family::FRG {
                    self.trees(b).into_iter().map(|t| vec![t]).collect()
                } else {
                    self.groups(b)
                }
            })
            .collect();
        let refs: Vec<&Vec<Vec<Node>>> = options.iter().collect();
        cartesian(&refs)
    }

    /// Possible member lists of one edge covering the labels of `mask`.
    fn groups(&mut self, mask: u32) -> Vec<Vec<Node>> {
        if let Some(g) = self.groups.get(&mask) {
            return g.clone();
        }
        let out = if self.family.allows_hyperedges() {
            self.forests(mask)
        } else {
            self.trees(mask).into_iter().map(|t| vec![t]).collect()
        };
        self.groups.insert(mask, out.clone());
        out
    }

    fn forests(&mut self, mask: u32) -> Vec<Vec<Node>> {
        let mut out = Vec::new();
        for blocks in set_partitions(mask) {
            let options: Vec<Vec<Node>> = blocks.iter().map(|&b| self.trees(b)).collect();
            let refs: Vec<&Vec<Node>> = options.iter().collect();
            out.extend(cartesian(&refs));
        }
        out
    }
}

/// All forests of `family` with labels `1..n`, each exactly once, sorted.
pub fn enumerate(family: Family, n: usize) -> Result<Vec<HyperForest>> {
    enumerate_capped(family, n, family.default_cap())
}

pub fn enumerate_capped(family: Family, n: usize, cap: usize) -> Result<Vec<HyperForest>> {
    if n > cap || n > 20 {
        return Err(Error::ArityTooLarge { n, cap });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let full = (1u32 << n) - 1;
    let mut gen = Generator::new(family);
    let raw: Vec<Vec<Node>> = match family {
        Family::RT | Family::Greg => gen.trees(full).into_iter().map(|t| vec![t]).collect(),
        _ => gen.forests(full),
    };
    let mut out: Vec<HyperForest> = raw.into_iter().map(HyperForest::from_roots).collect();
    out.sort();
    Ok(out)
}

/// Dimensions indexed by `(arity, hypertree weight, Greg weight)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub entries: BTreeMap<(usize, usize, usize), u64>,
}

impl GradedDims {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn get(&self, n: usize, j: usize, k: usize) -> u64 {
        self.entries.get(&(n, j, k)).copied().unwrap_or(0)
    }

    /// Sum over Greg weight, indexed by hypertree weight.
    pub fn marginal_hypertree(&self) -> Vec<u64> {
        self.marginal(|(_, j, _)| j)
    }

    /// Sum over hypertree weight, indexed by Greg weight.
    pub fn marginal_greg(&self) -> Vec<u64> {
        self.marginal(|(_, _, k)| k)
    }

    fn marginal(&self, key: impl Fn((usize, usize, usize)) -> usize) -> Vec<u64> {
        let mut out = Vec::new();
        for (&e, &c) in &self.entries {
            let i = key(e);
            if out.len() <= i {
                out.resize(i + 1, 0);
            }
            out[i] += c;
        }
        out
    }

    /// `sum count * u^j v^k`.
    pub fn to_poly(&self) -> Poly {
        self.entries.iter().fold(Poly::zero(), |acc, (&(_, j, k), &c)| {
            &acc + &Poly::monomial(BigRational::from_integer(BigInt::from(c)), j as u32, k as u32)
        })
    }
}

pub fn graded_dims(forests: &[HyperForest]) -> GradedDims {
    let mut dims = GradedDims::default();
    for f in forests {
        *dims
            .entries
            .entry((f.arity(), f.hypertree_weight(), f.greg_weight()))
            .or_insert(0) += 1;
    }
    dims
}

pub fn count_bigraded(family: Family, n: usize) -> Result<GradedDims> {
    Ok(graded_dims(&enumerate(family, n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn names(family: Family, n: usize) -> Vec<String> {
        enumerate(family, n).unwrap().iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(set_partitions((1 << n) - 1).len(), b);
        }
    }

    #[test]
    fn arity_two() {
        assert_eq!(names(Family::Greg, 2), ["1<2>", "2<1>", "B<1><2>"]);
        assert_eq!(names(Family::FH, 2), ["1<2>", "{1,2}", "2<1>"]);
        assert_eq!(names(Family::FG, 2), ["1<2>", "{1,2}", "2<1>", "B<1><2>"]);
    }

    #[test]
    fn small_counts() {
        let count = |f, n| enumerate(f, n).unwrap().len();
        assert_eq!(count(Family::RT, 4), 64);
        assert_eq!(count(Family::Greg, 3), 22);
        assert_eq!(count(Family::FH, 3), 19);
        assert_eq!(count(Family::FG, 3), 38);
        assert_eq!(count(Family::FRG, 3), 35);
    }

    #[test]
    fn outputs_are_distinct_valid_members() {
        for family in Family::ALL {
            let all = enumerate(family, 4).unwrap();
            let set: HashSet<_> = all.iter().collect();
            assert_eq!(set.len(), all.len());
            for f in &all {
                f.validate().unwrap();
                assert!(family.admits(f), "{family}: {f}");
            }
        }
    }

    #[test]
    fn bigraded_arity_two() {
        let fh = count_bigraded(Family::FH, 2).unwrap();
        assert_eq!(fh.entries, BTreeMap::from([((2, 0, 0), 2), ((2, 1, 0), 1)]));
        let fg = count_bigraded(Family::FG, 2).unwrap();
        assert_eq!(fg.entries, BTreeMap::from([((2, 0, 0), 2), ((2, 0, 1), 1), ((2, 1, 0), 1)]));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate(Family::FG, 6), Err(Error::ArityTooLarge { n: 6, cap: 5 }));
    }
}
