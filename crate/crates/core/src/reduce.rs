//! The rewriting system that pushes hyperedges off black vertices.
//!
//! A black vertex `b` carrying an edge with members `m_1, ..., m_k`
//! (`k >= 2`) rewrites to the sum over `j` of the forest where only `m_j`
//! stays on that edge of `b` and the other members join the edge (or root
//! list) that holds `b`. Normal forms are exactly the reduced forests.

use std::collections::HashMap;

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forest::{bfs_paths, container_mut, node_at_mut, HyperForest, Path};
use crate::lincomb::LinComb;
use crate::Signs;

/// A black vertex with a hyperedge: its path and the index of the edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub path: Path,
    pub group: usize,
}

/// Redexes in breadth-first order.
pub fn redexes(f: &HyperForest) -> Vec<Redex> {
    bfs_paths(f.roots())
        .into_iter()
        .filter(|(_, n)| n.is_black())
        .flat_map(|(p, n)| {
            n.groups
                .iter()
                .enumerate()
                .filter(|(_, g)| g.len() >= 2)
                .map(move |(gi, _)| Redex {
                    path: p.clone(),
                    group: gi,
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// One rewriting step at `r`.
pub fn rewrite(f: &HyperForest, r: &Redex, signs: Signs) -> LinComb {
    let members = {
        let mut roots = f.roots().to_vec();
        std::mem::take(&mut node_at_mut(&mut roots, &r.path).groups[r.group])
    };
    let mut out = LinComb::zero();
    for j in 0..members.len() {
        let mut roots = f.roots().to_vec();
        node_at_mut(&mut roots, &r.path).groups[r.group] = vec![members[j].clone()];
        let (holder, _) = container_mut(&mut roots, &r.path);
        holder.extend(
            members
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, m)| m.clone()),
        );
        let (g, sign) = HyperForest::canonicalize(roots);
        out.add_int(g, signs.apply(sign));
    }
    out
}

/// Which redex to contract first.
#[derive(Clone, Copy, Debug)]
pub enum Strategy {
    /// The first redex in breadth-first order.
    Outermost,
    /// The last redex in breadth-first order.
    Innermost,
    /// A uniformly random redex.
    Random(u64),
}

type StepHook<'a> = Box<dyn FnMut(&HyperForest, &LinComb) + 'a>;

/// Normal form computation without memoization, reporting every step as
/// `(before, after)`.
pub struct Rewriter<'a> {
    strategy: Strategy,
    signs: Signs,
    rng: ChaCha8Rng,
    on_step: StepHook<'a>,
}

impl<'a> Rewriter<'a> {
    pub fn new(strategy: Strategy, signs: Signs) -> Self {
        let seed = match strategy {
            Strategy::Random(s) => s,
            _ => 0,
        };
        Rewriter {
            strategy,
            signs,
            rng: ChaCha8Rng::seed_from_u64(seed),
            on_step: Box::new(|_, _| {}),
        }
    }

    pub fn on_step(mut self, f: impl FnMut(&HyperForest, &LinComb) + 'a) -> Self {
        self.on_step = Box::new(f);
        self
    }

    pub fn normal_form(&mut self, v: &LinComb) -> LinComb {
        let mut out = LinComb::zero();
        let mut pending = v.clone();
        loop {
            let Some((f, c)) = pending.iter().next().map(|(f, c)| (f.clone(), c.clone())) else {
                break;
            };
            pending.add_term(f.clone(), -c.clone());
            let rs = redexes(&f);
            if rs.is_empty() {
                out.add_term(f, c);
                continue;
            }
            let pick = match self.strategy {
                Strategy::Outermost => 0,
                Strategy::Innermost => rs.len() - 1,
                Strategy::Random(_) => self.rng.gen_range(0..rs.len()),
            };
            let step = rewrite(&f, &rs[pick], self.signs);
            (self.on_step)(&f, &step);
            pending.add_scaled(&step, &c);
        }
        out
    }
}

/// Memoized normal forms.
#[derive(Default)]
pub struct Reducer {
    signs: Signs,
    memo: HashMap<HyperForest, LinComb>,
}

impl Reducer {
    pub fn new(signs: Signs) -> Self {
        Reducer {
            signs,
            memo: HashMap::new(),
        }
    }

    pub fn reduce_forest(&mut self, f: &HyperForest) -> LinComb {
        if let Some(v) = self.memo.get(f) {
            return v.clone();
        }
        let rs = redexes(f);
        let out = match rs.last() {
            None => LinComb::from_forest(f.clone()),
            Some(r) => {
                let step = rewrite(f, r, self.signs);
                step.map_linear(|g| self.reduce_forest(g))
            }
        };
        self.memo.insert(f.clone(), out.clone());
        out
    }

    pub fn reduce(&mut self, v: &LinComb) -> LinComb {
        v.map_linear(|f| self.reduce_forest(f))
    }
}

/// Normal form of `v` under the rewriting system.
pub fn reduce(v: &LinComb, signs: Signs) -> LinComb {
    Reducer::new(signs).reduce(v)
}

pub(crate) fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> HyperForest {
        HyperForest::parse(s).unwrap()
    }

    #[test]
    fn hyperedge_on_black_root() {
        let v = reduce(&LinComb::from_forest(f("B<1,2><3>")), Signs::Ignore);
        assert_eq!(v.to_string(), "{1,B<2><3>} + {2,B<1><3>}");
    }

    #[test]
    fn reduced_forests_are_fixed() {
        let g = f("1<B<2><3>,4>");
        assert_eq!(reduce(&g.clone().into(), Signs::Koszul), LinComb::from_forest(g));
    }

    #[test]
    fn nested_redexes_normalize() {
        let v = LinComb::from_forest(f("B<B<1,2><3>,4><5>"));
        let a = Rewriter::new(Strategy::Outermost, Signs::Koszul).normal_form(&v);
        let b = Rewriter::new(Strategy::Innermost, Signs::Koszul).normal_form(&v);
        assert_eq!(a, b);
        assert_eq!(a, reduce(&v, Signs::Koszul));
        assert!(a.forests().all(HyperForest::is_reduced));
    }
}
