//! Randomized checks of the operad axioms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enumerate::enumerate;
use crate::error::Result;
use crate::forest::{Family, HyperForest};
use crate::lincomb::LinComb;
use crate::operad::{act, compose_lin, compose_reduced, induced_perm, Perm};
use crate::reduce::int;
use crate::Signs;

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub family: String,
    pub graded: bool,
    pub trials: usize,
    pub seed: u64,
    pub sequential: Vec<String>,
    pub parallel: Vec<String>,
    pub equivariance: Vec<String>,
    pub unit: Vec<String>,
}

impl AxiomReport {
    pub fn failures(&self) -> usize {
        self.sequential.len() + self.parallel.len() + self.equivariance.len() + self.unit.len()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

/// Composition in `family`; the reduced family composes in the quotient.
pub fn compose_in(family: Family, s: &LinComb, i: u32, t: &LinComb, signs: Signs) -> Result<LinComb> {
    if family == Family::FRG {
        compose_reduced(s, i, t, signs)
    } else {
        compose_lin(s, i, t, signs)
    }
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut p = Perm::identity(n);
    for k in (1..n).rev() {
        let j = rng.gen_range(0..=k);
        p.0.swap(k, j);
    }
    p
}

/// Checks the sequential, parallel, equivariance and unit axioms on
/// `trials` random triples of elements of arity at most `max_n`.
///
/// With `Signs::Koszul` black vertices have degree one and the parallel
/// axiom carries the sign `(-1)^{|t||r|}`.
pub fn check_axioms(family: Family, max_n: usize, trials: usize, seed: u64, signs: Signs) -> Result<AxiomReport> {
    let bases: Vec<Vec<HyperForest>> = (1..=max_n).map(|n| enumerate(family, n)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport {
        family: family.to_string(),
        graded: signs == Signs::Koszul,
        trials,
        seed,
        ..Default::default()
    };
    let comp = |s: &LinComb, i: u32, t: &LinComb| compose_in(family, s, i, t, signs);
    for _ in 0..trials {
        let pick = |rng: &mut ChaCha8Rng| {
            let b = &bases[rng.gen_range(0..max_n)];
            b[rng.gen_range(0..b.len())].clone()
        };
        let (s, t, r) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (n, m) = (s.arity() as u32, t.arity() as u32);
        let (sv, tv, rv) = (LinComb::from(s.clone()), LinComb::from(t.clone()), LinComb::from(r.clone()));
        let i = rng.gen_range(1..=n);
        let st = comp(&sv, i, &tv)?;

        let j = rng.gen_range(1..=m);
        let lhs = comp(&st, i + j - 1, &rv)?;
        let rhs = comp(&sv, i, &comp(&tv, j, &rv)?)?;
        if lhs != rhs {
            report.sequential.push(format!("({s} o{i} {t}) o{} {r} != {s} o{i} ({t} o{j} {r})", i + j - 1));
        }

        if n >= 2 {
            let (a, b) = loop {
                let a = rng.gen_range(1..=n);
                let b = rng.gen_range(1..=n);
                if a != b {
                    break (a.min(b), a.max(b));
                }
            };
            // (s o_b r) o_a t against (s o_a t) o_{b+m-1} r.
            let lhs = comp(&comp(&sv, b, &rv)?, a, &tv)?;
            let mut rhs = comp(&comp(&sv, a, &tv)?, b + m - 1, &rv)?;
            if signs == Signs::Koszul && t.greg_weight() * r.greg_weight() % 2 == 1 {
                rhs = rhs.scale(&int(-1));
            }
            if lhs != rhs {
                report.parallel.push(format!("s = {s}, t = {t} at {a}, r = {r} at {b}"));
            }
        }

        let sigma = random_perm(&mut rng, n as usize);
        let lhs = comp(&act(&sigma, &sv, signs), sigma.apply(i), &tv)?;
        let rhs = act(&induced_perm(&sigma, i, m), &st, signs);
        if lhs != rhs {
            report.equivariance.push(format!("sigma = {:?}, s = {s}, i = {i}, t = {t}", sigma.0));
        }

        let unit = LinComb::from(HyperForest::unit(1));
        let left = comp(&unit, 1, &sv)?;
        let right = comp(&sv, i, &unit)?;
        if left != sv || right != sv {
            report.unit.push(format!("{s}"));
        }
    }
    Ok(report)
}
