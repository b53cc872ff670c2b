//! Cochain complexes of a fixed arity and their exact cohomology.

use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::differential::{Convention, Differential};
use crate::enumerate::enumerate_capped;
use crate::error::{Error, Result};
use crate::forest::HyperForest;
use crate::lincomb::LinComb;
use crate::linalg::{kernel, rank, Coordinates, SparseRow};
use crate::operad::compose_reduced;
use crate::Signs;

pub const DEFAULT_CAP: usize = 5;

/// Per-degree bases (degree = number of black vertices) and the matrices
/// of the differential between consecutive degrees.
pub struct CochainComplex {
    pub arity: usize,
    pub convention: Convention,
    pub degrees: Vec<Coordinates>,
    /// `matrices[k][i]` is the image of the `i`-th basis element of degree
    /// `k`, in the coordinates of degree `k + 1`.
    pub matrices: Vec<Vec<SparseRow>>,
}

fn basis_by_degree(n: usize, conv: Convention, cap: usize) -> Result<Vec<Coordinates>> {
    let all = enumerate_capped(conv.family(), n, cap.max(n.min(cap)))?;
    let top = all.iter().map(HyperForest::greg_weight).max().unwrap_or(0);
    let mut by = vec![Vec::new(); top + 1];
    for f in all {
        by[f.greg_weight()].push(f);
    }
    Ok(by.into_iter().map(Coordinates::new).collect())
}

impl CochainComplex {
    pub fn build(n: usize, conv: Convention) -> Result<Self> {
        Self::build_capped(n, conv, DEFAULT_CAP)
    }

    pub fn build_capped(n: usize, conv: Convention, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::ArityTooLarge { n, cap });
        }
        let degrees = basis_by_degree(n, conv, cap)?;
        let mut matrices = Vec::new();
        for k in 0..degrees.len().saturating_sub(1) {
            let target = &degrees[k + 1];
            let rows = degrees[k]
                .basis()
                .par_chunks(64)
                .map(|chunk| {
                    let mut d = Differential::new(conv);
                    chunk
                        .iter()
                        .map(|f| {
                            let image = d.apply_forest(f)?;
                            target.row(&image).ok_or_else(|| {
                                Error::InvalidStructure(format!("d({f}) leaves degree {}", k + 1))
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            matrices.push(rows.into_iter().flatten().collect());
        }
        Ok(CochainComplex {
            arity: n,
            convention: conv,
            degrees,
            matrices,
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Coordinates::len).collect()
    }

    /// Ranks of `d_k` for every degree `k`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.matrices.par_iter().map(|m| rank(m.iter().cloned())).collect();
        r.push(0);
        r
    }

    pub fn betti(&self) -> Vec<usize> {
        let ranks = self.ranks();
        self.dims()
            .iter()
            .enumerate()
            .map(|(k, &dim)| dim - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
            .collect()
    }

    pub fn euler_char(&self) -> i64 {
        self.dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Writes `d_k.triplets` files with lines `row col numerator denominator`.
    pub fn dump_matrices(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        for (k, m) in self.matrices.iter().enumerate() {
            let mut out = io::BufWriter::new(fs::File::create(dir.join(format!("d_{k}.triplets")))?);
            writeln!(out, "# arity {} {} d_{k}: rows index degree {k}, cols degree {}", self.arity, self.convention, k + 1)?;
            for (i, row) in m.iter().enumerate() {
                for (j, v) in row {
                    writeln!(out, "{i} {j} {v} 1")?;
                }
            }
        }
        Ok(())
    }
}

pub fn betti(n: usize, conv: Convention) -> Result<Vec<usize>> {
    Ok(CochainComplex::build(n, conv)?.betti())
}

/// `sum_k (-1)^k dim FRG_k(n)`.
pub fn euler_char(n: usize) -> Result<i64> {
    if n > DEFAULT_CAP {
        return Err(Error::ArityTooLarge { n, cap: DEFAULT_CAP });
    }
    let dims = basis_by_degree(n, Convention::DgComGreg, DEFAULT_CAP)?;
    Ok(dims
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) })
        .sum())
}

/// A basis of the degree-zero cocycles of the reduced dg operad in arity
/// `n`, as combinations of forests of rooted hypertrees.
pub fn h0_basis(n: usize) -> Result<Vec<LinComb>> {
    let c = CochainComplex::build(n, Convention::DgComGreg)?;
    let width = c.degrees.get(1).map_or(0, Coordinates::len);
    let rows: Vec<SparseRow> = match c.matrices.first() {
        Some(m) => m.clone(),
        None => vec![Vec::new(); c.degrees[0].len()],
    };
    Ok(kernel(&rows, width).iter().map(|v| c.degrees[0].lincomb(v)).collect())
}

/// `d(d(f)) = 0` for every basis element of arity `n`; returns failures.
pub fn check_d_squared(n: usize, conv: Convention) -> Result<Vec<String>> {
    let basis = enumerate_capped(conv.family(), n, DEFAULT_CAP)?;
    let failures: Vec<Vec<String>> = basis
        .par_chunks(64)
        .map(|chunk| {
            let mut d = Differential::new(conv);
            let mut bad = Vec::new();
            for f in chunk {
                let dd = d.apply_forest(f).and_then(|v| d.apply(&v));
                match dd {
                    Ok(v) if v.is_zero() => {}
                    Ok(v) => bad.push(format!("d^2({f}) = {v}")),
                    Err(e) => bad.push(format!("d^2({f}): {e}")),
                }
            }
            bad
        })
        .collect();
    Ok(failures.into_iter().flatten().collect())
}

/// `d(s ∘_i t) - d(s) ∘_i t - (-1)^{|s|} s ∘_i d(t)`.
pub fn leibniz_defect(s: &HyperForest, i: u32, t: &HyperForest, conv: Convention) -> Result<LinComb> {
    let mut d = Differential::new(conv);
    let (sv, tv) = (LinComb::from_forest(s.clone()), LinComb::from_forest(t.clone()));
    let lhs = d.apply(&compose_reduced(&sv, i, &tv, Signs::Koszul)?)?;
    let first = compose_reduced(&d.apply(&sv)?, i, &tv, Signs::Koszul)?;
    let second = compose_reduced(&sv, i, &d.apply(&tv)?, Signs::Koszul)?;
    let sign = if s.greg_weight().is_multiple_of(2) { 1 } else { -1 };
    let mut rhs = first;
    rhs.add_scaled(&second, &crate::reduce::int(sign));
    Ok(&lhs - &rhs)
}

/// Random Leibniz checks with `s`, `t` of arity at most `max_n`.
pub fn check_leibniz(max_n: usize, trials: usize, seed: u64, conv: Convention) -> Result<Vec<String>> {
    let bases: Vec<Vec<HyperForest>> = (1..=max_n)
        .map(|n| enumerate_capped(conv.family(), n, DEFAULT_CAP))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let s = &bases[rng.gen_range(0..max_n)];
        let s = &s[rng.gen_range(0..s.len())];
        let t = &bases[rng.gen_range(0..max_n)];
        let t = &t[rng.gen_range(0..t.len())];
        let i = rng.gen_range(1..=s.arity() as u32);
        let defect = leibniz_defect(s, i, t, conv)?;
        if !defect.is_zero() {
            failures.push(format!("s = {s}, i = {i}, t = {t}: defect {defect}"));
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_betti_numbers() {
        assert_eq!(betti(1, Convention::DgComGreg).unwrap(), vec![1]);
        assert_eq!(betti(2, Convention::DgComGreg).unwrap(), vec![2, 0]);
        assert_eq!(betti(3, Convention::DgComGreg).unwrap(), vec![9, 0, 0]);
        assert_eq!(betti(3, Convention::GregMinusOne).unwrap(), vec![2, 0, 0]);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_char(1).unwrap(), 1);
        assert_eq!(euler_char(2).unwrap(), 2);
        assert_eq!(euler_char(3).unwrap(), 9);
    }

    #[test]
    fn arity_two_cocycles() {
        let basis = h0_basis(2).unwrap();
        assert_eq!(basis.len(), 2);
        let strings: Vec<String> = basis.iter().map(|v| v.to_string()).collect();
        assert!(strings.contains(&"1<2> - 2<1>".to_string()) || strings.contains(&"-1<2> + 2<1>".to_string()));
        assert!(strings.contains(&"{1,2}".to_string()));
    }
}
