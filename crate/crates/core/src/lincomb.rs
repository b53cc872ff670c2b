use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::forest::HyperForest;

/// A finite formal linear combination of canonical forests with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<HyperForest, BigRational>,
}

impl LinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_forest(f: HyperForest) -> Self {
        Self::from_term(f, BigRational::one())
    }

    pub fn from_term(f: HyperForest, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(f, c);
        out
    }

    pub fn add_term(&mut self, f: HyperForest, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(f) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_int(&mut self, f: HyperForest, c: i64) {
        self.add_term(f, BigRational::from_integer(BigInt::from(c)));
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &BigRational) {
        for (f, x) in &other.terms {
            self.add_term(f.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, f: &HyperForest) -> BigRational {
        self.terms.get(f).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HyperForest, &BigRational)> {
        self.terms.iter()
    }

    pub fn forests(&self) -> impl Iterator<Item = &HyperForest> {
        self.terms.keys()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear(&self, mut f: impl FnMut(&HyperForest) -> LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&HyperForest) -> bool) -> LinComb {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(f, _)| keep(f))
                .map(|(f, c)| (f.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl FromIterator<(HyperForest, BigRational)> for LinComb {
    fn from_iter<I: IntoIterator<Item = (HyperForest, BigRational)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (f, c) in iter {
            out.add_term(f, c);
        }
        out
    }
}

impl Add<&LinComb> for &LinComb {
    type Output = LinComb;
    fn add(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigRational::one());
        out
    }
}

impl Sub<&LinComb> for &LinComb {
    type Output = LinComb;
    fn sub(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        out
    }
}

impl Neg for &LinComb {
    type Output = LinComb;
    fn neg(self) -> LinComb {
        self.scale(&-BigRational::one())
    }
}

impl From<HyperForest> for LinComb {
    fn from(f: HyperForest) -> Self {
        LinComb::from_forest(f)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (forest, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{forest}")?;
        }
        Ok(())
    }
}
