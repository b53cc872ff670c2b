use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::{Poly, SeriesError};

/// Power series `c_0 + c_1 t + ... + c_N t^N` truncated at order `N`,
/// coefficients in `Q[u, v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Poly>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Poly::one())
    }

    pub fn constant(order: usize, c: Poly) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Poly::one();
        }
        s
    }

    /// Builds a series from a coefficient function `n -> c_n`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Poly) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// Builds a series from the sequence `a_n` of an exponential generating
    /// function, i.e. `c_n = a_n / n!`.
    pub fn from_egf(order: usize, mut a: impl FnMut(usize) -> Poly) -> Self {
        Self::from_fn(order, |n| {
            a(n).scale(&BigRational::new(BigInt::one(), factorial(n)))
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// `n! [t^n]`, the dimension polynomial in arity `n`.
    pub fn egf_coeff(&self, n: usize) -> Poly {
        self.coeffs[n].scale(&BigRational::from_integer(factorial(n)))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Poly::zero());
        Self { coeffs }
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Poly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `t^k`, dropping what falls past the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        Self::from_fn(self.order(), |n| {
            if n >= k {
                self.coeffs[n - k].clone()
            } else {
                Poly::zero()
            }
        })
    }

    pub fn derivative(&self) -> Self {
        Self::from_fn(self.order(), |n| {
            if n < self.order() {
                self.coeffs[n + 1].scale(&rat(n as i64 + 1))
            } else {
                Poly::zero()
            }
        })
    }

    /// Substitutes numbers for the grading variables.
    pub fn eval_grading(&self, u: &BigRational, v: &BigRational) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Poly::constant(c.eval(u, v)))
                .collect(),
        }
    }

    pub fn eval_u(&self, u: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.eval_u(u)).collect(),
        }
    }

    /// `t -> -t`.
    pub fn negate_variable(&self) -> Self {
        Self::from_fn(self.order(), |n| {
            if n % 2 == 1 {
                -&self.coeffs[n]
            } else {
                self.coeffs[n].clone()
            }
        })
    }

    fn constant_term(&self) -> Result<BigRational, SeriesError> {
        self.coeffs[0]
            .as_constant()
            .ok_or_else(|| SeriesError::BadConstantTerm(self.coeffs[0].to_string()))
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term()?;
        if c0.is_zero() {
            return Err(SeriesError::BadConstantTerm("0".into()));
        }
        let inv0 = c0.recip();
        let mut out = Self::zero(self.order());
        out.coeffs[0] = Poly::constant(inv0.clone());
        for n in 1..=self.order() {
            let mut acc = Poly::zero();
            for k in 1..=n {
                acc = &acc + &(&self.coeffs[k] * &out.coeffs[n - k]);
            }
            out.coeffs[n] = (-&acc).scale(&inv0);
        }
        Ok(out)
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm(self.coeffs[0].to_string()));
        }
        // e_n = (1/n) sum_{k=1}^n k s_k e_{n-k}
        let mut out = Self::zero(self.order());
        out.coeffs[0] = Poly::one();
        for n in 1..=self.order() {
            let mut acc = Poly::zero();
            for k in 1..=n {
                acc = &acc + &(&self.coeffs[k].scale(&rat(k as i64)) * &out.coeffs[n - k]);
            }
            out.coeffs[n] = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
        }
        Ok(out)
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != Poly::one() {
            return Err(SeriesError::BadConstantTerm(self.coeffs[0].to_string()));
        }
        // l_n = s_n - (1/n) sum_{k=1}^{n-1} k l_k s_{n-k}
        let mut out = Self::zero(self.order());
        for n in 1..=self.order() {
            let mut acc = Poly::zero();
            for k in 1..n {
                acc = &acc + &(&out.coeffs[k].scale(&rat(k as i64)) * &self.coeffs[n - k]);
            }
            out.coeffs[n] =
                &self.coeffs[n] - &acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
        }
        Ok(out)
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm(inner.coeffs[0].to_string()));
        }
        // Horner from the top coefficient.
        let mut acc = Self::zero(self.order());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(self.order(), c.clone());
        }
        Ok(acc)
    }

    fn check_revertible(&self) -> Result<BigRational, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm(self.coeffs[0].to_string()));
        }
        if self.order() == 0 {
            return Ok(BigRational::one());
        }
        match self.coeffs[1].as_constant() {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(SeriesError::NonUnitLinearTerm),
        }
    }

    /// Compositional inverse by Newton iteration, doubling the number of
    /// correct coefficients per step.
    pub fn reverse(&self) -> Result<Self, SeriesError> {
        let c1 = self.check_revertible()?;
        let order = self.order();
        let t = Self::t(order);
        let mut g = t.scale(&Poly::constant(c1.recip()));
        let deriv = self.derivative();
        let mut correct = 1;
        while correct < order {
            // g <- g - (f(g) - t) / f'(g)
            let residual = &self.compose(&g)? - &t;
            let slope = deriv.compose(&g)?.inverse()?;
            g = &g - &(&residual * &slope);
            correct *= 2;
        }
        Ok(g)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[t^n] rev(f) = (1/n) [z^{n-1}] (z / f(z))^n`.
    pub fn reverse_lagrange(&self) -> Result<Self, SeriesError> {
        self.check_revertible()?;
        let order = self.order();
        // f = z h(z); h has constant term c1.
        let h = Self::from_fn(order, |n| {
            if n < order {
                self.coeffs[n + 1].clone()
            } else {
                Poly::zero()
            }
        });
        let h_inv = h.inverse()?;
        let mut out = Self::zero(order);
        let mut power = Self::one(order);
        for n in 1..=order {
            power = &power * &h_inv;
            out.coeffs[n] = power.coeffs[n - 1]
                .scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
        }
        Ok(out)
    }
}

impl Add<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), rhs.order(), "truncation orders differ");
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), rhs.order(), "truncation orders differ");
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&PowerSeries> for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), rhs.order(), "truncation orders differ");
        let order = self.order();
        let mut out = PowerSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        out
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_series(order: usize, c: &[i64]) -> PowerSeries {
        PowerSeries::from_fn(order, |n| Poly::from_int(c.get(n).copied().unwrap_or(0)))
    }

    #[test]
    fn compose_with_zero_gives_constant() {
        let s = int_series(6, &[3, 1, 4, 1, 5]);
        let z = PowerSeries::zero(6);
        assert_eq!(s.compose(&z).unwrap(), PowerSeries::constant(6, Poly::from_int(3)));
    }

    #[test]
    fn reversion_of_t_exp_minus_t_is_cayley() {
        let order = 10;
        let f = &PowerSeries::t(order) * &(-&PowerSeries::t(order)).exp().unwrap();
        let g = f.reverse().unwrap();
        for n in 1..=order {
            let expected = num::pow(BigInt::from(n), n - 1);
            assert_eq!(g.egf_coeff(n), Poly::constant(BigRational::from_integer(expected)));
        }
    }

    #[test]
    fn newton_and_lagrange_agree() {
        let order = 9;
        let u = PowerSeries::constant(order, Poly::u());
        let v = PowerSeries::constant(order, Poly::v());
        let t = PowerSeries::t(order);
        // f = t - u t^2 + v t^3 + t^5
        let f = &(&(&t - &(&u * &(&t * &t))) + &(&v * &(&t * &(&t * &t)))) + &t.shift(4);
        assert_eq!(f.reverse().unwrap(), f.reverse_lagrange().unwrap());
    }

    #[test]
    fn reverse_rejects_bad_input() {
        let s = int_series(4, &[1, 1]);
        assert!(matches!(s.reverse(), Err(SeriesError::BadConstantTerm(_))));
        let s = int_series(4, &[0, 0, 1]);
        assert_eq!(s.reverse(), Err(SeriesError::NonUnitLinearTerm));
        let s = PowerSeries::t(4).scale(&Poly::u());
        assert_eq!(s.reverse(), Err(SeriesError::NonUnitLinearTerm));
    }

    #[test]
    fn log_needs_unit_constant() {
        assert!(int_series(3, &[2, 1]).log().is_err());
        assert!(int_series(3, &[0, 1]).exp().is_ok());
        assert!(int_series(3, &[1, 1]).exp().is_err());
    }
}
