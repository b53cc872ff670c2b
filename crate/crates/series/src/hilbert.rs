//! Closed-form Hilbert series of the tree and hypertree operads, their
//! Koszul duals, and the implicit species equations behind them.
//!
//! Grading conventions: `t` marks white vertices, `u` the hypertree weight
//! (number of trees minus one plus hyperedge weights), `v` the number of
//! black vertices.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One};

use crate::{Poly, PowerSeries, SeriesError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesId {
    RT,
    Greg,
    FH,
    FG,
    FRG,
    ComPreLie,
    ComPreLieDual,
    ComGreg,
    ComGregDual,
    FMan,
}

impl SeriesId {
    pub const ALL: [SeriesId; 10] = [
        SeriesId::RT,
        SeriesId::Greg,
        SeriesId::FH,
        SeriesId::FG,
        SeriesId::FRG,
        SeriesId::ComPreLie,
        SeriesId::ComPreLieDual,
        SeriesId::ComGreg,
        SeriesId::ComGregDual,
        SeriesId::FMan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesId::RT => "RT",
            SeriesId::Greg => "Greg",
            SeriesId::FH => "FH",
            SeriesId::FG => "FG",
            SeriesId::FRG => "FRG",
            SeriesId::ComPreLie => "ComPreLie",
            SeriesId::ComPreLieDual => "ComPreLie_dual",
            SeriesId::ComGreg => "ComGreg",
            SeriesId::ComGregDual => "ComGreg_dual",
            SeriesId::FMan => "FMan",
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesId {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SeriesId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SeriesError::UnknownSeries(s.to_string()))
    }
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn poly_pow(p: &Poly, k: usize) -> Poly {
    (0..k).fold(Poly::one(), |acc, _| &acc * p)
}

/// `ln(1 + u t) / u`, expanded so that every coefficient is a polynomial in `u`.
fn log_over_u(order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |n| {
        if n == 0 {
            return Poly::zero();
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        Poly::monomial(frac(sign, n as i64), (n - 1) as u32, 0)
    })
}

/// `(exp(a s) - 1) / a = sum_{m >= 1} a^{m-1} s^m / m!`, for `s` without
/// constant term.
fn exp_minus_one_over(s: &PowerSeries, a: &Poly) -> PowerSeries {
    let order = s.order();
    let mut out = PowerSeries::zero(order);
    let mut power = PowerSeries::one(order);
    let mut fact = BigInt::one();
    for m in 1..=order {
        power = &power * s;
        fact *= m;
        let c = poly_pow(a, m - 1).scale(&BigRational::new(BigInt::one(), fact.clone()));
        out = &out + &power.scale(&c);
    }
    out
}

fn exp_of(s: &PowerSeries) -> PowerSeries {
    s.exp().expect("argument has zero constant term")
}

fn konst(order: usize, p: Poly) -> PowerSeries {
    PowerSeries::constant(order, p)
}

/// The closed form of the Hilbert series `id`, truncated at `t^order`.
pub fn hilbert(id: SeriesId, order: usize) -> Result<PowerSeries, SeriesError> {
    let t = PowerSeries::t(order);
    let one = PowerSeries::one(order);
    let v = konst(order, Poly::v());
    let exp_t = exp_of(&t);
    let exp_neg_t = exp_of(&-&t);
    let l = log_over_u(order);
    let at_one = |s: PowerSeries| {
        let one = BigRational::one();
        s.eval_grading(&one, &one)
    };
    // exp(t) - t - 1
    let exp_tail = &(&exp_t - &t) - &one;
    match id {
        SeriesId::RT => (&t * &exp_neg_t).reverse(),
        SeriesId::Greg => (&(&t - &(&v * &exp_tail)) * &exp_neg_t).reverse(),
        SeriesId::FH => (&l * &exp_neg_t).reverse(),
        SeriesId::FG => (&(&l - &(&v * &exp_tail)) * &exp_neg_t).reverse(),
        SeriesId::FRG => {
            let exp_l = exp_of(&l);
            let inner = &(&(&(&v + &one) * &l) + &v) - &(&v * &exp_l);
            (&inner * &exp_neg_t).reverse()
        }
        SeriesId::FMan => (&(&exp_of(&l) - &one) * &exp_neg_t).reverse(),
        SeriesId::ComPreLie => (&at_one(l) * &exp_neg_t).reverse(),
        SeriesId::ComGreg => {
            let ln1p = at_one(l);
            let inner = &(&(&(&ln1p * &exp_neg_t) + &(&t * &exp_neg_t)) + &exp_neg_t) - &one;
            inner.reverse()
        }
        SeriesId::ComPreLieDual => Ok(&minus_ln_one_minus_t(order) * &exp_t),
        SeriesId::ComGregDual => {
            let base = &minus_ln_one_minus_t(order) * &exp_t;
            Ok(&(&(&base + &(&t * &exp_t)) - &exp_t) + &one)
        }
    }
}

/// `-ln(1 - t) = sum t^n / n`.
fn minus_ln_one_minus_t(order: usize) -> PowerSeries {
    PowerSeries::from_fn(order, |n| {
        if n == 0 {
            Poly::zero()
        } else {
            Poly::constant(frac(1, n as i64))
        }
    })
}

/// Checks `f(-g(-t)) = t` through `t^order`, where `f` is the series of an
/// operad and `g` the series of its Koszul dual.
pub fn koszul_check(f: &PowerSeries, g: &PowerSeries, order: usize) -> Result<bool, SeriesError> {
    let f = f.truncate(order);
    let g = g.truncate(order);
    let inner = -&g.negate_variable();
    Ok(f.compose(&inner)? == PowerSeries::t(order))
}

/// `n! [t^n]` of a dual series as integers, indexed from `n = 0`.
pub fn dual_dims(id: SeriesId, order: usize) -> Result<Vec<BigInt>, SeriesError> {
    if !matches!(id, SeriesId::ComPreLieDual | SeriesId::ComGregDual) {
        return Err(SeriesError::UnknownSeries(id.name().to_string()));
    }
    let s = hilbert(id, order)?;
    Ok((0..=order)
        .map(|n| {
            let c = s.egf_coeff(n).as_constant().expect("dual series is ungraded");
            assert!(c.is_integer(), "non-integral dimension");
            c.to_integer()
        })
        .collect())
}

/// Solves the implicit species equation of `id` by fixed-point iteration.
///
/// Writing `T` for connected objects (trees) and `F` for forests,
/// `F = (exp(u T) - 1) / u` in every case, and
///
/// * FH: `T = t exp(F)`
/// * FG: `T = t exp(F) + v (exp(F) - 1 - F)`
/// * FRG: `T = t exp(F) + v (exp(T) - 1 - T)`
///
/// Each iteration fixes at least one more coefficient.
pub fn species_solution(id: SeriesId, order: usize) -> Result<PowerSeries, SeriesError> {
    let t = PowerSeries::t(order);
    let one = PowerSeries::one(order);
    let v = konst(order, Poly::v());
    let black = |s: &PowerSeries| &v * &(&(&exp_of(s) - &one) - s);
    let mut trees = PowerSeries::zero(order);
    for _ in 0..=order {
        let forest = exp_minus_one_over(&trees, &Poly::u());
        let white = &t * &exp_of(&forest);
        trees = match id {
            SeriesId::FH => white,
            SeriesId::FG => &white + &black(&forest),
            SeriesId::FRG => &white + &black(&trees),
            other => return Err(SeriesError::UnknownSeries(other.name().to_string())),
        };
    }
    Ok(exp_minus_one_over(&trees, &Poly::u()))
}
