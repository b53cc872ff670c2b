use hyperop_series::{BigRational, Poly, PowerSeries};
use num::BigInt;
use proptest::prelude::*;

const ORDER: usize = 6;

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, 0u32..2, 0u32..2), 0..3).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, du, dv)| {
            &acc + &Poly::monomial(BigRational::from_integer(BigInt::from(c)), du, dv)
        })
    })
}

fn series_without_constant() -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(small_poly(), ORDER).prop_map(|cs| {
        PowerSeries::from_fn(ORDER, |n| if n == 0 { Poly::zero() } else { cs[n - 1].clone() })
    })
}

fn revertible() -> impl Strategy<Value = PowerSeries> {
    (1i64..=4, series_without_constant()).prop_map(|(c1, s)| {
        let mut cs = s.coeffs().to_vec();
        cs[1] = Poly::from_int(c1);
        PowerSeries::from_fn(ORDER, |n| cs[n].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn log_inverts_exp(s in series_without_constant()) {
        prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
    }

    #[test]
    fn reverse_is_two_sided(f in revertible()) {
        let g = f.reverse().unwrap();
        let t = PowerSeries::t(ORDER);
        prop_assert_eq!(f.compose(&g).unwrap(), t.clone());
        prop_assert_eq!(g.compose(&f).unwrap(), t);
        prop_assert_eq!(g, f.reverse_lagrange().unwrap());
    }

    #[test]
    fn exp_turns_sums_into_products(a in series_without_constant(), b in series_without_constant()) {
        let lhs = (&a + &b).exp().unwrap();
        let rhs = &a.exp().unwrap() * &b.exp().unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
