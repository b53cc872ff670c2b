use hyperop_core::cohomology::{betti, check_d_squared, check_leibniz, euler_char, h0_basis, leibniz_defect, CochainComplex};
use hyperop_core::differential::{d0, d_shape, d_shape_by_subtrees, differential, differential_lin, Convention};
use hyperop_core::operad::gens;
use hyperop_core::shape::height;
use hyperop_core::suboperad::suboperad_bases;
use hyperop_core::{enumerate, Family, HyperForest, LinComb};
use proptest::prelude::*;

use Convention::{DgComGreg, GregMinusOne};

fn f(s: &str) -> HyperForest {
    HyperForest::parse(s).unwrap()
}

fn d(s: &str, conv: Convention) -> String {
    differential(&f(s), conv).unwrap().to_string()
}

#[test]
fn generator_values() {
    assert_eq!(d("1<2>", DgComGreg), "B<1><2>");
    assert_eq!(d("{1,2}", DgComGreg), "0");
    assert_eq!(d("1<2>", GregMinusOne), "-B<1><2>");
    assert_eq!(d("B<1><2>", DgComGreg), "0");
    assert_eq!(d("B<1><2>", GregMinusOne), "0");
    assert!(differential(&f("1<2,3>"), GregMinusOne).is_err());
}

#[test]
fn degree_goes_up_by_one() {
    for conv in Convention::ALL {
        for t in enumerate(conv.family(), 4).unwrap() {
            for g in differential(&t, conv).unwrap().forests() {
                assert_eq!(g.greg_weight(), t.greg_weight() + 1);
                assert!(conv.family().admits(g), "{t} -> {g}");
            }
        }
    }
}

#[test]
fn d_squared_vanishes() {
    for conv in Convention::ALL {
        for n in 1..=4 {
            assert!(check_d_squared(n, conv).unwrap().is_empty(), "{conv} n = {n}");
        }
    }
}

#[test]
fn leibniz_examples() {
    let defect = leibniz_defect(&f("1<2>"), 2, &f("{1,2}"), DgComGreg).unwrap();
    assert!(defect.is_zero(), "{defect}");
    for t in enumerate(Family::FRG, 3).unwrap() {
        assert!(leibniz_defect(&f("1"), 1, &t, DgComGreg).unwrap().is_zero());
    }
    assert!(check_leibniz(3, 200, 5, DgComGreg).unwrap().is_empty());
    assert!(check_leibniz(3, 200, 6, GregMinusOne).unwrap().is_empty());
}

#[test]
fn differential_respects_the_height() {
    for n in 1..=4 {
        for t in enumerate(Family::FRG, n).unwrap() {
            let h = height(&t);
            let v = differential(&t, DgComGreg).unwrap();
            assert!(v.forests().all(|g| height(g) <= h), "{t}");
            let low = &v - &d0(&t, DgComGreg).unwrap();
            assert!(low.forests().all(|g| height(g) < h));
        }
    }
}

/// On Greg trees the two differentials agree up to sign on the terms that
/// are trees; the reduced one also grafts trees on new black roots.
#[test]
fn greg_trees_in_both_conventions() {
    for n in 1..=4 {
        for t in enumerate(Family::Greg, n).unwrap() {
            let greg = differential(&t, GregMinusOne).unwrap();
            let dg = differential(&t, DgComGreg).unwrap();
            let trees = dg.filter(|g| g.roots().len() == 1);
            assert_eq!(trees, -&greg, "{t}");
        }
    }
}

#[test]
fn shape_part_is_the_differential_of_the_subtrees() {
    for n in 1..=5 {
        for t in enumerate(Family::FRG, n).unwrap() {
            let v = d_shape(&t).unwrap();
            assert_eq!(v, d_shape_by_subtrees(&t).unwrap(), "{t}");
            let mut twice = LinComb::zero();
            for (g, c) in v.iter() {
                twice.add_scaled(&d_shape(g).unwrap(), c);
            }
            assert!(twice.is_zero(), "{t}");
        }
    }
}

#[test]
fn cohomology_in_small_arities() {
    assert_eq!(betti(2, DgComGreg).unwrap(), vec![2, 0]);
    assert_eq!(betti(3, DgComGreg).unwrap(), vec![9, 0, 0]);
    assert_eq!(betti(4, DgComGreg).unwrap(), vec![64, 0, 0, 0]);
    assert_eq!(betti(3, GregMinusOne).unwrap(), vec![2, 0, 0]);
    assert_eq!(betti(4, GregMinusOne).unwrap(), vec![6, 0, 0, 0]);
    assert_eq!(euler_char(1).unwrap(), 1);
    assert_eq!(euler_char(2).unwrap(), 2);
    assert_eq!(euler_char(4).unwrap(), 64);
    let c = CochainComplex::build(2, DgComGreg).unwrap();
    assert_eq!(c.dims(), vec![3, 1]);
}

#[test]
fn cocycles_are_the_generated_suboperad() {
    assert_eq!(h0_basis(1).unwrap(), vec![gens::unit()]);
    let l = &gens::x() - &gens::y();
    let sub = suboperad_bases(&[l, gens::c()], Family::FH, 4).unwrap();
    for n in 1..=4 {
        let basis = h0_basis(n).unwrap();
        assert_eq!(basis.len(), n.pow(n as u32 - 1));
        for v in &sub[n - 1] {
            assert!(differential_lin(v, DgComGreg).unwrap().is_zero(), "{v}");
        }
        assert_eq!(sub[n - 1].len(), basis.len());
    }
}

fn frg_forest(max_n: usize) -> impl Strategy<Value = HyperForest> {
    (1..=max_n).prop_flat_map(|n| prop::sample::select(enumerate(Family::FRG, n).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn leibniz_on_random_pairs(s in frg_forest(3), t in frg_forest(3), pick in any::<prop::sample::Index>()) {
        let i = pick.index(s.arity()) as u32 + 1;
        prop_assert!(leibniz_defect(&s, i, &t, DgComGreg).unwrap().is_zero());
    }
}
