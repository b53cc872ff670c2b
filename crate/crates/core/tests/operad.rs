use hyperop_core::axioms::check_axioms;
use hyperop_core::operad::gens;
use hyperop_core::reduce::{redexes, rewrite, Reducer, Rewriter, Strategy as Order};
use hyperop_core::relations::{check_relations, eval_str, Model, PRESENTATION_IDS};
use hyperop_core::shape::rewrite_height;
use hyperop_core::suboperad::suboperad_dims;
use hyperop_core::{act, compose, insert_labeled, compose_lin, compose_reduced, enumerate, reduce, Family, HyperForest, LinComb, Perm, Signs};
use proptest::prelude::*;

fn f(s: &str) -> HyperForest {
    HyperForest::parse(s).unwrap()
}

fn v(s: &str) -> LinComb {
    LinComb::from_forest(f(s))
}

/// Insertion on disjoint label sets.
fn ins(s: &str, i: u32, t: &str) -> String {
    let (s, t) = (HyperForest::parse_labeled(s).unwrap(), HyperForest::parse_labeled(t).unwrap());
    insert_labeled(&s, i, &t, Signs::Ignore).unwrap().to_string()
}

#[test]
fn insertion_examples() {
    assert_eq!(ins("1<3>", 1, "1<2>"), "1<2<3>> + 1<2><3>");
    assert_eq!(ins("1<3>", 1, "{1,2}"), "{1<3>,2} + {1,2<3>}");
    assert_eq!(ins("1<2>", 2, "{2,3}"), "1<2,3>");
    let c = |s: &str, i, t: &str| compose(&f(s), i, &f(t), Signs::Ignore).unwrap().to_string();
    assert_eq!(c("1<2>", 1, "1<2>"), "1<2<3>> + 1<2><3>");
    assert_eq!(c("B<1><2<3>>", 2, "1"), "B<1><2<3>>");
    assert!(compose(&f("1<2>"), 3, &f("1"), Signs::Ignore).is_err());
}

#[test]
fn symmetric_group_examples() {
    let swap = Perm::cycle(2, &[1, 2]);
    assert_eq!(act(&swap, &gens::x(), Signs::Ignore), gens::y());
    assert_eq!(act(&swap, &gens::c(), Signs::Ignore), gens::c());
    let id = Perm::identity(3);
    let u = &v("1<2,3>") + &v("B<1><2<3>>");
    assert_eq!(act(&id, &u, Signs::Koszul), u);
}

#[test]
fn sequential_axiom_example() {
    let c = |a: &LinComb, i, b: &LinComb| compose_lin(a, i, b, Signs::Ignore).unwrap();
    let (x, p) = (v("1<2>"), v("{1,2}"));
    assert_eq!(c(&c(&x, 1, &x), 2, &p), c(&x, 1, &c(&x, 2, &p)));
    // Parallel: the second input of the outer tree.
    assert_eq!(c(&c(&x, 1, &x), 3, &p), c(&c(&x, 2, &p), 1, &x));
}

#[test]
fn reduction_examples() {
    let r = reduce(&v("B<1,2><3>"), Signs::Ignore);
    assert_eq!(r.to_string(), "{1,B<2><3>} + {2,B<1><3>}");
    for n in 1..=4 {
        for t in enumerate(Family::FRG, n).unwrap() {
            assert_eq!(reduce(&LinComb::from_forest(t.clone()), Signs::Koszul), LinComb::from_forest(t));
        }
    }
    let fg = Model {
        family: Family::FG,
        reduced: false,
    };
    let lhs = reduce(&eval_str("(o1 g c)", fg).unwrap(), Signs::Ignore);
    let rhs = eval_str("(+ (o2 c g) (perm (2 3) (o1 c g)))", fg).unwrap();
    assert_eq!(lhs, rhs);
    let c = &compose_reduced(&gens::g(), 1, &gens::c(), Signs::Ignore).unwrap() - &rhs;
    assert!(c.is_zero());
}

#[test]
fn pre_lie_symmetry_in_the_reduced_operad() {
    let x = gens::x();
    let a = &compose_reduced(&x, 1, &x, Signs::Ignore).unwrap() - &compose_reduced(&x, 2, &x, Signs::Ignore).unwrap();
    assert_eq!(act(&Perm::cycle(3, &[2, 3]), &a, Signs::Ignore), a);
}

#[test]
fn insertion_coefficients_are_nonnegative_integers() {
    let small: Vec<HyperForest> = (1..=3).flat_map(|n| enumerate(Family::FG, n).unwrap()).collect();
    for s in &small {
        for t in &small {
            for i in 1..=s.arity() as u32 {
                let r = compose(s, i, t, Signs::Ignore).unwrap();
                assert!(r.has_integer_coeffs() && r.all_nonnegative(), "{s} o{i} {t} = {r}");
                assert!(reduce(&r, Signs::Koszul).has_integer_coeffs());
            }
        }
    }
}

#[test]
fn presentations() {
    for id in PRESENTATION_IDS {
        assert!(check_relations(id).unwrap(), "{id}");
    }
}

#[test]
fn suboperads() {
    let l = &gens::x() - &gens::y();
    assert_eq!(suboperad_dims(&[gens::x()], Family::RT, 4).unwrap(), vec![1, 2, 9, 64]);
    assert_eq!(suboperad_dims(std::slice::from_ref(&l), Family::FH, 4).unwrap(), vec![1, 1, 2, 6]);
    assert_eq!(suboperad_dims(&[l, gens::c()], Family::FH, 5).unwrap(), vec![1, 2, 9, 64, 625]);
}

#[test]
fn axioms_for_every_family() {
    for family in Family::ALL {
        let r = check_axioms(family, 4, 150, 11, Signs::Ignore).unwrap();
        assert!(r.passed(), "{r:?}");
    }
    for family in [Family::Greg, Family::FG, Family::FRG] {
        let r = check_axioms(family, 4, 150, 12, Signs::Koszul).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

fn fg_element() -> impl Strategy<Value = LinComb> {
    let basis: Vec<HyperForest> = (1..=4).flat_map(|n| enumerate(Family::FG, n).unwrap()).collect();
    prop::sample::select(basis).prop_map(LinComb::from_forest)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn reduction_is_confluent(u in fg_element(), seed in any::<u64>(), koszul in any::<bool>()) {
        let signs = if koszul { Signs::Koszul } else { Signs::Ignore };
        let a = Rewriter::new(Order::Outermost, signs).normal_form(&u);
        let b = Rewriter::new(Order::Innermost, signs).normal_form(&u);
        let c = Rewriter::new(Order::Random(seed), signs).normal_form(&u);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
        prop_assert_eq!(&a, &Reducer::new(signs).reduce(&u));
        prop_assert!(a.forests().all(HyperForest::is_reduced));
    }

    #[test]
    fn rewriting_lowers_the_height(u in fg_element()) {
        for t in u.forests() {
            for r in redexes(t) {
                let h = rewrite_height(t);
                prop_assert!(rewrite(t, &r, Signs::Koszul).forests().all(|g| rewrite_height(g) < h));
            }
        }
    }
}
