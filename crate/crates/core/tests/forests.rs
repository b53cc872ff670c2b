use std::collections::HashSet;

use hyperop_core::operad::act_forest;
use hyperop_core::shape::{height, reconstruct, shape_decompose};
use hyperop_core::{count_bigraded, enumerate, Family, HyperForest, Node, Perm, Signs};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f(s: &str) -> HyperForest {
    HyperForest::parse(s).unwrap()
}

/// Writes a forest with roots, edges and hyperedge members in random order.
fn shuffled(forest: &HyperForest, rng: &mut ChaCha8Rng) -> String {
    fn node(n: &Node, rng: &mut ChaCha8Rng) -> String {
        let mut s = match n.label() {
            Some(l) => l.to_string(),
            None => "B".to_string(),
        };
        let mut groups: Vec<String> = n
            .groups
            .iter()
            .map(|g| {
                let mut members: Vec<String> = g.iter().map(|m| node(m, rng)).collect();
                members.shuffle(rng);
                format!("<{}>", members.join(","))
            })
            .collect();
        groups.shuffle(rng);
        s.extend(groups);
        s
    }
    let mut roots: Vec<String> = forest.roots().iter().map(|r| node(r, rng)).collect();
    roots.shuffle(rng);
    if roots.len() == 1 {
        roots.pop().unwrap()
    } else {
        format!("{{{}}}", roots.join(","))
    }
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

fn permutation(n: usize, seed: u64) -> Perm {
    let mut images: Vec<u32> = (1..=n as u32).collect();
    images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Perm(images)
}

#[test]
fn arity_two_elements() {
    let greg: Vec<String> = enumerate(Family::Greg, 2).unwrap().iter().map(|t| t.to_string()).collect();
    assert_eq!(greg, ["1<2>", "2<1>", "B<1><2>"]);
    let fh: Vec<String> = enumerate(Family::FH, 2).unwrap().iter().map(|t| t.to_string()).collect();
    assert_eq!(fh, ["1<2>", "{1,2}", "2<1>"]);
    assert_eq!(f("B<2><1>"), f("B<1><2>"));
    assert_eq!(f("1<3><2>"), f("1<2><3>"));
}

#[test]
fn bigraded_counts_in_arity_two() {
    let fh = count_bigraded(Family::FH, 2).unwrap();
    assert_eq!((fh.get(2, 0, 0), fh.get(2, 1, 0), fh.total()), (2, 1, 3));
    let fg = count_bigraded(Family::FG, 2).unwrap();
    assert_eq!((fg.get(2, 0, 0), fg.get(2, 1, 0), fg.get(2, 0, 1), fg.total()), (2, 1, 1, 4));
    assert_eq!(enumerate(Family::FH, 3).unwrap().len(), 19);
    assert_eq!(enumerate(Family::Greg, 3).unwrap().len(), 22);
}

#[test]
fn family_slices() {
    for n in 1..=4 {
        let fg: HashSet<HyperForest> = enumerate(Family::FG, n).unwrap().into_iter().collect();
        let frg = enumerate(Family::FRG, n).unwrap();
        assert!(frg.iter().all(|t| fg.contains(t) && t.is_reduced()));
        let greg: HashSet<HyperForest> = fg.iter().filter(|t| Family::Greg.admits(t)).cloned().collect();
        assert_eq!(greg, enumerate(Family::Greg, n).unwrap().into_iter().collect());
        let fh: HashSet<HyperForest> = fg.iter().filter(|t| t.black_count() == 0).cloned().collect();
        assert_eq!(fh, enumerate(Family::FH, n).unwrap().into_iter().collect());
        let rt: HashSet<HyperForest> = fh.iter().filter(|t| Family::RT.admits(t)).cloned().collect();
        assert_eq!(rt.len(), n.pow(n as u32 - 1));
    }
}

#[test]
fn height_examples() {
    assert_eq!(height(&f("1<2,3>")), 1);
    assert_eq!(height(&f("{1,2}")), 0);
    for t in enumerate(Family::Greg, 4).unwrap() {
        assert_eq!(height(&t), 0);
    }
}

#[test]
fn shape_examples() {
    let d = shape_decompose(&f("1<2>")).unwrap();
    assert_eq!(d.partition(), vec![vec![1, 2]]);
    assert_eq!(d.subtrees, vec![f("1<2>")]);
    let d = shape_decompose(&f("1<2,3>")).unwrap();
    assert_eq!(d.partition(), vec![vec![1], vec![2], vec![3]]);
}

/// `|FRG(n)|` is the sum over shapes of the number of ways to fill each
/// part `E` with a Greg tree on `E`.
#[test]
fn shapes_times_greg_trees_count_reduced_forests() {
    let greg: Vec<usize> = (0..=5).map(|k| if k == 0 { 0 } else { enumerate(Family::Greg, k).unwrap().len() }).collect();
    for n in 1..=5 {
        let frg = enumerate(Family::FRG, n).unwrap();
        let mut shapes = HashSet::new();
        for t in &frg {
            let d = shape_decompose(t).unwrap();
            let p = d.partition();
            shapes.insert((d.shape, p));
        }
        let total: usize = shapes
            .iter()
            .map(|(_, p)| p.iter().map(|e| greg[e.len()]).product::<usize>())
            .sum();
        assert_eq!(total, frg.len(), "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_ignores_written_order(fam in family(), n in 1usize..=4, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let all = enumerate(fam, n).unwrap();
        let t = pick.get(&all);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = shuffled(t, &mut rng);
        let back = HyperForest::parse(&text).unwrap();
        prop_assert_eq!(&back, t);
        prop_assert_eq!(HyperForest::parse(&back.to_string()).unwrap(), back);
    }

    #[test]
    fn relabeling_is_a_graded_bijection(fam in family(), n in 1usize..=4, seed in any::<u64>()) {
        let all = enumerate(fam, n).unwrap();
        let sigma = permutation(n, seed);
        let mut image = HashSet::new();
        for t in &all {
            let v = act_forest(&sigma, t, Signs::Ignore);
            prop_assert_eq!(v.len(), 1);
            let u = v.forests().next().unwrap().clone();
            prop_assert!(fam.admits(&u));
            prop_assert_eq!(u.hypertree_weight(), t.hypertree_weight());
            prop_assert_eq!(u.greg_weight(), t.greg_weight());
            prop_assert_eq!(height(&u), height(t));
            image.insert(u);
        }
        prop_assert_eq!(image.len(), all.len());
    }

    #[test]
    fn shapes_rebuild_their_forest(n in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let all = enumerate(Family::FRG, n).unwrap();
        let t = pick.get(&all);
        let d = shape_decompose(t).unwrap();
        prop_assert!(d.subtrees.iter().all(|m| Family::Greg.admits(m)));
        prop_assert_eq!(&reconstruct(&d.shape, &d.subtrees).unwrap(), t);
    }
}
