use ordagg::analysis::*;
use ordagg::evaluator::random_unrooted_tree;
use ordagg::generator::{generate_instance, Batch, Counts, GeneratorConfig};
use ordagg::graph::{SignedGraph, DEFAULT_CC_WEIGHT};
use ordagg::model::*;
use ordagg::reductions::unrooted_caterpillar_from_ranking;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn uniform(m: usize, eps: f64) -> Counts {
    Counts::Uniform(Batch { m, eps })
}

fn mixed(m1: usize, e1: f64, m2: usize, e2: f64) -> Counts {
    Counts::Mixed { forbidden: Batch { m: m1, eps: e1 }, desired: Batch { m: m2, eps: e2 } }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-9
}

#[test]
fn bound_values() {
    assert!(close(theoretical_bound(Kind::Mas, &uniform(1000, 0.0)).unwrap(), 642.0));
    assert!(close(theoretical_bound(Kind::Mas, &uniform(1000, 0.1)).unwrap(), 599.15));
    assert!(close(theoretical_bound(Kind::Quartets, &mixed(1000, 0.0, 1000, 0.0)).unwrap(), 672.0 + 425.0));
    assert!(close(theoretical_bound(Kind::Quartets, &mixed(1000, 1.0, 0, 0.0)).unwrap(), 376.0));
    assert!(close(theoretical_bound(Kind::Quartets, &mixed(0, 0.0, 1000, 1.0)).unwrap(), 164.0));
    let t = theoretical_bound(Kind::Triplets, &mixed(1000, 0.0, 1000, 0.0)).unwrap();
    assert!((t / 1000.0 - (0.78045 + 0.642193)).abs() < 1e-4);
    assert!(close(theoretical_bound(Kind::Btw, &uniform(1000, 0.0)).unwrap(), 402.0));
    assert!(close(theoretical_bound(Kind::NonBtw, &uniform(1000, 0.0)).unwrap(), 845.0));
    assert!(close(theoretical_bound(Kind::Cc, &uniform(1000, 0.0)).unwrap(), 822.6));
}

#[test]
fn bound_rejects_bad_input() {
    assert!(theoretical_bound(Kind::Mas, &mixed(1, 0.0, 1, 0.0)).is_err());
    assert!(theoretical_bound(Kind::Triplets, &uniform(1, 0.0)).is_err());
    assert!(theoretical_bound(Kind::Btw, &uniform(1, 1.5)).is_err());
    assert!(theoretical_bound(Kind::Quartets, &mixed(1, -0.1, 1, 0.0)).is_err());
}

#[test]
fn bounds_do_not_increase_with_noise() {
    for kind in Kind::ALL {
        let mut prev = f64::INFINITY;
        for i in 0..=20 {
            let e = i as f64 / 20.0;
            let counts = if kind.is_mixed() { mixed(500, e, 700, e) } else { uniform(1200, e) };
            let b = theoretical_bound(kind, &counts).unwrap();
            assert!(b <= prev + 1e-12);
            prev = b;
        }
    }
}

#[test]
fn cut_fractions() {
    let c = |x| BalanceParam::new(x).unwrap();
    assert!(close(expected_cut_fraction(ArityProfile::Pairs, c(0.5)), 0.5));
    assert!(close(expected_cut_fraction(ArityProfile::QuartetSplit, c(1.0 / 3.0)), 8.0 / 27.0));
    assert!(close(expected_cut_fraction(ArityProfile::Triples, c(1.0 / 3.0)), 2.0 / 3.0));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..100 {
        let x = rng.random_range(1.0 / 3.0..=2.0 / 3.0);
        assert!(close(expected_cut_fraction(ArityProfile::Triples, c(x)), 3.0 * x * (1.0 - x)));
        assert!(expected_cut_fraction(ArityProfile::QuartetSplit, c(x)) >= 8.0 / 27.0 - 1e-12);
    }
    assert!(BalanceParam::new(0.3).is_err());
    assert!(BalanceParam::new(0.7).is_err());
}

#[test]
fn cut_fractions_match_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = 0.4;
    let draws = 200_000;
    let (mut pairs, mut triples, mut fours) = (0, 0, 0);
    for _ in 0..draws {
        let s: [bool; 4] = std::array::from_fn(|_| rng.random_bool(c));
        pairs += usize::from(s[0] != s[1]);
        triples += usize::from(!(s[0] == s[1] && s[1] == s[2]));
        fours += usize::from(s[0] == s[1] && s[2] == s[3] && s[0] != s[2]);
    }
    let p = BalanceParam::new(c).unwrap();
    let f = |k: usize| k as f64 / draws as f64;
    assert!((f(pairs) - expected_cut_fraction(ArityProfile::Pairs, p)).abs() < 0.005);
    assert!((f(triples) - expected_cut_fraction(ArityProfile::Triples, p)).abs() < 0.005);
    // Either side may hold the first pair.
    assert!((f(fours) - expected_cut_fraction(ArityProfile::QuartetSplit, p) / 3.0).abs() < 0.005);
}

#[test]
fn median_cut_sizes() {
    let r6 = Ranking::new(vec![5, 4, 3, 2, 1, 0]).unwrap();
    let s = median_cut(&r6);
    assert_eq!(s, vec![false, false, false, true, true, true]);
    assert_eq!(median_cut(&Ranking::identity(7)).iter().filter(|&&x| x).count(), 4);
    assert!(median_cut(&Ranking::identity(0)).is_empty());
}

#[test]
fn median_cut_weight_in_the_planted_model() {
    for eps in [0.0, 0.1, 0.3] {
        let mut total = 0.0;
        for seed in 0..5 {
            let inst = generate_instance(&GeneratorConfig::uniform(Kind::Mas, 300, 20_000, eps, seed)).unwrap();
            let Some(Solution::Ranking(r)) = &inst.ground_truth else { panic!() };
            total += SignedGraph::build(&inst, DEFAULT_CC_WEIGHT).cut_weight(&median_cut(r)) / 20_000.0;
        }
        let expected = 0.5 * (1.0 - eps) - 0.5 * eps;
        assert!((total / 5.0 - expected).abs() < 0.02, "{eps}");
    }
}

fn check_balanced(t: &UnrootedTree) {
    let n = t.n_leaves();
    let e = balanced_edge(t);
    assert!(t.edges().contains(&e));
    let side = edge_cut(t, e);
    let s = side.iter().filter(|&&x| x).count();
    let (lo, hi) = balanced_bounds(n);
    assert!((lo..=hi).contains(&s) && (lo..=hi).contains(&(n - s)), "n={n} s={s}");
}

#[test]
fn balanced_edges() {
    let quartet = unrooted_caterpillar_from_ranking(&Ranking::identity(4)).unwrap();
    let (u, v) = balanced_edge(&quartet);
    assert!(!quartet.is_leaf(u) && !quartet.is_leaf(v));
    check_balanced(&unrooted_caterpillar_from_ranking(&Ranking::identity(9)).unwrap());
    assert_eq!(balanced_bounds(9), (3, 6));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let n = rng.random_range(4..=200);
        check_balanced(&random_unrooted_tree(n, &mut rng));
    }
}

#[test]
fn edge_cut_is_the_far_side() {
    let t = unrooted_caterpillar_from_ranking(&Ranking::identity(5)).unwrap();
    for (u, v) in t.edges() {
        let a = edge_cut(&t, (u, v));
        let b = edge_cut(&t, (v, u));
        assert!(a.iter().zip(&b).all(|(x, y)| x != y));
        if t.is_leaf(v) {
            assert_eq!(a.iter().filter(|&&x| x).count(), 1);
            assert!(a[v]);
        }
    }
}

#[test]
fn random_baselines() {
    assert_eq!(random_baseline_fraction(Kind::Mas, &uniform(10, 0.0)), Some(0.5));
    assert_eq!(random_baseline_fraction(Kind::NonBtw, &uniform(10, 0.0)), Some(2.0 / 3.0));
    assert_eq!(random_baseline_fraction(Kind::Triplets, &mixed(10, 0.0, 10, 0.0)), Some(0.5));
    assert_eq!(random_baseline_fraction(Kind::Cc, &uniform(10, 0.0)), None);
    assert_eq!(random_baseline_fraction(Kind::Mas, &uniform(0, 0.0)), None);
}
