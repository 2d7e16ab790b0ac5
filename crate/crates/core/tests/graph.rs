use ordagg::generator::{generate_instance, GeneratorConfig};
use ordagg::graph::*;
use ordagg::model::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn single(kind: Kind, n: usize, c: Constraint) -> SignedGraph {
    SignedGraph::build(&Instance::new(kind, n, vec![c]), DEFAULT_CC_WEIGHT)
}

fn subset(n: usize, members: &[usize]) -> Vec<bool> {
    (0..n).map(|i| members.contains(&i)).collect()
}

fn edges(g: &SignedGraph) -> Vec<(usize, usize, f64)> {
    g.edges().iter().map(|e| (e.u, e.v, e.w)).collect()
}

fn random_instance(kind: Kind, rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.random_range(4..16);
    let m = rng.random_range(0..40);
    let eps = rng.random::<f64>();
    let seed = rng.random();
    let cfg = if kind.is_mixed() {
        GeneratorConfig::mixed(kind, n, (m, eps), (rng.random_range(0..40), eps), seed)
    } else {
        GeneratorConfig::uniform(kind, n, m, eps, seed)
    };
    generate_instance(&cfg).unwrap()
}

#[test]
fn precedes_builds_an_arc_pair() {
    let g = single(Kind::Mas, 2, Constraint::precedes(0, 1));
    assert!(g.is_directed());
    assert_eq!(edges(&g), vec![(0, 1, 1.0), (1, 0, -1.0)]);
    assert_eq!(g.w_minus(), 1.0);
    assert_eq!(g.cut_weight(&subset(2, &[0])), 1.0);
    assert_eq!(g.cut_weight(&subset(2, &[1])), -1.0);
    assert_eq!(g.cut_weight(&subset(2, &[])), 0.0);
}

#[test]
fn quartet_and_triplet_gadgets() {
    let (a, b, c, d) = (0, 1, 2, 3);
    let g = single(Kind::Quartets, 4, Constraint::forbidden_quartet(a, b, c, d));
    assert_eq!(g.edges().len(), 6);
    assert_eq!(g.w_minus(), 4.0);
    assert_eq!(g.cut_weight(&subset(4, &[a, b])), -4.0);
    assert_eq!(g.cut_weight(&subset(4, &[a, c])), 2.0);
    let g = single(Kind::Triplets, 3, Constraint::forbidden_triplet(a, b, c));
    assert_eq!(edges(&g), vec![(0, 1, 2.0), (0, 2, -1.0), (1, 2, -1.0)]);
    assert_eq!(g.w_minus(), 2.0);
    let g = single(Kind::Triplets, 3, Constraint::desired_triplet(a, b, c));
    assert_eq!(edges(&g), vec![(0, 1, -2.0), (0, 2, 1.0), (1, 2, 1.0)]);
}

#[test]
fn ordering_and_cc_gadgets() {
    let g = single(Kind::Btw, 3, Constraint::between(0, 1, 2));
    assert_eq!(edges(&g), vec![(0, 1, -1.0), (0, 2, 2.0), (1, 2, -1.0)]);
    let g = single(Kind::NonBtw, 3, Constraint::not_between(0, 1, 2));
    assert_eq!(edges(&g), vec![(0, 1, -2.0), (0, 2, 1.0), (1, 2, 1.0)]);
    let g = single(Kind::Cc, 2, Constraint::cannot_link(0, 1));
    assert_eq!(edges(&g), vec![(0, 1, 1.0)]);
    let inst = Instance::new(Kind::Cc, 2, vec![Constraint::must_link(0, 1)]);
    let g = SignedGraph::build(&inst, LITERATURE_CC_WEIGHT);
    assert_eq!(edges(&g), vec![(0, 1, -3.2735)]);
}

#[test]
fn parallel_edges_aggregate_and_cancel() {
    let inst = Instance::new(Kind::Cc, 3, vec![Constraint::must_link(0, 1), Constraint::cannot_link(0, 1), Constraint::cannot_link(1, 2)]);
    let g = SignedGraph::build(&inst, DEFAULT_CC_WEIGHT);
    assert_eq!(edges(&g), vec![(1, 2, 1.0)]);
    assert_eq!(g.w_minus(), 0.0);
    assert_eq!(g.weight(2, 1), 1.0);
    assert_eq!(g.weight(0, 1), 0.0);
}

#[test]
fn classification_examples() {
    let (a, b, c, d) = (0, 1, 2, 3);
    assert_eq!(classify(&Constraint::between(a, b, c), &subset(3, &[b])), CutStatus::Violated);
    assert_eq!(classify(&Constraint::between(a, b, c), &subset(3, &[a, b])), CutStatus::Postponed);
    assert_eq!(classify(&Constraint::between(a, b, c), &subset(3, &[])), CutStatus::Unaffected);
    assert_eq!(classify(&Constraint::desired_quartet(a, b, c, d), &subset(4, &[a])), CutStatus::Postponed);
    assert_eq!(classify(&Constraint::desired_quartet(a, b, c, d), &subset(4, &[a, d])), CutStatus::Disobeyed);
    assert_eq!(classify(&Constraint::forbidden_triplet(a, b, c), &subset(3, &[a, b])), CutStatus::Obeyed);
    assert_eq!(classify(&Constraint::forbidden_triplet(a, b, c), &subset(3, &[b])), CutStatus::Disobeyed);
    assert_eq!(classify(&Constraint::not_between(a, b, c), &subset(3, &[c])), CutStatus::Satisfied);
    assert_eq!(classify(&Constraint::not_between(a, b, c), &subset(3, &[b])), CutStatus::Postponed);
    assert_eq!(classify(&Constraint::precedes(1, 0), &subset(2, &[1])), CutStatus::Satisfied);
    assert_eq!(classify(&Constraint::must_link(0, 1), &subset(2, &[1])), CutStatus::Violated);
}

#[test]
fn weight_identity_on_random_cuts() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for kind in Kind::ALL {
        for _ in 0..1000 {
            let inst = random_instance(kind, &mut rng);
            let side: Vec<bool> = (0..inst.n).map(|_| rng.random_bool(0.5)).collect();
            let (lhs, rhs) = check_weight_identity(&inst, &side, DEFAULT_CC_WEIGHT);
            assert_eq!(lhs, rhs, "{kind}");
            if kind == Kind::Cc {
                let (lhs, rhs) = check_weight_identity(&inst, &side, LITERATURE_CC_WEIGHT);
                assert!((lhs - rhs).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn mixed_quartets_empty_cut() {
    let cfg = GeneratorConfig::mixed(Kind::Quartets, 10, (30, 0.2), (30, 0.2), 1);
    let inst = generate_instance(&cfg).unwrap();
    assert_eq!(check_weight_identity(&inst, &[false; 10], DEFAULT_CC_WEIGHT), (0.0, 0.0));
}

#[test]
fn directed_cuts_are_not_symmetric() {
    let g = single(Kind::Mas, 2, Constraint::precedes(0, 1));
    assert_ne!(g.cut_weight(&subset(2, &[0])), g.cut_weight(&subset(2, &[1])));
}

#[test]
fn edge_list_export() {
    let g = single(Kind::Mas, 2, Constraint::precedes(0, 1));
    let mut out = Vec::new();
    g.write_edge_list(&mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), "# n=2 directed=true edges=2\n0 1 1\n1 0 -1\n");
}

proptest! {
    #[test]
    fn aggregation_is_linear(seed in any::<u64>(), k in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = Kind::ALL[k];
        let first = random_instance(kind, &mut rng);
        let mut second = random_instance(kind, &mut rng);
        second.n = first.n;
        second.constraints.retain(|c| c.items().iter().all(|&i| i < first.n));
        let mut joined = first.clone();
        joined.constraints.extend(second.constraints.iter().copied());
        let (g1, g2, g) = (
            SignedGraph::build(&first, DEFAULT_CC_WEIGHT),
            SignedGraph::build(&second, DEFAULT_CC_WEIGHT),
            SignedGraph::build(&joined, DEFAULT_CC_WEIGHT),
        );
        for u in 0..first.n {
            for v in 0..first.n {
                if u != v {
                    prop_assert_eq!(g.weight(u, v), g1.weight(u, v) + g2.weight(u, v));
                }
            }
        }
        prop_assert_eq!(g.w_minus(), g.recompute_w_minus());
    }

    #[test]
    fn undirected_cuts_are_symmetric(seed in any::<u64>(), k in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(Kind::ALL[k], &mut rng);
        let g = SignedGraph::build(&inst, DEFAULT_CC_WEIGHT);
        let side: Vec<bool> = (0..inst.n).map(|_| rng.random_bool(0.5)).collect();
        let complement: Vec<bool> = side.iter().map(|s| !s).collect();
        prop_assert_eq!(g.cut_weight(&side), g.cut_weight(&complement));
    }
}
