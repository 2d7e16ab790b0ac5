use ordagg::model::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn from_json<T: serde::de::DeserializeOwned>(s: &str) -> T {
    let mut de = serde_json::Deserializer::from_str(s);
    de.disable_recursion_limit();
    T::deserialize(&mut de).unwrap()
}

fn round_trip<T: serde::Serialize + serde::de::DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let text = serde_json::to_string(x).unwrap();
    let back: T = from_json(&text);
    assert_eq!(&back, x);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

#[test]
fn duplicate_item_is_reported() {
    let inst = Instance::new(Kind::Mas, 5, vec![Constraint::precedes(3, 3)]);
    assert_eq!(inst.validate(), vec!["duplicate item in constraint 0".to_string()]);
}

#[test]
fn well_formed_instance_has_no_violations() {
    let inst = Instance::new(
        Kind::Mas,
        5,
        vec![Constraint::precedes(0, 1), Constraint::precedes(4, 2), Constraint::precedes(3, 1)],
    );
    assert!(inst.validate().is_empty());
}

#[test]
fn illegal_variant_is_reported() {
    let inst = Instance::new(
        Kind::Triplets,
        5,
        vec![
            Constraint::desired_triplet(0, 1, 2),
            Constraint::forbidden_triplet(0, 3, 2),
            Constraint::precedes(0, 1),
        ],
    );
    assert_eq!(inst.validate(), vec!["constraint 2 illegal for kind triplets".to_string()]);
}

#[test]
fn out_of_range_and_non_canonical_are_reported() {
    let inst = Instance::new(Kind::Cc, 3, vec![Constraint::MustLink { a: 2, b: 1 }, Constraint::must_link(0, 7)]);
    let v = inst.validate();
    assert!(v.contains(&"constraint 0 not in canonical form".to_string()));
    assert!(v.contains(&"item 7 out of range in constraint 1".to_string()));
}

#[test]
fn constraint_json_tags() {
    let text = serde_json::to_string(&Constraint::precedes(0, 5)).unwrap();
    assert_eq!(text, r#"{"t":"prec","a":0,"b":5}"#);
    let c: Constraint = serde_json::from_str(r#"{"t":"nbtw","a":1,"b":2,"out":3}"#).unwrap();
    assert_eq!(c, Constraint::not_between(1, 2, 3));
    let c: Constraint = serde_json::from_str(r#"{"t":"dq","a":0,"b":1,"c":2,"d":3}"#).unwrap();
    assert_eq!(c, Constraint::desired_quartet(0, 1, 2, 3));
    assert!(serde_json::from_str::<Constraint>(r#"{"t":"prec","a":0}"#).is_err());
}

#[test]
fn rooted_tree_nested_form() {
    let t: RootedBinaryTree = serde_json::from_str("[[0,1],2]").unwrap();
    assert_eq!(t.n_leaves(), 3);
    assert_eq!(t.n_internal(), 2);
    assert_eq!(serde_json::to_string(&t).unwrap(), "[[0,1],2]");
    assert!(serde_json::from_str::<RootedBinaryTree>("[[0,1],1]").is_err());
    assert!(serde_json::from_str::<RootedBinaryTree>("[[0,3],1]").is_err());
    let leaf: RootedBinaryTree = serde_json::from_str("0").unwrap();
    assert_eq!(leaf, RootedBinaryTree::single_leaf());
}

#[test]
fn child_order_matters_for_equality() {
    let a: RootedBinaryTree = serde_json::from_str("[[0,1],2]").unwrap();
    let b: RootedBinaryTree = serde_json::from_str("[2,[0,1]]").unwrap();
    assert_ne!(a, b);
}

#[test]
fn unrooted_tree_validation() {
    let ok = vec![vec![4], vec![4], vec![5], vec![5], vec![0, 1, 5], vec![2, 3, 4]];
    let t = UnrootedTree::from_adjacency(ok).unwrap();
    assert_eq!((t.n_leaves(), t.n_internal()), (4, 2));
    let degree_two = vec![vec![4], vec![4], vec![5], vec![5], vec![0, 1], vec![2, 3]];
    assert!(UnrootedTree::from_adjacency(degree_two).is_err());
    let other_split = vec![vec![4], vec![5], vec![4], vec![5], vec![0, 2, 5], vec![1, 3, 4]];
    assert!(UnrootedTree::from_adjacency(other_split).is_ok());
    let disconnected = vec![vec![1], vec![0], vec![3], vec![2]];
    assert!(UnrootedTree::from_adjacency(disconnected).is_err());
    let asym = vec![vec![4], vec![4], vec![5], vec![5], vec![0, 1, 5], vec![2, 3, 3]];
    assert!(UnrootedTree::from_adjacency(asym).is_err());
}

#[test]
fn deep_caterpillar_round_trips() {
    let n = 400;
    let ranking = Ranking::identity(n);
    let t = ordagg::reductions::caterpillar_from_ranking(&ranking).unwrap();
    round_trip(&t);
    round_trip(&Solution::Rooted(t));
}

#[test]
fn induced_instance_renumbers() {
    let inst = Instance::new(
        Kind::Btw,
        6,
        vec![Constraint::between(5, 1, 3), Constraint::between(0, 1, 2), Constraint::between(3, 4, 5)],
    );
    let sub = inst.induced(&[5, 3, 1]);
    assert_eq!(sub.n, 3);
    assert_eq!(sub.constraints, vec![Constraint::between(0, 2, 1)]);
}

#[test]
fn partition_normalization() {
    let p = Partition::new(vec![7, 3, 7, 9]);
    assert_eq!(p.normalized().labels(), &[0, 1, 0, 2]);
    assert_eq!(p.cluster_sizes(), vec![2, 1, 1]);
}

fn any_constraint(n: usize) -> impl Strategy<Value = Constraint> {
    (0..11u8, prop::array::uniform4(0..n)).prop_map(|(tag, [a, b, c, d])| match tag {
        0 => Constraint::Precedes { a, b },
        1 => Constraint::Between { a, b, c },
        2 => Constraint::NotBetween { a, b, out: c },
        3 => Constraint::MustLink { a, b },
        4 => Constraint::CannotLink { a, b },
        5 => Constraint::DesiredTriplet { a, b, out: c },
        6 => Constraint::ForbiddenTriplet { a, b, out: c },
        7 => Constraint::DesiredQuartet { a, b, c, d },
        8 => Constraint::ForbiddenQuartet { a, b, c, d },
        9 => Constraint::FourSeparated { a, b, c, d },
        _ => Constraint::FourNonSeparated { a, b, c, d },
    })
}

proptest! {
    #[test]
    fn canonical_is_idempotent(c in any_constraint(9)) {
        let once = c.canonical();
        prop_assert_eq!(once.canonical(), once);
        prop_assert!(once.is_canonical());
        let mut a = c.items().to_vec();
        let mut b = once.items().to_vec();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn constraints_round_trip(c in any_constraint(50)) {
        round_trip(&c);
    }

    #[test]
    fn solutions_round_trip(n in 1usize..40, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for kind in Kind::ALL {
            let s = ordagg::evaluator::random_solution(kind, n, &mut rng);
            round_trip(&s);
        }
    }

    #[test]
    fn tree_node_counts(n in 1usize..60, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = ordagg::evaluator::random_rooted_tree(n, &mut rng);
        prop_assert_eq!(t.n_internal(), n - 1);
        prop_assert_eq!(t.leaves_in_order().len(), n);
        let u = ordagg::evaluator::random_unrooted_tree(n, &mut rng);
        if n >= 3 {
            prop_assert_eq!(u.n_internal(), n - 2);
        }
        let degrees_ok = (0..u.n_nodes()).all(|v| u.neighbors(v).len() == if v < n { usize::from(n > 1) } else { 3 });
        prop_assert!(degrees_ok);
    }

    #[test]
    fn generated_instances_round_trip(n in 4usize..20, m in 0usize..30, seed in any::<u64>()) {
        for kind in Kind::ALL {
            let cfg = if kind.is_mixed() {
                ordagg::generator::GeneratorConfig::mixed(kind, n, (m, 0.2), (m, 0.1), seed)
            } else {
                ordagg::generator::GeneratorConfig::uniform(kind, n, m, 0.2, seed)
            };
            let inst = ordagg::generator::generate_instance(&cfg).unwrap();
            prop_assert!(inst.validate().is_empty());
            round_trip(&inst);
        }
    }
}
