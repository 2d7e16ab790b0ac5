use rand::seq::SliceRandom;
use rand::Rng;

use crate::arena::{RootedArena, UnrootedArena};
use crate::model::{Kind, Partition, Ranking, RootedBinaryTree, Solution, UnrootedTree};

/// Fisher-Yates shuffle of `0..n`.
pub fn random_ranking<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Ranking {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Ranking::new(order).expect("shuffle is a permutation")
}

/// Independent uniform label in `[0, n)` per item, relabelled densely.
pub fn random_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Partition {
    Partition::new((0..n).map(|_| rng.random_range(0..n)).collect()).normalized()
}

/// Uniform over the `(2n-3)!!` rooted binary trees on `n` leaves.
pub fn random_rooted_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RootedBinaryTree {
    assert!(n >= 1, "a tree needs at least one leaf");
    let items: Vec<usize> = (0..n).collect();
    let mut arena = RootedArena::new(n);
    let root = arena.random_subtree(&items, rng);
    arena.finish(root)
}

/// Uniform over the `(2n-5)!!` unrooted trivalent trees on `n` leaves.
pub fn random_unrooted_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> UnrootedTree {
    assert!(n >= 1, "a tree needs at least one leaf");
    let mut arena = UnrootedArena::new(n);
    for leaf in 3..n {
        let e = rng.random_range(0..arena.edge_count());
        arena.insert_on_edge(e, leaf);
    }
    arena.finish()
}

/// A random solution of the type `kind` asks for.
pub fn random_solution<R: Rng + ?Sized>(kind: Kind, n: usize, rng: &mut R) -> Solution {
    match kind {
        Kind::Mas | Kind::Btw | Kind::NonBtw => Solution::Ranking(random_ranking(n, rng)),
        Kind::Cc => Solution::Partition(random_partition(n, rng)),
        Kind::Triplets => Solution::Rooted(random_rooted_tree(n.max(1), rng)),
        Kind::Quartets => Solution::Unrooted(random_unrooted_tree(n.max(1), rng)),
    }
}
