//! Mappings between rankings and trees that carry constraint satisfaction
//! from one problem to another.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arena::RootedArena;
use crate::error::{Error, Result};
use crate::model::{Ranking, RootedBinaryTree, UnrootedTree};

/// Caterpillar whose left children are the items in ranking order; the
/// deepest internal node holds the last two items.
pub fn caterpillar_from_ranking(r: &Ranking) -> Result<RootedBinaryTree> {
    let n = r.len();
    if n < 2 {
        return Err(Error::InvalidConfig("a caterpillar needs at least two items".into()));
    }
    let o = r.order();
    let mut arena = RootedArena::new(n);
    let mut node = arena.join(o[n - 2], o[n - 1]);
    for &leaf in o[..n - 2].iter().rev() {
        node = arena.join(leaf, node);
    }
    Ok(arena.finish(node))
}

/// Unrooted caterpillar: a path of `n - 2` internal nodes with the items
/// hanging off it in ranking order, two at each end.
pub fn unrooted_caterpillar_from_ranking(r: &Ranking) -> Result<UnrootedTree> {
    let n = r.len();
    if n < 4 {
        return Err(Error::InvalidConfig("an unrooted caterpillar needs at least four items".into()));
    }
    let o = r.order();
    let mut adj = vec![Vec::new(); 2 * n - 2];
    let mut link = |u: usize, v: usize| {
        adj[u].push(v);
        adj[v].push(u);
    };
    let spine = |j: usize| n + j;
    for j in 0..n - 3 {
        link(spine(j), spine(j + 1));
    }
    link(spine(0), o[0]);
    for (j, &leaf) in o.iter().enumerate().take(n - 1).skip(1) {
        link(spine((j - 1).min(n - 3)), leaf);
    }
    link(spine(n - 3), o[n - 1]);
    UnrootedTree::from_adjacency(adj)
}

/// Swaps the children of each internal node with probability one half, in
/// node index order, then lists the leaves from left to right.
pub fn project_with_random_swaps<R: Rng + ?Sized>(t: &RootedBinaryTree, rng: &mut R) -> Ranking {
    let n = t.n_leaves();
    let swaps: Vec<bool> = (0..t.n_internal()).map(|_| rng.random_bool(0.5)).collect();
    Ranking::new(t.leaves_in_order_with(|v| swaps[v - n])).expect("leaf order is a permutation")
}

/// Root used by [`project_unrooted_with_random_swaps`] and its three
/// neighbours, largest subtree first.
///
/// The root is the internal node whose largest subtree has the most leaves,
/// ties going to the lowest node index.
pub fn projection_root(t: &UnrootedTree) -> (usize, [usize; 3]) {
    let n = t.n_leaves();
    assert!(n >= 3, "projection needs at least three leaves");
    let rooting = t.rooted_at(0);
    let mut below = vec![0usize; t.n_nodes()];
    for &v in rooting.order().iter().rev() {
        if t.is_leaf(v) {
            below[v] += 1;
        }
        if let Some(p) = rooting.parent(v) {
            below[p] += below[v];
        }
    }
    let size = |v: usize, nbr: usize| if rooting.parent(nbr) == Some(v) { below[nbr] } else { n - below[v] };
    let mut best: Option<(usize, usize)> = None;
    for v in n..t.n_nodes() {
        let largest = t.neighbors(v).iter().map(|&u| size(v, u)).max().expect("degree three");
        if best.is_none_or(|(_, b)| largest > b) {
            best = Some((v, largest));
        }
    }
    let (root, _) = best.expect("n >= 3 gives an internal node");
    let mut nbrs: Vec<usize> = t.neighbors(root).to_vec();
    nbrs.sort_by_key(|&u| std::cmp::Reverse(size(root, u)));
    (root, [nbrs[0], nbrs[1], nbrs[2]])
}

/// Roots `t` at [`projection_root`], puts the three root subtrees in a
/// uniformly random order, swaps the children of every other internal node
/// with probability one half (node index order), and lists the leaves.
pub fn project_unrooted_with_random_swaps<R: Rng + ?Sized>(t: &UnrootedTree, rng: &mut R) -> Result<Ranking> {
    let n = t.n_leaves();
    if n < 3 {
        return Err(Error::InvalidConfig("projection needs at least three leaves".into()));
    }
    let (root, mut top) = projection_root(t);
    top.shuffle(rng);
    let swaps: Vec<bool> = (n..t.n_nodes()).map(|v| v != root && rng.random_bool(0.5)).collect();
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = top.iter().rev().map(|&u| (u, root)).collect();
    while let Some((v, from)) = stack.pop() {
        if t.is_leaf(v) {
            order.push(v);
            continue;
        }
        let kids: Vec<usize> = t.neighbors(v).iter().copied().filter(|&u| u != from).collect();
        let (first, second) = if swaps[v - n] { (kids[1], kids[0]) } else { (kids[0], kids[1]) };
        stack.push((second, v));
        stack.push((first, v));
    }
    Ranking::new(order)
}
