use super::{score_constraints, Score};
use crate::arena::{RootedArena, UnrootedArena};
use crate::error::{Error, Result};
use crate::model::{Instance, Kind, Partition, Ranking, RootedBinaryTree, Solution, UnrootedTree};

pub const ORACLE_CAP_RANKING: usize = 8;
pub const ORACLE_CAP_PARTITION: usize = 8;
pub const ORACLE_CAP_ROOTED: usize = 6;
pub const ORACLE_CAP_UNROOTED: usize = 7;

/// Visits every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Visits every set partition of `0..n` once, as restricted growth strings.
pub fn for_each_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, n: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
        if labels.len() == n {
            f(labels);
            return;
        }
        let limit = if labels.is_empty() { 0 } else { max + 1 };
        for l in 0..=limit {
            labels.push(l);
            rec(labels, n, max.max(l), f);
            labels.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, 0, &mut f);
}

/// Visits each of the `(2n-3)!!` rooted trees on `n >= 1` leaves once,
/// ignoring child order.
pub fn for_each_rooted_tree(n: usize, mut f: impl FnMut(&RootedBinaryTree)) {
    fn rec(
        arena: &RootedArena,
        nodes: &[usize],
        root: usize,
        leaf: usize,
        n: usize,
        f: &mut dyn FnMut(&RootedBinaryTree),
    ) {
        if leaf == n {
            f(&arena.clone().finish(root));
            return;
        }
        for &x in nodes {
            let mut next = arena.clone();
            let u = next.insert_above(x, leaf, false);
            let mut grown = nodes.to_vec();
            grown.push(leaf);
            grown.push(u);
            rec(&next, &grown, if x == root { u } else { root }, leaf + 1, n, f);
        }
    }
    assert!(n >= 1, "a tree needs at least one leaf");
    rec(&RootedArena::new(n), &[0], 0, 1, n, &mut f);
}

/// Visits each of the `(2n-5)!!` unrooted trivalent trees on `n >= 1` leaves once.
pub fn for_each_unrooted_tree(n: usize, mut f: impl FnMut(&UnrootedTree)) {
    fn rec(arena: &UnrootedArena, leaf: usize, n: usize, f: &mut dyn FnMut(&UnrootedTree)) {
        if leaf >= n {
            f(&arena.clone().finish());
            return;
        }
        for e in 0..arena.edge_count() {
            let mut next = arena.clone();
            next.insert_on_edge(e, leaf);
            rec(&next, leaf + 1, n, f);
        }
    }
    assert!(n >= 1, "a tree needs at least one leaf");
    rec(&UnrootedArena::new(n), 3, n, &mut f);
}

/// Best solution by exhaustive enumeration; ties go to the first one visited.
pub fn oracle_best(instance: &Instance) -> Result<(Solution, Score)> {
    let n = instance.n;
    let cap = match instance.kind {
        Kind::Mas | Kind::Btw | Kind::NonBtw => ORACLE_CAP_RANKING,
        Kind::Cc => ORACLE_CAP_PARTITION,
        Kind::Triplets => ORACLE_CAP_ROOTED,
        Kind::Quartets => ORACLE_CAP_UNROOTED,
    };
    if n > cap {
        return Err(Error::EnumerationTooLarge { n, cap });
    }
    if n == 0 && matches!(instance.kind, Kind::Triplets | Kind::Quartets) {
        return Err(Error::InvalidTree("a tree needs at least one leaf".into()));
    }
    let mut best: Option<(Solution, Score)> = None;
    let mut err = None;
    let mut offer = |s: Solution| {
        if err.is_some() {
            return;
        }
        match score_constraints(&instance.constraints, &s) {
            Ok(sc) => {
                if best.as_ref().is_none_or(|(_, b)| sc.satisfied > b.satisfied) {
                    best = Some((s, sc));
                }
            }
            Err(e) => err = Some(e),
        }
    };
    match instance.kind {
        Kind::Mas | Kind::Btw | Kind::NonBtw => for_each_permutation(n, |p| {
            offer(Solution::Ranking(Ranking::new(p.to_vec()).expect("permutation")))
        }),
        Kind::Cc => for_each_partition(n, |l| offer(Solution::Partition(Partition::new(l.to_vec())))),
        Kind::Triplets => for_each_rooted_tree(n, |t| offer(Solution::Rooted(t.clone()))),
        Kind::Quartets => for_each_unrooted_tree(n, |t| offer(Solution::Unrooted(t.clone()))),
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok(best.expect("at least one candidate"))
}
