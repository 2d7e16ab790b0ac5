//! Turning a cut into a full solution.
//!
//! The source side S and its complement are completed independently, by
//! uniformly random structures or, optionally, by cutting them again.

use log::warn;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arena::RootedArena;
use crate::error::{Error, Result};
use crate::evaluator::{random_ranking, random_rooted_tree, random_unrooted_tree};
use crate::graph::{SignedGraph, DEFAULT_CC_WEIGHT};
use crate::maxcut::{solve, CutResult, SolverConfig};
use crate::model::{Constraint, Instance, ItemId, Kind, Partition, Ranking, RootedBinaryTree, Solution, UnrootedTree};

/// Clustering used inside each side of a correlation-clustering cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CcBaseline {
    /// One cluster or all singletons, whichever satisfies more induced constraints.
    BestOfTrivial,
    /// Cut again while the induced cut is positive, then best-of-trivial.
    RecursiveCut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodeConfig {
    /// Complete sides by cutting them again instead of at random.
    pub recursive: bool,
    /// Sides smaller than this are never cut again.
    pub min_recursion_size: usize,
    pub inner_cc_baseline: CcBaseline,
    pub seed: u64,
    /// Solver for cuts inside the sides.
    pub solver: SolverConfig,
    /// Must-link weight for graphs built inside the sides.
    pub cc_mustlink_weight: f64,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        DecodeConfig {
            recursive: false,
            min_recursion_size: 3,
            inner_cc_baseline: CcBaseline::BestOfTrivial,
            seed: 0,
            solver: SolverConfig::default(),
            cc_mustlink_weight: DEFAULT_CC_WEIGHT,
        }
    }
}

impl DecodeConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_recursion_size < 2 {
            return Err(Error::InvalidConfig("min_recursion_size must be at least 2".into()));
        }
        self.solver.validate()
    }
}

/// Decodes with the kind's decoder, drawing randomness from `cfg.seed`.
pub fn decode(instance: &Instance, cut: &CutResult, cfg: &DecodeConfig) -> Result<Solution> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    decode_with(instance, cut, cfg, &mut rng)
}

pub fn decode_with<R: Rng + ?Sized>(
    instance: &Instance,
    cut: &CutResult,
    cfg: &DecodeConfig,
    rng: &mut R,
) -> Result<Solution> {
    Ok(match instance.kind {
        Kind::Mas | Kind::Btw | Kind::NonBtw => Solution::Ranking(decode_ranking(instance, cut, cfg, rng)?),
        Kind::Cc => Solution::Partition(decode_partition(instance, cut, cfg, rng)?),
        Kind::Triplets => Solution::Rooted(decode_rooted_tree(instance, cut, cfg, rng)?),
        Kind::Quartets => Solution::Unrooted(decode_unrooted_tree(instance, cut, cfg, rng)?),
    })
}

fn check(instance: &Instance, cut: &CutResult, cfg: &DecodeConfig, kinds: &[Kind]) -> Result<()> {
    if !kinds.contains(&instance.kind) {
        return Err(Error::KindMismatch(instance.kind));
    }
    if cut.side.len() != instance.n {
        return Err(Error::SizeMismatch { expected: instance.n, got: cut.side.len() });
    }
    cfg.validate()
}

fn split(items: &[ItemId], side: &[bool]) -> (Vec<ItemId>, Vec<ItemId>) {
    items.iter().partition(|&&i| side[i])
}

/// A non-degenerate cut of `items` by the induced sub-instance, in global ids.
fn sub_cut(instance: &Instance, items: &[ItemId], cfg: &DecodeConfig) -> Result<Option<(Vec<ItemId>, Vec<ItemId>)>> {
    let sub = instance.induced(items);
    let g = SignedGraph::build(&sub, cfg.cc_mustlink_weight);
    let cut = solve(&g, &cfg.solver)?;
    if cut.is_degenerate() || cut.weight <= 0.0 {
        return Ok(None);
    }
    let (inside, outside): (Vec<usize>, Vec<usize>) = (0..items.len()).partition(|&k| cut.side[k]);
    Ok(Some((inside.iter().map(|&k| items[k]).collect(), outside.iter().map(|&k| items[k]).collect())))
}

/// Random permutation of S followed by a random permutation of its complement.
pub fn decode_ranking<R: Rng + ?Sized>(
    instance: &Instance,
    cut: &CutResult,
    cfg: &DecodeConfig,
    rng: &mut R,
) -> Result<Ranking> {
    check(instance, cut, cfg, &[Kind::Mas, Kind::Btw, Kind::NonBtw])?;
    if instance.n > 1 && cut.is_degenerate() {
        warn!("degenerate cut; returning a random ranking");
        return Ok(random_ranking(instance.n, rng));
    }
    let all: Vec<ItemId> = (0..instance.n).collect();
    let (s, rest) = split(&all, &cut.side);
    let mut order = order_side(instance, s, cfg, rng)?;
    order.extend(order_side(instance, rest, cfg, rng)?);
    Ranking::new(order)
}

fn order_side<R: Rng + ?Sized>(
    instance: &Instance,
    mut items: Vec<ItemId>,
    cfg: &DecodeConfig,
    rng: &mut R,
) -> Result<Vec<ItemId>> {
    if cfg.recursive && items.len() >= cfg.min_recursion_size {
        if let Some((s, rest)) = sub_cut(instance, &items, cfg)? {
            let mut order = order_side(instance, s, cfg, rng)?;
            order.extend(order_side(instance, rest, cfg, rng)?);
            return Ok(order);
        }
    }
    items.shuffle(rng);
    Ok(items)
}

/// Clusters S and its complement separately with the inner baseline.
pub fn decode_partition<R: Rng + ?Sized>(
    instance: &Instance,
    cut: &CutResult,
    cfg: &DecodeConfig,
    _rng: &mut R,
) -> Result<Partition> {
    check(instance, cut, cfg, &[Kind::Cc])?;
    let all: Vec<ItemId> = (0..instance.n).collect();
    let (s, rest) = split(&all, &cut.side);
    let mut clusters = Vec::new();
    for items in [s, rest] {
        if !items.is_empty() {
            cluster_side(instance, items, cfg, &mut clusters)?;
        }
    }
    let mut labels = vec![0; instance.n];
    for (label, cluster) in clusters.iter().enumerate() {
        for &i in cluster {
            labels[i] = label;
        }
    }
    Ok(Partition::new(labels))
}

fn cluster_side(instance: &Instance, items: Vec<ItemId>, cfg: &DecodeConfig, out: &mut Vec<Vec<ItemId>>) -> Result<()> {
    if cfg.inner_cc_baseline == CcBaseline::RecursiveCut && items.len() >= cfg.min_recursion_size {
        if let Some((s, rest)) = sub_cut(instance, &items, cfg)? {
            cluster_side(instance, s, cfg, out)?;
            return cluster_side(instance, rest, cfg, out);
        }
    }
    let sub = instance.induced(&items);
    let must = sub.constraints.iter().filter(|c| matches!(c, Constraint::MustLink { .. })).count();
    if 2 * must > sub.m() {
        out.push(items);
    } else {
        out.extend(items.into_iter().map(|i| vec![i]));
    }
    Ok(())
}

/// Root whose left subtree spans S and right subtree its complement.
pub fn decode_rooted_tree<R: Rng + ?Sized>(
    instance: &Instance,
    cut: &CutResult,
    cfg: &DecodeConfig,
    rng: &mut R,
) -> Result<RootedBinaryTree> {
    check(instance, cut, cfg, &[Kind::Triplets])?;
    if instance.n == 0 {
        return Err(Error::InvalidTree("a tree needs at least one leaf".into()));
    }
    if cut.is_degenerate() {
        if instance.n > 1 {
            warn!("degenerate cut; returning a random rooted tree");
        }
        return Ok(random_rooted_tree(instance.n, rng));
    }
    let mut arena = RootedArena::new(instance.n);
    let root = split_tree(instance, &cut.side, cfg, &mut arena, rng)?;
    Ok(arena.finish(root))
}

fn split_tree<R: Rng + ?Sized>(
    instance: &Instance,
    side: &[bool],
    cfg: &DecodeConfig,
    arena: &mut RootedArena,
    rng: &mut R,
) -> Result<usize> {
    let all: Vec<ItemId> = (0..instance.n).collect();
    let (s, rest) = split(&all, side);
    let left = grow_side(instance, &s, cfg, arena, rng)?;
    let right = grow_side(instance, &rest, cfg, arena, rng)?;
    Ok(arena.join(left, right))
}

fn grow_side<R: Rng + ?Sized>(
    instance: &Instance,
    items: &[ItemId],
    cfg: &DecodeConfig,
    arena: &mut RootedArena,
    rng: &mut R,
) -> Result<usize> {
    if cfg.recursive && items.len() >= cfg.min_recursion_size {
        if let Some((s, rest)) = sub_cut(instance, items, cfg)? {
            let left = grow_side(instance, &s, cfg, arena, rng)?;
            let right = grow_side(instance, &rest, cfg, arena, rng)?;
            return Ok(arena.join(left, right));
        }
    }
    Ok(arena.random_subtree(items, rng))
}

/// Rooted shapes on S and its complement with their roots joined by an edge.
pub fn decode_unrooted_tree<R: Rng + ?Sized>(
    instance: &Instance,
    cut: &CutResult,
    cfg: &DecodeConfig,
    rng: &mut R,
) -> Result<UnrootedTree> {
    check(instance, cut, cfg, &[Kind::Quartets])?;
    let n = instance.n;
    if n == 0 {
        return Err(Error::InvalidTree("a tree needs at least one leaf".into()));
    }
    if cut.is_degenerate() {
        if n > 1 {
            warn!("degenerate cut; returning a random unrooted tree");
        }
        return Ok(random_unrooted_tree(n, rng));
    }
    let all: Vec<ItemId> = (0..n).collect();
    let (s, rest) = split(&all, &cut.side);
    let mut arena = RootedArena::new(n);
    let left = grow_side(instance, &s, cfg, &mut arena, rng)?;
    let right = grow_side(instance, &rest, cfg, &mut arena, rng)?;
    let mut adj = vec![Vec::new(); 2 * n - 2];
    for (u, v) in arena.parent_child_edges().chain([(left, right)]) {
        adj[u].push(v);
        adj[v].push(u);
    }
    UnrootedTree::from_adjacency(adj)
}
