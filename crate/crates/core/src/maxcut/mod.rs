//! Approximate maximum cut of signed graphs: low-rank relaxation, random
//! hyperplane rounding and single-vertex local search.
//!
//! Directed graphs carry an extra unit vector `v0`; a node joins the source
//! side S when its vector rounds to the same side as `v0`.

mod brute;
mod local_search;
mod relax;
mod rounding;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use brute::{brute_force_cut, BRUTE_FORCE_CAP};
pub use relax::{Ascent, EmbeddingVectors};
pub use rounding::{f_half, same_side_probability};

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use local_search::{polish, Adjacency};
use relax::{relax, Couplings};
use rounding::{random_direction, rotated_rows, split_directed, split_undirected};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Columns of the factorization; `None` picks `min(n + 1, ceil(sqrt(2n)) + 4)`.
    pub rank: Option<usize>,
    pub max_iterations: usize,
    pub restarts: usize,
    pub hyperplanes: usize,
    /// Rotate vectors towards or away from `v0` before rounding (directed only).
    pub rotation: bool,
    /// Stop once the relative objective change falls below this.
    pub tolerance: f64,
    pub local_search: bool,
    pub ascent: Ascent,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            rank: None,
            max_iterations: 2000,
            restarts: 8,
            hyperplanes: 200,
            rotation: true,
            tolerance: 1e-7,
            local_search: true,
            ascent: Ascent::BlockCoordinate,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank.is_some_and(|k| k < 2) {
            return Err(Error::InvalidConfig("rank must be at least 2".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.hyperplanes == 0 {
            return Err(Error::InvalidConfig("hyperplanes must be at least 1".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::InvalidConfig("tolerance must be non-negative".into()));
        }
        Ok(())
    }

    /// Factorization rank used for a graph on `n` nodes.
    pub fn rank_for(&self, n: usize) -> usize {
        self.rank.unwrap_or_else(|| default_rank(n))
    }
}

pub fn default_rank(n: usize) -> usize {
    let k = ((2.0 * n as f64).sqrt().ceil() as usize) + 4;
    k.min(n + 1).max(2)
}

/// A bipartition and its cut weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutResult {
    /// `side[i]` is true when node `i` is in S.
    pub side: Vec<bool>,
    pub weight: f64,
    /// Best relaxation value seen, including the embedding of the returned cut.
    pub sdp_objective: f64,
    pub restarts_used: usize,
    pub rounds_used: usize,
}

impl CutResult {
    pub fn from_side(g: &SignedGraph, side: Vec<bool>) -> Self {
        let weight = g.cut_weight(&side);
        CutResult { side, weight, sdp_objective: weight, restarts_used: 0, rounds_used: 0 }
    }

    /// Members of S in increasing order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&i| self.side[i]).collect()
    }

    /// True when one side is empty.
    pub fn is_degenerate(&self) -> bool {
        self.side.iter().all(|&s| s) || self.side.iter().all(|&s| !s)
    }
}

struct Outcome {
    side: Vec<bool>,
    weight: f64,
    relaxation: f64,
}

/// Solves directed and undirected graphs alike.
pub fn solve(g: &SignedGraph, cfg: &SolverConfig) -> Result<CutResult> {
    cfg.validate()?;
    let n = g.n();
    if g.edges().is_empty() {
        return Ok(CutResult { side: vec![false; n], weight: 0.0, sdp_objective: 0.0, restarts_used: 0, rounds_used: 0 });
    }
    let couplings = Couplings::new(g);
    let adjacency = cfg.local_search.then(|| Adjacency::new(g));
    let k = cfg.rank_for(n);
    let mut outcomes: Vec<Outcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| run_restart(g, cfg, &couplings, adjacency.as_ref(), k, restart))
        .collect();
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.weight > outcomes[best].weight {
            best = i;
        }
    }
    let relaxation = outcomes.iter().map(|o| o.relaxation).fold(f64::NEG_INFINITY, f64::max);
    let side = outcomes.swap_remove(best).side;
    let sdp_objective = relaxation.max(couplings.value_at_cut(&side));
    Ok(CutResult {
        weight: g.cut_weight(&side),
        side,
        sdp_objective,
        restarts_used: cfg.restarts,
        rounds_used: cfg.restarts * cfg.hyperplanes,
    })
}

/// Undirected signed MaxCut.
pub fn solve_undirected(g: &SignedGraph, cfg: &SolverConfig) -> Result<CutResult> {
    if g.is_directed() {
        return Err(Error::InvalidConfig("solve_undirected given a directed graph".into()));
    }
    solve(g, cfg)
}

/// Directed signed MaxCut with the distinguished vector `v0`.
pub fn solve_directed(g: &SignedGraph, cfg: &SolverConfig) -> Result<CutResult> {
    if !g.is_directed() {
        return Err(Error::InvalidConfig("solve_directed given an undirected graph".into()));
    }
    solve(g, cfg)
}

/// Relaxation from restart `restart` alone, with its value.
pub fn relaxation(g: &SignedGraph, cfg: &SolverConfig, restart: usize) -> (EmbeddingVectors, f64) {
    let couplings = Couplings::new(g);
    let mut rng = restart_rng(cfg.seed, restart);
    let r = relax(&couplings, cfg.rank_for(g.n()), cfg.ascent, cfg.max_iterations, cfg.tolerance, &mut rng);
    (r.embedding, r.value)
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

fn run_restart(
    g: &SignedGraph,
    cfg: &SolverConfig,
    couplings: &Couplings,
    adjacency: Option<&Adjacency>,
    k: usize,
    restart: usize,
) -> Outcome {
    let n = g.n();
    let mut rng = restart_rng(cfg.seed, restart);
    let relaxed = relax(couplings, k, cfg.ascent, cfg.max_iterations, cfg.tolerance, &mut rng);
    let e = &relaxed.embedding;
    let rotated = (g.is_directed() && cfg.rotation).then(|| rotated_rows(e));
    let rows: Vec<&[f64]> = match &rotated {
        Some(r) => r[..n].iter().map(Vec::as_slice).collect(),
        None => (0..n).map(|i| e.row(i)).collect(),
    };
    let v0 = e.v0_index().map(|i| e.row(i));
    let mut side = vec![false; n];
    let mut best_side = side.clone();
    let mut best_weight = f64::NEG_INFINITY;
    for _ in 0..cfg.hyperplanes {
        let r = random_direction(k, &mut rng);
        match v0 {
            Some(z) => split_directed(&rows, z, &r, &mut side),
            None => split_undirected(&rows, &r, &mut side),
        }
        let w = g.cut_weight(&side);
        if w > best_weight {
            best_weight = w;
            best_side.copy_from_slice(&side);
        }
    }
    if let Some(adj) = adjacency {
        polish(adj, &mut best_side);
        best_weight = g.cut_weight(&best_side);
    }
    Outcome { side: best_side, weight: best_weight, relaxation: relaxed.value }
}
