//! Graph construction, cut and decoding in one call.

use serde::Serialize;

use crate::decoder::{decode, DecodeConfig};
use crate::error::Result;
use crate::evaluator::{score, split_score, Score, SplitScore};
use crate::graph::SignedGraph;
use crate::maxcut::{solve, CutResult, SolverConfig};
use crate::model::{Instance, Solution};

#[derive(Debug, Clone, Serialize)]
pub struct PipelineOutput {
    pub cut: CutResult,
    pub solution: Solution,
    pub score: Score,
    /// Present for triplet and quartet instances.
    pub split: Option<SplitScore>,
}

/// Builds the constraint graph with `decode.cc_mustlink_weight`, cuts it with
/// `solver` and decodes the cut with `decode`.
pub fn run(instance: &Instance, solver: &SolverConfig, decode_cfg: &DecodeConfig) -> Result<PipelineOutput> {
    let g = SignedGraph::build(instance, decode_cfg.cc_mustlink_weight);
    let cut = solve(&g, solver)?;
    let solution = decode(instance, &cut, decode_cfg)?;
    let score = score(instance, &solution)?;
    let split = instance.kind.is_mixed().then(|| split_score(instance, &solution)).transpose()?;
    Ok(PipelineOutput { cut, solution, score, split })
}
