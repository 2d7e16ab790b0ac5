use super::CutResult;
use crate::error::{Error, Result};
use crate::graph::SignedGraph;

/// Node cap for [`brute_force_cut`].
pub const BRUTE_FORCE_CAP: usize = 22;

/// Exact maximum cut over all `2^n` subsets, visited in Gray-code order
/// starting from the empty set; ties keep the first subset visited.
pub fn brute_force_cut(g: &SignedGraph) -> Result<CutResult> {
    let n = g.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::EnumerationTooLarge { n, cap: BRUTE_FORCE_CAP });
    }
    let mut incident: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); n];
    for e in g.edges() {
        incident[e.u].push((e.u, e.v, e.w));
        incident[e.v].push((e.u, e.v, e.w));
    }
    let counts = |side: &[bool], u: usize, v: usize| {
        if g.is_directed() {
            side[u] && !side[v]
        } else {
            side[u] != side[v]
        }
    };
    let mut side = vec![false; n];
    let mut weight = 0.0;
    let mut best = (0.0, side.clone());
    for step in 1u64..(1u64 << n) {
        let i = step.trailing_zeros() as usize;
        let before: f64 = incident[i].iter().filter(|&&(u, v, _)| counts(&side, u, v)).map(|e| e.2).sum();
        side[i] = !side[i];
        let after: f64 = incident[i].iter().filter(|&&(u, v, _)| counts(&side, u, v)).map(|e| e.2).sum();
        weight += after - before;
        if weight > best.0 + 1e-9 {
            best = (weight, side.clone());
        }
    }
    let weight = g.cut_weight(&best.1);
    Ok(CutResult { side: best.1, weight, sdp_objective: weight, restarts_used: 0, rounds_used: 1 << n })
}
