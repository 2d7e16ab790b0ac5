//! Signed, possibly directed constraint graphs and cut accounting.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::model::{Constraint, Instance, Kind};

/// Must-link weight matched to a best-of-trivial inner clustering.
pub const DEFAULT_CC_WEIGHT: f64 = -1.0;
/// Must-link weight matched to a 0.766-approximate inner clustering.
pub const LITERATURE_CC_WEIGHT: f64 = -3.2735;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Aggregated weighted graph. Undirected edges are stored once with `u < v`;
/// directed arcs run `u -> v`. Edges are sorted by `(u, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedGraph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    w_minus: f64,
}

/// Status of one constraint under a cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutStatus {
    Satisfied,
    Violated,
    Obeyed,
    Disobeyed,
    Postponed,
    Unaffected,
}

impl SignedGraph {
    /// Sums parallel contributions and drops exact zeros.
    pub fn from_weights(n: usize, directed: bool, contributions: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (u, v, w) in contributions {
            assert!(u < n && v < n && u != v, "edge ({u}, {v}) invalid for n = {n}");
            let key = if directed || u < v { (u, v) } else { (v, u) };
            *acc.entry(key).or_insert(0.0) += w;
        }
        let edges: Vec<Edge> = acc.into_iter().filter(|&(_, w)| w != 0.0).map(|((u, v), w)| Edge { u, v, w }).collect();
        let w_minus = negative_total(&edges);
        SignedGraph { n, directed, edges, w_minus }
    }

    /// The constraint graph of `instance`; directed for MAS only.
    pub fn build(instance: &Instance, cc_mustlink_weight: f64) -> Self {
        let mut contributions = Vec::with_capacity(instance.m() * 3);
        for c in &instance.constraints {
            push_contributions(c, cc_mustlink_weight, &mut contributions);
        }
        SignedGraph::from_weights(instance.n, instance.kind == Kind::Mas, contributions)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Total absolute negative weight.
    pub fn w_minus(&self) -> f64 {
        self.w_minus
    }

    /// `w_minus` recomputed from the edge list.
    pub fn recompute_w_minus(&self) -> f64 {
        negative_total(&self.edges)
    }

    /// Aggregated weight on `(u, v)`, zero when absent.
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        let key = if self.directed || u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&key))
            .map_or(0.0, |i| self.edges[i].w)
    }

    /// Directed: arcs from `S` to its complement. Undirected: edges with
    /// exactly one endpoint in `S`. `side[i]` marks membership of `S`.
    pub fn cut_weight(&self, side: &[bool]) -> f64 {
        assert_eq!(side.len(), self.n, "side indicator length");
        let crossing = |e: &Edge| {
            if self.directed {
                side[e.u] && !side[e.v]
            } else {
                side[e.u] != side[e.v]
            }
        };
        self.edges.iter().filter(|e| crossing(e)).map(|e| e.w).sum()
    }

    /// Edge list as text: a header line, then `u v w` per edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "# n={} directed={} edges={}", self.n, self.directed, self.edges.len())?;
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u, e.v, e.w)?;
        }
        Ok(())
    }
}

fn negative_total(edges: &[Edge]) -> f64 {
    edges.iter().filter(|e| e.w < 0.0).map(|e| -e.w).sum()
}

fn push_contributions(c: &Constraint, cc_weight: f64, out: &mut Vec<(usize, usize, f64)>) {
    use Constraint::*;
    match *c {
        Precedes { a, b } => out.extend([(a, b, 1.0), (b, a, -1.0)]),
        Between { a, b, c } => out.extend([(a, c, 2.0), (b, a, -1.0), (b, c, -1.0)]),
        NotBetween { a, b, out: c } => out.extend([(c, a, 1.0), (c, b, 1.0), (a, b, -2.0)]),
        CannotLink { a, b } => out.push((a, b, 1.0)),
        MustLink { a, b } => out.push((a, b, cc_weight)),
        ForbiddenTriplet { a, b, out: c } => out.extend([(a, b, 2.0), (c, a, -1.0), (c, b, -1.0)]),
        DesiredTriplet { a, b, out: c } => out.extend([(a, b, -2.0), (c, a, 1.0), (c, b, 1.0)]),
        ForbiddenQuartet { a, b, c, d } => out.extend(quartet_edges(a, b, c, d, 1.0)),
        DesiredQuartet { a, b, c, d } => out.extend(quartet_edges(a, b, c, d, -1.0)),
        FourSeparated { .. } | FourNonSeparated { .. } => {}
    }
}

fn quartet_edges(a: usize, b: usize, c: usize, d: usize, sign: f64) -> [(usize, usize, f64); 6] {
    [
        (a, b, 2.0 * sign),
        (c, d, 2.0 * sign),
        (a, c, -sign),
        (a, d, -sign),
        (b, c, -sign),
        (b, d, -sign),
    ]
}

/// Status of `c` under the cut `side`. `Precedes` is read as a directed
/// cut, everything else as undirected.
pub fn classify(c: &Constraint, side: &[bool]) -> CutStatus {
    use Constraint::*;
    use CutStatus::*;
    match *c {
        Precedes { a, b } => match (side[a], side[b]) {
            (true, false) => Satisfied,
            (false, true) => Violated,
            _ => Unaffected,
        },
        CannotLink { a, b } => {
            if side[a] != side[b] {
                Satisfied
            } else {
                Unaffected
            }
        }
        MustLink { a, b } => {
            if side[a] != side[b] {
                Violated
            } else {
                Unaffected
            }
        }
        Between { a, b, c } => {
            if side[a] != side[c] {
                Postponed
            } else if side[b] != side[a] {
                Violated
            } else {
                Unaffected
            }
        }
        NotBetween { a, b, out } => {
            if side[a] != side[b] {
                Postponed
            } else if side[out] != side[a] {
                Satisfied
            } else {
                Unaffected
            }
        }
        DesiredTriplet { a, b, out: c } | ForbiddenTriplet { a, b, out: c } => {
            if side[a] == side[b] && side[b] == side[c] {
                Unaffected
            } else if side[a] == side[b] {
                Obeyed
            } else {
                Disobeyed
            }
        }
        DesiredQuartet { a, b, c, d }
        | ForbiddenQuartet { a, b, c, d }
        | FourSeparated { a, b, c, d }
        | FourNonSeparated { a, b, c, d } => {
            let inside = [a, b, c, d].iter().filter(|&&i| side[i]).count();
            match inside {
                0 | 4 => Unaffected,
                1 | 3 => Postponed,
                _ if side[a] == side[b] => Obeyed,
                _ => Disobeyed,
            }
        }
    }
}

/// Cut weight of the built graph next to the per-kind closed form in the
/// classification counts.
pub fn check_weight_identity(instance: &Instance, side: &[bool], cc_mustlink_weight: f64) -> (f64, f64) {
    let lhs = SignedGraph::build(instance, cc_mustlink_weight).cut_weight(side);
    let mut rhs = 0.0;
    for c in &instance.constraints {
        let status = classify(c, side);
        rhs += match (c, status) {
            (Constraint::Precedes { .. }, CutStatus::Satisfied) => 1.0,
            (Constraint::Precedes { .. }, CutStatus::Violated) => -1.0,
            (Constraint::Between { .. }, CutStatus::Postponed) => 1.0,
            (Constraint::Between { .. }, CutStatus::Violated) => -2.0,
            (Constraint::NotBetween { .. }, CutStatus::Satisfied) => 2.0,
            (Constraint::NotBetween { .. }, CutStatus::Postponed) => -1.0,
            (Constraint::CannotLink { .. }, CutStatus::Satisfied) => 1.0,
            (Constraint::MustLink { .. }, CutStatus::Violated) => cc_mustlink_weight,
            (Constraint::ForbiddenTriplet { .. }, CutStatus::Disobeyed) => 1.0,
            (Constraint::ForbiddenTriplet { .. }, CutStatus::Obeyed) => -2.0,
            (Constraint::DesiredTriplet { .. }, CutStatus::Obeyed) => 2.0,
            (Constraint::DesiredTriplet { .. }, CutStatus::Disobeyed) => -1.0,
            (Constraint::ForbiddenQuartet { .. }, CutStatus::Disobeyed) => 2.0,
            (Constraint::ForbiddenQuartet { .. }, CutStatus::Obeyed) => -4.0,
            (Constraint::DesiredQuartet { .. }, CutStatus::Obeyed) => 4.0,
            (Constraint::DesiredQuartet { .. }, CutStatus::Disobeyed) => -2.0,
            _ => 0.0,
        };
    }
    (lhs, rhs)
}
