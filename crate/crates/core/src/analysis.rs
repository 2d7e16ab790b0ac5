//! Closed-form guarantees, random baselines and certificate cuts of the
//! planted model.

use crate::error::{Error, Result};
use crate::generator::{Batch, Counts};
use crate::model::{Instance, Kind, Ranking, UnrootedTree};

/// Integer balanced range `[ceil(n/3), floor(2n/3)]`.
pub fn balanced_bounds(n: usize) -> (usize, usize) {
    (n.div_ceil(3), 2 * n / 3)
}

/// Side fraction `c` of a balanced cut, in `[1/3, 2/3]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalanceParam(f64);

impl BalanceParam {
    pub fn new(c: f64) -> Result<Self> {
        if (1.0 / 3.0 - 1e-12..=2.0 / 3.0 + 1e-12).contains(&c) {
            Ok(BalanceParam(c))
        } else {
            Err(Error::InvalidConfig(format!("balance parameter {c} outside [1/3, 2/3]")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// How a constraint's items must fall across a cut to be resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArityProfile {
    /// Two items on opposite sides.
    Pairs,
    /// Three items not all on one side.
    Triples,
    /// Four items split two and two along the planted pairing.
    QuartetSplit,
}

/// Probability that uniformly drawn items are resolved by a cut with side
/// fraction `c`.
pub fn expected_cut_fraction(profile: ArityProfile, c: BalanceParam) -> f64 {
    let c = c.value();
    match profile {
        ArityProfile::Pairs => 2.0 * c * (1.0 - c),
        ArityProfile::Triples => 3.0 * c * c * (1.0 - c) + 3.0 * c * (1.0 - c) * (1.0 - c),
        ArityProfile::QuartetSplit => 6.0 * c * c * (1.0 - c) * (1.0 - c),
    }
}

/// First `ceil(n/2)` items of the ranking, as a side indicator.
pub fn median_cut(gt: &Ranking) -> Vec<bool> {
    let n = gt.len();
    let mut side = vec![false; n];
    for &i in &gt.order()[..n.div_ceil(2)] {
        side[i] = true;
    }
    side
}

/// An edge of `t` leaving both sides with leaf counts in the balanced range.
///
/// Edges are scanned in [`UnrootedTree::edges`] order; the first balanced one
/// is returned. Panics when `t` has fewer than two leaves.
pub fn balanced_edge(t: &UnrootedTree) -> (usize, usize) {
    let n = t.n_leaves();
    assert!(n >= 2, "balanced_edge needs at least two leaves");
    let below = leaves_below_counts(t);
    let (lo, hi) = balanced_bounds(n);
    t.edges()
        .into_iter()
        .find(|&(u, v)| {
            let s = below.side(u, v);
            (lo..=hi).contains(&s) && (lo..=hi).contains(&(n - s))
        })
        .expect("every trivalent tree has a balanced edge")
}

/// Leaf-side indicator of the component containing `v` once edge `(u, v)` is removed.
pub fn edge_cut(t: &UnrootedTree, (u, v): (usize, usize)) -> Vec<bool> {
    let mut side = vec![false; t.n_leaves()];
    let mut stack = vec![(v, u)];
    while let Some((x, from)) = stack.pop() {
        if t.is_leaf(x) {
            side[x] = true;
        }
        for &y in t.neighbors(x) {
            if y != from {
                stack.push((y, x));
            }
        }
    }
    side
}

struct BelowCounts {
    parent: Vec<Option<usize>>,
    count: Vec<usize>,
}

impl BelowCounts {
    /// Leaves on `v`'s side of edge `(u, v)`.
    fn side(&self, u: usize, v: usize) -> usize {
        let total = self.count[0];
        if self.parent[v] == Some(u) {
            self.count[v]
        } else {
            total - self.count[u]
        }
    }
}

fn leaves_below_counts(t: &UnrootedTree) -> BelowCounts {
    let rooting = t.rooted_at(0);
    let mut count = vec![0; t.n_nodes()];
    for &v in rooting.order().iter().rev() {
        if t.is_leaf(v) {
            count[v] += 1;
        }
        if let Some(p) = rooting.parent(v) {
            count[p] += count[v];
        }
    }
    BelowCounts { parent: (0..t.n_nodes()).map(|v| rooting.parent(v)).collect(), count }
}

fn check_eps(b: &Batch) -> Result<f64> {
    if (0.0..=1.0).contains(&b.eps) {
        Ok(b.eps)
    } else {
        Err(Error::InvalidConfig(format!("error rate {} outside [0, 1]", b.eps)))
    }
}

/// Guaranteed expected number of satisfied constraints of the single-cut
/// pipeline in the planted model.
pub fn theoretical_bound(kind: Kind, counts: &Counts) -> Result<f64> {
    match (kind, counts) {
        (Kind::Triplets | Kind::Quartets, Counts::Mixed { forbidden, desired }) => {
            let (e1, e2) = (check_eps(forbidden)?, check_eps(desired)?);
            let (m1, m2) = (forbidden.m as f64, desired.m as f64);
            Ok(match kind {
                Kind::Triplets => {
                    (2.0 / 3.0 + 0.11378 - 0.5853 * e1) * m1 + (1.0 / 3.0 + 0.30886 - 0.5853 * e2) * m2
                }
                _ => (0.672 - 0.296 * e1) * m1 + (0.425 - 0.261 * e2) * m2,
            })
        }
        (Kind::Mas | Kind::Btw | Kind::NonBtw | Kind::Cc, Counts::Uniform(b)) => {
            let eps = check_eps(b)?;
            let (base, slope) = match kind {
                Kind::Mas => (0.642, 0.4285),
                Kind::Btw => (0.402, 0.329),
                Kind::NonBtw => (0.845, 0.329),
                _ => (0.8226, 0.775),
            };
            Ok((base - slope * eps) * b.m as f64)
        }
        _ => Err(Error::InvalidConfig(format!("constraint counts do not fit kind {kind}"))),
    }
}

/// Expected satisfied fraction of a uniformly random solution, for the
/// ordering and tree kinds; `None` for correlation clustering, where it
/// depends on the label distribution.
pub fn random_baseline_fraction(kind: Kind, counts: &Counts) -> Option<f64> {
    let total = counts.total();
    if total == 0 {
        return None;
    }
    match (kind, counts) {
        (Kind::Mas, _) => Some(0.5),
        (Kind::Btw, _) => Some(1.0 / 3.0),
        (Kind::NonBtw, _) => Some(2.0 / 3.0),
        (Kind::Triplets | Kind::Quartets, Counts::Mixed { forbidden, desired }) => {
            Some((2.0 * forbidden.m as f64 + desired.m as f64) / (3.0 * total as f64))
        }
        _ => None,
    }
}

/// Expected satisfied count of the single-cut decoder with random completion,
/// given the instance and the weight `w` of the cut it decodes. `None` for
/// correlation clustering, whose completion is deterministic.
pub fn single_cut_expectation(instance: &Instance, w: f64) -> Option<f64> {
    let m = instance.m() as f64;
    let (m1, m2) = instance.forbidden_desired_counts();
    let (m1, m2) = (m1 as f64, m2 as f64);
    match instance.kind {
        Kind::Mas => Some(0.5 * m + 0.5 * w),
        Kind::Btw => Some(m / 3.0 + w / 6.0),
        Kind::NonBtw => Some(2.0 * m / 3.0 + w / 6.0),
        Kind::Triplets => Some(2.0 * m1 / 3.0 + m2 / 3.0 + w / 3.0),
        Kind::Quartets => Some(2.0 * m1 / 3.0 + m2 / 3.0 + w / 6.0),
        Kind::Cc => None,
    }
}
