//! Satisfaction semantics, scoring, random solutions and exhaustive oracles.

mod enumerate;
mod sample;

use serde::{Deserialize, Serialize};

pub use enumerate::{
    for_each_partition, for_each_permutation, for_each_rooted_tree, for_each_unrooted_tree, oracle_best,
    ORACLE_CAP_PARTITION, ORACLE_CAP_RANKING, ORACLE_CAP_ROOTED, ORACLE_CAP_UNROOTED,
};
pub use sample::{random_partition, random_ranking, random_rooted_tree, random_solution, random_unrooted_tree};

use crate::error::{Error, Result};
use crate::model::{Constraint, Instance, Partition, RootedBinaryTree, Rooting, Solution};

/// Satisfied count out of a total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Score {
    pub satisfied: usize,
    pub total: usize,
}

impl Score {
    /// `satisfied / total`, or `None` when there is nothing to satisfy.
    pub fn fraction(&self) -> Option<f64> {
        (self.total > 0).then(|| self.satisfied as f64 / self.total as f64)
    }

    fn add(&mut self, ok: bool) {
        self.total += 1;
        self.satisfied += usize::from(ok);
    }
}

/// Scores of the forbidden and desired halves of a mixed tree instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SplitScore {
    pub forbidden: Score,
    pub desired: Score,
}

impl SplitScore {
    pub fn combined(&self) -> Score {
        Score {
            satisfied: self.forbidden.satisfied + self.desired.satisfied,
            total: self.forbidden.total + self.desired.total,
        }
    }
}

/// A solution with the lookup tables needed to test constraints quickly.
#[derive(Debug)]
pub struct Prepared<'a> {
    n: usize,
    view: View<'a>,
}

#[derive(Debug)]
enum View<'a> {
    Ranking(Vec<usize>),
    Partition(&'a Partition),
    Rooted(&'a RootedBinaryTree),
    Unrooted(Rooting),
}

impl<'a> Prepared<'a> {
    pub fn new(s: &'a Solution) -> Self {
        let view = match s {
            Solution::Ranking(r) => View::Ranking(r.positions()),
            Solution::Partition(p) => View::Partition(p),
            Solution::Rooted(t) => View::Rooted(t),
            Solution::Unrooted(t) => View::Unrooted(t.rooted_at(0)),
        };
        Prepared { n: s.len(), view }
    }

    pub fn satisfies(&self, c: &Constraint) -> Result<bool> {
        use Constraint::*;
        if let Some(&item) = c.items().iter().find(|&&i| i >= self.n) {
            return Err(Error::ItemOutOfRange { item, n: self.n });
        }
        let ok = match (&self.view, *c) {
            (View::Ranking(pos), Precedes { a, b }) => pos[a] < pos[b],
            (View::Ranking(pos), Between { a, b, c }) => {
                (pos[a] < pos[b] && pos[b] < pos[c]) || (pos[c] < pos[b] && pos[b] < pos[a])
            }
            (View::Ranking(pos), NotBetween { a, b, out }) => {
                pos[out] < pos[a].min(pos[b]) || pos[out] > pos[a].max(pos[b])
            }
            (View::Ranking(pos), FourSeparated { a, b, c, d }) => four_separated(pos, a, b, c, d),
            (View::Ranking(pos), FourNonSeparated { a, b, c, d }) => !four_separated(pos, a, b, c, d),
            (View::Partition(p), MustLink { a, b }) => p.same_cluster(a, b),
            (View::Partition(p), CannotLink { a, b }) => !p.same_cluster(a, b),
            (View::Rooted(t), DesiredTriplet { a, b, out }) => t.obeys_triplet(a, b, out),
            (View::Rooted(t), ForbiddenTriplet { a, b, out }) => !t.obeys_triplet(a, b, out),
            (View::Unrooted(r), DesiredQuartet { a, b, c, d }) => r.obeys_quartet(a, b, c, d),
            (View::Unrooted(r), ForbiddenQuartet { a, b, c, d }) => !r.obeys_quartet(a, b, c, d),
            _ => return Err(Error::IncompatibleSolution(c.to_string())),
        };
        Ok(ok)
    }
}

fn four_separated(pos: &[usize], a: usize, b: usize, c: usize, d: usize) -> bool {
    let (lo_ab, hi_ab) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let (lo_cd, hi_cd) = (pos[c].min(pos[d]), pos[c].max(pos[d]));
    hi_ab < lo_cd || hi_cd < lo_ab
}

/// Whether `s` satisfies `c`.
pub fn satisfies(c: &Constraint, s: &Solution) -> Result<bool> {
    Prepared::new(s).satisfies(c)
}

/// Number of constraints of `instance` that `s` satisfies.
pub fn score(instance: &Instance, s: &Solution) -> Result<Score> {
    instance.check_solution(s)?;
    score_constraints(&instance.constraints, s)
}

/// Scores an arbitrary constraint list against `s`.
pub fn score_constraints(constraints: &[Constraint], s: &Solution) -> Result<Score> {
    let prepared = Prepared::new(s);
    let mut out = Score::default();
    for c in constraints {
        out.add(prepared.satisfies(c)?);
    }
    Ok(out)
}

/// Like [`score`], reported separately for forbidden and desired constraints.
pub fn split_score(instance: &Instance, s: &Solution) -> Result<SplitScore> {
    instance.check_solution(s)?;
    let prepared = Prepared::new(s);
    let mut out = SplitScore::default();
    for c in &instance.constraints {
        let ok = prepared.satisfies(c)?;
        if c.is_forbidden() {
            out.forbidden.add(ok);
        } else {
            out.desired.add(ok);
        }
    }
    Ok(out)
}
