//! Domain types shared by every stage of the pipeline.

mod constraint;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use constraint::{Constraint, ItemId, Items};
pub use tree::{Nested, RootedBinaryTree, Rooting, UnrootedTree};

use crate::error::{Error, Result};

/// The six aggregation problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Mas,
    Btw,
    NonBtw,
    Cc,
    Triplets,
    Quartets,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::Mas, Kind::Btw, Kind::NonBtw, Kind::Cc, Kind::Triplets, Kind::Quartets];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Mas => "mas",
            Kind::Btw => "btw",
            Kind::NonBtw => "nonbtw",
            Kind::Cc => "cc",
            Kind::Triplets => "triplets",
            Kind::Quartets => "quartets",
        }
    }

    /// Items per constraint.
    pub fn arity(self) -> usize {
        match self {
            Kind::Mas | Kind::Cc => 2,
            Kind::Btw | Kind::NonBtw | Kind::Triplets => 3,
            Kind::Quartets => 4,
        }
    }

    /// Only MAS is solved as a directed cut.
    pub fn is_directed(self) -> bool {
        self == Kind::Mas
    }

    /// Whether the kind carries separate forbidden and desired batches.
    pub fn is_mixed(self) -> bool {
        matches!(self, Kind::Triplets | Kind::Quartets)
    }

    pub fn is_ranking(self) -> bool {
        matches!(self, Kind::Mas | Kind::Btw | Kind::NonBtw)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown kind {s:?}")))
    }
}

/// A permutation of the items; position 0 is first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<ItemId>", into = "Vec<ItemId>")]
pub struct Ranking(Vec<ItemId>);

impl Ranking {
    pub fn new(order: Vec<ItemId>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n || seen[i] {
                return Err(Error::InvalidRanking(format!("not a permutation of 0..{n}: item {i}")));
            }
            seen[i] = true;
        }
        Ok(Ranking(order))
    }

    pub fn identity(n: usize) -> Self {
        Ranking((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn order(&self) -> &[ItemId] {
        &self.0
    }

    /// `positions()[i]` is the position of item `i`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (p, &i) in self.0.iter().enumerate() {
            pos[i] = p;
        }
        pos
    }

    pub fn reversed(&self) -> Self {
        Ranking(self.0.iter().rev().copied().collect())
    }
}

impl TryFrom<Vec<ItemId>> for Ranking {
    type Error = Error;

    fn try_from(order: Vec<ItemId>) -> Result<Self> {
        Ranking::new(order)
    }
}

impl From<Ranking> for Vec<ItemId> {
    fn from(r: Ranking) -> Vec<ItemId> {
        r.0
    }
}

/// Cluster label per item.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(labels: Vec<usize>) -> Self {
        Partition(labels)
    }

    pub fn one_cluster(n: usize) -> Self {
        Partition(vec![0; n])
    }

    pub fn singletons(n: usize) -> Self {
        Partition((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn label(&self, i: ItemId) -> usize {
        self.0[i]
    }

    pub fn same_cluster(&self, a: ItemId, b: ItemId) -> bool {
        self.0[a] == self.0[b]
    }

    /// Relabels clusters `0, 1, ...` in order of first appearance.
    pub fn normalized(&self) -> Self {
        let mut map = std::collections::HashMap::new();
        Partition(
            self.0
                .iter()
                .map(|l| {
                    let next = map.len();
                    *map.entry(*l).or_insert(next)
                })
                .collect(),
        )
    }

    /// Sizes of the clusters of the normalized labelling.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let norm = self.normalized();
        let k = norm.0.iter().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0; k];
        for &l in &norm.0 {
            sizes[l] += 1;
        }
        sizes
    }
}

/// Any of the four solution structures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solution {
    Ranking(Ranking),
    Partition(Partition),
    Rooted(RootedBinaryTree),
    Unrooted(UnrootedTree),
}

/// The planted solution of a generated instance.
pub type GroundTruth = Solution;

impl Solution {
    pub fn len(&self) -> usize {
        match self {
            Solution::Ranking(r) => r.len(),
            Solution::Partition(p) => p.len(),
            Solution::Rooted(t) => t.n_leaves(),
            Solution::Unrooted(t) => t.n_leaves(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether this structure answers instances of `kind`.
    pub fn fits(&self, kind: Kind) -> bool {
        matches!(
            (self, kind),
            (Solution::Ranking(_), Kind::Mas | Kind::Btw | Kind::NonBtw)
                | (Solution::Partition(_), Kind::Cc)
                | (Solution::Rooted(_), Kind::Triplets)
                | (Solution::Unrooted(_), Kind::Quartets)
        )
    }
}

/// A problem instance: kind, item count, constraints and an optional planted truth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub kind: Kind,
    pub n: usize,
    pub constraints: Vec<Constraint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<GroundTruth>,
}

impl Instance {
    pub fn new(kind: Kind, n: usize, constraints: Vec<Constraint>) -> Self {
        Instance { kind, n, constraints, ground_truth: None }
    }

    pub fn m(&self) -> usize {
        self.constraints.len()
    }

    /// Counts of (forbidden, desired) constraints.
    pub fn forbidden_desired_counts(&self) -> (usize, usize) {
        let f = self.constraints.iter().filter(|c| c.is_forbidden()).count();
        (f, self.constraints.len() - f)
    }

    /// Every invariant violation, in constraint order.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, c) in self.constraints.iter().enumerate() {
            if let Some(&item) = c.items().iter().find(|&&item| item >= self.n) {
                out.push(format!("item {item} out of range in constraint {i}"));
            }
            if !c.has_distinct_items() {
                out.push(format!("duplicate item in constraint {i}"));
            }
            if !c.is_canonical() {
                out.push(format!("constraint {i} not in canonical form"));
            }
            if !c.legal_for(self.kind) {
                out.push(format!("constraint {i} illegal for kind {}", self.kind));
            }
        }
        if let Some(gt) = &self.ground_truth {
            if !gt.fits(self.kind) {
                out.push(format!("ground truth type does not match kind {}", self.kind));
            }
            if gt.len() != self.n {
                out.push(format!("ground truth covers {} items, expected {}", gt.len(), self.n));
            }
        }
        out
    }

    /// Constraints lying entirely inside `items`, renumbered to positions in
    /// `items`.
    pub fn induced(&self, items: &[ItemId]) -> Instance {
        let mut local = vec![usize::MAX; self.n];
        for (k, &i) in items.iter().enumerate() {
            local[i] = k;
        }
        let constraints = self
            .constraints
            .iter()
            .filter(|c| c.items().iter().all(|&i| local[i] != usize::MAX))
            .map(|c| c.relabel(|i| local[i]))
            .collect();
        Instance::new(self.kind, items.len(), constraints)
    }

    /// Errors unless `s` has the right type and size for this instance.
    pub fn check_solution(&self, s: &Solution) -> Result<()> {
        if !s.fits(self.kind) {
            return Err(Error::KindMismatch(self.kind));
        }
        if s.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, got: s.len() });
        }
        Ok(())
    }
}
