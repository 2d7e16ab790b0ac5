//! Planted-solution generator: a hidden ground truth, and constraints drawn
//! on uniformly random item tuples that agree with it with probability `1 - eps`.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::balanced_bounds;
use crate::error::{Error, Result};
use crate::evaluator::{random_ranking, random_rooted_tree, random_unrooted_tree};
use crate::model::{Constraint, GroundTruth, Instance, ItemId, Kind, Partition, Rooting, RootedBinaryTree, Solution};

/// Resampling cap for balanced planted partitions.
pub const PARTITION_ATTEMPTS: usize = 1000;
/// Resampling cap for balanced planted rooted trees.
pub const ROOTED_ATTEMPTS: usize = 10_000;

/// `m` constraints with error rate `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Batch {
    pub m: usize,
    pub eps: f64,
}

/// Constraint counts: one batch, or forbidden and desired batches for tree kinds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Counts {
    Uniform(Batch),
    Mixed { forbidden: Batch, desired: Batch },
}

impl Counts {
    pub fn total(&self) -> usize {
        match self {
            Counts::Uniform(b) => b.m,
            Counts::Mixed { forbidden, desired } => forbidden.m + desired.m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub kind: Kind,
    pub counts: Counts,
    /// Require a split with both sides in `[ceil(n/3), floor(2n/3)]`.
    pub balanced: bool,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn uniform(kind: Kind, n: usize, m: usize, eps: f64, seed: u64) -> Self {
        GeneratorConfig { n, kind, counts: Counts::Uniform(Batch { m, eps }), balanced: false, seed }
    }

    /// Tree kinds: `m1` forbidden constraints at `eps1`, `m2` desired at `eps2`.
    pub fn mixed(kind: Kind, n: usize, (m1, eps1): (usize, f64), (m2, eps2): (usize, f64), seed: u64) -> Self {
        GeneratorConfig {
            n,
            kind,
            counts: Counts::Mixed { forbidden: Batch { m: m1, eps: eps1 }, desired: Batch { m: m2, eps: eps2 } },
            balanced: false,
            seed,
        }
    }

    pub fn balanced(mut self, balanced: bool) -> Self {
        self.balanced = balanced;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let batches: Vec<Batch> = match self.counts {
            Counts::Uniform(b) => vec![b],
            Counts::Mixed { forbidden, desired } => vec![forbidden, desired],
        };
        for b in &batches {
            if !(0.0..=1.0).contains(&b.eps) {
                return Err(Error::InvalidConfig(format!("error rate {} outside [0, 1]", b.eps)));
            }
        }
        if matches!(self.counts, Counts::Mixed { .. }) && !self.kind.is_mixed() {
            return Err(Error::InvalidConfig(format!(
                "kind {} takes a single constraint batch",
                self.kind
            )));
        }
        if self.balanced && self.n < 3 {
            return Err(Error::InvalidConfig("balanced ground truth needs n >= 3".into()));
        }
        if self.n == 0 && matches!(self.kind, Kind::Triplets | Kind::Quartets) {
            return Err(Error::InvalidConfig("tree kinds need n >= 1".into()));
        }
        if self.counts.total() > 0 && self.n < self.kind.arity() {
            return Err(Error::PoolTooSmall { n: self.n, arity: self.kind.arity() });
        }
        Ok(())
    }
}

/// Ground truth, constraints and the truth attached to the instance, all
/// drawn from one ChaCha8 stream seeded with `cfg.seed`.
pub fn generate_instance(cfg: &GeneratorConfig) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let gt = sample_ground_truth(cfg, &mut rng)?;
    let mut instance = generate(cfg, &gt, &mut rng)?;
    instance.ground_truth = Some(gt);
    Ok(instance)
}

/// Draws the planted solution for `cfg.kind`.
pub fn sample_ground_truth<R: Rng + ?Sized>(cfg: &GeneratorConfig, rng: &mut R) -> Result<GroundTruth> {
    cfg.validate()?;
    let n = cfg.n;
    Ok(match cfg.kind {
        Kind::Mas | Kind::Btw | Kind::NonBtw => Solution::Ranking(random_ranking(n, rng)),
        Kind::Cc => Solution::Partition(planted_partition(n, cfg.balanced, rng)?),
        Kind::Triplets => {
            let mut tree = random_rooted_tree(n, rng);
            if cfg.balanced {
                let mut attempts = 1;
                while !root_split_balanced(&tree) {
                    if attempts == ROOTED_ATTEMPTS {
                        return Err(Error::BalanceNotReached(ROOTED_ATTEMPTS));
                    }
                    tree = random_rooted_tree(n, rng);
                    attempts += 1;
                }
            }
            Solution::Rooted(tree)
        }
        Kind::Quartets => Solution::Unrooted(random_unrooted_tree(n, rng)),
    })
}

fn planted_partition<R: Rng + ?Sized>(n: usize, balanced: bool, rng: &mut R) -> Result<Partition> {
    let k_max = 2.max(n.isqrt()).min(n);
    let k_min = 2.min(n);
    for _ in 0..PARTITION_ATTEMPTS {
        let k = rng.random_range(k_min..=k_max).max(1);
        let p = Partition::new((0..n).map(|_| rng.random_range(0..k)).collect()).normalized();
        if !balanced || partition_balanced(&p) {
            return Ok(p);
        }
    }
    Err(Error::BalanceNotReached(PARTITION_ATTEMPTS))
}

/// Largest cluster at most `n/2`, and some union of clusters has a size in
/// the balanced range.
pub fn partition_balanced(p: &Partition) -> bool {
    let n = p.len();
    let sizes = p.cluster_sizes();
    if sizes.iter().any(|&s| 2 * s > n) {
        return false;
    }
    let (lo, hi) = balanced_bounds(n);
    let mut reachable = vec![false; n + 1];
    reachable[0] = true;
    for s in sizes {
        for total in (s..=n).rev() {
            reachable[total] |= reachable[total - s];
        }
    }
    (lo..=hi).any(|t| reachable[t])
}

/// Leaf count of the root's left subtree lies in the balanced range.
pub fn root_split_balanced(t: &RootedBinaryTree) -> bool {
    let Some([left, _]) = t.children(t.root()) else {
        return false;
    };
    let (lo, hi) = balanced_bounds(t.n_leaves());
    (lo..=hi).contains(&t.leaves_below(left).len())
}

/// Draws `cfg`'s constraints around the planted `gt`.
pub fn generate<R: Rng + ?Sized>(cfg: &GeneratorConfig, gt: &GroundTruth, rng: &mut R) -> Result<Instance> {
    cfg.validate()?;
    if !gt.fits(cfg.kind) || gt.len() != cfg.n {
        return Err(Error::KindMismatch(cfg.kind));
    }
    let truth = Truth::new(cfg.kind, gt);
    let mut constraints = Vec::with_capacity(cfg.counts.total());
    let mut batch = |b: Batch, role: Role, rng: &mut R| {
        for _ in 0..b.m {
            let items = index::sample(rng, cfg.n, cfg.kind.arity()).into_vec();
            let wrong = rng.random_bool(b.eps);
            constraints.push(truth.emit(&items, role, wrong, rng));
        }
    };
    match cfg.counts {
        Counts::Uniform(b) => batch(b, Role::Desired, rng),
        Counts::Mixed { forbidden, desired } => {
            batch(forbidden, Role::Forbidden, rng);
            batch(desired, Role::Desired, rng);
        }
    }
    Ok(Instance::new(cfg.kind, cfg.n, constraints))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Forbidden,
    Desired,
}

enum Truth<'a> {
    Ranking(Kind, Vec<usize>),
    Partition(&'a Partition),
    Rooted(&'a RootedBinaryTree),
    Unrooted(Rooting),
}

impl<'a> Truth<'a> {
    fn new(kind: Kind, gt: &'a GroundTruth) -> Self {
        match gt {
            Solution::Ranking(r) => Truth::Ranking(kind, r.positions()),
            Solution::Partition(p) => Truth::Partition(p),
            Solution::Rooted(t) => Truth::Rooted(t),
            Solution::Unrooted(t) => Truth::Unrooted(t.rooted_at(0)),
        }
    }

    fn emit<R: Rng + ?Sized>(&self, items: &[ItemId], role: Role, wrong: bool, rng: &mut R) -> Constraint {
        match self {
            Truth::Ranking(kind, pos) => {
                let mut s = items.to_vec();
                s.sort_by_key(|&i| pos[i]);
                match (kind, wrong) {
                    (Kind::Mas, false) => Constraint::precedes(s[0], s[1]),
                    (Kind::Mas, true) => Constraint::precedes(s[1], s[0]),
                    (Kind::Btw, false) => Constraint::between(s[0], s[1], s[2]),
                    (Kind::Btw, true) => {
                        if rng.random_bool(0.5) {
                            Constraint::between(s[1], s[0], s[2])
                        } else {
                            Constraint::between(s[0], s[2], s[1])
                        }
                    }
                    (_, false) => {
                        if rng.random_bool(0.5) {
                            Constraint::not_between(s[1], s[2], s[0])
                        } else {
                            Constraint::not_between(s[0], s[1], s[2])
                        }
                    }
                    (_, true) => Constraint::not_between(s[0], s[2], s[1]),
                }
            }
            Truth::Partition(p) => {
                let (a, b) = (items[0], items[1]);
                if p.same_cluster(a, b) != wrong {
                    Constraint::must_link(a, b)
                } else {
                    Constraint::cannot_link(a, b)
                }
            }
            Truth::Rooted(t) => {
                let (x, y, z) = (items[0], items[1], items[2]);
                let resolutions = [(x, y, z), (x, z, y), (y, z, x)];
                let true_idx = resolutions
                    .iter()
                    .position(|&(a, b, c)| t.obeys_triplet(a, b, c))
                    .expect("binary trees resolve every triple");
                let (a, b, c) = resolutions[pick(true_idx, role, wrong, rng)];
                match role {
                    Role::Desired => Constraint::desired_triplet(a, b, c),
                    Role::Forbidden => Constraint::forbidden_triplet(a, b, c),
                }
            }
            Truth::Unrooted(r) => {
                let (w, x, y, z) = (items[0], items[1], items[2], items[3]);
                let resolutions = [(w, x, y, z), (w, y, x, z), (w, z, x, y)];
                let true_idx = resolutions
                    .iter()
                    .position(|&(a, b, c, d)| r.obeys_quartet(a, b, c, d))
                    .expect("trivalent trees resolve every quartet");
                let (a, b, c, d) = resolutions[pick(true_idx, role, wrong, rng)];
                match role {
                    Role::Desired => Constraint::desired_quartet(a, b, c, d),
                    Role::Forbidden => Constraint::forbidden_quartet(a, b, c, d),
                }
            }
        }
    }
}

/// Index of the resolution to emit among three, given the true one.
fn pick<R: Rng + ?Sized>(true_idx: usize, role: Role, wrong: bool, rng: &mut R) -> usize {
    match (role, wrong) {
        (Role::Desired, false) | (Role::Forbidden, true) => true_idx,
        (Role::Desired, true) | (Role::Forbidden, false) => (true_idx + 1 + rng.random_range(0..2)) % 3,
    }
}
