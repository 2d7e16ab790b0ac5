use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::Kind;

/// Dense item index in `[0, n)`.
pub type ItemId = usize;

/// A local ordinal constraint.
///
/// Unordered pairs are stored smaller index first for every variant except
/// `Precedes`, whose order carries the meaning. `Between` keeps the middle
/// element in `b` and orders the two ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "t", deny_unknown_fields)]
pub enum Constraint {
    /// `a` is ranked before `b`.
    #[serde(rename = "prec")]
    Precedes { a: ItemId, b: ItemId },
    /// `b` lies between `a` and `c`.
    #[serde(rename = "btw")]
    Between { a: ItemId, b: ItemId, c: ItemId },
    /// `out` does not lie between `a` and `b`.
    #[serde(rename = "nbtw")]
    NotBetween { a: ItemId, b: ItemId, out: ItemId },
    #[serde(rename = "ml")]
    MustLink { a: ItemId, b: ItemId },
    #[serde(rename = "cl")]
    CannotLink { a: ItemId, b: ItemId },
    /// `ab|out` must hold in the rooted tree.
    #[serde(rename = "dt")]
    DesiredTriplet { a: ItemId, b: ItemId, out: ItemId },
    /// `ab|out` must not hold in the rooted tree.
    #[serde(rename = "ft")]
    ForbiddenTriplet { a: ItemId, b: ItemId, out: ItemId },
    /// `ab|cd` must hold in the unrooted tree.
    #[serde(rename = "dq")]
    DesiredQuartet { a: ItemId, b: ItemId, c: ItemId, d: ItemId },
    /// `ab|cd` must not hold in the unrooted tree.
    #[serde(rename = "fq")]
    ForbiddenQuartet { a: ItemId, b: ItemId, c: ItemId, d: ItemId },
    /// Both of `{a, b}` precede both of `{c, d}` or the reverse.
    #[serde(rename = "sep4")]
    FourSeparated { a: ItemId, b: ItemId, c: ItemId, d: ItemId },
    /// Negation of `FourSeparated`.
    #[serde(rename = "nsep4")]
    FourNonSeparated { a: ItemId, b: ItemId, c: ItemId, d: ItemId },
}

/// Up to four items of one constraint, in field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Items {
    buf: [ItemId; 4],
    len: usize,
}

impl Deref for Items {
    type Target = [ItemId];

    fn deref(&self) -> &[ItemId] {
        &self.buf[..self.len]
    }
}

fn ordered(a: ItemId, b: ItemId) -> (ItemId, ItemId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Orders each pair and then the two pairs, so every spelling of the same
/// quartet split has one stored form.
fn ordered_quartet(a: ItemId, b: ItemId, c: ItemId, d: ItemId) -> (ItemId, ItemId, ItemId, ItemId) {
    let (a, b) = ordered(a, b);
    let (c, d) = ordered(c, d);
    if a <= c {
        (a, b, c, d)
    } else {
        (c, d, a, b)
    }
}

impl Constraint {
    pub fn precedes(a: ItemId, b: ItemId) -> Self {
        Constraint::Precedes { a, b }
    }

    pub fn between(a: ItemId, b: ItemId, c: ItemId) -> Self {
        let (a, c) = ordered(a, c);
        Constraint::Between { a, b, c }
    }

    pub fn not_between(a: ItemId, b: ItemId, out: ItemId) -> Self {
        let (a, b) = ordered(a, b);
        Constraint::NotBetween { a, b, out }
    }

    pub fn must_link(a: ItemId, b: ItemId) -> Self {
        let (a, b) = ordered(a, b);
        Constraint::MustLink { a, b }
    }

    pub fn cannot_link(a: ItemId, b: ItemId) -> Self {
        let (a, b) = ordered(a, b);
        Constraint::CannotLink { a, b }
    }

    pub fn desired_triplet(a: ItemId, b: ItemId, out: ItemId) -> Self {
        let (a, b) = ordered(a, b);
        Constraint::DesiredTriplet { a, b, out }
    }

    pub fn forbidden_triplet(a: ItemId, b: ItemId, out: ItemId) -> Self {
        let (a, b) = ordered(a, b);
        Constraint::ForbiddenTriplet { a, b, out }
    }

    pub fn desired_quartet(a: ItemId, b: ItemId, c: ItemId, d: ItemId) -> Self {
        let (a, b, c, d) = ordered_quartet(a, b, c, d);
        Constraint::DesiredQuartet { a, b, c, d }
    }

    pub fn forbidden_quartet(a: ItemId, b: ItemId, c: ItemId, d: ItemId) -> Self {
        let (a, b, c, d) = ordered_quartet(a, b, c, d);
        Constraint::ForbiddenQuartet { a, b, c, d }
    }

    pub fn four_separated(a: ItemId, b: ItemId, c: ItemId, d: ItemId) -> Self {
        let (a, b, c, d) = ordered_quartet(a, b, c, d);
        Constraint::FourSeparated { a, b, c, d }
    }

    pub fn four_non_separated(a: ItemId, b: ItemId, c: ItemId, d: ItemId) -> Self {
        let (a, b, c, d) = ordered_quartet(a, b, c, d);
        Constraint::FourNonSeparated { a, b, c, d }
    }

    /// Items in field order.
    pub fn items(&self) -> Items {
        use Constraint::*;
        let (buf, len) = match *self {
            Precedes { a, b } | MustLink { a, b } | CannotLink { a, b } => ([a, b, 0, 0], 2),
            Between { a, b, c } => ([a, b, c, 0], 3),
            NotBetween { a, b, out } | DesiredTriplet { a, b, out } | ForbiddenTriplet { a, b, out } => {
                ([a, b, out, 0], 3)
            }
            DesiredQuartet { a, b, c, d }
            | ForbiddenQuartet { a, b, c, d }
            | FourSeparated { a, b, c, d }
            | FourNonSeparated { a, b, c, d } => ([a, b, c, d], 4),
        };
        Items { buf, len }
    }

    pub fn arity(&self) -> usize {
        self.items().len()
    }

    /// The same constraint in canonical storage form.
    pub fn canonical(self) -> Self {
        use Constraint::*;
        match self {
            Precedes { .. } => self,
            Between { a, b, c } => Self::between(a, b, c),
            NotBetween { a, b, out } => Self::not_between(a, b, out),
            MustLink { a, b } => Self::must_link(a, b),
            CannotLink { a, b } => Self::cannot_link(a, b),
            DesiredTriplet { a, b, out } => Self::desired_triplet(a, b, out),
            ForbiddenTriplet { a, b, out } => Self::forbidden_triplet(a, b, out),
            DesiredQuartet { a, b, c, d } => Self::desired_quartet(a, b, c, d),
            ForbiddenQuartet { a, b, c, d } => Self::forbidden_quartet(a, b, c, d),
            FourSeparated { a, b, c, d } => Self::four_separated(a, b, c, d),
            FourNonSeparated { a, b, c, d } => Self::four_non_separated(a, b, c, d),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    pub fn has_distinct_items(&self) -> bool {
        let items = self.items();
        (0..items.len()).all(|i| (i + 1..items.len()).all(|j| items[i] != items[j]))
    }

    /// Whether an instance of `kind` may contain this constraint.
    pub fn legal_for(&self, kind: Kind) -> bool {
        use Constraint::*;
        matches!(
            (kind, self),
            (Kind::Mas, Precedes { .. })
                | (Kind::Btw, Between { .. })
                | (Kind::NonBtw, NotBetween { .. })
                | (Kind::Cc, MustLink { .. } | CannotLink { .. })
                | (Kind::Triplets, DesiredTriplet { .. } | ForbiddenTriplet { .. })
                | (Kind::Quartets, DesiredQuartet { .. } | ForbiddenQuartet { .. })
        )
    }

    /// True for the forbidden tree variants.
    pub fn is_forbidden(&self) -> bool {
        matches!(self, Constraint::ForbiddenTriplet { .. } | Constraint::ForbiddenQuartet { .. })
    }

    /// Rewrites every item through `map`, keeping canonical form.
    pub fn relabel(self, map: impl Fn(ItemId) -> ItemId) -> Self {
        use Constraint::*;
        match self {
            Precedes { a, b } => Self::precedes(map(a), map(b)),
            Between { a, b, c } => Self::between(map(a), map(b), map(c)),
            NotBetween { a, b, out } => Self::not_between(map(a), map(b), map(out)),
            MustLink { a, b } => Self::must_link(map(a), map(b)),
            CannotLink { a, b } => Self::cannot_link(map(a), map(b)),
            DesiredTriplet { a, b, out } => Self::desired_triplet(map(a), map(b), map(out)),
            ForbiddenTriplet { a, b, out } => Self::forbidden_triplet(map(a), map(b), map(out)),
            DesiredQuartet { a, b, c, d } => Self::desired_quartet(map(a), map(b), map(c), map(d)),
            ForbiddenQuartet { a, b, c, d } => Self::forbidden_quartet(map(a), map(b), map(c), map(d)),
            FourSeparated { a, b, c, d } => Self::four_separated(map(a), map(b), map(c), map(d)),
            FourNonSeparated { a, b, c, d } => Self::four_non_separated(map(a), map(b), map(c), map(d)),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Constraint::*;
        match *self {
            Precedes { a, b } => write!(f, "{a} < {b}"),
            Between { a, b, c } => write!(f, "{a}|{b}|{c}"),
            NotBetween { a, b, out } => write!(f, "{a}{b}|{out} (not between)"),
            MustLink { a, b } => write!(f, "{a} == {b}"),
            CannotLink { a, b } => write!(f, "{a} != {b}"),
            DesiredTriplet { a, b, out } => write!(f, "+{a}{b}|{out}"),
            ForbiddenTriplet { a, b, out } => write!(f, "-{a}{b}|{out}"),
            DesiredQuartet { a, b, c, d } => write!(f, "+{a}{b}|{c}{d}"),
            ForbiddenQuartet { a, b, c, d } => write!(f, "-{a}{b}|{c}{d}"),
            FourSeparated { a, b, c, d } => write!(f, "{a}{b}||{c}{d}"),
            FourNonSeparated { a, b, c, d } => write!(f, "!({a}{b}||{c}{d})"),
        }
    }
}
