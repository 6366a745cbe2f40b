//! Lattice-ordered abelian groups with strong unit, realized concretely as
//! lexicographically ordered vectors of dyadics. The dyadic carrier makes the
//! group 2-divisible: halving is total, so the interval star operator
//! `g* + g* = u + g` is the explicit map `g* = halve(u + g)` and the doubling
//! map is an automorphism.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::arith::{Dyadic, ScalarParseError, UnitDyadic};

/// Element of a rank-`r` group: a fixed-length vector of dyadics, compared
/// lexicographically left to right.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElem(Vec<Dyadic>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("element {0} is outside the interval [id, u]")]
    OutOfInterval(String),
    #[error("strong unit must have a positive first coordinate, got {0}")]
    UnitNotPositive(String),
    #[error("the algebra is not a dyadic chain")]
    NotAChain,
}

impl GroupElem {
    pub fn new(coords: Vec<Dyadic>) -> Self {
        assert!(!coords.is_empty(), "group elements have rank >= 1");
        GroupElem(coords)
    }

    pub fn zero(rank: usize) -> Self {
        GroupElem(vec![Dyadic::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Dyadic] {
        &self.0
    }

    fn check_rank(&self, other: &Self) -> Result<(), GroupError> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(GroupError::RankMismatch { left: self.rank(), right: other.rank() })
        }
    }

    /// Componentwise addition.
    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_rank(other)?;
        Ok(GroupElem(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        GroupElem(self.0.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.add(&other.neg())
    }

    /// Lattice meet: the lexicographic minimum of the two vectors.
    pub fn meet(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_rank(other)?;
        Ok(if self <= other { self.clone() } else { other.clone() })
    }

    /// Lattice join: the lexicographic maximum of the two vectors.
    pub fn join(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_rank(other)?;
        Ok(if self >= other { self.clone() } else { other.clone() })
    }

    /// `g + g`; bijective on the dyadic carrier, with [`halve`](Self::halve)
    /// as inverse.
    pub fn double(&self) -> Self {
        GroupElem(self.0.iter().map(Dyadic::double).collect())
    }

    /// The unique `h` with `h + h = g`; total because every coordinate is
    /// dyadic.
    pub fn halve(&self) -> Self {
        GroupElem(self.0.iter().map(Dyadic::halve).collect())
    }

    /// `|g| = g ∨ -g`.
    pub fn abs(&self) -> Self {
        let n = self.neg();
        if *self >= n {
            self.clone()
        } else {
            n
        }
    }

    /// Positive part `g ∨ id`.
    pub fn pos_part(&self) -> Self {
        let id = GroupElem::zero(self.rank());
        self.join(&id).expect("same rank")
    }

    /// Negative part `g ∧ id`.
    pub fn neg_part(&self) -> Self {
        let id = GroupElem::zero(self.rank());
        self.meet(&id).expect("same rank")
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.rank(), other.rank());
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for GroupElem {
    /// Coordinate-list form, e.g. `(3/8, 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GroupElem {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = |reason: &str| ScalarParseError {
            kind: "group element",
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err("expected a parenthesized coordinate list"))?;
        let coords: Vec<Dyadic> = inner
            .split(',')
            .map(|c| c.parse())
            .collect::<Result<_, _>>()?;
        if coords.is_empty() {
            return Err(err("rank must be at least 1"));
        }
        Ok(GroupElem(coords))
    }
}

/// A 2-divisible lattice-ordered abelian group of dyadic vectors with a
/// strong unit. The unit's first coordinate must be positive, which makes it
/// a strong unit for the lexicographic order structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LuGroup {
    rank: usize,
    unit: GroupElem,
}

impl LuGroup {
    pub fn new(unit: GroupElem) -> Result<Self, GroupError> {
        if unit.coords()[0] <= Dyadic::zero() {
            return Err(GroupError::UnitNotPositive(unit.to_string()));
        }
        Ok(LuGroup { rank: unit.rank(), unit })
    }

    /// The rank-1 dyadic group with unit 1.
    pub fn rank1_unit() -> Self {
        LuGroup { rank: 1, unit: GroupElem::new(vec![Dyadic::one()]) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &GroupElem {
        &self.unit
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem::zero(self.rank)
    }

    /// Interval membership `id <= g <= u`.
    pub fn in_interval(&self, g: &GroupElem) -> bool {
        g.rank() == self.rank && *g >= self.identity() && *g <= self.unit
    }

    /// The interval star operator: the unique `g*` with `g* + g* = u + g`.
    pub fn star(&self, g: &GroupElem) -> Result<GroupElem, GroupError> {
        if !self.in_interval(g) {
            return Err(GroupError::OutOfInterval(g.to_string()));
        }
        Ok(self.unit.add(g)?.halve())
    }

    /// Diagnostic probe for the strong-unit property: the least `n >= 1` with
    /// `|g| <= n*u`, searched up to `limit`.
    pub fn strong_unit_bound(&self, g: &GroupElem, limit: u32) -> Option<u32> {
        let a = g.abs();
        let mut acc = self.unit.clone();
        for n in 1..=limit {
            if a <= acc {
                return Some(n);
            }
            acc = acc.add(&self.unit).expect("same rank");
        }
        None
    }
}

/// The group canonically attached to a dyadic chain: rank 1 over dyadics with
/// unit 1, together with the embedding of the chain's carrier into `[id, u]`.
#[derive(Clone, Debug)]
pub struct ChainChangGroup {
    group: LuGroup,
}

impl ChainChangGroup {
    pub(crate) fn new() -> Self {
        ChainChangGroup { group: LuGroup::rank1_unit() }
    }

    pub fn group(&self) -> &LuGroup {
        &self.group
    }

    /// Injective, order-preserving embedding `a -> (a)`.
    pub fn embed(&self, a: &UnitDyadic) -> GroupElem {
        GroupElem::new(vec![a.get().clone()])
    }

    /// Partial inverse of [`embed`](Self::embed).
    pub fn project(&self, g: &GroupElem) -> Result<UnitDyadic, GroupError> {
        if !self.group.in_interval(g) {
            return Err(GroupError::OutOfInterval(g.to_string()));
        }
        Ok(UnitDyadic::new(g.coords()[0].clone()).expect("in [id, u]"))
    }
}
