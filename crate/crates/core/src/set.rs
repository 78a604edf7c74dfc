use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

/// A subset of the ground set `0..universe` of a poset.
///
/// Sets are values: every operation returns a fresh set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet { bits }
    }

    /// Builds a set from members; members beyond the universe are an error.
    pub fn from_members<I>(universe: usize, members: I) -> crate::Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = FixedBitSet::with_capacity(universe);
        for m in members {
            if m >= universe {
                return Err(crate::Error::OutOfRange { element: m, size: universe });
            }
            bits.insert(m);
        }
        Ok(ElementSet { bits })
    }

    /// Like [`ElementSet::from_members`] but panics on out-of-range members.
    pub fn of(universe: usize, members: &[usize]) -> Self {
        Self::from_members(universe, members.iter().copied()).expect("member out of range")
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.bits.len() && self.bits.contains(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.ones().next()
    }

    pub fn with(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.bits.insert(i);
        out
    }

    pub fn without(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.bits.set(i, false);
        out
    }

    pub fn union(&self, other: &ElementSet) -> Self {
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        out
    }

    pub fn intersection(&self, other: &ElementSet) -> Self {
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        out
    }

    pub fn difference(&self, other: &ElementSet) -> Self {
        let mut out = self.clone();
        out.bits.difference_with(&other.bits);
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        ElementSet { bits }
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the ascending member sequences.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
