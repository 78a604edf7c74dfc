//! Finite strict partial orders on `0..n` and the antichain/interval/level
//! toolkit built on top of them.
//!
//! A [`Poset`] stores the full transitive closure of `◁` as two bit matrices
//! (rows of elements strictly below and strictly above each element), so every
//! comparability test is a single lookup.

use fixedbitset::FixedBitSet;

use crate::set::ElementSet;
use crate::{Error, Result};

/// Which way to close a set, or to peel levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

/// One end of an interval between maximal antichains.
#[derive(Debug, Clone, Copy)]
pub enum Cut<'a> {
    NegInf,
    At(&'a ElementSet),
    PosInf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    ClosedOpen,
    ClosedClosed,
    OpenOpen,
    OpenClosed,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    // below[j] = { i : i ◁ j },  above[i] = { j : i ◁ j }
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset").field("n", &self.n).field("covers", &self.covers()).finish()
    }
}

impl Poset {
    /// Transitive closure of `pairs` (each `(i, j)` read as `i ◁ j`).
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &(i, j) in pairs {
            for x in [i, j] {
                if x >= n {
                    return Err(Error::OutOfRange { element: x, size: n });
                }
            }
            if i == j {
                return Err(Error::Cycle(i, j));
            }
            above[i].insert(j);
        }
        // Warshall over bit rows.
        for k in 0..n {
            for i in 0..n {
                if above[i].contains(k) {
                    let row = above[k].clone();
                    above[i].union_with(&row);
                }
            }
        }
        for (i, row) in above.iter().enumerate() {
            if row.contains(i) {
                let j = row.ones().find(|&j| above[j].contains(i)).unwrap_or(i);
                return Err(Error::Cycle(i, j));
            }
        }
        Ok(Self::from_above(n, above))
    }

    fn from_above(n: usize, above: Vec<FixedBitSet>) -> Poset {
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in above.iter().enumerate() {
            for j in row.ones() {
                below[j].insert(i);
            }
        }
        Poset { n, below, above }
    }

    /// Builds a poset from a closed relation matrix, checking the order axioms.
    pub fn from_matrix(lt: &[Vec<bool>]) -> Result<Poset> {
        let n = lt.len();
        let mut pairs = Vec::new();
        for (i, row) in lt.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Schema("relation matrix is not square".into()));
            }
            pairs.extend(row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| (i, j)));
        }
        Poset::from_pairs(n, &pairs)
    }

    pub fn chain(k: usize) -> Poset {
        let pairs: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Poset::from_pairs(k, &pairs).expect("chain is acyclic")
    }

    pub fn antichain(k: usize) -> Poset {
        Poset::from_pairs(k, &[]).expect("empty relation")
    }

    /// `0 ◁ 1 ◁ 3`, `0 ◁ 2 ◁ 3`, with `1` and `2` incomparable.
    pub fn diamond() -> Poset {
        Poset::from_pairs(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]).expect("diamond is acyclic")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `i ◁ j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    /// `i ⊴ j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.lt(j, i)
    }

    pub fn strictly_below(&self, j: usize) -> ElementSet {
        ElementSet::from_bits(self.below[j].clone())
    }

    pub fn strictly_above(&self, i: usize) -> ElementSet {
        ElementSet::from_bits(self.above[i].clone())
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.n)
    }

    /// All pairs `(i, j)` with `i ◁ j`, in row-major order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|i| self.above[i].ones().map(move |j| (i, j))).collect()
    }

    /// Hasse covers: `i ◁ j` with nothing strictly in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relation_pairs()
            .into_iter()
            .filter(|&(i, j)| self.above[i].is_disjoint(&self.below[j]))
            .collect()
    }

    fn check(&self, s: &ElementSet) -> Result<()> {
        if s.universe() > self.n {
            if let Some(bad) = s.iter().find(|&x| x >= self.n) {
                return Err(Error::OutOfRange { element: bad, size: self.n });
            }
        }
        Ok(())
    }

    /// Resizes a set to this poset's universe.
    pub fn set(&self, members: &[usize]) -> Result<ElementSet> {
        ElementSet::from_members(self.n, members.iter().copied())
    }

    pub fn is_antichain(&self, s: &ElementSet) -> Result<bool> {
        self.check(s)?;
        Ok(self.comparable_pair(s).is_none())
    }

    pub fn is_chain(&self, s: &ElementSet) -> Result<bool> {
        self.check(s)?;
        Ok(self.incomparable_pair(s).is_none())
    }

    /// First comparable pair inside `s`, if any.
    pub fn comparable_pair(&self, s: &ElementSet) -> Option<(usize, usize)> {
        for i in s.iter() {
            if let Some(j) = self.above[i].ones().find(|&j| s.contains(j)) {
                return Some((i, j));
            }
        }
        None
    }

    /// First incomparable pair inside `s`, if any.
    pub fn incomparable_pair(&self, s: &ElementSet) -> Option<(usize, usize)> {
        let v = s.to_vec();
        for (a, &i) in v.iter().enumerate() {
            for &j in &v[a + 1..] {
                if !self.comparable(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// `D(A)` for `Down`, `U(A)` for `Up`.
    pub fn closure(&self, a: &ElementSet, direction: Direction) -> ElementSet {
        let rows = match direction {
            Direction::Down => &self.below,
            Direction::Up => &self.above,
        };
        let mut out = FixedBitSet::with_capacity(self.n);
        for j in a.iter() {
            out.union_with(&rows[j]);
        }
        ElementSet::from_bits(out)
    }

    pub fn down(&self, a: &ElementSet) -> ElementSet {
        self.closure(a, Direction::Down)
    }

    pub fn up(&self, a: &ElementSet) -> ElementSet {
        self.closure(a, Direction::Up)
    }

    /// True iff `{D(A), A, U(A)}` partitions the ground set.
    pub fn is_maximal_antichain(&self, a: &ElementSet) -> Result<bool> {
        self.check(a)?;
        if let Some((i, j)) = self.comparable_pair(a) {
            return Err(Error::NotAntichain(i, j));
        }
        Ok(self.is_maximal_unchecked(a))
    }

    pub(crate) fn is_maximal_unchecked(&self, a: &ElementSet) -> bool {
        let covered = self.down(a).union(a).union(&self.up(a));
        covered.len() == self.n
    }

    /// Elements incomparable to every member of `a` (and outside it).
    pub fn free_of(&self, a: &ElementSet) -> ElementSet {
        self.down(a).union(a).union(&self.up(a)).complement()
    }

    /// Extends the antichain `seed` to a maximal antichain of the whole order
    /// inside `region`, where `region = D(A) ∪ A` for some maximal antichain `A`.
    ///
    /// Candidates are taken smallest index first. A candidate outside the
    /// region is replaced by a member of `A` strictly below it.
    pub fn extend_to_maximal(&self, seed: &ElementSet, region: &ElementSet) -> Result<ElementSet> {
        self.check(seed)?;
        self.check(region)?;
        if let Some((i, j)) = self.comparable_pair(seed) {
            return Err(Error::NotAntichain(i, j));
        }
        if !seed.is_subset(region) {
            return Err(Error::ExtensionFailed);
        }
        let top: Vec<usize> =
            region.iter().filter(|&i| !self.above[i].ones().any(|j| region.contains(j))).collect();
        let mut cur = seed.clone();
        while let Some(j) = self.free_of(&cur).first() {
            let pick = if region.contains(j) {
                j
            } else {
                let free = self.free_of(&cur);
                top.iter()
                    .copied()
                    .find(|&i| self.lt(i, j) && free.contains(i))
                    .ok_or(Error::ExtensionFailed)?
            };
            cur = cur.with(pick);
        }
        Ok(cur)
    }

    /// `A ⊴ A'`: every member of `A` is in `A'` or strictly below it.
    pub fn antichain_leq(&self, a: &ElementSet, b: &ElementSet) -> Result<bool> {
        for s in [a, b] {
            if !self.is_maximal_antichain(s)? {
                return Err(Error::NotMaximalAntichain);
            }
        }
        Ok(a.is_subset(&self.down(b).union(b)))
    }

    /// Interval between two cuts (maximal antichains or the infinities).
    pub fn interval(&self, lo: Cut<'_>, hi: Cut<'_>, kind: IntervalKind) -> Result<ElementSet> {
        if let (Cut::At(a), Cut::At(b)) = (lo, hi) {
            if !self.antichain_leq(a, b)? {
                return Err(Error::OrderViolation);
            }
        }
        for c in [lo, hi] {
            if let Cut::At(a) = c {
                if !self.is_maximal_antichain(a)? {
                    return Err(Error::NotMaximalAntichain);
                }
            }
        }
        let (lo_closed, hi_closed) = match kind {
            IntervalKind::ClosedOpen => (true, false),
            IntervalKind::ClosedClosed => (true, true),
            IntervalKind::OpenOpen => (false, false),
            IntervalKind::OpenClosed => (false, true),
        };
        let lower = match lo {
            Cut::NegInf => self.all(),
            Cut::At(a) if lo_closed => self.up(a).union(a),
            Cut::At(a) => self.up(a),
            Cut::PosInf => self.empty_set(),
        };
        let upper = match hi {
            Cut::PosInf => self.all(),
            Cut::At(b) if hi_closed => self.down(b).union(b),
            Cut::At(b) => self.down(b),
            Cut::NegInf => self.empty_set(),
        };
        Ok(lower.intersection(&upper))
    }

    /// `[i0, i1]_P = { i : i0 ⊴ i ⊴ i1 }`.
    pub fn point_interval(&self, i0: usize, i1: usize) -> ElementSet {
        let mut out = ElementSet::empty(self.n);
        if !self.le(i0, i1) {
            return out;
        }
        for i in 0..self.n {
            if self.le(i0, i) && self.le(i, i1) {
                out = out.with(i);
            }
        }
        out
    }

    /// All levels of the suborder on `x`, from below (`Down`) or above (`Up`).
    pub fn levels_within(&self, x: &ElementSet, direction: Direction) -> Vec<ElementSet> {
        let mut rest = x.clone();
        let mut out = Vec::new();
        while !rest.is_empty() {
            let lvl: Vec<usize> = rest
                .iter()
                .filter(|&i| {
                    let row = match direction {
                        Direction::Down => &self.below[i],
                        Direction::Up => &self.above[i],
                    };
                    !row.ones().any(|j| rest.contains(j))
                })
                .collect();
            let lvl = ElementSet::of(self.n, &lvl);
            rest = rest.difference(&lvl);
            out.push(lvl);
        }
        out
    }

    /// `Lev_n^-(P)` for `Down`, `Lev_n^+(P)` for `Up`; empty once exhausted.
    pub fn level(&self, n: usize, direction: Direction) -> ElementSet {
        self.level_within(&self.all(), n, direction)
    }

    pub fn level_within(&self, x: &ElementSet, n: usize, direction: Direction) -> ElementSet {
        self.levels_within(x, direction).into_iter().nth(n).unwrap_or_else(|| self.empty_set())
    }

    /// Minimal (`Down`) or maximal (`Up`) elements of `x`.
    pub fn extremal(&self, x: &ElementSet, direction: Direction) -> ElementSet {
        self.level_within(x, 0, direction)
    }

    /// The suborder on `x`, relabelled to `0..|x|` in ascending order, with
    /// the map back to original labels.
    pub fn induced(&self, x: &ElementSet) -> (Poset, Vec<usize>) {
        let labels = x.to_vec();
        let m = labels.len();
        let mut above = vec![FixedBitSet::with_capacity(m); m];
        for (a, &i) in labels.iter().enumerate() {
            for (b, &j) in labels.iter().enumerate() {
                if self.lt(i, j) {
                    above[a].insert(b);
                }
            }
        }
        (Poset::from_above(m, above), labels)
    }

    /// Sorts a chain ascending in `◁`.
    pub fn sort_chain(&self, c: &ElementSet) -> Vec<usize> {
        let mut v = c.to_vec();
        v.sort_by_key(|&i| self.below[i].ones().filter(|&j| c.contains(j)).count());
        v
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
        for i in 0..self.n {
            out.push_str(&format!("  {i};\n"));
        }
        for (i, j) in self.covers() {
            out.push_str(&format!("  {i} -> {j};\n"));
        }
        out.push_str("}\n");
        out
    }
}
