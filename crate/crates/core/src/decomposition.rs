//! Block breakdown of an N-indiscernible coloring and the resulting
//! description of `P¹` by finitely many chains, plus the chain and antichain
//! compressions used by the definability layer.
//!
//! Throughout, `M = (2N+1)(N+1)` and block `n` is `[A_{n−1}, A_n)` with
//! `A_{−1} = −∞` and `A_K = ∞`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::antichains::{maximal_antichains_in, pick_minimal};
use crate::chain_cover::restricted_cover;
use crate::coloring::ColoredPoset;
use crate::poset::{Cut, IntervalKind, Poset};
use crate::set::ElementSet;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSequence {
    pub antichains: Vec<ElementSet>,
}

impl BlockSequence {
    /// `K`, the number of barrier antichains.
    pub fn count(&self) -> usize {
        self.antichains.len()
    }

    pub fn lower_cut(&self, n: usize) -> Cut<'_> {
        match n {
            0 => Cut::NegInf,
            _ => Cut::At(&self.antichains[n - 1]),
        }
    }

    pub fn upper_cut(&self, n: usize) -> Cut<'_> {
        match self.antichains.get(n) {
            Some(a) => Cut::At(a),
            None => Cut::PosInf,
        }
    }

    /// Block `n` for `0 ≤ n ≤ K`.
    pub fn block(&self, p: &Poset, n: usize) -> ElementSet {
        p.interval(self.lower_cut(n), self.upper_cut(n), IntervalKind::ClosedOpen)
            .expect("barriers are increasing maximal antichains")
    }

    pub fn blocks(&self, p: &Poset) -> Vec<ElementSet> {
        (0..=self.count()).map(|n| self.block(p, n)).collect()
    }
}

/// The greedy barrier search: `A_n` is the `⊴`-least maximal antichain above
/// `A_{n−1}` with more than `M` elements of color `n mod 2`.
pub fn breakdown(cp: &ColoredPoset) -> Result<BlockSequence> {
    cp.require_valid()?;
    let p = &cp.poset;
    let m = cp.block_bound();
    let limit = 2 * cp.n_param + 2;
    let mut antichains: Vec<ElementSet> = Vec::new();
    loop {
        let n = antichains.len();
        let t = (n % 2) as u8;
        let region = match antichains.last() {
            None => p.all(),
            Some(prev) => p.up(prev).union(prev),
        };
        let cands: Vec<ElementSet> = maximal_antichains_in(cp, &region, t, m)
            .into_iter()
            .filter(|a| Some(a) != antichains.last())
            .collect();
        let Some(next) = pick_minimal(p, &cands) else { break };
        antichains.push(next);
        if antichains.len() > limit {
            return Err(Error::InternalBoundViolation(format!(
                "breakdown produced more than {limit} barriers"
            )));
        }
    }
    Ok(BlockSequence { antichains })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n_param: usize,
    pub blocks: BlockSequence,
    /// Block `n` as a set, for `0 ≤ n ≤ K`.
    pub block_sets: Vec<ElementSet>,
    /// Per block `n`, chains covering its elements of color `n mod 2`.
    pub chain_covers: Vec<Vec<Vec<usize>>>,
}

pub fn decompose(cp: &ColoredPoset) -> Result<Decomposition> {
    let blocks = breakdown(cp)?;
    let p = &cp.poset;
    let m = cp.block_bound();
    let block_sets = blocks.blocks(p);
    let mut chain_covers = Vec::with_capacity(block_sets.len());
    for (n, b) in block_sets.iter().enumerate() {
        let target = cp.color_class(b, (n % 2) as u8);
        let cover = restricted_cover(p, &target);
        if cover.width() > m {
            return Err(Error::InternalBoundViolation(format!(
                "block {n} needs {} chains, bound is {m}",
                cover.width()
            )));
        }
        chain_covers.push(cover.chains);
    }
    Ok(Decomposition { n_param: cp.n_param, blocks, block_sets, chain_covers })
}

impl Decomposition {
    /// Color of `i` read off block and chain membership alone.
    pub fn evaluate(&self, i: usize) -> u8 {
        let n = self
            .block_sets
            .iter()
            .position(|b| b.contains(i))
            .expect("blocks partition the poset");
        let on_chain = self.chain_covers[n].iter().any(|c| c.contains(&i));
        match (n % 2 == 0, on_chain) {
            (true, false) | (false, true) => 1,
            _ => 0,
        }
    }

    /// The set of color-1 elements described by the decomposition.
    pub fn ones(&self, universe: usize) -> ElementSet {
        let members: Vec<usize> = (0..universe).filter(|&i| self.evaluate(i) == 1).collect();
        ElementSet::of(universe, &members)
    }

    /// Largest chain count over all blocks.
    pub fn max_chains(&self) -> usize {
        self.chain_covers.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Endpoint pairs `(i_n, i′_n)` whose point intervals cover a monochromatic
/// chain without meeting the opposite color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCompression {
    pub t: u8,
    pub pairs: Vec<(usize, usize)>,
}

impl ChainCompression {
    /// `K`, one less than the number of pairs.
    pub fn k(&self) -> usize {
        self.pairs.len() - 1
    }

    pub fn covered(&self, p: &Poset) -> ElementSet {
        self.pairs
            .iter()
            .fold(p.empty_set(), |acc, &(a, b)| acc.union(&p.point_interval(a, b)))
    }
}

/// Cuts the chain `C ⊆ P^t` at opposite-colored interlopers.
///
/// From the current start `i_n`, every interloper `j` with `i_n ⊴ i⁻_j` forces a
/// cut before `i⁺_j` (`i⁻_j`, `i⁺_j` are the nearest members of `C` below and
/// above `j`). The next start is the least such `i⁺_j`, and `i′_n` is its
/// predecessor in `C`.
pub fn compress_chain(cp: &ColoredPoset, c: &ElementSet, t: u8) -> Result<ChainCompression> {
    let p = &cp.poset;
    if let Some((i, j)) = p.incomparable_pair(c) {
        return Err(Error::NotChain(i, j));
    }
    if c.iter().any(|i| cp.color(i) != t) {
        return Err(Error::NotMonochromatic(t));
    }
    let chain = p.sort_chain(c);
    let (Some(&first), Some(&last)) = (chain.first(), chain.last()) else {
        return Ok(ChainCompression { t, pairs: Vec::new() });
    };
    // (position of i⁻_j, position of i⁺_j) for interlopers in [min C, max C].
    let cuts: Vec<(usize, usize)> = p
        .point_interval(first, last)
        .iter()
        .filter(|&j| cp.color(j) != t)
        .map(|j| {
            let lo = chain.iter().rposition(|&x| p.lt(x, j)).expect("min C lies below j");
            let hi = chain.iter().position(|&x| p.lt(j, x)).expect("max C lies above j");
            (lo, hi)
        })
        .collect();
    let mut pairs = Vec::new();
    let mut start = 0;
    loop {
        let next = cuts.iter().filter(|&&(lo, _)| lo >= start).map(|&(_, hi)| hi).min();
        match next {
            Some(hi) => {
                pairs.push((chain[start], chain[hi - 1]));
                start = hi;
            }
            None => {
                pairs.push((chain[start], last));
                break;
            }
        }
    }
    if pairs.len() > cp.n_param + 1 {
        return Err(Error::InternalBoundViolation(format!(
            "chain compression used {} intervals",
            pairs.len()
        )));
    }
    Ok(ChainCompression { t, pairs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntichainCompression {
    pub t: u8,
    pub a0: ElementSet,
    pub j_minus: ElementSet,
    pub j_plus: ElementSet,
}

/// Replaces a large maximal antichain `A` (majority color `t`) by a bounded
/// core `A_0` plus witness sets `J⁻`, `J⁺ ⊆ P^{1−t}` that decide, for every
/// `j ∈ P^{1−t}`, whether `j` lies below or above `A`.
pub fn compress_antichain(cp: &ColoredPoset, a: &ElementSet, t: u8) -> Result<AntichainCompression> {
    let p = &cp.poset;
    if !p.is_maximal_antichain(a)? {
        return Err(Error::NotMaximalAntichain);
    }
    let n = cp.n_param;
    let minority = cp.color_class(a, 1 - t);
    if minority.len() > n {
        return Err(Error::BadMajority(minority.len()));
    }
    if a.len() <= 2 * n {
        return Ok(AntichainCompression { t, a0: a.clone(), j_minus: p.empty_set(), j_plus: p.empty_set() });
    }
    let majority: Vec<usize> = cp.color_class(a, t).iter().take(n + 1).collect();
    let a0 = minority.union(&ElementSet::of(p.len(), &majority));
    let opposite = cp.class(1 - t);
    let j_minus = witnesses(p, &a0, &opposite.intersection(&p.down(a)), false);
    let j_plus = witnesses(p, &a0, &opposite.intersection(&p.up(a)), true);
    if j_minus.len() > n || j_plus.len() > n {
        return Err(Error::InternalBoundViolation(format!(
            "antichain witnesses {} below, {} above",
            j_minus.len(),
            j_plus.len()
        )));
    }
    Ok(AntichainCompression { t, a0, j_minus, j_plus })
}

// Greedy: take the least j in `pool` keeping `a0 ∪ J ∪ {j}` an antichain and
// add an extremal element of `pool` beyond j (maximal below A, minimal above).
fn witnesses(p: &Poset, a0: &ElementSet, pool: &ElementSet, above: bool) -> ElementSet {
    let mut js = p.empty_set();
    loop {
        let base = a0.union(&js);
        let Some(j) = pool.iter().find(|&j| !base.contains(j) && p.is_antichain(&base.with(j)).unwrap_or(false)) else {
            return js;
        };
        let beyond = |x: usize| if above { p.le(x, j) } else { p.le(j, x) };
        let ext = pool
            .iter()
            .filter(|&x| beyond(x))
            .find(|&x| {
                !pool.iter().any(|y| y != x && if above { p.lt(y, x) } else { p.lt(x, y) })
            })
            .expect("a finite pool has extremal elements");
        js = js.with(ext);
    }
}

/// Partition of `[A, ∞)` by the trace `I = {i′ ∈ A_0 ∪ J⁻ : i′ ⊴ i}`.
pub fn barrier_partition(
    cp: &ColoredPoset,
    a: &ElementSet,
    t: u8,
) -> Result<(AntichainCompression, BTreeMap<ElementSet, ElementSet>)> {
    let comp = compress_antichain(cp, a, t)?;
    let p = &cp.poset;
    let base = comp.a0.union(&comp.j_minus);
    let mut parts: BTreeMap<ElementSet, ElementSet> = BTreeMap::new();
    for i in p.up(a).union(a).iter() {
        let key: Vec<usize> = base.iter().filter(|&x| p.le(x, i)).collect();
        let key = ElementSet::of(p.len(), &key);
        let part = parts.entry(key).or_insert_with(|| p.empty_set());
        *part = part.with(i);
    }
    Ok((comp, parts))
}

/// The signature of `j ◁ A` against the compression:
/// `{i′ ∈ A_0 : j ◁ i′} ∪ {j′ ∈ J⁻ : j ⊴ j′}`.
pub fn below_signature(p: &Poset, comp: &AntichainCompression, j: usize) -> ElementSet {
    let members: Vec<usize> = comp
        .a0
        .iter()
        .filter(|&x| p.lt(j, x))
        .chain(comp.j_minus.iter().filter(|&x| p.le(j, x)))
        .collect();
    ElementSet::of(p.len(), &members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(p: Poset, colors: &[u8], n: usize) -> ColoredPoset {
        ColoredPoset::new(p, colors.to_vec(), n).unwrap()
    }

    #[test]
    fn constant_coloring_has_no_barriers() {
        let c = cp(Poset::diamond(), &[1; 4], 1);
        assert_eq!(breakdown(&c).unwrap().count(), 0);
        let c = cp(Poset::chain(6), &[1, 1, 1, 0, 0, 0], 1);
        let d = decompose(&c).unwrap();
        assert_eq!(d.blocks.count(), 0);
        assert_eq!(d.chain_covers, vec![vec![vec![3, 4, 5]]]);
        assert_eq!(d.ones(6).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn balanced_antichain_is_rejected() {
        let colors: Vec<u8> = (0..14).map(|i| (i >= 7) as u8).collect();
        let c = cp(Poset::antichain(14), &colors, 1);
        assert!(matches!(breakdown(&c), Err(Error::InvalidColoring { .. })));
    }

    #[test]
    fn large_zero_antichain_opens_a_block() {
        // Eight zeros and one one side by side: A_0 is the whole antichain.
        let mut colors = vec![0u8; 9];
        colors[8] = 1;
        let c = cp(Poset::antichain(9), &colors, 1);
        let d = decompose(&c).unwrap();
        assert_eq!(d.blocks.count(), 1);
        assert!(d.block_sets[0].is_empty());
        assert_eq!(d.chain_covers[1], vec![vec![8]]);
        for (i, &f) in colors.iter().enumerate() {
            assert_eq!(d.evaluate(i), f);
        }
    }

    #[test]
    fn single_element() {
        for f in [0u8, 1] {
            let c = cp(Poset::chain(1), &[f], 0);
            assert_eq!(decompose(&c).unwrap().evaluate(0), f);
        }
    }

    #[test]
    fn chain_compression() {
        let c = cp(Poset::chain(5), &[1, 1, 0, 1, 1], 1);
        let r = compress_chain(&c, &c.poset.set(&[0, 1, 3, 4]).unwrap(), 1).unwrap();
        assert_eq!(r.pairs, vec![(0, 1), (3, 4)]);
        let c = cp(Poset::chain(5), &[1; 5], 1);
        let r = compress_chain(&c, &c.poset.all(), 1).unwrap();
        assert_eq!(r.pairs, vec![(0, 4)]);
        let r = compress_chain(&c, &c.poset.set(&[2]).unwrap(), 1).unwrap();
        assert_eq!(r.pairs, vec![(2, 2)]);
        assert!(matches!(compress_chain(&c, &c.poset.all(), 0), Err(Error::NotMonochromatic(0))));
    }

    #[test]
    fn small_antichain_is_its_own_core() {
        let c = cp(Poset::diamond(), &[0, 1, 1, 0], 1);
        let a = c.poset.set(&[1, 2]).unwrap();
        let r = compress_antichain(&c, &a, 1).unwrap();
        assert_eq!(r.a0, a);
        assert!(r.j_minus.is_empty() && r.j_plus.is_empty());
    }

    #[test]
    fn antichain_witnesses() {
        // Top row 0..5 (color 1); 5 below 0 and 1, 6 below 4 (color 0).
        let p = Poset::from_pairs(7, &[(5, 0), (5, 1), (6, 4)]).unwrap();
        let c = cp(p, &[1, 1, 1, 1, 1, 0, 0], 1);
        let a = c.poset.set(&[0, 1, 2, 3, 4]).unwrap();
        let r = compress_antichain(&c, &a, 1).unwrap();
        assert_eq!(r.a0.to_vec(), vec![0, 1]);
        assert_eq!(r.j_minus.to_vec(), vec![6]);
        for j in [5, 6] {
            let below_a = c.poset.down(&a).contains(j);
            let below_core = r.a0.iter().any(|x| c.poset.lt(j, x)) || r.j_minus.iter().any(|x| c.poset.le(j, x));
            assert_eq!(below_a, below_core);
        }
    }
}
