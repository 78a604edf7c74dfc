//! Poset width and minimum chain covers (Dilworth), via maximum matching on
//! the comparability split graph and a König vertex cover for the witness.

use serde::Serialize;

use crate::matching::{hopcroft_karp, konig_cover};
use crate::poset::Poset;
use crate::set::ElementSet;

/// A partition of a (sub)order into chains, with a maximum antichain of the
/// same size certifying optimality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCover {
    /// Chains sorted by their minimum element; each listed ascending in `◁`.
    pub chains: Vec<Vec<usize>>,
    pub width_witness: ElementSet,
}

impl ChainCover {
    pub fn width(&self) -> usize {
        self.chains.len()
    }

    pub fn chain_sets(&self, universe: usize) -> Vec<ElementSet> {
        self.chains.iter().map(|c| ElementSet::of(universe, c)).collect()
    }
}

pub fn min_chain_cover(p: &Poset) -> ChainCover {
    let n = p.len();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| p.strictly_above(i).to_vec()).collect();
    let m = hopcroft_karp(&adj, n);
    let mut chains = Vec::new();
    for start in 0..n {
        if m.pair_right[start].is_some() {
            continue;
        }
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(next) = m.pair_left[cur] {
            chain.push(next);
            cur = next;
        }
        chains.push(chain);
    }
    chains.sort_by_key(|c| *c.iter().min().expect("chains are non-empty"));
    let (cl, cr) = konig_cover(&adj, n, &m);
    let witness: Vec<usize> = (0..n).filter(|&i| !cl[i] && !cr[i]).collect();
    debug_assert_eq!(witness.len(), chains.len());
    ChainCover { chains, width_witness: ElementSet::of(n, &witness) }
}

/// Minimum chain cover of the suborder induced on `x`, in the labels of `p`.
pub fn restricted_cover(p: &Poset, x: &ElementSet) -> ChainCover {
    let (sub, labels) = p.induced(x);
    let inner = min_chain_cover(&sub);
    let chains = inner.chains.iter().map(|c| c.iter().map(|&i| labels[i]).collect()).collect();
    let witness: Vec<usize> = inner.width_witness.iter().map(|i| labels[i]).collect();
    ChainCover { chains, width_witness: ElementSet::of(p.len(), &witness) }
}

/// Width of the suborder on `x`.
pub fn width_of(p: &Poset, x: &ElementSet) -> usize {
    restricted_cover(p, x).width()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(p: &Poset, c: &ChainCover) {
        let mut seen = p.empty_set();
        for ch in &c.chains {
            let s = ElementSet::of(p.len(), ch);
            assert!(p.is_chain(&s).unwrap());
            assert!(s.is_disjoint(&seen));
            assert_eq!(p.sort_chain(&s), *ch);
            seen = seen.union(&s);
        }
        assert_eq!(seen.len(), p.len());
        assert!(p.is_antichain(&c.width_witness).unwrap());
        assert_eq!(c.width_witness.len(), c.chains.len());
    }

    #[test]
    fn diamond_cover() {
        let d = Poset::diamond();
        let c = min_chain_cover(&d);
        check(&d, &c);
        assert_eq!(c.width(), 2);
        assert_eq!(c.width_witness.to_vec(), vec![1, 2]);
    }

    #[test]
    fn chains_and_antichains() {
        for k in 1..6 {
            let a = Poset::antichain(k);
            let c = min_chain_cover(&a);
            check(&a, &c);
            assert_eq!(c.width(), k);
            let ch = Poset::chain(k);
            let c = min_chain_cover(&ch);
            check(&ch, &c);
            assert_eq!(c.width(), 1);
            assert_eq!(c.width_witness.len(), 1);
        }
    }

    #[test]
    fn restricted() {
        let d = Poset::diamond();
        assert_eq!(restricted_cover(&d, &d.set(&[1, 2]).unwrap()).width(), 2);
        let c = restricted_cover(&d, &d.set(&[0, 1, 3]).unwrap());
        assert_eq!(c.chains, vec![vec![0, 1, 3]]);
        assert_eq!(restricted_cover(&d, &d.empty_set()).width(), 0);
    }
}
