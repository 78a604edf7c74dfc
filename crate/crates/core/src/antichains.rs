//! Enumeration of maximal antichains inside a convex region, with pruning by
//! a color-count target, plus selection of `⊴`-extremal candidates.

use crate::coloring::ColoredPoset;
use crate::poset::Poset;
use crate::set::ElementSet;

/// Maximal antichains of `p` contained in `region` having more than
/// `threshold` members of color `t`, sorted lexicographically.
///
/// `region` must be convex between two cuts (e.g. `A ∪ U(A)`), so that
/// maximal antichains of the suborder are maximal in `p`.
pub fn maximal_antichains_in(
    cp: &ColoredPoset,
    region: &ElementSet,
    t: u8,
    threshold: usize,
) -> Vec<ElementSet> {
    let p = &cp.poset;
    let n = p.len();
    let mut comp = vec![0u64; n];
    let mut color_t = 0u64;
    let mut reg = 0u64;
    for i in region.iter() {
        reg |= 1 << i;
        if cp.color(i) == t {
            color_t |= 1 << i;
        }
    }
    for (i, m) in comp.iter_mut().enumerate() {
        for j in p.strictly_below(i).iter().chain(p.strictly_above(i).iter()) {
            *m |= 1 << j;
        }
    }
    let mut out = Vec::new();
    let mut bk = Enumerator { comp: &comp, color_t, threshold, out: &mut out };
    bk.run(0, reg, 0);
    let mut sets: Vec<ElementSet> = out
        .into_iter()
        .map(|m| ElementSet::of(n, &(0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>()))
        .collect();
    sets.sort();
    sets
}

struct Enumerator<'a> {
    comp: &'a [u64],
    color_t: u64,
    threshold: usize,
    out: &'a mut Vec<u64>,
}

impl Enumerator<'_> {
    // Bron–Kerbosch with pivoting on the incomparability graph.
    fn run(&mut self, r: u64, mut cand: u64, mut excl: u64) {
        let reach = ((r | cand) & self.color_t).count_ones() as usize;
        if reach <= self.threshold {
            return;
        }
        if cand == 0 {
            if excl == 0 {
                self.out.push(r);
            }
            return;
        }
        let pool = cand | excl;
        let pivot = (0..64)
            .filter(|&u| pool >> u & 1 == 1)
            .max_by_key(|&u| (cand & !self.comp[u] & !(1u64 << u)).count_ones())
            .expect("pool is non-empty");
        let mut branch = cand & (self.comp[pivot] | 1u64 << pivot);
        while branch != 0 {
            let v = branch.trailing_zeros() as usize;
            let bit = 1u64 << v;
            branch &= !bit;
            let keep = !self.comp[v] & !bit;
            self.run(r | bit, cand & keep, excl & keep);
            cand &= !bit;
            excl |= bit;
        }
    }
}

/// For maximal antichains, `A ⊴ B` iff `D(A) ⊆ D(B)`.
pub fn maximal_leq(p: &Poset, a: &ElementSet, b: &ElementSet) -> bool {
    p.down(a).is_subset(&p.down(b))
}

/// `⊴`-minimal candidates; among several, the lexicographically least.
pub fn pick_minimal(p: &Poset, cands: &[ElementSet]) -> Option<ElementSet> {
    let downs: Vec<ElementSet> = cands.iter().map(|a| p.down(a)).collect();
    (0..cands.len())
        .filter(|&i| !(0..cands.len()).any(|j| j != i && downs[j].is_subset(&downs[i]) && downs[j] != downs[i]))
        .map(|i| cands[i].clone())
        .min()
}

/// `⊴`-maximal candidates; among several, the lexicographically least.
pub fn pick_maximal(p: &Poset, cands: &[ElementSet]) -> Option<ElementSet> {
    let downs: Vec<ElementSet> = cands.iter().map(|a| p.down(a)).collect();
    (0..cands.len())
        .filter(|&i| !(0..cands.len()).any(|j| j != i && downs[i].is_subset(&downs[j]) && downs[j] != downs[i]))
        .map(|i| cands[i].clone())
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_maximal_antichains() {
        let cp = ColoredPoset::new(Poset::diamond(), vec![0; 4], 0).unwrap();
        let all = maximal_antichains_in(&cp, &cp.poset.all(), 0, 0);
        let v: Vec<Vec<usize>> = all.iter().map(|a| a.to_vec()).collect();
        assert_eq!(v, vec![vec![0], vec![1, 2], vec![3]]);
        let big = maximal_antichains_in(&cp, &cp.poset.all(), 0, 1);
        assert_eq!(big.len(), 1);
        assert_eq!(pick_minimal(&cp.poset, &all).unwrap().to_vec(), vec![0]);
        assert_eq!(pick_maximal(&cp.poset, &all).unwrap().to_vec(), vec![3]);
    }

    #[test]
    fn matches_brute_force() {
        // 0◁2, 1◁2, 1◁3, 4 isolated
        let p = Poset::from_pairs(5, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let cp = ColoredPoset::new(p.clone(), vec![0; 5], 0).unwrap();
        let got = maximal_antichains_in(&cp, &p.all(), 0, 0);
        let mut want = Vec::new();
        for m in 0u32..32 {
            let s = ElementSet::of(5, &(0..5).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>());
            if !s.is_empty() && p.is_antichain(&s).unwrap() && p.is_maximal_antichain(&s).unwrap() {
                want.push(s);
            }
        }
        want.sort();
        assert_eq!(got, want);
    }
}
