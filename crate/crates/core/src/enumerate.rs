//! Exhaustive enumeration of small posets, labeled and up to isomorphism.

use std::collections::BTreeSet;

use crate::poset::Poset;

/// Largest size accepted by the exhaustive enumerators.
pub const MAX_ENUM_SIZE: usize = 8;

/// Every strict partial order on `0..n` (labels matter).
pub fn labeled_posets(n: usize) -> Vec<Poset> {
    assert!(n <= 5, "labeled enumeration is exhaustive over 2^(n(n-1)) relations");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut lt = vec![vec![false; n]; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            lt[i][j] = mask >> k & 1 == 1;
        }
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| !(lt[i][j] && lt[j][i])));
        let transitive =
            (0..n).all(|i| (0..n).all(|j| !lt[i][j] || (0..n).all(|k| !lt[j][k] || lt[i][k])));
        if antisymmetric && transitive {
            out.push(Poset::from_matrix(&lt).expect("checked acyclic and transitive"));
        }
    }
    out
}

/// One representative per isomorphism class of posets on `n` points, built by
/// adding a new maximal element over each down-set and keeping canonical forms.
pub fn unlabeled_posets(n: usize) -> Vec<Poset> {
    assert!(n <= MAX_ENUM_SIZE, "unlabeled enumeration supports at most {MAX_ENUM_SIZE} points");
    let mut level: BTreeSet<Vec<u64>> = BTreeSet::new();
    level.insert(Vec::new());
    for size in 0..n {
        let mut next = BTreeSet::new();
        for rows in &level {
            for down in down_sets(rows, size) {
                let mut grown = rows.clone();
                grown.push(down);
                next.insert(canonical(&grown));
            }
        }
        level = next;
    }
    level.into_iter().map(|rows| from_rows(&rows)).collect()
}

// `rows[j]` is the bitmask of elements strictly below `j`.
fn from_rows(rows: &[u64]) -> Poset {
    let n = rows.len();
    let lt: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| rows[j] >> i & 1 == 1).collect()).collect();
    Poset::from_matrix(&lt).expect("rows encode a closed order")
}

fn down_sets(rows: &[u64], size: usize) -> Vec<u64> {
    (0u64..1 << size)
        .filter(|&s| (0..size).all(|j| s >> j & 1 == 0 || rows[j] & !s == 0))
        .collect()
}

/// Canonical relabeling: refine elements by their down/up profiles, then take
/// the least code over relabelings that respect the refined classes.
fn canonical(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let ups: Vec<u64> = (0..n).map(|i| (0..n).filter(|&j| rows[j] >> i & 1 == 1).fold(0, |m, j| m | 1 << j)).collect();
    let mut color: Vec<usize> = vec![0; n];
    loop {
        let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut d: Vec<usize> = (0..n).filter(|&j| rows[i] >> j & 1 == 1).map(|j| color[j]).collect();
                let mut u: Vec<usize> = (0..n).filter(|&j| ups[i] >> j & 1 == 1).map(|j| color[j]).collect();
                d.sort_unstable();
                u.sort_unstable();
                (color[i], d, u)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>, Vec<usize>)> = sig.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sig.iter().map(|s| ranked.binary_search(&s).expect("present")).collect();
        let stable = next.iter().collect::<BTreeSet<_>>().len() == color.iter().collect::<BTreeSet<_>>().len();
        color = next;
        if stable {
            break;
        }
    }
    let mut slots: Vec<usize> = (0..n).collect();
    slots.sort_by_key(|&i| color[i]);
    let slot_color: Vec<usize> = slots.iter().map(|&i| color[i]).collect();
    let mut search = Canon { rows, color: &color, slot_color, best: None, cur: Vec::new(), code: Vec::new(), used: vec![false; n] };
    search.run();
    let order = search.best.expect("at least one labeling").1;
    // Relabel: new label k is old element order[k].
    let mut pos = vec![0; n];
    for (k, &old) in order.iter().enumerate() {
        pos[old] = k;
    }
    order
        .iter()
        .map(|&old| (0..n).filter(|&j| rows[old] >> j & 1 == 1).fold(0u64, |m, j| m | 1 << pos[j]))
        .collect()
}

struct Canon<'a> {
    rows: &'a [u64],
    color: &'a [usize],
    slot_color: Vec<usize>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    cur: Vec<usize>,
    code: Vec<u64>,
    used: Vec<bool>,
}

impl Canon<'_> {
    // Code entry k: relations between the k-th placed element and earlier ones.
    fn entry(&self, k: usize) -> u64 {
        let x = self.cur[k];
        (0..k).fold(0u64, |m, a| {
            let y = self.cur[a];
            m | (self.rows[x] >> y & 1) << (2 * a) | (self.rows[y] >> x & 1) << (2 * a + 1)
        })
    }

    fn run(&mut self) {
        let k = self.cur.len();
        if let Some((best, _)) = &self.best {
            if self.code[..] > best[..k] {
                return;
            }
        }
        if k == self.rows.len() {
            if self.best.as_ref().is_none_or(|(b, _)| self.code < *b) {
                self.best = Some((self.code.clone(), self.cur.clone()));
            }
            return;
        }
        for x in 0..self.rows.len() {
            if self.used[x] || self.color[x] != self.slot_color[k] {
                continue;
            }
            self.used[x] = true;
            self.cur.push(x);
            let e = self.entry(k);
            self.code.push(e);
            self.run();
            self.code.pop();
            self.cur.pop();
            self.used[x] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| labeled_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219]);
    }

    #[test]
    fn unlabeled_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| unlabeled_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318]);
    }
}
