//! Two-colorings of a finite poset and the N-indiscernibility check.
//!
//! A coloring `f` is N-indiscernible when
//! 1. every antichain `A` has a color `t` with `|{i ∈ A : f(i) = t}| ≤ N`, and
//! 2. no chain `i_0 ◁ … ◁ i_{2N+1}` alternates colors at every step.
//!
//! Condition 1 is read over the antichain `A`, not over the whole poset; the
//! majority color of large antichains only makes sense with that reading.

use serde::Serialize;

use crate::poset::Poset;
use crate::set::ElementSet;
use crate::{Error, Result};

/// Hard ceiling for the exhaustive antichain search (bitmask width).
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPoset {
    pub poset: Poset,
    colors: Vec<u8>,
    pub n_param: usize,
}

/// Which clause of the definition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// Some antichain has more than N elements of each color.
    Antichain,
    /// Some chain alternates 2N+2 times.
    Alternation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    /// Antichain members (ascending) or chain members (ascending in `◁`).
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n_param: usize,
    pub passes: bool,
    pub max_bichromatic: usize,
    pub bichromatic_witness: Vec<usize>,
    pub max_alternation: usize,
    pub alternation_witness: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl ColoredPoset {
    pub fn new(poset: Poset, colors: Vec<u8>, n_param: usize) -> Result<Self> {
        Self::with_cap(poset, colors, n_param, MAX_ELEMENTS)
    }

    pub fn with_cap(poset: Poset, colors: Vec<u8>, n_param: usize, cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_ELEMENTS);
        if colors.len() != poset.len() {
            return Err(Error::Schema(format!(
                "coloring has {} entries for {} elements",
                colors.len(),
                poset.len()
            )));
        }
        if let Some(c) = colors.iter().find(|&&c| c > 1) {
            return Err(Error::Schema(format!("color {c} is not 0 or 1")));
        }
        if poset.len() > cap {
            return Err(Error::CapExceeded { what: "elements", value: poset.len(), cap });
        }
        Ok(ColoredPoset { poset, colors, n_param })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn color(&self, i: usize) -> u8 {
        self.colors[i]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// `M = (2N+1)(N+1)`.
    pub fn block_bound(&self) -> usize {
        (2 * self.n_param + 1) * (self.n_param + 1)
    }

    /// `X^t = f⁻¹(t) ∩ X`.
    pub fn color_class(&self, x: &ElementSet, t: u8) -> ElementSet {
        let members: Vec<usize> = x.iter().filter(|&i| self.colors[i] == t).collect();
        ElementSet::of(self.len(), &members)
    }

    /// `P^t`.
    pub fn class(&self, t: u8) -> ElementSet {
        self.color_class(&self.poset.all(), t)
    }

    /// Longest chain along which the color flips at every step.
    pub fn max_alternation(&self) -> (usize, Vec<usize>) {
        let p = &self.poset;
        let n = p.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (p.strictly_below(i).len(), i));
        let mut alt = vec![0usize; n];
        let mut prev: Vec<Option<usize>> = vec![None; n];
        for &i in &order {
            alt[i] = 1;
            for j in p.strictly_below(i).iter() {
                if self.colors[j] != self.colors[i] && alt[j] + 1 > alt[i] {
                    alt[i] = alt[j] + 1;
                    prev[i] = Some(j);
                }
            }
        }
        let Some(best) = (0..n).max_by_key(|&i| (alt[i], std::cmp::Reverse(i))) else {
            return (0, Vec::new());
        };
        let mut witness = vec![best];
        let mut cur = best;
        while let Some(j) = prev[cur] {
            witness.push(j);
            cur = j;
        }
        witness.reverse();
        (alt[best], witness)
    }

    /// Maximises `min(|A⁰|, |A¹|)` over antichains `A` by branch and bound.
    ///
    /// The witness is the first optimum in include-first order over ascending
    /// elements; value 0 is witnessed by the empty set.
    pub fn max_bichromatic_antichain(&self) -> (usize, ElementSet) {
        let n = self.len();
        let comp: Vec<u64> = (0..n)
            .map(|i| {
                let mut m = 0u64;
                for j in self.poset.strictly_below(i).iter().chain(self.poset.strictly_above(i).iter()) {
                    m |= 1 << j;
                }
                m
            })
            .collect();
        let mut col1 = 0u64;
        for i in 0..n {
            if self.colors[i] == 1 {
                col1 |= 1 << i;
            }
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut search = Bichromatic { comp, col1, col0: all & !col1, best: 0, best_set: 0 };
        search.run(all, 0);
        let members: Vec<usize> = (0..n).filter(|&i| search.best_set >> i & 1 == 1).collect();
        (search.best, ElementSet::of(n, &members))
    }

    pub fn verify(&self) -> VerificationReport {
        let (bi, bi_w) = self.max_bichromatic_antichain();
        let (alt, alt_w) = self.max_alternation();
        let n = self.n_param;
        let mut violations = Vec::new();
        if bi > n {
            violations.push(Violation { condition: Condition::Antichain, witness: bi_w.to_vec() });
        }
        if alt > 2 * n + 1 {
            violations.push(Violation { condition: Condition::Alternation, witness: alt_w.clone() });
        }
        VerificationReport {
            n_param: n,
            passes: violations.is_empty(),
            max_bichromatic: bi,
            bichromatic_witness: bi_w.to_vec(),
            max_alternation: alt,
            alternation_witness: alt_w,
            violations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.verify().passes
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let r = self.verify();
        match r.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidColoring {
                n: self.n_param,
                reason: format!("{:?} violated, witness {:?}", v.condition, v.witness),
            }),
        }
    }

    /// Majority color of an antichain with more than 2N members.
    pub fn maj(&self, a: &ElementSet) -> Result<u8> {
        let n = self.n_param;
        if a.len() <= 2 * n {
            return Err(Error::TooSmall { size: a.len(), n });
        }
        let ones = self.color_class(a, 1).len();
        let zeros = a.len() - ones;
        match (zeros <= n, ones <= n) {
            (_, true) => Ok(0),
            (true, false) => Ok(1),
            (false, false) => Err(Error::NotUnique),
        }
    }
}

struct Bichromatic {
    comp: Vec<u64>,
    col0: u64,
    col1: u64,
    best: usize,
    best_set: u64,
}

impl Bichromatic {
    fn run(&mut self, cand: u64, chosen: u64) {
        let c0 = (chosen & self.col0).count_ones() as usize;
        let c1 = (chosen & self.col1).count_ones() as usize;
        let here = c0.min(c1);
        if here > self.best {
            self.best = here;
            self.best_set = chosen;
        }
        let r0 = (cand & self.col0).count_ones() as usize;
        let r1 = (cand & self.col1).count_ones() as usize;
        if (c0 + r0).min(c1 + r1) <= self.best || cand == 0 {
            return;
        }
        let i = cand.trailing_zeros() as usize;
        let bit = 1u64 << i;
        self.run(cand & !bit & !self.comp[i], chosen | bit);
        self.run(cand & !bit, chosen);
    }
}
