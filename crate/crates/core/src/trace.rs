//! Finite trace structures: a boolean relation between rows (candidate
//! witnesses) and columns (parameters), the sign-pattern types it induces on
//! tuples of columns, and indiscernibility of poset-indexed column sequences.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::coloring::ColoredPoset;
use crate::poset::Poset;
use crate::set::ElementSet;
use crate::{Error, Result};

/// Default ceiling on `|P|^{N+1}` for exhaustive tuple checks.
pub const DEFAULT_TUPLE_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStructure {
    rows: Vec<Vec<bool>>,
    columns: usize,
}

impl TraceStructure {
    pub fn new(rows: Vec<Vec<bool>>, columns: usize) -> Result<Self> {
        if let Some(r) = rows.iter().position(|r| r.len() != columns) {
            return Err(Error::Schema(format!("row {r} does not have {columns} entries")));
        }
        Ok(TraceStructure { rows, columns })
    }

    /// Rows given as membership lists: row `u` relates to column `b` iff
    /// `u ∈ members[b]`.
    pub fn from_columns(rows: usize, members: &[Vec<usize>]) -> Result<Self> {
        let mut r = vec![vec![false; members.len()]; rows];
        for (b, m) in members.iter().enumerate() {
            for &u in m {
                if u >= rows {
                    return Err(Error::OutOfRange { element: u, size: rows });
                }
                r[u][b] = true;
            }
        }
        Self::new(r, members.len())
    }

    /// `U`, the number of rows.
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// `B`, the number of columns.
    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn get(&self, u: usize, b: usize) -> bool {
        self.rows[u][b]
    }

    pub fn row(&self, u: usize) -> &[bool] {
        &self.rows[u]
    }

    /// Some row agrees with `pattern` on the given columns.
    pub fn realizes(&self, cols: &[usize], pattern: SignPattern) -> bool {
        self.rows.iter().any(|r| cols.iter().enumerate().all(|(k, &c)| r[c] == pattern.get(k)))
    }

    pub fn delta_type(&self, cols: &[usize]) -> DeltaType {
        let mut ty = DeltaType::empty(cols.len());
        for r in &self.rows {
            let bits = cols.iter().enumerate().fold(0u32, |acc, (k, &c)| acc | (u32::from(r[c]) << k));
            ty.insert(SignPattern { arity: cols.len() as u8, bits });
        }
        ty
    }

    /// Largest set of columns on which every sign pattern is realized, with
    /// the lexicographically least witness.
    pub fn independence_dimension(&self) -> (usize, Vec<usize>) {
        let mut level: Vec<Vec<usize>> = vec![Vec::new()];
        let mut best = Vec::new();
        loop {
            let mut next: Vec<Vec<usize>> = Vec::new();
            for s in &level {
                let from = s.last().map_or(0, |&c| c + 1);
                for c in from..self.columns {
                    let mut cand = s.clone();
                    cand.push(c);
                    // Every subset one smaller must already be shattered.
                    let closed = (0..cand.len()).all(|drop| {
                        let sub: Vec<usize> =
                            cand.iter().enumerate().filter(|&(k, _)| k != drop).map(|(_, &x)| x).collect();
                        level.binary_search(&sub).is_ok()
                    });
                    if closed && self.delta_type(&cand).is_full() {
                        next.push(cand);
                    }
                }
            }
            if next.is_empty() {
                return (best.len(), best);
            }
            next.sort();
            best = next[0].clone();
            level = next;
        }
    }
}

/// A sign pattern `s : {0..arity} → {0,1}`, bit `k` holding `s(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern {
    pub arity: u8,
    pub bits: u32,
}

impl SignPattern {
    pub fn new(arity: usize, bits: u32) -> Self {
        SignPattern { arity: arity as u8, bits }
    }

    pub fn get(&self, k: usize) -> bool {
        self.bits >> k & 1 == 1
    }

    pub fn all(arity: usize) -> impl Iterator<Item = SignPattern> {
        (0..1u32 << arity).map(move |bits| SignPattern::new(arity, bits))
    }

    /// The pattern with positions `a` and `b` exchanged.
    pub fn swap(&self, a: usize, b: usize) -> Self {
        let (x, y) = (self.get(a), self.get(b));
        let mut bits = self.bits & !(1 << a) & !(1 << b);
        bits |= u32::from(y) << a | u32::from(x) << b;
        SignPattern { arity: self.arity, bits }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = 0;
        for (k, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << k,
                _ => return Err(Error::Parse(format!("bad sign pattern {s:?}"))),
            }
        }
        if s.is_empty() || s.len() > 16 {
            return Err(Error::Parse(format!("bad sign pattern length {s:?}")));
        }
        Ok(SignPattern::new(s.len(), bits))
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.arity as usize {
            f.write_str(if self.get(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A sign pattern asserted (`positive`) or denied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPattern {
    pub pattern: SignPattern,
    pub positive: bool,
}

impl SignedPattern {
    pub fn holds(&self, t: &TraceStructure, cols: &[usize]) -> bool {
        t.realizes(cols, self.pattern) == self.positive
    }
}

/// The set of sign patterns realized on a tuple of columns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaType {
    arity: usize,
    words: Vec<u64>,
}

impl DeltaType {
    pub fn empty(arity: usize) -> Self {
        DeltaType { arity, words: vec![0; (1usize << arity).div_ceil(64)] }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn insert(&mut self, s: SignPattern) {
        self.words[s.bits as usize / 64] |= 1 << (s.bits % 64);
    }

    pub fn contains(&self, s: SignPattern) -> bool {
        self.words[s.bits as usize / 64] >> (s.bits % 64) & 1 == 1
    }

    pub fn patterns(&self) -> Vec<SignPattern> {
        SignPattern::all(self.arity).filter(|&s| self.contains(s)).collect()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() == 1 << self.arity
    }

    /// The type of the tuple with positions `a` and `b` exchanged.
    pub fn swap(&self, a: usize, b: usize) -> Self {
        let mut out = DeltaType::empty(self.arity);
        for s in self.patterns() {
            out.insert(s.swap(a, b));
        }
        out
    }
}

impl Serialize for DeltaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.patterns().iter().map(ToString::to_string))
    }
}

/// Columns indexed by the elements of a poset (repeats allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedSequence {
    pub poset: Poset,
    assign: Vec<usize>,
}

impl IndexedSequence {
    pub fn new(poset: Poset, assign: Vec<usize>) -> Result<Self> {
        if assign.len() != poset.len() {
            return Err(Error::Schema(format!(
                "sequence assigns {} columns for {} elements",
                assign.len(),
                poset.len()
            )));
        }
        Ok(IndexedSequence { poset, assign })
    }

    pub fn column(&self, i: usize) -> usize {
        self.assign[i]
    }

    pub fn assign(&self) -> &[usize] {
        &self.assign
    }

    pub fn columns_of(&self, idx: &[usize]) -> Vec<usize> {
        idx.iter().map(|&i| self.assign[i]).collect()
    }

    pub fn check_against(&self, t: &TraceStructure) -> Result<()> {
        match self.assign.iter().find(|&&c| c >= t.columns()) {
            Some(&c) => Err(Error::OutOfRange { element: c, size: t.columns() }),
            None => Ok(()),
        }
    }
}

/// The `⊴`-matrix of a tuple of distinct elements, row-major without the
/// diagonal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderType(Vec<bool>);

impl OrderType {
    pub fn of(p: &Poset, idx: &[usize]) -> Result<Self> {
        for (a, &i) in idx.iter().enumerate() {
            if idx[..a].contains(&i) {
                return Err(Error::RepeatedIndex(i));
            }
        }
        let mut m = Vec::with_capacity(idx.len() * idx.len());
        for &i in idx {
            for &j in idx {
                if i != j {
                    m.push(p.le(i, j));
                }
            }
        }
        Ok(OrderType(m))
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Calls `visit` on every tuple of `len` distinct members of `pool`, in
/// lexicographic order; stops early when `visit` returns false.
pub fn for_each_distinct_tuple(pool: &[usize], len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(pool: &[usize], len: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == len {
            return visit(cur);
        }
        for k in 0..pool.len() {
            if used[k] {
                continue;
            }
            used[k] = true;
            cur.push(pool[k]);
            let go_on = go(pool, len, used, cur, visit);
            cur.pop();
            used[k] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    if len > pool.len() {
        return;
    }
    go(pool, len, &mut vec![false; pool.len()], &mut Vec::with_capacity(len), visit);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndiscernibilityReport {
    pub holds: bool,
    pub arities: Vec<usize>,
    pub tuples_checked: usize,
    pub order_types: usize,
    /// Two tuples with equal order type and different sign-pattern types.
    pub counterexample: Option<(Vec<usize>, Vec<usize>)>,
}

/// Checks that tuples of `N+1` distinct indices with the same order type carry
/// the same sign-pattern type. With `shorter`, arities `1..=N` are checked too.
pub fn is_delta_indiscernible(
    t: &TraceStructure,
    seq: &IndexedSequence,
    n: usize,
    shorter: bool,
    cap: usize,
) -> Result<IndiscernibilityReport> {
    seq.check_against(t)?;
    let size = seq.poset.len();
    let work = (size as f64).powi(n as i32 + 1);
    if work > cap as f64 {
        return Err(Error::CapExceeded { what: "tuples", value: work.min(usize::MAX as f64) as usize, cap });
    }
    let arities: Vec<usize> = if shorter { (1..=n + 1).collect() } else { vec![n + 1] };
    let pool: Vec<usize> = (0..size).collect();
    let mut checked = 0;
    let mut order_types = 0;
    for &k in &arities {
        let mut buckets: HashMap<OrderType, (Vec<usize>, DeltaType)> = HashMap::new();
        let mut bad = None;
        for_each_distinct_tuple(&pool, k, &mut |idx| {
            checked += 1;
            let ot = OrderType::of(&seq.poset, idx).expect("distinct indices");
            let ty = t.delta_type(&seq.columns_of(idx));
            match buckets.get(&ot) {
                Some((rep, rep_ty)) if *rep_ty != ty => {
                    bad = Some((rep.clone(), idx.to_vec()));
                    false
                }
                Some(_) => true,
                None => {
                    buckets.insert(ot, (idx.to_vec(), ty));
                    true
                }
            }
        });
        order_types += buckets.len();
        if bad.is_some() {
            return Ok(IndiscernibilityReport {
                holds: false,
                arities: arities.clone(),
                tuples_checked: checked,
                order_types,
                counterexample: bad,
            });
        }
    }
    Ok(IndiscernibilityReport { holds: true, arities, tuples_checked: checked, order_types, counterexample: None })
}

/// The coloring `f(i) = R[a][b_i]`, with `N` the independence dimension.
pub fn trace_coloring(t: &TraceStructure, seq: &IndexedSequence, a: usize) -> Result<ColoredPoset> {
    seq.check_against(t)?;
    if a >= t.rows() {
        return Err(Error::OutOfRange { element: a, size: t.rows() });
    }
    let colors = (0..seq.poset.len()).map(|i| u8::from(t.get(a, seq.column(i)))).collect();
    let (n, _) = t.independence_dimension();
    ColoredPoset::new(seq.poset.clone(), colors, n)
}

/// All tuples of `N+1` distinct members of `x`, in every order, share one
/// sign-pattern type (vacuous when `|x| ≤ N`).
pub fn is_homogeneous(t: &TraceStructure, seq: &IndexedSequence, n: usize, x: &ElementSet) -> bool {
    homogeneous_type(t, seq, n, x).is_ok()
}

/// The common type of a homogeneous set, `Ok(None)` when vacuous; on failure,
/// two tuples with different types.
pub fn homogeneous_type(
    t: &TraceStructure,
    seq: &IndexedSequence,
    n: usize,
    x: &ElementSet,
) -> std::result::Result<Option<DeltaType>, (Vec<usize>, Vec<usize>)> {
    let pool = x.to_vec();
    let mut first: Option<(Vec<usize>, DeltaType)> = None;
    let mut bad = None;
    for_each_distinct_tuple(&pool, n + 1, &mut |idx| {
        let ty = t.delta_type(&seq.columns_of(idx));
        match &first {
            None => {
                first = Some((idx.to_vec(), ty));
                true
            }
            Some((rep, rep_ty)) if *rep_ty != ty => {
                bad = Some((rep.clone(), idx.to_vec()));
                false
            }
            Some(_) => true,
        }
    });
    match bad {
        Some(pair) => Err(pair),
        None => Ok(first.map(|(_, ty)| ty)),
    }
}

/// Calls `visit` on every increasing `len`-tuple of `order`.
pub fn for_each_increasing_tuple(order: &[usize], len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(order: &[usize], from: usize, len: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == len {
            return visit(cur);
        }
        for k in from..order.len() {
            cur.push(order[k]);
            let go_on = go(order, k + 1, len, cur, visit);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    go(order, 0, len, &mut Vec::with_capacity(len), visit);
}

fn check_total(x: &ElementSet, order: &[usize]) -> Result<()> {
    let listed = ElementSet::from_members(x.universe(), order.iter().copied())?;
    if listed != *x || listed.len() != order.len() {
        return Err(Error::NotTotal);
    }
    Ok(())
}

/// The type shared by all increasing `(N+1)`-tuples of `order`, if any.
pub fn order_type_of(t: &TraceStructure, seq: &IndexedSequence, n: usize, order: &[usize]) -> Option<DeltaType> {
    let mut common: Option<DeltaType> = None;
    let mut ok = true;
    for_each_increasing_tuple(order, n + 1, &mut |idx| {
        let ty = t.delta_type(&seq.columns_of(idx));
        match &common {
            None => common = Some(ty),
            Some(c) if *c != ty => ok = false,
            Some(_) => {}
        }
        ok
    });
    if ok { common } else { None }
}

/// `order` lists `x` increasingly; all increasing `(N+1)`-tuples share a type.
pub fn is_order_homogeneous(
    t: &TraceStructure,
    seq: &IndexedSequence,
    n: usize,
    x: &ElementSet,
    order: &[usize],
) -> Result<bool> {
    check_total(x, order)?;
    Ok(order.len() <= n || order_type_of(t, seq, n, order).is_some())
}

/// An adjacent position `ℓ < N` and a signed pattern `δ` such that every
/// increasing tuple satisfies `δ` while swapping positions `ℓ, ℓ+1` falsifies it.
pub fn find_order_sensitive(
    t: &TraceStructure,
    seq: &IndexedSequence,
    n: usize,
    x: &ElementSet,
    order: &[usize],
) -> Result<Option<(usize, SignedPattern)>> {
    check_total(x, order)?;
    if order.len() <= n {
        return Ok(None);
    }
    let Some(ty) = order_type_of(t, seq, n, order) else {
        return Ok(None);
    };
    for l in 0..n {
        for s in SignPattern::all(n + 1) {
            for positive in [true, false] {
                let delta = SignedPattern { pattern: s, positive };
                if (ty.contains(s) == positive) && (ty.contains(s.swap(l, l + 1)) != positive) {
                    let mut good = true;
                    for_each_increasing_tuple(order, n + 1, &mut |idx| {
                        let mut sw = seq.columns_of(idx);
                        let direct = delta.holds(t, &sw);
                        sw.swap(l, l + 1);
                        good = direct && !delta.holds(t, &sw);
                        good
                    });
                    if good {
                        return Ok(Some((l, delta)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Five points and the four sets `{0}`, `{0,1,2}`, `{2,3,4}`, `{4}` under
/// membership: independence dimension 1, yet no order on the four sets makes
/// them indiscernible.
pub fn four_sets() -> (TraceStructure, Vec<Vec<usize>>) {
    let sets = vec![vec![0], vec![0, 1, 2], vec![2, 3, 4], vec![4]];
    (TraceStructure::from_columns(5, &sets).expect("points are in range"), sets)
}

/// An order's strict relation pairs and the pair of tuples that rejected it.
pub type Rejection = (Vec<(usize, usize)>, Option<(Vec<usize>, Vec<usize>)>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourSetsReport {
    pub posets_tested: usize,
    pub admissible: usize,
    /// Per tested order (in enumeration order): its strict relation pairs and
    /// the rejecting pair of tuples.
    #[serde(skip)]
    pub rejections: Vec<Rejection>,
}

/// Tries every labeled partial order on the four sets with `N = 1`.
pub fn four_sets_search() -> FourSetsReport {
    let (t, _) = four_sets();
    let mut rejections = Vec::new();
    let mut admissible = 0;
    let orders = crate::enumerate::labeled_posets(4);
    for p in &orders {
        let seq = IndexedSequence::new(p.clone(), vec![0, 1, 2, 3]).expect("four elements");
        let r = is_delta_indiscernible(&t, &seq, 1, false, DEFAULT_TUPLE_CAP).expect("tiny instance");
        if r.holds {
            admissible += 1;
        }
        rejections.push((p.relation_pairs(), r.counterexample));
    }
    FourSetsReport { posets_tested: orders.len(), admissible, rejections }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(members: &[Vec<usize>], rows: usize) -> TraceStructure {
        TraceStructure::from_columns(rows, members).unwrap()
    }

    #[test]
    fn independence() {
        let zero = TraceStructure::new(vec![vec![false; 3]; 2], 3).unwrap();
        assert_eq!(zero.independence_dimension().0, 0);
        let t = ts(&[vec![0, 1], vec![0, 2]], 4);
        assert_eq!(t.independence_dimension(), (2, vec![0, 1]));
        assert_eq!(four_sets().0.independence_dimension().0, 1);
    }

    #[test]
    fn delta_types() {
        let t = ts(&[vec![0, 1]], 2);
        assert_eq!(t.delta_type(&[0]).patterns(), vec![SignPattern::parse("1").unwrap()]);
        let t = ts(&[vec![0], vec![0]], 3);
        let ty = t.delta_type(&[0, 1]);
        assert!(!ty.contains(SignPattern::parse("10").unwrap()));
        assert!(!ty.contains(SignPattern::parse("01").unwrap()));
        let (f, _) = four_sets();
        let ty = f.delta_type(&[1, 2]);
        let got: Vec<String> = ty.patterns().iter().map(ToString::to_string).collect();
        assert_eq!(got, vec!["10", "01", "11"]);
    }

    #[test]
    fn order_types() {
        let d = Poset::diamond();
        assert_ne!(OrderType::of(&d, &[0, 3]).unwrap(), OrderType::of(&d, &[3, 0]).unwrap());
        assert_eq!(OrderType::of(&d, &[1, 2]).unwrap(), OrderType::of(&Poset::antichain(2), &[0, 1]).unwrap());
        let c = Poset::chain(3);
        assert_ne!(OrderType::of(&c, &[0, 1, 2]).unwrap(), OrderType::of(&c, &[0, 2, 1]).unwrap());
        assert_eq!(OrderType::of(&c, &[1, 1]), Err(Error::RepeatedIndex(1)));
    }

    #[test]
    fn indiscernibility() {
        let t = ts(&[vec![0], vec![0, 1]], 3);
        let constant = IndexedSequence::new(Poset::diamond(), vec![1; 4]).unwrap();
        for n in 0..3 {
            assert!(is_delta_indiscernible(&t, &constant, n, true, DEFAULT_TUPLE_CAP).unwrap().holds);
        }
        // {0} ⊂ {0,1}: the pair type is not symmetric.
        let seq = IndexedSequence::new(Poset::antichain(2), vec![0, 1]).unwrap();
        let r = is_delta_indiscernible(&t, &seq, 1, false, DEFAULT_TUPLE_CAP).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample, Some((vec![0, 1], vec![1, 0])));
        let chain = IndexedSequence::new(Poset::chain(2), vec![0, 1]).unwrap();
        assert!(is_delta_indiscernible(&t, &chain, 1, false, DEFAULT_TUPLE_CAP).unwrap().holds);
    }

    #[test]
    fn tuple_cap() {
        let t = ts(&[vec![0]], 1);
        let seq = IndexedSequence::new(Poset::antichain(20), vec![0; 20]).unwrap();
        assert!(matches!(is_delta_indiscernible(&t, &seq, 5, false, 1000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn coloring_from_row() {
        let (t, _) = four_sets();
        let seq = IndexedSequence::new(Poset::antichain(4), vec![0, 1, 2, 3]).unwrap();
        let cp = trace_coloring(&t, &seq, 2).unwrap();
        assert_eq!(cp.colors(), &[0, 1, 1, 0]);
        assert_eq!(cp.n_param, 1);
    }

    #[test]
    fn homogeneity() {
        let t = ts(&[vec![0], vec![0, 1], vec![2]], 3);
        let seq = IndexedSequence::new(Poset::chain(3), vec![0, 1, 2]).unwrap();
        let all = seq.poset.all();
        assert!(is_homogeneous(&t, &seq, 3, &all));
        assert!(!is_homogeneous(&t, &seq, 1, &seq.poset.set(&[0, 1]).unwrap()));
        assert!(is_homogeneous(&t, &seq, 1, &seq.poset.set(&[0, 2]).unwrap()));
        let pair = seq.poset.set(&[0, 1]).unwrap();
        assert!(is_order_homogeneous(&t, &seq, 1, &pair, &[0, 1]).unwrap());
        let (l, delta) = find_order_sensitive(&t, &seq, 1, &pair, &[0, 1]).unwrap().unwrap();
        assert_eq!(l, 0);
        assert!(delta.holds(&t, &[0, 1]) && !delta.holds(&t, &[1, 0]));
        let other = seq.poset.set(&[0, 2]).unwrap();
        assert_eq!(find_order_sensitive(&t, &seq, 1, &other, &[0, 2]).unwrap(), None);
        assert_eq!(is_order_homogeneous(&t, &seq, 1, &pair, &[0]), Err(Error::NotTotal));
    }

    #[test]
    fn four_sets_have_no_admissible_order() {
        let r = four_sets_search();
        assert_eq!((r.posets_tested, r.admissible), (219, 0));
        let only = r.rejections.iter().find(|(pairs, _)| pairs == &vec![(0, 1)]).unwrap();
        assert!(only.1.is_some());
    }
}
