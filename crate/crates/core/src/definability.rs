//! Rough definitions of color classes by formulas over few parameters, and
//! their assembly into an exact definition of one row of the trace.
//!
//! A rough definition of `X ⊆ P^t` holds on every element of `X` and, inside
//! its scope, only on elements of color `t`. Each construction builds the
//! formula from homogeneity arguments and then evaluates it on the whole
//! poset; any element where the argument did not go through is patched with
//! an equality atom and counted in `exceptions`.

use serde::Serialize;

use crate::chain_cover::restricted_cover;
use crate::coloring::ColoredPoset;
use crate::decomposition::compress_antichain;
use crate::formula::{DefFormula, Node, Slot};
use crate::poset::{Cut, Direction, IntervalKind, Poset};
use crate::set::ElementSet;
use crate::trace::{
    for_each_distinct_tuple, DeltaType, is_homogeneous, trace_coloring, IndexedSequence, SignPattern, SignedPattern,
    TraceStructure,
};
use crate::{Error, Result};

/// One row of a trace structure read through an indexed sequence.
#[derive(Debug, Clone)]
pub struct Ctx<'a> {
    pub trace: &'a TraceStructure,
    pub seq: &'a IndexedSequence,
    /// Arity bound: tuples have `n + 1` entries.
    pub n: usize,
    pub row: usize,
    pub cp: ColoredPoset,
}

impl<'a> Ctx<'a> {
    /// Uses the independence dimension of `trace` as `N`.
    pub fn new(trace: &'a TraceStructure, seq: &'a IndexedSequence, row: usize) -> Result<Self> {
        let cp = trace_coloring(trace, seq, row)?;
        Ok(Ctx { trace, seq, n: cp.n_param, row, cp })
    }

    pub fn poset(&self) -> &Poset {
        &self.cp.poset
    }

    pub fn color(&self, i: usize) -> u8 {
        self.cp.color(i)
    }

    pub fn class(&self, t: u8) -> ElementSet {
        self.cp.class(t)
    }

    /// `M = (2N+1)(N+1)`.
    pub fn block_bound(&self) -> usize {
        self.cp.block_bound()
    }

    /// Truth of a tree with element parameters at element `j`.
    pub fn holds(&self, node: &Node, j: usize) -> bool {
        node.holds(self.trace, &|e| self.seq.column(e), self.seq.column(j))
    }

    pub fn homogeneous(&self, x: &ElementSet) -> bool {
        is_homogeneous(self.trace, self.seq, self.n, x)
    }
}

/// A formula roughly defining `target ⊆ P^t` within `scope`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoughDefinition {
    pub formula: DefFormula,
    pub target: ElementSet,
    pub scope: ElementSet,
    pub t: u8,
    /// Equality atoms added where the construction did not settle an element.
    pub exceptions: usize,
    pub budget: usize,
}

/// Elements breaking either defining condition.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RoughCheck {
    /// Members of the target where the formula fails.
    pub missed: Vec<usize>,
    /// Elements of the scope of color `1 − t` where the formula holds.
    pub leaked: Vec<usize>,
}

impl RoughCheck {
    pub fn sound(&self) -> bool {
        self.missed.is_empty() && self.leaked.is_empty()
    }
}

impl RoughDefinition {
    pub fn params(&self) -> usize {
        self.formula.param_count()
    }

    pub fn within_budget(&self) -> bool {
        self.params() <= self.budget
    }

    pub fn check(&self, ctx: &Ctx<'_>) -> RoughCheck {
        let holds = |i| self.formula.evaluate(ctx.trace, ctx.seq, i);
        RoughCheck {
            missed: self.target.iter().filter(|&i| !holds(i)).collect(),
            leaked: self.scope.iter().filter(|&j| ctx.color(j) != self.t && holds(j)).collect(),
        }
    }
}

// Patches the failures of `node` and packages the result.
fn finish(ctx: &Ctx<'_>, node: Node, target: &ElementSet, scope: &ElementSet, t: u8, budget: usize) -> RoughDefinition {
    // Nothing to keep out: truth needs no parameters.
    let node = if scope.iter().all(|j| ctx.color(j) == t) { Node::truth() } else { node };
    let leaked: Vec<usize> = scope.iter().filter(|&j| ctx.color(j) != t && ctx.holds(&node, j)).collect();
    let missed: Vec<usize> = target.iter().filter(|&i| !ctx.holds(&node, i)).collect();
    let exceptions = leaked.len() + missed.len();
    let mut node = node;
    if !leaked.is_empty() {
        node = Node::And(vec![node, Node::none_eq(leaked)]);
    }
    if !missed.is_empty() {
        node = Node::Or(vec![node, Node::any_eq(missed)]);
    }
    RoughDefinition {
        formula: DefFormula::from_elements(&node),
        target: target.clone(),
        scope: scope.clone(),
        t,
        exceptions,
        budget,
    }
}

/// `N + (N+1)·2^{2N+2}`.
pub fn antichain_budget(n: usize) -> usize {
    n + (n + 1) * (1 << (2 * n + 2))
}

/// `N·(2(N+1)² + N)`.
pub fn chain_budget(n: usize) -> usize {
    n * (2 * (n + 1) * (n + 1) + n)
}

/// `2^{2N+2}·(2N + 2(N+1)²)`.
pub fn block_budget(n: usize) -> usize {
    (1 << (2 * n + 2)) * (2 * n + 2 * (n + 1) * (n + 1))
}

/// Adds members of `pool` (ascending) to `base` while the union stays
/// homogeneous; returns the added elements.
fn grow_homogeneous(ctx: &Ctx<'_>, base: &ElementSet, pool: &ElementSet) -> ElementSet {
    let mut added = ctx.poset().empty_set();
    for j in pool.iter() {
        if base.contains(j) {
            continue;
        }
        if ctx.homogeneous(&base.union(&added).with(j)) {
            added = added.with(j);
        }
    }
    added
}

/// Conjunction of every signed atom `δ(x_1, …, x_N, y)` with distinct `x_k`
/// from `x` that some further member of `x` satisfies.
fn gamma_prime(ctx: &Ctx<'_>, x: &ElementSet) -> Node {
    let pool = x.to_vec();
    let n = ctx.n;
    let mut atoms = Vec::new();
    for_each_distinct_tuple(&pool, n, &mut |tuple| {
        let mut cols = ctx.seq.columns_of(tuple);
        cols.push(0);
        let mut seen_pos = vec![false; 1 << (n + 1)];
        let mut seen_neg = vec![false; 1 << (n + 1)];
        for &other in pool.iter().filter(|o| !tuple.contains(o)) {
            cols[n] = ctx.seq.column(other);
            for s in SignPattern::all(n + 1) {
                if ctx.trace.realizes(&cols, s) {
                    seen_pos[s.bits as usize] = true;
                } else {
                    seen_neg[s.bits as usize] = true;
                }
            }
        }
        let mut slots: Vec<Slot> = tuple.iter().map(|&e| Slot::Param(e)).collect();
        slots.push(Slot::Free);
        for s in SignPattern::all(n + 1) {
            for (positive, seen) in [(true, &seen_pos), (false, &seen_neg)] {
                if seen[s.bits as usize] {
                    atoms.push(Node::Delta { pattern: s, positive, slots: slots.clone() });
                }
            }
        }
        true
    });
    Node::And(atoms)
}

/// A bounded part of a maximal antichain `A` (majority color `t`) that
/// decides homogeneity of `A ∪ I_0` for sets `I_0` of the other color.
///
/// Members of `A` are grouped by their relation to the compression witnesses
/// `A_0 ∪ J⁻` (below) and `A_0 ∪ J⁺` (above); each group keeps its first
/// `N+1` members. Fewer than `N+1` per group would not let a group stand in
/// for an arbitrary `(N+1)`-tuple.
pub fn bounded_core(ctx: &Ctx<'_>, a: &ElementSet, t: u8) -> Result<ElementSet> {
    let p = ctx.poset();
    let n = ctx.n;
    if !p.is_maximal_antichain(a)? {
        return Err(Error::NotMaximalAntichain);
    }
    let minority = ctx.cp.color_class(a, 1 - t);
    if minority.len() > n {
        return Err(Error::BadMajority(minority.len()));
    }
    if a.len() <= 2 * n {
        return Ok(a.clone());
    }
    let comp = compress_antichain(&ctx.cp, a, t)?;
    let below = comp.a0.union(&comp.j_minus);
    let above = comp.a0.union(&comp.j_plus);
    let mut groups: std::collections::BTreeMap<(ElementSet, ElementSet), usize> = Default::default();
    let mut core = p.empty_set();
    for i in a.iter() {
        let lo: Vec<usize> = below.iter().filter(|&x| p.le(x, i)).collect();
        let hi: Vec<usize> = above.iter().filter(|&x| p.le(i, x)).collect();
        let key = (ElementSet::of(p.len(), &lo), ElementSet::of(p.len(), &hi));
        let count = groups.entry(key).or_insert(0);
        if *count <= n {
            *count += 1;
            core = core.with(i);
        }
    }
    Ok(core)
}

fn require_class(ctx: &Ctx<'_>, x: &ElementSet, t: u8) -> Result<()> {
    if x.iter().any(|i| ctx.color(i) != t) {
        return Err(Error::NotMonochromatic(t));
    }
    Ok(())
}

/// Rough definition of an antichain `A ⊆ P^t`.
pub fn define_antichain(ctx: &Ctx<'_>, a: &ElementSet, t: u8) -> Result<RoughDefinition> {
    let p = ctx.poset();
    if let Some((i, j)) = p.comparable_pair(a) {
        return Err(Error::NotAntichain(i, j));
    }
    require_class(ctx, a, t)?;
    let all = p.all();
    let budget = antichain_budget(ctx.n);
    if a.len() <= ctx.n {
        return Ok(finish(ctx, Node::any_eq(a.iter()), a, &all, t, budget));
    }
    let wide = p.extend_to_maximal(a, &all)?;
    let core = bounded_core(ctx, &wide, t)?;
    if !ctx.homogeneous(&core) {
        return Err(Error::IndiscernibilityBroken(format!("antichain {:?} is not homogeneous", core.to_vec())));
    }
    let extra = grow_homogeneous(ctx, &core, &ctx.class(1 - t));
    let x = core.union(&extra);
    let excluded = ctx.cp.color_class(&core, 1 - t).union(&extra);
    let node = Node::Or(vec![
        Node::And(vec![gamma_prime(ctx, &x), Node::none_eq(excluded.iter())]),
        Node::any_eq(ctx.cp.color_class(&core, t).iter()),
    ]);
    Ok(finish(ctx, node, a, &all, t, budget))
}

/// Whether chains are homogeneous, and if not, where order matters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum CaseSplit {
    /// Every chain of `N+1` elements has a type invariant under permutation.
    Homogeneous,
    /// A chain whose type changes under the permutation `sigma`, and an
    /// atom that flips when positions `ell`, `ell + 1` of an increasing chain
    /// are exchanged.
    OrderSensitive {
        witness: Vec<usize>,
        sigma: Vec<usize>,
        ell: usize,
        pattern: String,
        positive: bool,
    },
}

impl CaseSplit {
    pub fn order_sensitive(&self) -> Option<(usize, SignedPattern)> {
        match self {
            CaseSplit::Homogeneous => None,
            CaseSplit::OrderSensitive { ell, pattern, positive, .. } => Some((
                *ell,
                SignedPattern { pattern: SignPattern::parse(pattern).expect("written by us"), positive: *positive },
            )),
        }
    }
}

/// Calls `visit` on every chain `i_0 ◁ … ◁ i_{len−1}`, lexicographically.
fn for_each_chain(p: &Poset, len: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(p: &Poset, len: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == len {
            return visit(cur);
        }
        let next: Vec<usize> = match cur.last() {
            None => (0..p.len()).collect(),
            Some(&i) => p.strictly_above(i).to_vec(),
        };
        for j in next {
            cur.push(j);
            let go_on = go(p, len, cur, visit);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    go(p, len, &mut Vec::new(), visit);
}

pub fn case_split(trace: &TraceStructure, seq: &IndexedSequence, n: usize) -> CaseSplit {
    let mut found = CaseSplit::Homogeneous;
    for_each_chain(&seq.poset, n + 1, &mut |chain| {
        let ty = trace.delta_type(&seq.columns_of(chain));
        for ell in 0..n {
            if ty.swap(ell, ell + 1) == ty {
                continue;
            }
            let mut sigma: Vec<usize> = (0..=n).collect();
            sigma.swap(ell, ell + 1);
            let (pattern, positive) = SignPattern::all(n + 1)
                .flat_map(|s| [(s, true), (s, false)])
                .find(|&(s, pos)| ty.contains(s) == pos && ty.contains(s.swap(ell, ell + 1)) != pos)
                .expect("types differing under a swap have an asymmetric pattern");
            found = CaseSplit::OrderSensitive {
                witness: chain.to_vec(),
                sigma,
                ell,
                pattern: pattern.to_string(),
                positive,
            };
            return false;
        }
        true
    });
    found
}

/// `P^t` as a union of chains and antichains, all inside `P^t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleDecomposition {
    pub t: u8,
    pub chains: Vec<Vec<usize>>,
    pub antichains: Vec<ElementSet>,
}

impl SimpleDecomposition {
    /// At most `M(2N+2)` chains and `N(2N+2)` antichains.
    pub fn within_bounds(&self, n: usize) -> bool {
        let m = (2 * n + 1) * (n + 1);
        self.chains.len() <= m * (2 * n + 2) && self.antichains.len() <= n * (2 * n + 2)
    }
}

// Splits `x` into its first `N` lower (or upper) levels and a remainder, if
// the remainder has width at most `M`.
fn peel_levels(ctx: &Ctx<'_>, x: &ElementSet, direction: Direction) -> Option<(Vec<ElementSet>, ElementSet)> {
    let p = ctx.poset();
    let levels: Vec<ElementSet> = p.levels_within(x, direction).into_iter().take(ctx.n).collect();
    let rest = levels.iter().fold(x.clone(), |acc, l| acc.difference(l));
    (restricted_cover(p, &rest).width() <= ctx.block_bound()).then_some((levels, rest))
}

pub fn simple_decomposition(ctx: &Ctx<'_>) -> Result<SimpleDecomposition> {
    if case_split(ctx.trace, ctx.seq, ctx.n) != CaseSplit::Homogeneous {
        return Err(Error::CaseMismatch);
    }
    let p = ctx.poset();
    let dec = crate::decomposition::decompose(&ctx.cp)?;
    let k = dec.blocks.count();
    let blocks = &dec.block_sets;
    let stuck = (0..=k).find(|&n| {
        let other = ctx.cp.color_class(&blocks[n], ((n + 1) % 2) as u8);
        peel_levels(ctx, &other, Direction::Down).is_none()
    });
    let limit = match stuck {
        Some(n) if n < k => n,
        _ => k,
    };
    let t = (limit % 2) as u8;
    let mut chain_part = p.empty_set();
    let mut antichains = Vec::new();
    for (n, block) in blocks.iter().enumerate().take(limit + 1) {
        let part = ctx.cp.color_class(block, t);
        if n % 2 == t as usize {
            chain_part = chain_part.union(&part);
        } else {
            let (levels, rest) = peel_levels(ctx, &part, Direction::Down).ok_or_else(|| {
                Error::InternalBoundViolation(format!("block {n} is not levels plus few chains"))
            })?;
            antichains.extend(levels);
            chain_part = chain_part.union(&rest);
        }
    }
    if limit < k {
        let a_n = &dec.blocks.antichains[limit];
        let region = p.up(a_n).union(a_n);
        let cands = crate::antichains::maximal_antichains_in(&ctx.cp, &region, t, ctx.block_bound());
        let pivot = crate::antichains::pick_maximal(p, &cands).ok_or(Error::InternalBoundViolation(
            "no wide antichain above the stuck barrier".into(),
        ))?;
        let middle = p.interval(Cut::At(a_n), Cut::At(&pivot), IntervalKind::ClosedClosed)?;
        let levels: Vec<ElementSet> =
            p.levels_within(&ctx.cp.color_class(&middle, t), Direction::Up).into_iter().take(ctx.n).collect();
        let top = ctx.cp.color_class(&p.up(&pivot), t);
        let rest = levels.iter().fold(ctx.cp.color_class(&middle, t), |acc, l| acc.difference(l));
        antichains.extend(levels);
        chain_part = chain_part.union(&rest).union(&top);
    }
    antichains.retain(|a| !a.is_empty());
    let covered = antichains.iter().fold(chain_part.clone(), |acc, a| acc.union(a));
    if covered != ctx.class(t) {
        return Err(Error::InternalBoundViolation("simple decomposition misses elements".into()));
    }
    let chains = restricted_cover(p, &chain_part).chains;
    Ok(SimpleDecomposition { t, chains, antichains })
}

/// The `N+1` members of `order` just before position `at` and the `N+1`
/// from position `at` on.
fn window(order: &[usize], at: usize, n: usize, universe: usize) -> ElementSet {
    let lo = at.saturating_sub(n + 1);
    let hi = (at + n + 1).min(order.len());
    ElementSet::of(universe, &order[lo..hi])
}

/// Rough definition of a chain `C ⊆ P^t` when chains are homogeneous.
pub fn define_chain_case1(ctx: &Ctx<'_>, c: &ElementSet, t: u8) -> Result<RoughDefinition> {
    let p = ctx.poset();
    if let Some((i, j)) = p.incomparable_pair(c) {
        return Err(Error::NotChain(i, j));
    }
    require_class(ctx, c, t)?;
    if case_split(ctx.trace, ctx.seq, ctx.n) != CaseSplit::Homogeneous {
        return Err(Error::CaseMismatch);
    }
    let n = ctx.n;
    let size = p.len();
    let comp = crate::decomposition::compress_chain(&ctx.cp, c, t)?;
    let other = ctx.class(1 - t);
    let mut parts = Vec::new();
    for &(lo, hi) in &comp.pairs {
        let part = c.intersection(&p.point_interval(lo, hi));
        if part.len() <= n {
            parts.push(Node::any_eq(part.iter()));
            continue;
        }
        let order = p.sort_chain(&part);
        let len = order.len();
        let ends: Vec<usize> = order[..n + 1].iter().chain(&order[len - n - 1..]).copied().collect();
        let mut core = ElementSet::of(size, &ends);
        let mut picked = p.empty_set();
        while picked.len() < n {
            let Some(j) = other
                .iter()
                .filter(|&j| !picked.contains(j))
                .find(|&j| ctx.homogeneous(&core.union(&picked).with(j)))
            else {
                break;
            };
            picked = picked.with(j);
            // Pad the core around where j meets the chain.
            if let Some(k) = order.iter().rposition(|&x| p.lt(x, j)) {
                core = core.union(&window(&order, k + 1, n, size));
            } else if let Some(k) = order.iter().position(|&x| p.lt(j, x)) {
                core = core.union(&window(&order, k, n, size));
            }
        }
        parts.push(Node::Or(vec![
            Node::And(vec![gamma_prime(ctx, &core.union(&picked)), Node::none_eq(picked.iter())]),
            Node::any_eq(core.iter()),
        ]));
    }
    Ok(finish(ctx, Node::Or(parts), c, &p.all(), t, chain_budget(n)))
}

fn atom(delta: SignedPattern, slots: Vec<Slot>) -> Node {
    Node::Delta { pattern: delta.pattern, positive: delta.positive, slots }
}

// `δ` with `y` at position `ell` of the parameter list `params` (length N).
fn atom_at(delta: SignedPattern, params: &[usize], ell: usize) -> Node {
    let mut slots: Vec<Slot> = params.iter().map(|&e| Slot::Param(e)).collect();
    slots.insert(ell, Slot::Free);
    atom(delta, slots)
}

/// First single atom over distinct parameters from `pool`, with the free
/// variable in any slot, that holds on all of `keep` and fails at `drop`.
fn separating_atom(ctx: &Ctx<'_>, pool: &[usize], keep: &ElementSet, drop: usize) -> Option<Node> {
    let n = ctx.n;
    let mut found = None;
    for_each_distinct_tuple(pool, n, &mut |params| {
        for slot in 0..=n {
            for s in SignPattern::all(n + 1) {
                for positive in [true, false] {
                    let node = atom_at(SignedPattern { pattern: s, positive }, params, slot);
                    if !ctx.holds(&node, drop) && keep.iter().all(|i| ctx.holds(&node, i)) {
                        found = Some(node);
                        return false;
                    }
                }
            }
        }
        true
    });
    found
}

/// Conjunction of every signed atom over distinct parameters from `pool`,
/// free variable in any slot, that takes the same value on all of `keep`.
fn full_type(ctx: &Ctx<'_>, pool: &[usize], keep: &ElementSet) -> Node {
    let n = ctx.n;
    let keep_cols: Vec<usize> = keep.iter().map(|i| ctx.seq.column(i)).collect();
    let mut atoms = Vec::new();
    for_each_distinct_tuple(pool, n, &mut |params| {
        let base = ctx.seq.columns_of(params);
        for slot in 0..=n {
            for s in SignPattern::all(n + 1) {
                let mut values = keep_cols.iter().map(|&y| {
                    let mut cols = base.clone();
                    cols.insert(slot, y);
                    ctx.trace.realizes(&cols, s)
                });
                let Some(first) = values.next() else { continue };
                if values.all(|v| v == first) {
                    atoms.push(atom_at(SignedPattern { pattern: s, positive: first }, params, slot));
                }
            }
        }
        true
    });
    Node::And(atoms)
}

/// Conjunction of the atoms over distinct parameters from the increasing list
/// `anchors`, free variable in any slot, that an element sitting just after
/// `anchors[..rank]` satisfies when every increasing tuple has type `ty`.
fn positional_type(anchors: &[usize], rank: usize, ty: &DeltaType) -> Node {
    let n = ty.arity() - 1;
    let pos: std::collections::BTreeMap<usize, usize> =
        anchors.iter().enumerate().map(|(k, &e)| (e, 2 * k + usize::from(k >= rank) * 2)).collect();
    let y_pos = 2 * rank + 1;
    let mut atoms = Vec::new();
    for_each_distinct_tuple(anchors, n, &mut |params| {
        for slot in 0..=n {
            let mut places: Vec<usize> = params.iter().map(|e| pos[e]).collect();
            places.insert(slot, y_pos);
            let mut sorted = places.clone();
            sorted.sort_unstable();
            let rank_of: Vec<usize> = places.iter().map(|p| sorted.binary_search(p).expect("present")).collect();
            for s in SignPattern::all(n + 1) {
                let bits = (0..=n).filter(|&m| s.get(m)).fold(0u32, |b, m| b | 1 << rank_of[m]);
                let positive = ty.contains(SignPattern::new(n + 1, bits));
                atoms.push(atom_at(SignedPattern { pattern: s, positive }, params, slot));
            }
        }
        true
    });
    Node::And(atoms)
}

/// Inserts elements of `pool` into the increasing list `line` while the list
/// stays order homogeneous, consistent with `◁`, and separated by at least
/// `N+1` members of `c` from the list ends and from earlier insertions.
fn grow_line(ctx: &Ctx<'_>, c: &ElementSet, line: &mut Vec<usize>, pool: &ElementSet) -> Vec<usize> {
    let p = ctx.poset();
    let n = ctx.n;
    let mut inserted = Vec::new();
    'grow: while inserted.len() <= n {
        for j in pool.iter().filter(|j| !line.contains(j)) {
            for pos in 0..=line.len() {
                let before = &line[..pos];
                let after = &line[pos..];
                if before.iter().any(|&x| p.lt(j, x)) || after.iter().any(|&x| p.lt(x, j)) {
                    continue;
                }
                let run_back = before.iter().rev().take_while(|&&x| c.contains(x)).count();
                let run_fwd = after.iter().take_while(|&&x| c.contains(x)).count();
                if run_back <= n || run_fwd <= n {
                    continue;
                }
                let mut cand = line.clone();
                cand.insert(pos, j);
                if crate::trace::order_type_of(ctx.trace, ctx.seq, n, &cand).is_some() {
                    *line = cand;
                    inserted.push(j);
                    continue 'grow;
                }
            }
        }
        break;
    }
    inserted
}

/// Rough definition of a chain `C ⊆ P^t` when some chain type is sensitive
/// to the order of its entries.
pub fn define_chain_case2(ctx: &Ctx<'_>, c: &ElementSet, t: u8) -> Result<RoughDefinition> {
    let p = ctx.poset();
    if let Some((i, j)) = p.incomparable_pair(c) {
        return Err(Error::NotChain(i, j));
    }
    require_class(ctx, c, t)?;
    let (ell, delta) = case_split(ctx.trace, ctx.seq, ctx.n).order_sensitive().ok_or(Error::CaseMismatch)?;
    let n = ctx.n;
    let size = p.len();
    let comp = crate::decomposition::compress_chain(&ctx.cp, c, t)?;
    let other = ctx.class(1 - t);
    let mut parts = Vec::new();
    for &(lo, hi) in &comp.pairs {
        let part = c.intersection(&p.point_interval(lo, hi));
        if part.len() < 2 * n + 2 {
            parts.push(Node::any_eq(part.iter()));
            continue;
        }
        let mut line = p.sort_chain(&part);
        let chain_type = ctx.trace.delta_type(&ctx.seq.columns_of(&line[..n + 1]));
        let inserted = grow_line(ctx, &part, &mut line, &other);
        let outsiders = ElementSet::of(size, &inserted);
        // Segments of chain members between consecutive insertions.
        let segments: Vec<Vec<usize>> = line
            .split(|x| outsiders.contains(*x))
            .map(|s| s.to_vec())
            .collect();
        let mut anchors = p.empty_set();
        for seg in &segments {
            let k = seg.len().min(n + 1);
            anchors = anchors.union(&ElementSet::of(size, &seg[..k])).union(&ElementSet::of(size, &seg[seg.len() - k..]));
        }
        let mut disjuncts = vec![Node::any_eq(anchors.iter())];
        for seg in &segments {
            if seg.len() < 2 * n + 2 {
                continue;
            }
            let gap = ElementSet::of(size, seg).difference(&anchors);
            let head = &seg[..n + 1];
            let tail = &seg[seg.len() - n - 1..];
            // y between the ℓ-th and (ℓ+1)-th anchors, not before the ℓ-th.
            let first: Vec<usize> = head[..ell].iter().chain(&tail[ell + 1..]).copied().collect();
            let second: Vec<usize> = head[..=ell].iter().chain(&tail[ell + 2..]).copied().collect();
            let theta = Node::And(vec![
                atom_at(delta, &first, ell),
                atom_at(delta, &second, ell).negate(),
            ]);
            let q: Vec<usize> = head.iter().chain(tail).copied().collect();
            let wide_pool: Vec<usize> = anchors.union(&outsiders).iter().collect();
            let mut conj = vec![theta, positional_type(&q, n + 1, &chain_type), Node::none_eq(outsiders.iter())];
            for j in other.iter() {
                if !ctx.holds(&Node::And(conj.clone()), j) {
                    continue;
                }
                if let Some(sep) = separating_atom(ctx, &wide_pool, &gap, j) {
                    conj.push(sep);
                }
            }
            disjuncts.push(Node::And(conj));
        }
        parts.push(Node::Or(disjuncts));
    }
    Ok(finish(ctx, Node::Or(parts), c, &p.all(), t, chain_budget(n)))
}

// Witnesses fixing where an element sits relative to a barrier.
fn barrier_witnesses(ctx: &Ctx<'_>, cut: Cut<'_>, below: bool) -> ElementSet {
    let Cut::At(a) = cut else {
        return ctx.poset().empty_set();
    };
    let ones = ctx.cp.color_class(a, 1).len();
    let t = u8::from(2 * ones > a.len());
    match compress_antichain(&ctx.cp, a, t) {
        Ok(comp) if below => comp.a0.union(&comp.j_minus),
        Ok(comp) => comp.a0.union(&comp.j_plus),
        Err(_) => a.clone(),
    }
}

// Walks from each member of `start` through `levels` (nearest first),
// taking the least element beyond the current one.
fn level_paths(p: &Poset, start: &ElementSet, levels: &[ElementSet], down: bool) -> ElementSet {
    let mut out = p.empty_set();
    for s in start.iter() {
        let mut cur = s;
        for level in levels {
            let next = level.iter().find(|&x| if down { p.lt(x, cur) } else { p.lt(cur, x) });
            let Some(x) = next else { break };
            out = out.with(x);
            cur = x;
        }
    }
    out
}

/// Rough definition of the color-`t` part of the region between two
/// barriers (closed at both ends), with scope outside the region.
pub fn define_block_case2(ctx: &Ctx<'_>, lo: Cut<'_>, hi: Cut<'_>, t: u8) -> Result<RoughDefinition> {
    let p = ctx.poset();
    let n = ctx.n;
    let (ell, _) = case_split(ctx.trace, ctx.seq, n).order_sensitive().ok_or(Error::CaseMismatch)?;
    let z = p.interval(lo, hi, IntervalKind::ClosedClosed)?;
    let target = ctx.cp.color_class(&z, t);
    let scope = p.all().difference(&z);
    let j0 = barrier_witnesses(ctx, lo, true);
    let j1 = barrier_witnesses(ctx, hi, false);
    let mut regions: std::collections::BTreeMap<(ElementSet, ElementSet), ElementSet> = Default::default();
    for i in target.iter() {
        let below: Vec<usize> = j0.iter().filter(|&x| p.le(x, i)).collect();
        let above: Vec<usize> = j1.iter().filter(|&x| p.le(i, x)).collect();
        let slot = regions
            .entry((ElementSet::of(p.len(), &below), ElementSet::of(p.len(), &above)))
            .or_insert_with(|| p.empty_set());
        *slot = slot.with(i);
    }
    let pool = ctx.class(1 - t).difference(&z);
    let mut disjuncts = Vec::new();
    for region in regions.values() {
        let lower: Vec<ElementSet> = p.levels_within(region, Direction::Down).into_iter().take(ell).collect();
        let rest = lower.iter().fold(region.clone(), |acc, l| acc.difference(l));
        let upper: Vec<ElementSet> =
            p.levels_within(&rest, Direction::Up).into_iter().take(n - ell - 1).collect();
        let rest = upper.iter().fold(rest, |acc, l| acc.difference(l));
        for level in lower.iter().chain(&upper) {
            disjuncts.push(define_antichain(ctx, level, t)?.formula.to_elements());
        }
        if rest.is_empty() {
            continue;
        }
        let cover = restricted_cover(p, &rest);
        if cover.width() <= n {
            for chain in cover.chain_sets(p.len()) {
                disjuncts.push(define_chain_case2(ctx, &chain, t)?.formula.to_elements());
            }
            continue;
        }
        let first = |x: ElementSet| ElementSet::of(p.len(), &x.to_vec()[..x.len().min(n + 1)]);
        let a_minus = first(p.extremal(&rest, Direction::Down));
        let a_plus = first(p.extremal(&rest, Direction::Up));
        let i_minus = grow_homogeneous(ctx, &a_minus, &pool);
        let i_plus = grow_homogeneous(ctx, &a_plus, &pool);
        let lower_near: Vec<ElementSet> = lower.iter().rev().cloned().collect();
        let upper_near: Vec<ElementSet> = upper.iter().rev().cloned().collect();
        let x0: Vec<usize> = a_minus
            .union(&a_plus)
            .union(&i_minus)
            .union(&i_plus)
            .union(&level_paths(p, &a_minus, &lower_near, true))
            .union(&level_paths(p, &a_plus, &upper_near, false))
            .to_vec();
        // One disjunct per type over X_0 met in the remainder.
        let mut types: Vec<Node> = Vec::new();
        for i in rest.iter() {
            if !types.iter().any(|d| ctx.holds(d, i)) {
                types.push(full_type(ctx, &x0, &ElementSet::of(p.len(), &[i])));
            }
        }
        disjuncts.extend(types);
    }
    Ok(finish(ctx, Node::Or(disjuncts), &target, &scope, t, block_budget(n)))
}

/// An exact definition of one trace row, with the rough definitions it was
/// assembled from.
#[derive(Debug, Clone)]
pub struct PsiDefinition {
    pub formula: DefFormula,
    pub case: CaseSplit,
    pub parts: Vec<RoughDefinition>,
    /// Elements where the formula disagrees with the row.
    pub mismatches: Vec<usize>,
}

impl PsiDefinition {
    pub fn exact(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn exceptions(&self) -> usize {
        self.parts.iter().map(|d| d.exceptions).sum()
    }
}

fn chain_defs(
    ctx: &Ctx<'_>,
    x: &ElementSet,
    t: u8,
    define: fn(&Ctx<'_>, &ElementSet, u8) -> Result<RoughDefinition>,
    parts: &mut Vec<RoughDefinition>,
) -> Result<Vec<Node>> {
    let p = ctx.poset();
    let mut nodes = Vec::new();
    for chain in restricted_cover(p, x).chain_sets(p.len()) {
        let def = define(ctx, &chain, t)?;
        nodes.push(def.formula.to_elements());
        parts.push(def);
    }
    Ok(nodes)
}

/// Builds a formula `ψ(y; params)` true exactly at the elements whose column
/// lies in the given row.
pub fn assemble_psi(ctx: &Ctx<'_>) -> Result<PsiDefinition> {
    let p = ctx.poset();
    let case = case_split(ctx.trace, ctx.seq, ctx.n);
    let mut parts = Vec::new();
    let root = if ctx.class(1).is_empty() {
        Node::falsity()
    } else if ctx.class(0).is_empty() {
        Node::truth()
    } else if case == CaseSplit::Homogeneous {
        let sd = simple_decomposition(ctx)?;
        let mut nodes = Vec::new();
        for chain in &sd.chains {
            let def = define_chain_case1(ctx, &ElementSet::of(p.len(), chain), sd.t)?;
            nodes.push(def.formula.to_elements());
            parts.push(def);
        }
        for a in &sd.antichains {
            let def = define_antichain(ctx, a, sd.t)?;
            nodes.push(def.formula.to_elements());
            parts.push(def);
        }
        let node = Node::Or(nodes);
        if sd.t == 1 { node } else { node.negate() }
    } else {
        let blocks = crate::decomposition::breakdown(&ctx.cp)?;
        let k = blocks.count();
        let m = ctx.block_bound();
        // A'_n for even n: the latest wide antichain of ones in [A_{n-1}, A_n].
        let mut turning: Vec<Option<ElementSet>> = vec![None; k + 1];
        for n in (0..=k).step_by(2) {
            let region = p.interval(blocks.lower_cut(n), blocks.upper_cut(n), IntervalKind::ClosedClosed)?;
            let cands = crate::antichains::maximal_antichains_in(&ctx.cp, &region, 1, m);
            turning[n] = crate::antichains::pick_maximal(p, &cands);
        }
        let mut disjuncts = Vec::new();
        for n in (0..=k).step_by(2) {
            let Some(top) = &turning[n] else { continue };
            let lo = blocks.lower_cut(n);
            let block = define_block_case2(ctx, lo, Cut::At(top), 1)?;
            let mut conj = vec![block.formula.to_elements()];
            parts.push(block);
            let segment = p.interval(lo, Cut::At(top), IntervalKind::ClosedClosed)?;
            let zeros = ctx.cp.color_class(&segment, 0);
            for c in chain_defs(ctx, &zeros, 0, define_chain_case2, &mut parts)? {
                conj.push(c.negate());
            }
            disjuncts.push(Node::And(conj));
        }
        for n in (1..=k + 1).step_by(2) {
            let lo = match &turning[n - 1] {
                Some(a) => Cut::At(a),
                None => Cut::NegInf,
            };
            let segment = p.interval(lo, blocks.upper_cut(n), IntervalKind::OpenOpen)?;
            let ones = ctx.cp.color_class(&segment, 1);
            disjuncts.extend(chain_defs(ctx, &ones, 1, define_chain_case2, &mut parts)?);
        }
        Node::Or(disjuncts)
    };
    let formula = DefFormula::from_elements(&root);
    let mismatches = p
        .all()
        .iter()
        .filter(|&i| formula.evaluate(ctx.trace, ctx.seq, i) != (ctx.color(i) == 1))
        .collect();
    Ok(PsiDefinition { formula, case, parts, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Chain of `k` elements; element `i` carries column `i`.
    fn on_chain(k: usize, members: &[Vec<usize>], rows: usize) -> (TraceStructure, IndexedSequence) {
        let trace = TraceStructure::from_columns(rows, members).unwrap();
        let seq = IndexedSequence::new(Poset::chain(k), (0..k).collect()).unwrap();
        (trace, seq)
    }

    fn assert_exact_everywhere(trace: &TraceStructure, seq: &IndexedSequence) {
        for row in 0..trace.rows() {
            let ctx = Ctx::new(trace, seq, row).unwrap();
            let psi = assemble_psi(&ctx).unwrap();
            assert!(psi.exact(), "row {row}: mismatches {:?}", psi.mismatches);
            for part in &psi.parts {
                assert!(part.check(&ctx).sound());
            }
        }
    }

    #[test]
    fn half_lines_are_order_sensitive() {
        let members: Vec<Vec<usize>> = (0..6).map(|b| (0..=b).collect()).collect();
        let (trace, seq) = on_chain(6, &members, 7);
        let split = case_split(&trace, &seq, 1);
        let (ell, delta) = split.order_sensitive().expect("half-lines see order");
        assert_eq!(ell, 0);
        // Some row lies in the upper set and not the lower one.
        assert_eq!((delta.pattern.to_string(), delta.positive), ("10".to_string(), false));
        assert_exact_everywhere(&trace, &seq);
    }

    #[test]
    fn singletons_on_a_chain_are_homogeneous() {
        let members: Vec<Vec<usize>> = (0..6).map(|b| vec![b]).collect();
        let (trace, seq) = on_chain(6, &members, 6);
        assert_eq!(case_split(&trace, &seq, 1), CaseSplit::Homogeneous);
        let ctx = Ctx::new(&trace, &seq, 2).unwrap();
        let sd = simple_decomposition(&ctx).unwrap();
        assert!(sd.within_bounds(1));
        assert_exact_everywhere(&trace, &seq);
    }

    #[test]
    fn antichain_of_singletons() {
        let members: Vec<Vec<usize>> = (0..7).map(|b| vec![b]).collect();
        let trace = TraceStructure::from_columns(7, &members).unwrap();
        let seq = IndexedSequence::new(Poset::antichain(7), (0..7).collect()).unwrap();
        let ctx = Ctx::new(&trace, &seq, 3).unwrap();
        let a = ctx.class(0);
        let def = define_antichain(&ctx, &a, 0).unwrap();
        assert!(def.check(&ctx).sound());
        assert!(def.within_budget());
        assert_exact_everywhere(&trace, &seq);
    }

    #[test]
    fn constant_rows() {
        let members: Vec<Vec<usize>> = vec![vec![0]; 4];
        let trace = TraceStructure::from_columns(2, &members).unwrap();
        let seq = IndexedSequence::new(Poset::chain(4), vec![0, 1, 2, 3]).unwrap();
        let ctx = Ctx::new(&trace, &seq, 1).unwrap();
        let psi = assemble_psi(&ctx).unwrap();
        assert_eq!(psi.formula.root, Node::falsity());
        assert!(psi.exact());
    }

    #[test]
    fn budgets() {
        assert_eq!(antichain_budget(1), 1 + 2 * 16);
        assert_eq!(chain_budget(1), 9);
        assert_eq!(block_budget(1), 16 * 10);
    }
}
