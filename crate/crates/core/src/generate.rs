//! Seeded instance generators for posets, valid colorings and trace
//! structures.
//!
//! Instance `k` of a run with seed `s` draws from ChaCha8 seeded with `s` on
//! stream `k`, so corpora are reproducible one instance at a time.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::ColoredPoset;
use crate::poset::Poset;
use crate::trace::{is_delta_indiscernible, IndexedSequence, TraceStructure, DEFAULT_TUPLE_CAP};

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Each pair of a random linear extension is related with probability
/// `density`, then closed.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[a], perm[b]));
            }
        }
    }
    Poset::from_pairs(n, &pairs).expect("pairs follow a linear order")
}

/// Levels of random widths; each element sits above a random nonempty part
/// of the previous level (each link kept with probability `density`).
pub fn layered_poset(rng: &mut impl Rng, widths: &[usize], density: f64) -> Poset {
    let n: usize = widths.iter().sum();
    let mut pairs = Vec::new();
    let mut start = 0;
    for w in widths.windows(2) {
        let (prev, cur) = (start..start + w[0], start + w[0]..start + w[0] + w[1]);
        for j in cur {
            let mut linked = false;
            for i in prev.clone() {
                if rng.gen_bool(density) {
                    pairs.push((i, j));
                    linked = true;
                }
            }
            if !linked {
                pairs.push((rng.gen_range(prev.clone()), j));
            }
        }
        start += w[0];
    }
    Poset::from_pairs(n, &pairs).expect("edges go up one level")
}

/// A coloring with few changes along chains: the parity of how many of
/// `depth` nested up-sets contain each element, then up to `flips` flips.
pub fn nested_coloring(rng: &mut impl Rng, p: &Poset, depth: usize, flips: usize) -> Vec<u8> {
    let n = p.len();
    let mut current = p.all();
    let mut colors = vec![0u8; n];
    for _ in 0..depth {
        let seeds: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.15)).collect();
        let seeds = p.set(&seeds).expect("in range");
        current = current.intersection(&p.up(&seeds).union(&seeds));
        for i in current.iter() {
            colors[i] ^= 1;
        }
    }
    for _ in 0..rng.gen_range(0..=flips) {
        if n > 0 {
            let i = rng.gen_range(0..n);
            colors[i] ^= 1;
        }
    }
    colors
}

/// A random poset on up to `max_n` points with a coloring that passes the
/// checker at `n_param`; retries on fresh draws from the same stream.
pub fn valid_coloring(rng: &mut impl Rng, max_n: usize, n_param: usize) -> ColoredPoset {
    loop {
        if rng.gen_bool(0.3) {
            let (p, colors) = banded(rng, max_n, n_param);
            let cp = ColoredPoset::new(p, colors, n_param).expect("within the size cap");
            if cp.is_valid() {
                return cp;
            }
            continue;
        }
        let p = if rng.gen_bool(0.5) {
            let n = rng.gen_range(2..=max_n);
            let density = rng.gen_range(0.02..0.5);
            random_poset(rng, n, density)
        } else {
            let mut widths = Vec::new();
            let mut total = 0;
            let cap = rng.gen_range(2..=max_n);
            while total < cap {
                let w = rng.gen_range(1..=cap - total);
                widths.push(w);
                total += w;
            }
            let density = rng.gen_range(0.2..0.9);
            layered_poset(rng, &widths, density)
        };
        let depth = rng.gen_range(0..=2 * n_param);
        let colors = nested_coloring(rng, &p, depth, n_param);
        let cp = ColoredPoset::new(p, colors, n_param).expect("within the size cap");
        if cp.is_valid() {
            return cp;
        }
    }
}

// Up to 2N+1 levels wide enough to force a barrier each, colored by level
// parity, plus at most N flips.
fn banded(rng: &mut impl Rng, max_n: usize, n_param: usize) -> (Poset, Vec<u8>) {
    let wide = (2 * n_param + 1) * (n_param + 1) + 1;
    let bands = rng.gen_range(1..=(max_n / wide).clamp(1, 2 * n_param + 1));
    let spare = max_n.saturating_sub(bands * wide) / bands;
    let widths: Vec<usize> = (0..bands).map(|_| (wide + rng.gen_range(0..=spare)).min(max_n)).collect();
    let density = rng.gen_range(0.6..=1.0);
    let p = layered_poset(rng, &widths, density);
    let first = rng.gen_range(0..2u8);
    let mut colors = Vec::with_capacity(p.len());
    for (k, &w) in widths.iter().enumerate() {
        colors.extend(std::iter::repeat_n(first ^ (k % 2) as u8, w));
    }
    for _ in 0..rng.gen_range(0..=n_param) {
        let i = rng.gen_range(0..colors.len());
        colors[i] ^= 1;
    }
    (p, colors)
}

/// Names of the trace families, in the order `trace_instance` cycles them.
pub const TRACE_FAMILIES: [&str; 7] = [
    "half_lines",
    "disjoint_chains",
    "principal_down_sets",
    "constant",
    "antichain_singletons",
    "overlapping_intervals",
    "column_pool",
];

#[derive(Debug, Clone)]
pub struct TraceInstance {
    pub family: &'static str,
    pub trace: TraceStructure,
    pub seq: IndexedSequence,
    /// Independence dimension of the trace.
    pub n_param: usize,
}

fn members_to_trace(rows: usize, members: &[Vec<usize>]) -> TraceStructure {
    TraceStructure::from_columns(rows, members).expect("rows in range")
}

// One draw from `family` on `size` points; not yet filtered.
fn draw_trace(rng: &mut impl Rng, family: &str, size: usize) -> (TraceStructure, IndexedSequence) {
    let ident: Vec<usize> = (0..size).collect();
    match family {
        "half_lines" => {
            let rows = rng.gen_range(size + 1..=(2 * size + 1).min(64));
            let mut cuts: Vec<usize> = (1..rows).collect();
            cuts.shuffle(rng);
            let mut cuts: Vec<usize> = cuts[..size].to_vec();
            cuts.sort_unstable();
            let members: Vec<Vec<usize>> = cuts.iter().map(|&c| (0..c).collect()).collect();
            let seq = IndexedSequence::new(Poset::chain(size), ident).expect("one column each");
            (members_to_trace(rows, &members), seq)
        }
        "disjoint_chains" => {
            let k = rng.gen_range(1..=size.min(3));
            let mut pairs = Vec::new();
            let mut members = Vec::new();
            for i in 0..size {
                let chain = i % k;
                let pos = i / k;
                if i >= k {
                    pairs.push((i - k, i));
                }
                // Rows of chain c are c*size .. c*size + size.
                members.push((chain * size..=chain * size + pos).collect::<Vec<usize>>());
            }
            let p = Poset::from_pairs(size, &pairs).expect("chains go up");
            (members_to_trace(k * size, &members), IndexedSequence::new(p, ident).expect("one column each"))
        }
        "principal_down_sets" => {
            let density = rng.gen_range(0.1..0.6);
            let p = random_poset(rng, size, density);
            let members: Vec<Vec<usize>> = (0..size).map(|i| p.strictly_below(i).with(i).to_vec()).collect();
            (members_to_trace(size, &members), IndexedSequence::new(p, ident).expect("one column each"))
        }
        "constant" => {
            let rows = rng.gen_range(1..=4);
            let column: Vec<usize> = (0..rows).filter(|_| rng.gen_bool(0.5)).collect();
            let density = rng.gen_range(0.0..0.6);
            let p = random_poset(rng, size, density);
            (members_to_trace(rows, &[column]), IndexedSequence::new(p, vec![0; size]).expect("one shared column"))
        }
        "antichain_singletons" => {
            let members: Vec<Vec<usize>> = (0..size).map(|i| vec![i]).collect();
            (members_to_trace(size, &members), IndexedSequence::new(Poset::antichain(size), ident).expect("one column each"))
        }
        "overlapping_intervals" => {
            // Pairwise overlapping windows sliding right along the rows.
            let step = rng.gen_range(1..=2);
            let len = step * size + rng.gen_range(1..=3);
            // One empty row at each end keeps every pair with a row outside both.
            let rows = step * (size - 1) + len + 2;
            let members: Vec<Vec<usize>> = (0..size).map(|i| (step * i + 1..step * i + len + 1).collect()).collect();
            let seq = IndexedSequence::new(Poset::chain(size), ident).expect("one column each");
            (members_to_trace(rows, &members), seq)
        }
        _ => {
            let rows = rng.gen_range(1..=6);
            let pool: Vec<Vec<usize>> = (0..rng.gen_range(1..=3))
                .map(|_| (0..rows).filter(|_| rng.gen_bool(0.5)).collect())
                .collect();
            let density = rng.gen_range(0.0..0.7);
            let p = random_poset(rng, size, density);
            let assign: Vec<usize> = (0..size).map(|_| rng.gen_range(0..pool.len())).collect();
            (members_to_trace(rows, &pool), IndexedSequence::new(p, assign).expect("columns in range"))
        }
    }
}

/// Draws per instance before a family is given up on.
pub const MAX_DRAWS: usize = 2000;

/// The first draw of `family` on `size` points (stream `index`) that passes
/// the indiscernibility check at its independence dimension.
pub fn trace_instance(seed: u64, index: u64, family: &'static str, size: usize) -> Option<TraceInstance> {
    let mut rng = instance_rng(seed, index);
    for _ in 0..MAX_DRAWS {
        let (trace, seq) = draw_trace(&mut rng, family, size);
        let n_param = trace.independence_dimension().0;
        if let Ok(report) = is_delta_indiscernible(&trace, &seq, n_param, true, DEFAULT_TUPLE_CAP) {
            if report.holds {
                return Some(TraceInstance { family, trace, seq, n_param });
            }
        }
    }
    None
}

/// Instances on streams `0..count` cycling through the families, sizes drawn
/// from `min_size..=max_size`; streams where no draw passes are skipped.
pub fn trace_corpus(seed: u64, count: usize, min_size: usize, max_size: usize) -> Vec<TraceInstance> {
    (0..count as u64)
        .filter_map(|k| {
            let family = TRACE_FAMILIES[k as usize % TRACE_FAMILIES.len()];
            let size = instance_rng(seed ^ 0x5eed, k).gen_range(min_size..=max_size);
            trace_instance(seed, k, family, size)
        })
        .collect()
}

/// Instances of one family at a fixed size, on streams `0..count`.
pub fn family_corpus(seed: u64, count: usize, family: &'static str, size: usize) -> Vec<TraceInstance> {
    (0..count as u64).filter_map(|k| trace_instance(seed, k, family, size)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = random_poset(&mut instance_rng(7, 3), 12, 0.3);
        let b = random_poset(&mut instance_rng(7, 3), 12, 0.3);
        let c = random_poset(&mut instance_rng(7, 4), 12, 0.3);
        assert_eq!(a, b);
        assert_ne!(a.relation_pairs(), c.relation_pairs());
    }

    #[test]
    fn generated_colorings_pass() {
        let mut rng = instance_rng(1, 0);
        for n in 1..=2 {
            let cp = valid_coloring(&mut rng, 20, n);
            assert!(cp.is_valid());
        }
    }

    #[test]
    fn every_family_yields() {
        for (k, family) in TRACE_FAMILIES.iter().enumerate() {
            let inst = trace_instance(11, k as u64, family, 6).expect("family passes at size 6");
            assert_eq!(inst.seq.poset.len(), 6);
        }
    }
}
