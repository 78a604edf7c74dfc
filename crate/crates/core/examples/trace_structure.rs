//! A trace structure indexed by a chain: independence dimension,
//! indiscernibility, and the colorings read off each row.

use posetdef::trace::{is_delta_indiscernible, trace_coloring, IndexedSequence, TraceStructure};
use posetdef::Poset;

fn main() {
    // Column i is the half-line {0, …, i} of a 7-point universe.
    let members: Vec<Vec<usize>> = (0..6).map(|i| (0..=i).collect()).collect();
    let t = TraceStructure::from_columns(7, &members).unwrap();
    let (dim, witness) = t.independence_dimension();
    println!("independence dimension {dim}, shattered columns {witness:?}");
    let seq = IndexedSequence::new(Poset::chain(6), (0..6).collect()).unwrap();
    let report = is_delta_indiscernible(&t, &seq, dim, true, 1_000_000).unwrap();
    println!("indiscernible: {} after {} tuples", report.holds, report.tuples_checked);
    for row in 0..t.rows() {
        let cp = trace_coloring(&t, &seq, row).unwrap();
        println!("  row {row}: colors {:?} valid at N={}: {}", cp.colors(), cp.n_param, cp.is_valid());
    }

    // Reversing the order on the index breaks nothing, but shuffling does.
    let shuffled = IndexedSequence::new(Poset::chain(6), vec![0, 3, 1, 4, 2, 5]).unwrap();
    let report = is_delta_indiscernible(&t, &shuffled, dim, true, 1_000_000).unwrap();
    println!("shuffled indiscernible: {} counterexample {:?}", report.holds, report.counterexample);
}
