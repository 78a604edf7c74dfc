//! Four sets of dimension 1 that no 4-point poset order makes indiscernible.

use posetdef::trace::{four_sets, four_sets_search};

fn main() {
    let (t, sets) = four_sets();
    println!("sets {sets:?} over {} points, dimension {}", t.rows(), t.independence_dimension().0);
    let report = four_sets_search();
    println!("posets tested {}, admissible {}", report.posets_tested, report.admissible);
}
