//! Block decomposition of generated valid colorings: the color of every
//! element is recovered from its block and whether it lies on a chain.

use posetdef::decomposition::decompose;
use posetdef::generate::{instance_rng, valid_coloring};
use posetdef::io::decomposition_dot;

fn main() {
    for (k, n) in [(0u64, 1usize), (1, 1), (2, 2)] {
        let cp = valid_coloring(&mut instance_rng(7, k), 40, n);
        let dec = decompose(&cp).expect("valid colorings decompose");
        let size = cp.poset.len();
        println!(
            "instance {k}: {size} elements, N={n}, {} barriers, at most {} chains per block",
            dec.blocks.count(),
            dec.max_chains()
        );
        for (b, (block, chains)) in dec.block_sets.iter().zip(&dec.chain_covers).enumerate() {
            println!("  block {b}: {} elements, chains {chains:?}", block.len());
        }
        assert!((0..size).all(|i| dec.evaluate(i) == cp.color(i)));
        if k == 0 {
            print!("{}", decomposition_dot(&cp, &dec));
        }
    }
}
