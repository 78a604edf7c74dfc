//! Minimum chain cover of a random poset, certified by an antichain of the
//! same size.

use posetdef::generate::{instance_rng, random_poset};
use posetdef::min_chain_cover;

fn main() {
    let p = random_poset(&mut instance_rng(42, 0), 24, 0.15);
    let cover = min_chain_cover(&p);
    println!("{} elements, {} comparable pairs", p.len(), p.relation_pairs().len());
    println!("width {}", cover.width());
    for chain in &cover.chains {
        println!("  chain {chain:?}");
    }
    println!("antichain certificate {}", cover.width_witness);
    assert_eq!(cover.width_witness.len(), cover.width());
    assert!(p.comparable_pair(&cover.width_witness).is_none());
}
