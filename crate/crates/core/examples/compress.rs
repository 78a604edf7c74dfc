//! Chain and antichain compression on small colored posets.

use posetdef::decomposition::{barrier_partition, compress_antichain, compress_chain};
use posetdef::{ColoredPoset, Poset};

fn main() {
    // A chain 0 < 1 < … < 5 of color 0 with a color-1 element 6 squeezed
    // between 2 and 3.
    let mut pairs: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 1)).collect();
    pairs.extend([(2, 6), (6, 3)]);
    let p = Poset::from_pairs(7, &pairs).unwrap();
    let cp = ColoredPoset::new(p, vec![0, 0, 0, 0, 0, 0, 1], 1).unwrap();
    let c = cp.poset.set(&[0, 1, 2, 3, 4, 5]).unwrap();
    let comp = compress_chain(&cp, &c, 0).unwrap();
    println!("chain splits into intervals {:?}", comp.pairs);

    // Nine incomparable points of color 0 over one color-1 point below
    // four of them.
    let mut pairs = Vec::new();
    for top in 0..4 {
        pairs.push((9, top));
    }
    let p = Poset::from_pairs(10, &pairs).unwrap();
    let mut colors = vec![0; 10];
    colors[9] = 1;
    let cp = ColoredPoset::new(p, colors, 1).unwrap();
    let a = cp.poset.set(&[0, 1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
    let comp = compress_antichain(&cp, &a, 0).unwrap();
    println!("core {} below-witnesses {} above-witnesses {}", comp.a0, comp.j_minus, comp.j_plus);
    let (_, parts) = barrier_partition(&cp, &a, 0).unwrap();
    for (key, members) in parts {
        println!("  elements over {key}: {members}");
    }
}
