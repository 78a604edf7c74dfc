//! The indiscernibility checker on a few hand-made colorings.

use posetdef::{ColoredPoset, Poset};

fn show(name: &str, cp: &ColoredPoset) {
    let r = cp.verify();
    println!(
        "{name}: N={} passes={} widest two-colored antichain={} longest alternation={}",
        r.n_param, r.passes, r.max_bichromatic, r.max_alternation
    );
    for v in &r.violations {
        println!("  {:?} witness {:?}", v.condition, v.witness);
    }
}

fn main() {
    // 0 < 1 < 2 < 3 colored 0,1,0,1 alternates three times.
    show("alternating chain", &ColoredPoset::new(Poset::chain(4), vec![0, 1, 0, 1], 1).unwrap());
    show("alternating chain", &ColoredPoset::new(Poset::chain(4), vec![0, 1, 0, 1], 2).unwrap());
    // Seven incomparable points: at most N of the minority color.
    let anti = Poset::antichain(7);
    show("antichain 5+2", &ColoredPoset::new(anti.clone(), vec![0, 0, 0, 0, 0, 1, 1], 1).unwrap());
    show("antichain 5+2", &ColoredPoset::new(anti, vec![0, 0, 0, 0, 0, 1, 1], 2).unwrap());
}
