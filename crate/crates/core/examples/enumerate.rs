//! Counts of posets on small ground sets, labeled and up to isomorphism.

use posetdef::enumerate::{labeled_posets, unlabeled_posets};

fn main() {
    for n in 0..=4 {
        println!("{n} points: {} labeled", labeled_posets(n).len());
    }
    for n in 0..=7 {
        println!("{n} points: {} up to isomorphism", unlabeled_posets(n).len());
    }
}
