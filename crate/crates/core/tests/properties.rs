use posetdef::chain_cover::restricted_cover;
use posetdef::decomposition::{compress_chain, decompose};
use posetdef::definability::{assemble_psi, Ctx};
use posetdef::formula::parse_sexpr;
use posetdef::generate::{instance_rng, trace_instance, valid_coloring, TRACE_FAMILIES};
use posetdef::io::{ColoringFile, PosetFile, TraceFile};
use posetdef::{min_chain_cover, ColoredPoset, Direction, Poset};
use proptest::prelude::*;

/// Random orders: relations only go from smaller to larger labels, then close.
fn poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .zip(bits)
                .filter_map(|(pair, keep)| keep.then_some(pair))
                .collect();
            Poset::from_pairs(n, &pairs).unwrap()
        })
    })
}

fn colored(max: usize) -> impl Strategy<Value = (Poset, Vec<u8>, usize)> {
    poset(max).prop_flat_map(|p| {
        let n = p.len();
        (Just(p), proptest::collection::vec(0..2u8, n), 0..3usize)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn order_is_strict_and_closed(p in poset(14)) {
        let n = p.len();
        for i in 0..n {
            prop_assert!(!p.lt(i, i));
            for j in 0..n {
                prop_assert!(!(p.lt(i, j) && p.lt(j, i)));
                for k in 0..n {
                    prop_assert!(!(p.lt(i, j) && p.lt(j, k)) || p.lt(i, k));
                }
            }
        }
    }

    #[test]
    fn down_and_up_sets_agree(p in poset(14)) {
        for i in 0..p.len() {
            let single = p.set(&[i]).unwrap();
            prop_assert_eq!(p.closure(&single, Direction::Down), p.strictly_below(i));
            for j in p.strictly_above(i).iter() {
                prop_assert!(p.strictly_below(j).contains(i));
            }
        }
    }

    #[test]
    fn levels_partition_the_poset(p in poset(14)) {
        let levels = p.levels_within(&p.all(), Direction::Up);
        let total: usize = levels.iter().map(|l| l.len()).sum();
        prop_assert_eq!(total, p.len());
        for l in &levels {
            prop_assert!(p.is_antichain(l).unwrap());
        }
    }

    #[test]
    fn chain_cover_matches_its_witness(p in poset(20)) {
        let cover = min_chain_cover(&p);
        prop_assert!(p.is_antichain(&cover.width_witness).unwrap());
        prop_assert_eq!(cover.width_witness.len(), cover.chains.len());
        let mut seen: Vec<usize> = cover.chains.concat();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..p.len()).collect::<Vec<_>>());
    }

    #[test]
    fn verification_witnesses_are_real((p, f, n) in colored(9)) {
        let cp = ColoredPoset::new(p.clone(), f, n).unwrap();
        let report = cp.verify();
        prop_assert_eq!(report.passes, report.violations.is_empty());
        for v in &report.violations {
            let w = p.set(&v.witness).unwrap();
            prop_assert!(p.is_antichain(&w).unwrap() || p.is_chain(&w).unwrap());
        }
        prop_assert_eq!(report.passes, report.max_bichromatic <= n && report.max_alternation < 2 * n + 2);
    }

    #[test]
    fn decompositions_reproduce_the_coloring(seed in any::<u64>(), n in 1..=3usize) {
        let cp = valid_coloring(&mut instance_rng(seed, 0), 24, n);
        let d = decompose(&cp).unwrap();
        prop_assert!(d.blocks.count() <= 2 * n + 2);
        prop_assert!(d.max_chains() <= cp.block_bound());
        for i in 0..cp.len() {
            prop_assert_eq!(d.evaluate(i), cp.color(i));
        }
    }

    #[test]
    fn chain_compressions_cover_inside_the_class(seed in any::<u64>(), n in 1..=3usize) {
        let cp = valid_coloring(&mut instance_rng(seed, 1), 24, n);
        let p = &cp.poset;
        for t in 0..2u8 {
            for chain in restricted_cover(p, &cp.class(t)).chain_sets(p.len()) {
                let comp = compress_chain(&cp, &chain, t).unwrap();
                prop_assert!(comp.k() <= n);
                let covered = comp.covered(p);
                prop_assert!(chain.is_subset(&covered));
                prop_assert!(covered.is_subset(&cp.class(t)));
            }
        }
    }

    #[test]
    fn file_formats_round_trip((p, f, n) in colored(10)) {
        let pf: PosetFile = serde_json::from_str(&serde_json::to_string(&PosetFile::from_poset(&p)).unwrap()).unwrap();
        let q = pf.to_poset().unwrap();
        prop_assert_eq!(q.relation_pairs(), p.relation_pairs());
        let cp = ColoredPoset::new(p, f, n).unwrap();
        let back = ColoringFile::from_colored(&cp).attach(q).unwrap();
        prop_assert_eq!(back.colors(), cp.colors());
        prop_assert_eq!(back.n_param, n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn psi_formulas_round_trip_and_repeat(seed in any::<u64>(), family in 0..TRACE_FAMILIES.len(), size in 4..=8usize) {
        let Some(inst) = trace_instance(seed, 0, TRACE_FAMILIES[family], size) else { return Ok(()) };
        let file = TraceFile::from_trace(&inst.trace);
        prop_assert_eq!(file.to_trace().unwrap().independence_dimension(), inst.trace.independence_dimension());
        for row in 0..inst.trace.rows() {
            let ctx = Ctx::new(&inst.trace, &inst.seq, row).unwrap();
            let psi = assemble_psi(&ctx).unwrap();
            prop_assert!(psi.exact());
            let tree = psi.formula.to_elements();
            prop_assert_eq!(parse_sexpr(&posetdef::formula::to_sexpr(&tree)).unwrap(), tree);
            prop_assert_eq!(assemble_psi(&ctx).unwrap().formula, psi.formula);
        }
    }
}
