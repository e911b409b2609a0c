mod common;

use chc_core::checker::{check_fragment, classify_track};
use chc_core::model::{Atom, Benchmark, Head, Term};
use chc_core::smtlib::{parse_benchmark, print_canonical};
use chc_core::transform::{checksum, merge_queries, split_queries, MERGED_QUERY_PRED};
use chc_core::TrackCategory;
use proptest::prelude::*;

use common::*;

fn lia(seed: u64) -> Benchmark {
    let sys = gen_lia_system(seed);
    parse_benchmark(&render_lia(&sys, &default_names(&sys)), "gen").unwrap()
}

fn bool_bench(seed: u64) -> Benchmark {
    parse_benchmark(&render_bool_system(&gen_bool_system(seed)), "gen").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn linearity_is_monotone_under_atom_removal(seed in any::<u64>()) {
        let b = lia(seed);
        for c in &b.clauses {
            for i in 0..c.body_atoms.len() {
                let mut smaller = c.clone();
                smaller.body_atoms.remove(i);
                prop_assert!(!c.is_linear() || smaller.is_linear());
            }
            prop_assert_eq!(c.is_linear(), c.body_atoms.len() <= 1);
        }
    }

    #[test]
    fn lia_lin_members_are_linear(seed in any::<u64>()) {
        for b in [lia(seed), bool_bench(seed)] {
            let report = check_fragment(&b);
            prop_assert_eq!(report.track, check_fragment(&b).track);
            if report.track == TrackCategory::LiaLin {
                prop_assert!(b.clauses.iter().all(|c| c.is_linear()));
            }
            if report.conformant {
                prop_assert_eq!(report.track, classify_track(&b));
                prop_assert_eq!(b.num_queries(), 1);
            } else {
                prop_assert_eq!(report.track, TrackCategory::Unclassified);
            }
        }
    }

    #[test]
    fn well_formedness_lists_every_violation(seed in any::<u64>(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let mut b = lia(seed);
        prop_assert!(b.well_formedness().is_empty());
        let mut broken = std::collections::BTreeSet::new();
        for ix in picks {
            let i = ix.index(b.clauses.len());
            if broken.insert(i) {
                let c = &mut b.clauses[i];
                c.head = Head::Atom(Atom::new("undeclared_pred", vec![Term::int(1)]));
            }
        }
        let problems = b.well_formedness();
        prop_assert!(problems.len() >= broken.len(), "{:?}", problems);
    }

    #[test]
    fn merge_is_idempotent_and_adds_one_predicate(seed in any::<u64>()) {
        let b = bool_bench(seed);
        let merged = merge_queries(&b).unwrap();
        prop_assert_eq!(merged.num_queries(), 1);
        prop_assert!(merge_queries(&merged).unwrap().alpha_eq(&merged));
        if b.num_queries() > 1 {
            prop_assert_eq!(merged.decls.len(), b.decls.len() + 1);
            prop_assert!(merged.decls.last().unwrap().name.starts_with(MERGED_QUERY_PRED));
            prop_assert!(merged.clauses.last().unwrap().is_query());
        } else {
            prop_assert!(merged.alpha_eq(&b));
        }
        for part in split_queries(&b).unwrap() {
            prop_assert_eq!(part.num_queries(), 1);
            prop_assert_eq!(part.clauses.len(), b.clauses.len() - b.num_queries() + 1);
        }
    }

    #[test]
    fn canonical_print_round_trips(seed in any::<u64>()) {
        for b in [lia(seed), bool_bench(seed)] {
            let text = print_canonical(&b);
            let again = parse_benchmark(&text, "again").unwrap();
            prop_assert!(again.alpha_eq(&b));
            prop_assert_eq!(print_canonical(&again), text);
        }
    }

    #[test]
    fn equal_checksums_iff_alpha_equivalent(s1 in 0u64..6, s2 in 0u64..6, r1 in any::<u64>(), r2 in any::<u64>()) {
        let variant = |s: u64, r: u64| {
            let sys = gen_lia_system(s);
            let mut g = rng(r);
            let text = perturb_layout(&render_lia(&sys, &random_names(&sys, &mut g)), &mut g, true);
            parse_benchmark(&text, "v").unwrap()
        };
        let (a, b) = (variant(s1, r1), variant(s2, r2));
        prop_assert_eq!(checksum(&a) == checksum(&b), a.alpha_eq(&b));
        prop_assert_eq!(checksum(&a), checksum(&a.alpha_normalized()));
    }
}
