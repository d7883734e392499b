mod common;

use bincover::exact::{compute_state_bound_general, profile_states, solve_bruteforce, solve_dp};
use bincover::heuristics::{dual_next_fit, greedy_threshold};
use bincover::model::{simulate, ChoiceSequence, Instance};
use bincover::{Rational, Rational64 as Q, Scalar};
use num_bigint::BigUint;
use proptest::prelude::*;

use common::{check_replay_invariants, q};

fn grid_size() -> impl Strategy<Value = Q> {
    (4i64..=8).prop_flat_map(|grid| ((grid + 3) / 4..=grid).prop_map(move |a| q(a, grid)))
}

fn profits(bin_limit: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(0i64..=8, bin_limit).prop_map(|mut raw| {
        raw.sort_unstable_by(|a, b| b.cmp(a));
        raw[0] = raw[0].max(1);
        raw.into_iter().map(|a| q(a, 8)).collect()
    })
}

prop_compose! {
    fn small_instance()(bin_limit in 1usize..=3)
        (items in proptest::collection::vec(grid_size(), 0..=7), profits in profits(bin_limit), bin_limit in Just(bin_limit))
        -> Instance<Q> {
        Instance::new(items, bin_limit, profits).unwrap()
    }
}

prop_compose! {
    fn labelled_instance()(inst in small_instance())
        (labels in proptest::collection::vec(1..=inst.bin_limit, inst.len()), inst in Just(inst))
        -> (Instance<Q>, ChoiceSequence) {
        (inst, ChoiceSequence(labels))
    }
}

fn to_big(x: &Q) -> Rational {
    Rational::from_fraction(*x.numer(), *x.denom())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dp_matches_bruteforce(inst in small_instance()) {
        let dp = solve_dp(&inst).unwrap();
        let brute = solve_bruteforce(&inst).unwrap();
        prop_assert_eq!(dp.opt_value, brute.opt_value);
        // both return the lexicographically smallest optimal sequence
        prop_assert_eq!(&dp.witness.choices, &brute.witness);
        prop_assert_eq!(simulate(&inst, &dp.witness.choices).unwrap().total_profit, dp.opt_value);
    }

    #[test]
    fn opt_bounded_by_floor_of_total(inst in small_instance()) {
        prop_assert!(solve_dp(&inst).unwrap().opt_value <= inst.profit_upper_bound());
    }

    #[test]
    fn opt_monotone_in_k(inst in small_instance(), drop in 0i64..=8) {
        let mut wider = inst.clone();
        let last = *inst.profits.last().unwrap();
        wider.profits.push((last - q(drop, 8)).max(q(0, 1)));
        wider.bin_limit += 1;
        prop_assert!(solve_dp(&wider).unwrap().opt_value >= solve_dp(&inst).unwrap().opt_value);
    }

    #[test]
    fn profit_scaling(inst in small_instance(), num in 1i64..=9, den in 1i64..=9) {
        let lambda = q(num, den);
        let mut scaled = inst.clone();
        scaled.profits.iter_mut().for_each(|g| *g *= lambda);
        let base = solve_dp(&inst).unwrap();
        let out = solve_dp(&scaled).unwrap();
        prop_assert_eq!(out.opt_value, base.opt_value * lambda);
        prop_assert_eq!(out.witness.choices, base.witness.choices);
    }

    #[test]
    fn dnf_is_half_optimal_and_dominated(inst in small_instance()) {
        let opt = solve_dp(&inst).unwrap().opt_value;
        let dnf = dual_next_fit(&inst).unwrap();
        prop_assert!(dnf.total_profit * q(2, 1) >= opt);
        prop_assert!(dnf.total_profit <= opt);
        for t in 1..=inst.bin_limit {
            let g = greedy_threshold(&inst, t).unwrap();
            prop_assert!(g.total_profit <= opt);
            prop_assert_eq!(simulate(&inst, &g.choices).unwrap(), g);
        }
    }

    #[test]
    fn replay_invariants((inst, choices) in labelled_instance()) {
        let first = simulate(&inst, &choices).unwrap();
        prop_assert_eq!(&first, &simulate(&inst, &choices).unwrap());
        prop_assert!(BigUint::from(first.deliveries()) <= inst.total_size().floor_big().to_biguint().unwrap());
        if let Err(msg) = check_replay_invariants(&inst, &choices) {
            return Err(TestCaseError::fail(msg));
        }
    }

    #[test]
    fn profit_additive_across_clean_seam(
        (left, lc) in labelled_instance(),
        right_items in proptest::collection::vec(grid_size(), 0..=5),
        right_seed in any::<u64>(),
    ) {
        let first = simulate(&left, &lc).unwrap();
        prop_assume!(first.leftover_loads.is_empty());
        let right = Instance { items: right_items, ..left.clone() };
        let rc = ChoiceSequence(
            (0..right.len()).map(|i| 1 + ((right_seed >> (i % 60)) as usize) % right.bin_limit).collect(),
        );
        let whole = Instance { items: [left.items.clone(), right.items.clone()].concat(), ..left.clone() };
        let wc = ChoiceSequence([lc.0.clone(), rc.0.clone()].concat());
        let total = simulate(&whole, &wc).unwrap().total_profit;
        prop_assert_eq!(total, first.total_profit + simulate(&right, &rc).unwrap().total_profit);
    }

    #[test]
    fn state_counts_within_general_bound(inst in small_instance()) {
        let profile = profile_states(&inst).unwrap();
        let bound = compute_state_bound_general(inst.len() as u64, inst.bin_limit as u64, &q(1, 4));
        prop_assert!(profile.per_step_counts.iter().all(|&c| BigUint::from(c) <= bound));
        prop_assert!(profile.within_bound());
    }

    #[test]
    fn scalar_backends_agree(inst in small_instance()) {
        let big = Instance {
            items: inst.items.iter().map(to_big).collect(),
            bin_limit: inst.bin_limit,
            profits: inst.profits.iter().map(to_big).collect(),
            min_size_hint: None,
        };
        let narrow = solve_dp(&inst).unwrap();
        let wide = solve_dp(&big).unwrap();
        prop_assert_eq!(to_big(&narrow.opt_value), wide.opt_value);
        prop_assert_eq!(narrow.witness.choices, wide.witness.choices);
        prop_assert_eq!(narrow.per_step_counts, wide.per_step_counts);
    }
}
