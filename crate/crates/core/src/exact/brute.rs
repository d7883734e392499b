//! Exhaustive oracle: replays every sequence in `{1..K}^n`.

use crate::error::{Error, Result};
use crate::model::{check_choices, replay, ChoiceSequence, Instance};
use crate::scalar::Scalar;

pub const DEFAULT_SEQUENCE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceOutcome<S> {
    pub opt_value: S,
    /// Lexicographically smallest maximizing sequence.
    pub witness: ChoiceSequence,
    pub sequences: u64,
}

pub fn solve_bruteforce<S: Scalar>(inst: &Instance<S>) -> Result<BruteForceOutcome<S>> {
    solve_bruteforce_with_budget(inst, DEFAULT_SEQUENCE_BUDGET)
}

pub fn solve_bruteforce_with_budget<S: Scalar>(
    inst: &Instance<S>,
    budget: u64,
) -> Result<BruteForceOutcome<S>> {
    inst.validate().into_result()?;
    let n = inst.items.len();
    let k = inst.bin_limit;
    let total = u32::try_from(n)
        .ok()
        .and_then(|e| (k as u64).checked_pow(e))
        .filter(|&count| count <= budget)
        .ok_or(Error::EnumerationBudgetExceeded {
            bin_limit: k,
            items: n,
            budget,
        })?;

    let mut labels = ChoiceSequence(vec![1; n]);
    let mut best: Option<(S, ChoiceSequence)> = None;
    loop {
        debug_assert!(check_choices(inst, &labels).is_ok());
        let profit = replay(inst, &labels).total_profit;
        if best.as_ref().is_none_or(|(b, _)| profit > *b) {
            best = Some((profit, labels.clone()));
        }
        // odometer increment, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                let (opt_value, witness) = best.expect("at least one sequence");
                return Ok(BruteForceOutcome {
                    opt_value,
                    witness,
                    sequences: total,
                });
            }
            pos -= 1;
            if labels.0[pos] < k {
                labels.0[pos] += 1;
                break;
            }
            labels.0[pos] = 1;
        }
    }
}
