//! Baseline algorithms. Each one emits a [`ChoiceSequence`] and reports the
//! profit of replaying it, so the replay engine stays the only source of
//! delivery semantics.

use crate::error::{Error, Result};
use crate::model::{replay, ChoiceSequence, Instance, Solution};
use crate::scalar::Scalar;

/// Dual Next Fit: keep a single open bin and pack everything into it. Every
/// delivery happens with one open bin and earns `G(1)`.
pub fn dual_next_fit<S: Scalar>(inst: &Instance<S>) -> Result<Solution<S>> {
    inst.validate().into_result()?;
    Ok(replay(inst, &ChoiceSequence::constant(1, inst.items.len())))
}

/// Keeps up to `target_open` bins open. While fewer are open, each item
/// opens a new bin under the smallest free label; otherwise it goes to the
/// open bin with the largest load (ties to the smallest label).
pub fn greedy_threshold<S: Scalar>(inst: &Instance<S>, target_open: usize) -> Result<Solution<S>> {
    inst.validate().into_result()?;
    if target_open == 0 || target_open > inst.bin_limit {
        return Err(Error::TargetOpenOutOfRange {
            target: target_open,
            bin_limit: inst.bin_limit,
        });
    }
    let one = S::one();
    let mut loads: Vec<Option<S>> = vec![None; inst.bin_limit];
    let mut labels = Vec::with_capacity(inst.items.len());

    for size in &inst.items {
        let open = loads.iter().filter(|l| l.is_some()).count();
        let slot = if open < target_open {
            loads.iter().position(Option::is_none).expect("free label")
        } else {
            let mut best: Option<(usize, &S)> = None;
            for (slot, load) in loads.iter().enumerate() {
                if let Some(load) = load {
                    if best.is_none_or(|(_, b)| load > b) {
                        best = Some((slot, load));
                    }
                }
            }
            best.expect("target_open >= 1 bins are open").0
        };
        let load = loads[slot].take().unwrap_or_else(S::zero) + size.clone();
        if load < one {
            loads[slot] = Some(load);
        }
        labels.push(slot + 1);
    }
    Ok(replay(inst, &ChoiceSequence(labels)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::simulate;
    use num_rational::Rational64 as Q;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn fixture() -> Instance<Q> {
        Instance::new(
            vec![q(3, 5), q(3, 5), q(2, 5), q(2, 5), q(1, 1), q(1, 1)],
            2,
            vec![q(1, 1), q(1, 2)],
        )
        .unwrap()
    }

    #[test]
    fn dnf_on_batch_fixture() {
        let sol = dual_next_fit(&fixture()).unwrap();
        assert_eq!(sol.total_profit, q(3, 1));
        assert_eq!(
            sol.events.iter().map(|e| e.item_index).collect::<Vec<_>>(),
            vec![2, 5, 6]
        );
    }

    #[test]
    fn dnf_single_bin() {
        let inst = Instance::new(vec![q(1, 2), q(1, 2)], 1, vec![q(1, 1)]).unwrap();
        assert_eq!(dual_next_fit(&inst).unwrap().total_profit, q(1, 1));
    }

    #[test]
    fn dnf_nothing_covered() {
        let inst = Instance::new(vec![q(1, 4)], 2, vec![q(1, 1), q(1, 2)]).unwrap();
        let sol = dual_next_fit(&inst).unwrap();
        assert_eq!(sol.total_profit, q(0, 1));
        assert_eq!(sol.leftover_loads, vec![q(1, 4)]);
    }

    #[test]
    fn greedy_with_one_bin_is_dnf() {
        let inst = fixture();
        assert_eq!(greedy_threshold(&inst, 1).unwrap(), dual_next_fit(&inst).unwrap());
    }

    #[test]
    fn greedy_two_bins_replays() {
        let inst = fixture();
        let sol = greedy_threshold(&inst, 2).unwrap();
        assert_eq!(sol.choices.0, vec![1, 2, 1, 1, 2, 2]);
        assert_eq!(sol.total_profit, q(3, 2));
        assert_eq!(simulate(&inst, &sol.choices).unwrap(), sol);
        assert!(sol.total_profit <= q(7, 2));
    }

    #[test]
    fn greedy_empty() {
        let inst = Instance::new(vec![], 3, vec![q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(greedy_threshold(&inst, 3).unwrap().total_profit, q(0, 1));
    }

    #[test]
    fn greedy_target_range() {
        let inst = fixture();
        assert_eq!(
            greedy_threshold(&inst, 0).unwrap_err(),
            Error::TargetOpenOutOfRange { target: 0, bin_limit: 2 }
        );
        assert!(greedy_threshold(&inst, 3).is_err());
    }
}
