//! Dynamic program over open-bin load multisets.
//!
//! After `t` items the reachable situations are keyed by the sorted
//! multiset of loads of the currently open bins. Labels and item identities
//! are erased: the future profit of a situation depends only on these loads,
//! so two partial packings with equal load multisets are interchangeable.
//!
//! The solver runs a forward pass that enumerates every reachable state per
//! step (keeping the best accumulated profit and a backpointer), then a
//! backward pass computing the optimal profit-to-go of every state. The
//! witness is rebuilt front to back by trying labels `1, 2, ..., K` in order
//! and keeping the first one whose successor is still optimal, which yields
//! the lexicographically smallest optimal label sequence over all of
//! `{1..K}^n`.

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::model::{replay, ChoiceSequence, Instance, Solution};
use crate::scalar::Scalar;

pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

/// How an item entered a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    /// Added to the open bin at this position of the predecessor's sorted
    /// load list.
    Existing(usize),
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Backpointer {
    /// Index of the predecessor in the previous layer.
    pub predecessor: usize,
    pub placement: Placement,
    pub delivered: bool,
}

/// Best accumulated profit of a reachable load multiset; the multiset
/// itself is the key of the owning [`DpLayer`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpState<S> {
    pub best_profit: S,
    pub backpointer: Option<Backpointer>,
}

/// States after a fixed number of items, keyed by the sorted loads of the
/// open bins (every load lies in `(0, 1)`).
pub type DpLayer<S> = IndexMap<Vec<S>, DpState<S>>;

#[derive(Debug, Clone)]
pub struct DpOutcome<S> {
    pub opt_value: S,
    pub witness: Solution<S>,
    /// Distinct states after each item.
    pub per_step_counts: Vec<usize>,
}

impl<S> DpOutcome<S> {
    pub fn peak_states(&self) -> usize {
        self.per_step_counts.iter().copied().max().unwrap_or(1)
    }
}

struct Successor<S> {
    placement: Placement,
    loads: Vec<S>,
    /// Open count at the delivery, when the item covers its bin.
    delivered: Option<usize>,
}

impl<S: Scalar> Successor<S> {
    fn gain(&self, inst: &Instance<S>) -> S {
        match self.delivered {
            Some(k) => inst.profit(k).clone(),
            None => S::zero(),
        }
    }
}

fn insert_sorted<S: Ord>(loads: &mut Vec<S>, value: S) {
    let at = loads.partition_point(|x| *x <= value);
    loads.insert(at, value);
}

/// Result of adding `size` into the bin at `slot` (or a new bin) of the
/// sorted multiset `loads`.
fn place<S: Scalar>(loads: &[S], placement: Placement, size: &S) -> (Vec<S>, Option<usize>) {
    let one = S::one();
    let mut next = loads.to_vec();
    match placement {
        Placement::Existing(slot) => {
            let load = next.remove(slot) + size.clone();
            if load >= one {
                (next, Some(loads.len()))
            } else {
                insert_sorted(&mut next, load);
                (next, None)
            }
        }
        Placement::Open => {
            if *size >= one {
                (next, Some(loads.len() + 1))
            } else {
                insert_sorted(&mut next, size.clone());
                (next, None)
            }
        }
    }
}

fn successors<S: Scalar>(loads: &[S], size: &S, bin_limit: usize) -> Vec<Successor<S>> {
    let mut out = Vec::with_capacity(loads.len() + 1);
    for slot in 0..loads.len() {
        if slot > 0 && loads[slot] == loads[slot - 1] {
            continue;
        }
        let placement = Placement::Existing(slot);
        let (next, delivered) = place(loads, placement, size);
        out.push(Successor {
            placement,
            loads: next,
            delivered,
        });
    }
    if loads.len() < bin_limit {
        let (next, delivered) = place(loads, Placement::Open, size);
        out.push(Successor {
            placement: Placement::Open,
            loads: next,
            delivered,
        });
    }
    out
}

/// Forward pass: every reachable layer, layer `t` holding the states after
/// `t` items. `budget` caps the total number of stored states.
pub fn forward_layers<S: Scalar>(inst: &Instance<S>, budget: usize) -> Result<Vec<DpLayer<S>>> {
    inst.validate().into_result()?;
    let mut layers: Vec<DpLayer<S>> = Vec::with_capacity(inst.items.len() + 1);
    let mut root = DpLayer::new();
    root.insert(
        Vec::new(),
        DpState {
            best_profit: S::zero(),
            backpointer: None,
        },
    );
    let mut stored = 1usize;
    if stored > budget {
        return Err(Error::StateBudgetExhausted { budget });
    }
    layers.push(root);

    for size in &inst.items {
        let current = layers.last().expect("root layer");
        let mut next = DpLayer::new();
        for (predecessor, (loads, state)) in current.iter().enumerate() {
            for succ in successors(loads, size, inst.bin_limit) {
                let profit = state.best_profit.clone() + succ.gain(inst);
                let candidate = DpState {
                    best_profit: profit,
                    backpointer: Some(Backpointer {
                        predecessor,
                        placement: succ.placement,
                        delivered: succ.delivered.is_some(),
                    }),
                };
                match next.get_mut(&succ.loads) {
                    Some(existing) => {
                        if candidate.best_profit > existing.best_profit {
                            *existing = candidate;
                        }
                    }
                    None => {
                        if stored + next.len() + 1 > budget {
                            return Err(Error::StateBudgetExhausted { budget });
                        }
                        next.insert(succ.loads, candidate);
                    }
                }
            }
        }
        stored += next.len();
        layers.push(next);
    }
    Ok(layers)
}

/// Optimal profit obtainable from each state of each layer onwards.
fn values_to_go<S: Scalar>(inst: &Instance<S>, layers: &[DpLayer<S>]) -> Vec<Vec<S>> {
    let n = inst.items.len();
    let mut values: Vec<Vec<S>> = vec![Vec::new(); n + 1];
    values[n] = vec![S::zero(); layers[n].len()];
    for t in (0..n).rev() {
        let size = &inst.items[t];
        let next_layer = &layers[t + 1];
        let row = layers[t]
            .keys()
            .map(|loads| {
                successors(loads, size, inst.bin_limit)
                    .into_iter()
                    .map(|succ| {
                        let idx = next_layer
                            .get_index_of(&succ.loads)
                            .expect("successor enumerated by forward pass");
                        succ.gain(inst) + values[t + 1][idx].clone()
                    })
                    .max()
                    .expect("at least one placement exists")
            })
            .collect();
        values[t] = row;
    }
    values
}

/// Rebuilds the lexicographically smallest optimal label sequence by
/// tracking labelled bins against the unlabelled state space.
fn reconstruct<S: Scalar>(
    inst: &Instance<S>,
    layers: &[DpLayer<S>],
    values: &[Vec<S>],
) -> ChoiceSequence {
    let one = S::one();
    let mut bins: Vec<Option<S>> = vec![None; inst.bin_limit];
    let mut state = 0usize;
    let mut labels = Vec::with_capacity(inst.items.len());

    for (t, size) in inst.items.iter().enumerate() {
        let target = &values[t][state];
        let mut tried_free = false;
        let mut chosen = None;
        for label in 0..inst.bin_limit {
            if bins[label].is_none() {
                // every free label leads to the same successor
                if tried_free {
                    continue;
                }
                tried_free = true;
            }
            let mut trial = bins.clone();
            let load = trial[label].take().unwrap_or_else(S::zero) + size.clone();
            let open_before = bins.iter().filter(|b| b.is_some()).count()
                + usize::from(bins[label].is_none());
            let gain = if load >= one {
                inst.profit(open_before).clone()
            } else {
                trial[label] = Some(load);
                S::zero()
            };
            let mut key: Vec<S> = trial.iter().flatten().cloned().collect();
            key.sort();
            let idx = layers[t + 1]
                .get_index_of(&key)
                .expect("labelled successor is reachable");
            if gain + values[t + 1][idx].clone() == *target {
                chosen = Some((label, trial, idx));
                break;
            }
        }
        let (label, trial, idx) = chosen.expect("an optimal placement exists");
        labels.push(label + 1);
        bins = trial;
        state = idx;
    }
    ChoiceSequence(labels)
}

/// Exact offline optimum with the default state budget.
pub fn solve_dp<S: Scalar>(inst: &Instance<S>) -> Result<DpOutcome<S>> {
    solve_dp_with_budget(inst, DEFAULT_STATE_BUDGET)
}

pub fn solve_dp_with_budget<S: Scalar>(inst: &Instance<S>, budget: usize) -> Result<DpOutcome<S>> {
    let layers = forward_layers(inst, budget)?;
    let values = values_to_go(inst, &layers);
    let opt_value = values[0][0].clone();
    debug_assert_eq!(
        layers
            .last()
            .and_then(|l| l.values().map(|s| s.best_profit.clone()).max()),
        Some(opt_value.clone()),
        "forward and backward passes disagree"
    );
    let choices = reconstruct(inst, &layers, &values);
    let witness = replay(inst, &choices);
    debug_assert_eq!(witness.total_profit, opt_value);
    let per_step_counts = layers[1..].iter().map(|l| l.len()).collect();
    Ok(DpOutcome {
        opt_value,
        witness,
        per_step_counts,
    })
}

/// Follows forward backpointers from the best final state. Ties keep the
/// first-discovered predecessor, so this path is optimal but not
/// necessarily lexicographically smallest.
pub fn backpointer_path<S: Scalar>(layers: &[DpLayer<S>]) -> Vec<Placement> {
    let last = layers.last().expect("root layer");
    let mut best: Option<(usize, &S)> = None;
    for (i, state) in last.values().enumerate() {
        if best.is_none_or(|(_, p)| state.best_profit > *p) {
            best = Some((i, &state.best_profit));
        }
    }
    let mut idx = best.map_or(0, |(i, _)| i);
    let mut path = Vec::with_capacity(layers.len() - 1);
    for layer in layers[1..].iter().rev() {
        let (_, state) = layer.get_index(idx).expect("valid index");
        let bp = state.backpointer.expect("non-root state");
        path.push(bp.placement);
        idx = bp.predecessor;
    }
    path.reverse();
    path
}
