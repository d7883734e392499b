//! Problem data model and the replay engine.
//!
//! Items arrive in list order and each one is placed into one of at most
//! `bin_limit` open bins. A bin is covered once its load reaches 1; it is
//! delivered at that moment and earns `G(k)`, where `k` is the number of
//! open bins *including* the one being covered. A bin whose label is not
//! currently open is opened implicitly when it receives an item, so every
//! sequence in `{1..K}^n` is a feasible packing procedure.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An offline instance: ordered item list, bin limit `K`, and profit
/// function `G` stored as `profits[k - 1] = G(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance<S> {
    pub items: Vec<S>,
    pub bin_limit: usize,
    pub profits: Vec<S>,
    /// Declared lower bound on item sizes. Metadata only; checked by
    /// [`Instance::validate`].
    pub min_size_hint: Option<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    NonPositiveSize { item_index: usize },
    SizeBelowHint { item_index: usize },
    NonPositiveHint,
    BinLimitZero,
    ProfitLengthMismatch { expected: usize, found: usize },
    NegativeProfit { open_count: usize },
    IncreasingProfit { open_count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NonPositiveSize { item_index } => {
                write!(f, "item {item_index} has non-positive size")
            }
            Violation::SizeBelowHint { item_index } => {
                write!(f, "item {item_index} is below the declared minimum size")
            }
            Violation::NonPositiveHint => write!(f, "declared minimum size is not positive"),
            Violation::BinLimitZero => write!(f, "bin limit K must be at least 1"),
            Violation::ProfitLengthMismatch { expected, found } => {
                write!(f, "profit function has {found} values, expected K = {expected}")
            }
            Violation::NegativeProfit { open_count } => write!(f, "G({open_count}) is negative"),
            Violation::IncreasingProfit { open_count } => {
                write!(f, "G is increasing at k = {open_count}")
            }
        }
    }
}

/// Every invariant an [`Instance`] violates, in a stable order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl<S: Scalar> Instance<S> {
    /// Builds an instance and rejects it unless every invariant holds.
    pub fn new(items: Vec<S>, bin_limit: usize, profits: Vec<S>) -> Result<Self> {
        let inst = Instance {
            items,
            bin_limit,
            profits,
            min_size_hint: None,
        };
        inst.validate().into_result()?;
        Ok(inst)
    }

    pub fn with_min_size_hint(mut self, hint: S) -> Result<Self> {
        self.min_size_hint = Some(hint);
        self.validate().into_result()?;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `G(open_count)` for `1 <= open_count <= K`.
    pub fn profit(&self, open_count: usize) -> &S {
        &self.profits[open_count - 1]
    }

    /// Nonnegative (not strictly positive) profits are accepted: the
    /// adversarial batch family sets `G(k) = 0` for `k >= 3`.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let zero = S::zero();
        for (i, p) in self.items.iter().enumerate() {
            if *p <= zero {
                violations.push(Violation::NonPositiveSize { item_index: i + 1 });
            }
        }
        if let Some(hint) = &self.min_size_hint {
            if *hint <= zero {
                violations.push(Violation::NonPositiveHint);
            }
            for (i, p) in self.items.iter().enumerate() {
                if p < hint {
                    violations.push(Violation::SizeBelowHint { item_index: i + 1 });
                }
            }
        }
        if self.bin_limit == 0 {
            violations.push(Violation::BinLimitZero);
        }
        if self.profits.len() != self.bin_limit {
            violations.push(Violation::ProfitLengthMismatch {
                expected: self.bin_limit,
                found: self.profits.len(),
            });
        }
        for (i, g) in self.profits.iter().enumerate() {
            if *g < zero {
                violations.push(Violation::NegativeProfit { open_count: i + 1 });
            }
        }
        for (i, pair) in self.profits.windows(2).enumerate() {
            if pair[1] > pair[0] {
                violations.push(Violation::IncreasingProfit { open_count: i + 2 });
            }
        }
        ValidationReport { violations }
    }

    /// Sum of all item sizes.
    pub fn total_size(&self) -> S {
        self.items.iter().fold(S::zero(), |acc, p| acc + p.clone())
    }

    /// `floor(total_size) * G(1)`, an upper bound on any achievable profit.
    pub fn profit_upper_bound(&self) -> S {
        let covers = self.total_size().floor_big();
        let g1 = self.profits.first().cloned().unwrap_or_else(S::zero);
        S::from_big_fraction(covers, 1.into()).expect("floor fits scalar") * g1
    }

    /// The instance restricted to its first `len` items.
    pub fn prefix(&self, len: usize) -> Self {
        Instance {
            items: self.items[..len].to_vec(),
            ..self.clone()
        }
    }
}

/// Free-function form of [`Instance::validate`].
pub fn validate_instance<S: Scalar>(inst: &Instance<S>) -> ValidationReport {
    inst.validate()
}

/// Free-function form of [`Instance::total_size`].
pub fn total_size<S: Scalar>(inst: &Instance<S>) -> S {
    inst.total_size()
}

/// One bin label in `1..=K` per item.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ChoiceSequence(pub Vec<usize>);

impl ChoiceSequence {
    pub fn constant(label: usize, len: usize) -> Self {
        ChoiceSequence(vec![label; len])
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for ChoiceSequence {
    fn from(labels: Vec<usize>) -> Self {
        ChoiceSequence(labels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeliveryEvent<S> {
    /// 1-based position in the item list.
    pub item_index: usize,
    pub bin_label: usize,
    /// Open bins at the covering moment, counting the covered bin.
    pub open_count: usize,
    pub profit: S,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution<S> {
    pub choices: ChoiceSequence,
    pub events: Vec<DeliveryEvent<S>>,
    pub total_profit: S,
    /// Loads of bins still open after the last item, sorted ascending.
    pub leftover_loads: Vec<S>,
}

impl<S> Solution<S> {
    pub fn deliveries(&self) -> usize {
        self.events.len()
    }
}

/// Replays `choices` on `inst` and returns the resulting deliveries and
/// profit.
pub fn simulate<S: Scalar>(inst: &Instance<S>, choices: &ChoiceSequence) -> Result<Solution<S>> {
    inst.validate().into_result()?;
    check_choices(inst, choices)?;
    Ok(replay(inst, choices))
}

pub(crate) fn check_choices<S>(inst: &Instance<S>, choices: &ChoiceSequence) -> Result<()> {
    if choices.len() != inst.items.len() {
        return Err(Error::ChoiceLength {
            expected: inst.items.len(),
            found: choices.len(),
        });
    }
    for (position, &label) in choices.0.iter().enumerate() {
        if label == 0 || label > inst.bin_limit {
            return Err(Error::LabelOutOfRange {
                position: position + 1,
                label,
                bin_limit: inst.bin_limit,
            });
        }
    }
    Ok(())
}

/// Replay without validation; callers guarantee a valid instance and
/// in-range labels of the right length.
pub(crate) fn replay<S: Scalar>(inst: &Instance<S>, choices: &ChoiceSequence) -> Solution<S> {
    let one = S::one();
    let mut open: Vec<(usize, S)> = Vec::with_capacity(inst.bin_limit);
    let mut events = Vec::new();
    let mut total = S::zero();

    for (t, (size, &label)) in inst.items.iter().zip(&choices.0).enumerate() {
        let slot = match open.iter().position(|(l, _)| *l == label) {
            Some(slot) => slot,
            None => {
                open.push((label, S::zero()));
                open.len() - 1
            }
        };
        open[slot].1 = open[slot].1.clone() + size.clone();
        if open[slot].1 >= one {
            let open_count = open.len();
            let profit = inst.profit(open_count).clone();
            total = total + profit.clone();
            events.push(DeliveryEvent {
                item_index: t + 1,
                bin_label: label,
                open_count,
                profit,
            });
            open.remove(slot);
        }
    }

    let mut leftover_loads: Vec<S> = open.into_iter().map(|(_, load)| load).collect();
    leftover_loads.sort();
    Solution {
        choices: choices.clone(),
        events,
        total_profit: total,
        leftover_loads,
    }
}
