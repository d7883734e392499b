//! State-count bounds and the per-step state profiler.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Result;
use crate::exact::dp::{forward_layers, DEFAULT_STATE_BUDGET};
use crate::model::Instance;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateProfile {
    /// Distinct DP states after each item.
    pub per_step_counts: Vec<usize>,
    pub theoretical_bound: Option<BigUint>,
}

impl StateProfile {
    pub fn peak(&self) -> usize {
        self.per_step_counts.iter().copied().max().unwrap_or(0)
    }

    /// Whether every step stays within `theoretical_bound` (vacuously true
    /// when no bound is attached).
    pub fn within_bound(&self) -> bool {
        match &self.theoretical_bound {
            Some(bound) => self
                .per_step_counts
                .iter()
                .all(|&c| BigUint::from(c) <= *bound),
            None => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedStateBound {
    /// Distinct load values one open bin can take.
    pub per_bin: BigUint,
    pub total: BigUint,
}

fn binomial(n: &BigUint, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for j in 0..k {
        let j = BigUint::from(j);
        if j >= *n {
            return BigUint::zero();
        }
        acc = acc * (n - &j) / (j + 1u32);
    }
    acc
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Non-empty labelled configurations: `sum_{i=1..K} base^i * C(K,i) * i!`.
fn labelled_configurations(base: &BigUint, bin_limit: u64) -> BigUint {
    let k = BigUint::from(bin_limit);
    (1..=bin_limit)
        .map(|i| base.pow(i as u32) * binomial(&k, i) * factorial(i))
        .sum()
}

/// Labelled subset-distribution bound for items of size at least `c`:
/// with `m = floor(1/c)` and `M = sum_{i=1..m} C(n, i)`, returns
/// `M* = sum_{i=0..K} C(M, i) * C(K, i) * i!`.
///
/// Panics unless `0 < c <= 1`.
pub fn compute_state_bound_general<S: Scalar>(n: u64, bin_limit: u64, c: &S) -> BigUint {
    assert!(
        *c > S::zero() && *c <= S::one(),
        "minimum size must lie in (0, 1]"
    );
    let m = (S::one() / c.clone())
        .floor_big()
        .to_u64()
        .expect("floor(1/c) fits u64");
    let n_big = BigUint::from(n);
    let subsets: BigUint = (1..=m).map(|i| binomial(&n_big, i)).sum();
    let k = BigUint::from(bin_limit);
    (0..=bin_limit)
        .map(|i| binomial(&subsets, i) * binomial(&k, i) * factorial(i))
        .sum()
}

/// Bound for inputs with `b` distinct sizes, where `cap` is the most items
/// an open bin can hold (callers pass `floor(1/c)`):
/// `per_bin = sum_{j=1..cap} C(b-1+j, j)` and
/// `total = sum_{i=1..K} per_bin^i * C(K, i) * i!`.
///
/// The total counts non-empty configurations only; the state with no open
/// bins is not included.
pub fn compute_state_bound_bounded(b: u64, bin_limit: u64, cap: u64) -> BoundedStateBound {
    assert!(b >= 1 && bin_limit >= 1 && cap >= 1, "b, K and cap must be positive");
    let per_bin: BigUint = (1..=cap)
        .map(|j| binomial(&BigUint::from(b - 1 + j), j))
        .sum();
    let total = labelled_configurations(&per_bin, bin_limit);
    BoundedStateBound { per_bin, total }
}

/// Distinct-state counts after each item, with the general bound attached.
/// The bound uses the declared minimum size when present, else the
/// smallest item, capped at 1.
pub fn profile_states<S: Scalar>(inst: &Instance<S>) -> Result<StateProfile> {
    profile_states_with_budget(inst, DEFAULT_STATE_BUDGET)
}

pub fn profile_states_with_budget<S: Scalar>(
    inst: &Instance<S>,
    budget: usize,
) -> Result<StateProfile> {
    let layers = forward_layers(inst, budget)?;
    let per_step_counts = layers[1..].iter().map(|l| l.len()).collect();
    let c = inst
        .min_size_hint
        .clone()
        .or_else(|| inst.items.iter().min().cloned())
        .map(|c| c.min(S::one()));
    let theoretical_bound = c.map(|c| {
        compute_state_bound_general(inst.items.len() as u64, inst.bin_limit as u64, &c)
    });
    Ok(StateProfile {
        per_step_counts,
        theoretical_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64 as Q;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn general_bound_values() {
        assert_eq!(compute_state_bound_general(4, 1, &q(1, 2)), big(11));
        assert_eq!(compute_state_bound_general(3, 2, &q(1, 1)), big(13));
        assert_eq!(compute_state_bound_general(17, 0, &q(1, 3)), big(1));
        assert_eq!(compute_state_bound_general(0, 3, &q(1, 3)), big(1));
    }

    #[test]
    #[should_panic]
    fn general_bound_rejects_large_c() {
        compute_state_bound_general(3, 1, &q(3, 2));
    }

    #[test]
    fn bounded_values() {
        assert_eq!(
            compute_state_bound_bounded(1, 1, 1),
            BoundedStateBound { per_bin: big(1), total: big(1) }
        );
        assert_eq!(
            compute_state_bound_bounded(2, 1, 2),
            BoundedStateBound { per_bin: big(5), total: big(5) }
        );
        assert_eq!(compute_state_bound_bounded(2, 2, 2).total, big(60));
    }

    #[test]
    fn binomial_edge_cases() {
        assert_eq!(binomial(&big(5), 0), big(1));
        assert_eq!(binomial(&big(5), 5), big(1));
        assert_eq!(binomial(&big(5), 6), big(0));
        assert_eq!(binomial(&big(10), 3), big(120));
        assert_eq!(factorial(5), big(120));
    }

    #[test]
    fn single_bin_profile_is_flat() {
        let inst = Instance::new(vec![q(1, 2); 4], 1, vec![q(1, 1)]).unwrap();
        let profile = profile_states(&inst).unwrap();
        assert_eq!(profile.per_step_counts, vec![1, 1, 1, 1]);
        assert!(profile.within_bound());
    }

    #[test]
    fn batch_fixture_within_general_bound() {
        let inst = Instance::new(
            vec![q(3, 5), q(3, 5), q(2, 5), q(2, 5), q(1, 1), q(1, 1)],
            2,
            vec![q(1, 1), q(1, 2)],
        )
        .unwrap();
        let profile = profile_states(&inst).unwrap();
        let bound = compute_state_bound_general(6, 2, &q(2, 5));
        assert_eq!(profile.theoretical_bound.as_ref(), Some(&bound));
        assert!(profile.per_step_counts.iter().all(|&c| big(c as u64) <= bound));
    }
}
