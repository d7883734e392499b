//! Adversarial batch instances and the layered transition digraph.
//!
//! A batch is a run of small items totalling 2 that split into two unit
//! halves, with no prefix summing to exactly 1, followed by two unit items.
//! The profit function is `G = [1, 1/2, 0, ..., 0]`. Packing each half
//! into its own bin and each unit item alone earns `3*G(1) + G(2) = 7/2`
//! per batch. An algorithm that cannot find the hidden split is limited to
//! the per-batch transition profits encoded in [`TransitionDigraph`], whose
//! heaviest path weighs `3n`.
//!
//! The per-phase transition tables behind those weights bound algorithms
//! that cannot solve PARTITION. They are not checked by search here: an
//! exhaustive solver does find the split at desk scale and beats them. They
//! enter this crate only through the digraph weights and [`gap_report`].

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{solve_dp_with_budget, DEFAULT_STATE_BUDGET};
use crate::generators::{has_unit_prefix, Side};
use crate::heuristics::dual_next_fit;
use crate::model::{replay, ChoiceSequence, Instance};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchInstanceSpec<S> {
    pub n_batches: usize,
    pub smalls: Vec<S>,
    pub sides: Vec<Side>,
    pub bin_limit: usize,
}

impl<S: Scalar> BatchInstanceSpec<S> {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidBatchSpec(msg.to_string()));
        if self.n_batches == 0 {
            return bad("n_batches must be positive");
        }
        if self.bin_limit < 2 {
            return bad("K must be at least 2");
        }
        if self.smalls.len() != self.sides.len() {
            return bad("every small item needs a side");
        }
        if self.smalls.iter().any(|p| *p <= S::zero()) {
            return bad("small items must be positive");
        }
        let side_sum = |side: Side| {
            self.smalls
                .iter()
                .zip(&self.sides)
                .filter(|(_, s)| **s == side)
                .fold(S::zero(), |acc, (p, _)| acc + p.clone())
        };
        if side_sum(Side::A) != S::one() || side_sum(Side::B) != S::one() {
            return bad("each side must sum to exactly 1");
        }
        if has_unit_prefix(&self.smalls) {
            return bad("a prefix of the small items sums to exactly 1");
        }
        Ok(())
    }

    /// `G(1) = 1`, `G(2) = 1/2`, `G(k) = 0` beyond.
    pub fn profits(&self) -> Vec<S> {
        (1..=self.bin_limit)
            .map(|k| match k {
                1 => S::one(),
                2 => S::from_fraction(1, 2),
                _ => S::zero(),
            })
            .collect()
    }
}

/// `n_batches` repetitions of `smalls ++ [1, 1]`.
pub fn build_batch_instance<S: Scalar>(spec: &BatchInstanceSpec<S>) -> Result<Instance<S>> {
    spec.validate()?;
    let batch: Vec<S> = spec
        .smalls
        .iter()
        .cloned()
        .chain([S::one(), S::one()])
        .collect();
    let items = batch
        .iter()
        .cycle()
        .take(batch.len() * spec.n_batches)
        .cloned()
        .collect();
    Instance::new(items, spec.bin_limit, spec.profits())
}

/// Side A to bin 1, side B to bin 2, each unit item to bin 1.
pub fn known_good_schedule<S: Scalar>(spec: &BatchInstanceSpec<S>) -> Result<ChoiceSequence> {
    spec.validate()?;
    let batch: Vec<usize> = spec
        .sides
        .iter()
        .map(|s| match s {
            Side::A => 1,
            Side::B => 2,
        })
        .chain([1, 1])
        .collect();
    Ok(ChoiceSequence(
        batch
            .iter()
            .cycle()
            .take(batch.len() * spec.n_batches)
            .copied()
            .collect(),
    ))
}

/// `v_{layer, sub}`; layer 0 has only `sub = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub layer: usize,
    pub sub: usize,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v_{}_{}", self.layer, self.sub)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<S> {
    pub from: Vertex,
    pub to: Vertex,
    pub weight: S,
}

/// Layered DAG with one vertex in layer 0 and two in each of layers
/// `1..=n`; consecutive layers are completely joined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionDigraph<S> {
    pub n: usize,
    /// Grouped by target layer, ascending.
    pub edges: Vec<Edge<S>>,
}

/// Batch profit when starting with `from` and ending with `to` open bins.
fn transition_weight<S: Scalar>(from: usize, to: usize) -> S {
    S::from_integer(match (from, to) {
        (0, 0) => 3,
        (0, 1) => 2,
        (1, 0) => 4,
        (1, 1) => 3,
        _ => unreachable!("sub index is 0 or 1"),
    })
}

pub fn build_transition_digraph<S: Scalar>(n: usize) -> Result<TransitionDigraph<S>> {
    if n == 0 {
        return Err(Error::EmptyDigraph);
    }
    let mut edges = Vec::with_capacity(4 * n - 2);
    for layer in 1..=n {
        let sources = if layer == 1 { 1 } else { 2 };
        for from in 0..sources {
            for to in 0..2 {
                edges.push(Edge {
                    from: Vertex { layer: layer - 1, sub: from },
                    to: Vertex { layer, sub: to },
                    weight: transition_weight(from, to),
                });
            }
        }
    }
    Ok(TransitionDigraph { n, edges })
}

impl<S: Scalar> TransitionDigraph<S> {
    pub fn vertex_count(&self) -> usize {
        2 * self.n + 1
    }

    pub fn weight(&self, from: Vertex, to: Vertex) -> Option<&S> {
        self.edges
            .iter()
            .find(|e| e.from == from && e.to == to)
            .map(|e| &e.weight)
    }

    /// Checks `w(u -> v_{i,0}) + w(v_{i,0} -> v_{i+1,0}) ==
    /// w(u -> v_{i,1}) + w(v_{i,1} -> v_{i+1,0})` for every `u` in layer
    /// `i - 1`. Only meaningful for interior layers `1 <= i < n`.
    pub fn exchange_identity_holds(&self, layer: usize) -> bool {
        if layer == 0 || layer >= self.n {
            return false;
        }
        let sources = if layer == 1 { 1 } else { 2 };
        let v = |layer, sub| Vertex { layer, sub };
        (0..sources).all(|j| {
            let u = v(layer - 1, j);
            let via = |sub| -> Option<S> {
                Some(
                    self.weight(u, v(layer, sub))?.clone()
                        + self.weight(v(layer, sub), v(layer + 1, 0))?.clone(),
                )
            };
            matches!((via(0), via(1)), (Some(a), Some(b)) if a == b)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestPath<S> {
    pub value: S,
    /// From `v_{0,0}` to the last layer.
    pub vertices: Vec<Vertex>,
}

/// Heaviest path from layer 0 to layer `n` in one forward pass over the
/// edges. Ties prefer sub-index 0, both for the end vertex and for every
/// predecessor.
pub fn longest_path<S: Scalar>(dg: &TransitionDigraph<S>) -> LongestPath<S> {
    // best[layer][sub] = (value, predecessor sub)
    let mut best: Vec<[Option<(S, usize)>; 2]> = vec![[None, None]; dg.n + 1];
    best[0][0] = Some((S::zero(), 0));
    for e in &dg.edges {
        let Some((base, _)) = best[e.from.layer][e.from.sub].clone() else {
            continue;
        };
        let candidate = base + e.weight.clone();
        let slot = &mut best[e.to.layer][e.to.sub];
        let better = match slot {
            None => true,
            Some((v, pred)) => candidate > *v || (candidate == *v && e.from.sub < *pred),
        };
        if better {
            *slot = Some((candidate, e.from.sub));
        }
    }

    let last = &best[dg.n];
    let mut sub = match (&last[0], &last[1]) {
        (Some((a, _)), Some((b, _))) if b > a => 1,
        (Some(_), _) => 0,
        _ => 1,
    };
    let value = last[sub].as_ref().expect("reachable end").0.clone();
    let mut vertices = vec![Vertex { layer: dg.n, sub }];
    for layer in (1..=dg.n).rev() {
        sub = best[layer][sub].as_ref().expect("reachable").1;
        vertices.push(Vertex { layer: layer - 1, sub });
    }
    vertices.reverse();
    LongestPath { value, vertices }
}

pub fn longest_path_value<S: Scalar>(dg: &TransitionDigraph<S>) -> S {
    longest_path(dg).value
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport<S> {
    pub n_batches: usize,
    pub opt: S,
    pub dnf: S,
    pub known_good: S,
    pub dnf_ratio: S,
    /// Heaviest transition-digraph path.
    pub ell: S,
    pub ell_ratio: S,
}

impl<S: Scalar> fmt::Display for GapReport<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: [(&str, &S); 6] = [
            ("OPT", &self.opt),
            ("known-good schedule", &self.known_good),
            ("Dual Next Fit", &self.dnf),
            ("DNF / OPT", &self.dnf_ratio),
            ("longest path", &self.ell),
            ("longest path / OPT", &self.ell_ratio),
        ];
        writeln!(f, "batches: {}", self.n_batches)?;
        for (name, value) in rows {
            writeln!(f, "{name:<22} {:>12} {:>12.6}", value.to_string(), value.to_f64())?;
        }
        Ok(())
    }
}

pub fn gap_report<S: Scalar>(spec: &BatchInstanceSpec<S>) -> Result<GapReport<S>> {
    gap_report_with_budget(spec, DEFAULT_STATE_BUDGET)
}

pub fn gap_report_with_budget<S: Scalar>(
    spec: &BatchInstanceSpec<S>,
    budget: usize,
) -> Result<GapReport<S>> {
    let inst = build_batch_instance(spec)?;
    let opt = solve_dp_with_budget(&inst, budget)?.opt_value;
    let dnf = dual_next_fit(&inst)?.total_profit;
    let known_good = replay(&inst, &known_good_schedule(spec)?).total_profit;
    let ell = longest_path_value(&build_transition_digraph::<S>(spec.n_batches)?);
    Ok(GapReport {
        n_batches: spec.n_batches,
        dnf_ratio: dnf.clone() / opt.clone(),
        ell_ratio: ell.clone() / opt.clone(),
        opt,
        dnf,
        known_good,
        ell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64 as Q;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn spec(n_batches: usize) -> BatchInstanceSpec<Q> {
        BatchInstanceSpec {
            n_batches,
            smalls: vec![q(3, 5), q(3, 5), q(2, 5), q(2, 5)],
            sides: vec![Side::A, Side::B, Side::A, Side::B],
            bin_limit: 2,
        }
    }

    #[test]
    fn single_batch_items() {
        let inst = build_batch_instance(&spec(1)).unwrap();
        assert_eq!(
            inst.items,
            vec![q(3, 5), q(3, 5), q(2, 5), q(2, 5), q(1, 1), q(1, 1)]
        );
        assert_eq!(inst.profits, vec![q(1, 1), q(1, 2)]);
    }

    #[test]
    fn two_batches_repeat() {
        let inst = build_batch_instance(&spec(2)).unwrap();
        assert_eq!(inst.len(), 12);
        assert_eq!(inst.items[..6], inst.items[6..]);
    }

    #[test]
    fn larger_k_pads_zero_profits() {
        let mut s = spec(1);
        s.bin_limit = 4;
        let inst = build_batch_instance(&s).unwrap();
        assert_eq!(inst.profits, vec![q(1, 1), q(1, 2), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn spec_violations() {
        let mut s = spec(1);
        s.smalls = vec![q(3, 5), q(2, 5), q(3, 5), q(2, 5)];
        assert!(matches!(build_batch_instance(&s), Err(Error::InvalidBatchSpec(_))));
        let mut s = spec(1);
        s.bin_limit = 1;
        assert!(build_batch_instance(&s).is_err());
        let mut s = spec(1);
        s.sides = vec![Side::A, Side::A, Side::B, Side::B];
        assert!(build_batch_instance(&s).is_err());
        let mut s = spec(1);
        s.n_batches = 0;
        assert!(build_batch_instance(&s).is_err());
    }

    #[test]
    fn known_good_earns_seven_halves_per_batch() {
        let choices = known_good_schedule(&spec(1)).unwrap();
        assert_eq!(choices.0, vec![1, 2, 1, 2, 1, 1]);
        for n in 1..=5 {
            let s = spec(n);
            let inst = build_batch_instance(&s).unwrap();
            let sol = replay(&inst, &known_good_schedule(&s).unwrap());
            assert_eq!(sol.total_profit, q(7, 2) * Q::from_integer(n as i64));
        }
    }

    #[test]
    fn digraph_shape() {
        let one = build_transition_digraph::<Q>(1).unwrap();
        assert_eq!(one.vertex_count(), 3);
        let weights: Vec<_> = one.edges.iter().map(|e| e.weight).collect();
        assert_eq!(weights, vec![q(3, 1), q(2, 1)]);
        let two = build_transition_digraph::<Q>(2).unwrap();
        assert_eq!(two.vertex_count(), 5);
        assert_eq!(two.edges.len(), 6);
        let v = |layer, sub| Vertex { layer, sub };
        assert_eq!(two.weight(v(0, 0), v(1, 1)), Some(&q(2, 1)));
        assert_eq!(two.weight(v(1, 1), v(2, 0)), Some(&q(4, 1)));
        assert_eq!(two.weight(v(0, 1), v(1, 0)), None);
        assert_eq!(build_transition_digraph::<Q>(0).unwrap_err(), Error::EmptyDigraph);
    }

    #[test]
    fn longest_path_values() {
        let dg = build_transition_digraph::<Q>(1).unwrap();
        assert_eq!(longest_path_value(&dg), q(3, 1));
        let dg = build_transition_digraph::<Q>(2).unwrap();
        let path = longest_path(&dg);
        assert_eq!(path.value, q(6, 1));
        assert!(path.vertices.iter().all(|v| v.sub == 0));
        assert_eq!(path.vertices.len(), 3);
    }

    #[test]
    fn exchange_identity() {
        let dg = build_transition_digraph::<Q>(6).unwrap();
        assert!((1..6).all(|i| dg.exchange_identity_holds(i)));
        assert!(!dg.exchange_identity_holds(0));
        assert!(!dg.exchange_identity_holds(6));
    }

    #[test]
    fn gap_single_batch() {
        let report = gap_report(&spec(1)).unwrap();
        assert_eq!(report.opt, q(7, 2));
        assert_eq!(report.dnf, q(3, 1));
        assert_eq!(report.known_good, q(7, 2));
        assert_eq!(report.dnf_ratio, q(6, 7));
        assert_eq!(report.ell_ratio, q(6, 7));
        assert!(report.to_string().contains("6/7"));
    }
}
