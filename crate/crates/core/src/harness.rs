//! Algorithm comparison: one row per (instance, algorithm) with exact
//! profit ratios against the DP optimum.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exact::{
    solve_bruteforce_with_budget, solve_dp_with_budget, DEFAULT_SEQUENCE_BUDGET,
    DEFAULT_STATE_BUDGET,
};
use crate::heuristics::{dual_next_fit, greedy_threshold};
use crate::model::{replay, Instance, Solution};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Dp,
    Brute,
    Dnf,
    Greedy(usize),
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Dp => write!(f, "dp"),
            Algorithm::Brute => write!(f, "brute"),
            Algorithm::Dnf => write!(f, "dnf"),
            Algorithm::Greedy(t) => write!(f, "greedy:{t}"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dp" => Ok(Algorithm::Dp),
            "brute" => Ok(Algorithm::Brute),
            "dnf" => Ok(Algorithm::Dnf),
            other => other
                .strip_prefix("greedy:")
                .and_then(|t| t.parse().ok())
                .map(Algorithm::Greedy)
                .ok_or_else(|| Error::Parse(format!("unknown algorithm `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub states: usize,
    pub sequences: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            states: DEFAULT_STATE_BUDGET,
            sequences: DEFAULT_SEQUENCE_BUDGET,
        }
    }
}

impl Budgets {
    /// The same cap for DP states and enumerated sequences.
    pub fn uniform(limit: u64) -> Self {
        Budgets {
            states: usize::try_from(limit).unwrap_or(usize::MAX),
            sequences: limit,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome<S> {
    pub solution: Solution<S>,
    pub state_count_peak: Option<usize>,
}

pub fn run_algorithm<S: Scalar>(
    inst: &Instance<S>,
    algorithm: Algorithm,
    budgets: Budgets,
) -> Result<RunOutcome<S>> {
    Ok(match algorithm {
        Algorithm::Dp => {
            let out = solve_dp_with_budget(inst, budgets.states)?;
            RunOutcome {
                state_count_peak: Some(out.peak_states()),
                solution: out.witness,
            }
        }
        Algorithm::Brute => {
            let out = solve_bruteforce_with_budget(inst, budgets.sequences)?;
            RunOutcome {
                solution: replay(inst, &out.witness),
                state_count_peak: None,
            }
        }
        Algorithm::Dnf => RunOutcome {
            solution: dual_next_fit(inst)?,
            state_count_peak: None,
        },
        Algorithm::Greedy(t) => RunOutcome {
            solution: greedy_threshold(inst, t)?,
            state_count_peak: None,
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow<S> {
    pub instance: String,
    pub algorithm: Algorithm,
    pub profit: Option<S>,
    pub opt_value: Option<S>,
    /// `profit / opt_value`; present only when the optimum is positive.
    pub ratio: Option<S>,
    pub wall_time_ms: f64,
    pub state_count_peak: Option<usize>,
    pub error: Option<String>,
}

/// Runs every algorithm on one instance. The optimum comes from the DP; if
/// it fails, ratios are omitted but the rows are still produced.
pub fn compare_instance<S: Scalar>(
    id: &str,
    inst: &Instance<S>,
    algorithms: &[Algorithm],
    budgets: Budgets,
) -> Vec<ComparisonRow<S>> {
    let opt = solve_dp_with_budget(inst, budgets.states)
        .ok()
        .map(|o| o.opt_value);
    algorithms
        .iter()
        .map(|&algorithm| {
            let start = Instant::now();
            let result = run_algorithm(inst, algorithm, budgets);
            let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            let (profit, peak, error) = match result {
                Ok(out) => (Some(out.solution.total_profit), out.state_count_peak, None),
                Err(e) => (None, None, Some(e.to_string())),
            };
            let ratio = match (&profit, &opt) {
                (Some(p), Some(o)) if *o > S::zero() => Some(p.clone() / o.clone()),
                _ => None,
            };
            ComparisonRow {
                instance: id.to_string(),
                algorithm,
                profit,
                opt_value: opt.clone(),
                ratio,
                wall_time_ms,
                state_count_peak: peak,
                error,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmSummary<S> {
    pub rows: usize,
    pub rated: usize,
    pub min_ratio: Option<S>,
    pub mean_ratio: Option<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonSummary<S> {
    pub per_algorithm: BTreeMap<Algorithm, AlgorithmSummary<S>>,
    /// Set when Dual Next Fit earned less than half the optimum anywhere.
    pub dnf_half_violated: bool,
}

pub fn summarize<S: Scalar>(rows: &[ComparisonRow<S>]) -> ComparisonSummary<S> {
    let mut per_algorithm: BTreeMap<Algorithm, (usize, Vec<S>)> = BTreeMap::new();
    for row in rows {
        let entry = per_algorithm.entry(row.algorithm).or_default();
        entry.0 += 1;
        if let Some(r) = &row.ratio {
            entry.1.push(r.clone());
        }
    }
    let half = S::from_fraction(1, 2);
    let dnf_half_violated = rows
        .iter()
        .any(|r| r.algorithm == Algorithm::Dnf && r.ratio.as_ref().is_some_and(|x| *x < half));
    let per_algorithm = per_algorithm
        .into_iter()
        .map(|(alg, (count, ratios))| {
            let min_ratio = ratios.iter().min().cloned();
            let mean_ratio = (!ratios.is_empty()).then(|| {
                let sum = ratios.iter().fold(S::zero(), |a, r| a + r.clone());
                sum / S::from_integer(ratios.len() as i64)
            });
            (
                alg,
                AlgorithmSummary {
                    rows: count,
                    rated: ratios.len(),
                    min_ratio,
                    mean_ratio,
                },
            )
        })
        .collect();
    ComparisonSummary {
        per_algorithm,
        dnf_half_violated,
    }
}
