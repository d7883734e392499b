//! JSON file formats. Every rational is written as an exact string such as
//! `"7/2"` or `"3"`; inputs also accept exact decimals like `"0.6"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::StateProfile;
use crate::generators::{PartitionSmalls, Side};
use crate::hardness::{GapReport, LongestPath, TransitionDigraph};
use crate::model::{ChoiceSequence, DeliveryEvent, Instance, Solution};
use crate::scalar::Scalar;

fn parse_all<S: Scalar>(values: &[String]) -> Result<Vec<S>> {
    values.iter().map(|s| S::parse_exact(s)).collect()
}

fn strings<S: Scalar>(values: &[S]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub items: Vec<String>,
    #[serde(rename = "K")]
    pub bin_limit: usize,
    #[serde(rename = "G")]
    pub profits: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_size: Option<String>,
}

impl InstanceFile {
    /// Parses the numbers without validating the instance.
    pub fn to_instance<S: Scalar>(&self) -> Result<Instance<S>> {
        Ok(Instance {
            items: parse_all(&self.items)?,
            bin_limit: self.bin_limit,
            profits: parse_all(&self.profits)?,
            min_size_hint: self.min_size.as_deref().map(S::parse_exact).transpose()?,
        })
    }

    pub fn from_instance<S: Scalar>(inst: &Instance<S>) -> Self {
        InstanceFile {
            items: strings(&inst.items),
            bin_limit: inst.bin_limit,
            profits: strings(&inst.profits),
            min_size: inst.min_size_hint.as_ref().map(ToString::to_string),
        }
    }
}

/// Reads an instance without validating it.
pub fn parse_instance<S: Scalar>(json: &str) -> Result<Instance<S>> {
    serde_json::from_str::<InstanceFile>(json)
        .map_err(json_err)?
        .to_instance()
}

pub fn instance_to_json<S: Scalar>(inst: &Instance<S>) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub item_index: usize,
    pub bin_label: usize,
    pub open_count: usize,
    pub profit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub choices: Vec<usize>,
    pub events: Vec<EventRecord>,
    pub total_profit: String,
    pub leftover_loads: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opt_value: Option<String>,
}

impl SolutionFile {
    pub fn from_solution<S: Scalar>(sol: &Solution<S>, algorithm: Option<&str>) -> Self {
        SolutionFile {
            choices: sol.choices.0.clone(),
            events: sol
                .events
                .iter()
                .map(|e| EventRecord {
                    item_index: e.item_index,
                    bin_label: e.bin_label,
                    open_count: e.open_count,
                    profit: e.profit.to_string(),
                })
                .collect(),
            total_profit: sol.total_profit.to_string(),
            leftover_loads: strings(&sol.leftover_loads),
            algorithm: algorithm.map(str::to_string),
            opt_value: None,
        }
    }

    pub fn to_solution<S: Scalar>(&self) -> Result<Solution<S>> {
        Ok(Solution {
            choices: ChoiceSequence(self.choices.clone()),
            events: self
                .events
                .iter()
                .map(|e| {
                    Ok(DeliveryEvent {
                        item_index: e.item_index,
                        bin_label: e.bin_label,
                        open_count: e.open_count,
                        profit: S::parse_exact(&e.profit)?,
                    })
                })
                .collect::<Result<_>>()?,
            total_profit: S::parse_exact(&self.total_profit)?,
            leftover_loads: parse_all(&self.leftover_loads)?,
        })
    }
}

pub fn parse_solution<S: Scalar>(json: &str) -> Result<Solution<S>> {
    serde_json::from_str::<SolutionFile>(json)
        .map_err(json_err)?
        .to_solution()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateProfileFile {
    pub per_step_counts: Vec<usize>,
    /// Decimal string; the bound easily exceeds 64 bits.
    pub bound: Option<String>,
}

impl From<&StateProfile> for StateProfileFile {
    fn from(p: &StateProfile) -> Self {
        StateProfileFile {
            per_step_counts: p.per_step_counts.clone(),
            bound: p.theoretical_bound.as_ref().map(ToString::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphFile {
    pub n: usize,
    /// `[from, to, weight]` with vertices named `v_<layer>_<sub>`.
    pub edges: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub longest_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<String>>,
}

impl DigraphFile {
    pub fn new<S: Scalar>(dg: &TransitionDigraph<S>, longest: Option<&LongestPath<S>>) -> Self {
        DigraphFile {
            n: dg.n,
            edges: dg
                .edges
                .iter()
                .map(|e| (e.from.to_string(), e.to.to_string(), e.weight.to_string()))
                .collect(),
            longest_path: longest.map(|p| p.value.to_string()),
            path: longest.map(|p| p.vertices.iter().map(ToString::to_string).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReportFile {
    pub n_batches: usize,
    pub opt: String,
    pub dnf: String,
    pub known_good: String,
    pub dnf_ratio: String,
    pub ell: String,
    pub ell_ratio: String,
}

impl<S: Scalar> From<&GapReport<S>> for GapReportFile {
    fn from(r: &GapReport<S>) -> Self {
        GapReportFile {
            n_batches: r.n_batches,
            opt: r.opt.to_string(),
            dnf: r.dnf.to_string(),
            known_good: r.known_good.to_string(),
            dnf_ratio: r.dnf_ratio.to_string(),
            ell: r.ell.to_string(),
            ell_ratio: r.ell_ratio.to_string(),
        }
    }
}

/// Sidecar holding the hidden split of one batch's small items.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub smalls: Vec<String>,
    pub sides: Vec<Side>,
}

impl PartitionFile {
    pub fn new<S: Scalar>(p: &PartitionSmalls<S>) -> Self {
        PartitionFile {
            smalls: strings(&p.smalls),
            sides: p.sides.clone(),
        }
    }

    pub fn to_partition<S: Scalar>(&self) -> Result<PartitionSmalls<S>> {
        Ok(PartitionSmalls {
            smalls: parse_all(&self.smalls)?,
            sides: self.sides.clone(),
        })
    }
}

/// Config for the `uniform` and `bounded` generators, plus the `K` and `G`
/// that complete the emitted instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub seed: u64,
    pub n: usize,
    pub min_size: String,
    pub grid: u64,
    #[serde(default)]
    pub distinct_sizes: Option<usize>,
    #[serde(rename = "K")]
    pub bin_limit: usize,
    #[serde(rename = "G")]
    pub profits: Vec<String>,
}

/// Config for batch instances: either explicit `smalls` + `sides`, or
/// `seed`, `parts_per_side`, `min_size` and `grid` for the partition
/// generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchFile {
    pub n_batches: usize,
    #[serde(rename = "K", default = "default_batch_k")]
    pub bin_limit: usize,
    #[serde(default)]
    pub smalls: Option<Vec<String>>,
    #[serde(default)]
    pub sides: Option<Vec<Side>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub parts_per_side: Option<usize>,
    #[serde(default)]
    pub min_size: Option<String>,
    #[serde(default)]
    pub grid: Option<u64>,
}

fn default_batch_k() -> usize {
    2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::simulate;
    use num_rational::{BigRational, Rational64 as Q};

    const FIXTURE: &str = r#"{"items": ["3/5", "0.6", "2/5", "2/5", "1", "1"], "K": 2, "G": ["1", "1/2"]}"#;

    #[test]
    fn parses_instance_file() {
        let inst: Instance<Q> = parse_instance(FIXTURE).unwrap();
        assert_eq!(inst.items[1], Q::new(3, 5));
        assert_eq!(inst.bin_limit, 2);
        assert!(inst.validate().is_valid());
        let round: Instance<Q> = parse_instance(&instance_to_json(&inst)).unwrap();
        assert_eq!(round, inst);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_instance::<Q>("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_instance::<Q>(r#"{"items": ["x"], "K": 1, "G": ["1"]}"#),
            Err(Error::Parse(_))
        ));
        assert!(parse_instance::<Q>(r#"{"items": [], "K": 1, "G": ["1"], "extra": 1}"#).is_err());
    }

    #[test]
    fn invalid_instance_still_parses() {
        let inst: Instance<Q> =
            parse_instance(r#"{"items": ["0"], "K": 2, "G": ["1/2", "1"]}"#).unwrap();
        assert_eq!(inst.validate().violations.len(), 2);
    }

    #[test]
    fn solution_round_trip() {
        let inst: Instance<BigRational> = parse_instance(FIXTURE).unwrap();
        let sol = simulate(&inst, &vec![1, 2, 1, 2, 1, 1].into()).unwrap();
        let file = SolutionFile::from_solution(&sol, Some("dp"));
        assert_eq!(file.total_profit, "7/2");
        let json = serde_json::to_string(&file).unwrap();
        assert_eq!(parse_solution::<BigRational>(&json).unwrap(), sol);
    }
}
