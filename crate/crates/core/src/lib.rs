//! Offline bin covering with delivery.
//!
//! Items arrive in a fixed order and at most `K` bins may be open at once.
//! Covering a bin while `k` bins are open earns `G(k)`. This crate computes
//! exact offline optima (a load-multiset dynamic program and an exhaustive
//! oracle), runs baseline heuristics such as Dual Next Fit, generates
//! seeded instance families, and builds the adversarial batch family
//! together with its transition digraph.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases below fix it
//! to arbitrary-precision rationals, and `*64` variants use `Ratio<i64>`.

pub mod error;
pub mod exact;
pub mod generators;
pub mod hardness;
pub mod harness;
pub mod heuristics;
pub mod io;
pub mod model;
pub mod scalar;

pub use error::{Error, Result};
pub use exact::{
    compute_state_bound_bounded, compute_state_bound_general, profile_states, solve_bruteforce,
    solve_dp, StateProfile,
};
pub use generators::{gen_bounded, gen_partition_smalls, gen_uniform, Side};
pub use hardness::{
    build_batch_instance, build_transition_digraph, gap_report, gap_report_with_budget,
    known_good_schedule, longest_path, longest_path_value,
};
pub use heuristics::{dual_next_fit, greedy_threshold};
pub use model::{simulate, total_size, validate_instance, ChoiceSequence, ValidationReport};
pub use scalar::Scalar;

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;
pub type Rational64 = num_rational::Rational64;

pub type Instance = model::Instance<Rational>;
pub type Solution = model::Solution<Rational>;
pub type DeliveryEvent = model::DeliveryEvent<Rational>;
pub type GeneratorConfig = generators::GeneratorConfig<Rational>;
pub type BatchInstanceSpec = hardness::BatchInstanceSpec<Rational>;
pub type TransitionDigraph = hardness::TransitionDigraph<Rational>;
pub type GapReport = hardness::GapReport<Rational>;

pub type Instance64 = model::Instance<Rational64>;
pub type Solution64 = model::Solution<Rational64>;
