//! Exact offline optimum: the load-multiset dynamic program, the
//! exhaustive oracle, and state-count diagnostics.

mod bounds;
mod brute;
mod dp;

pub use bounds::{
    compute_state_bound_bounded, compute_state_bound_general, profile_states,
    profile_states_with_budget, BoundedStateBound, StateProfile,
};
pub use brute::{
    solve_bruteforce, solve_bruteforce_with_budget, BruteForceOutcome, DEFAULT_SEQUENCE_BUDGET,
};
pub use dp::{
    backpointer_path, forward_layers, solve_dp, solve_dp_with_budget, Backpointer, DpLayer,
    DpOutcome, DpState, Placement, DEFAULT_STATE_BUDGET,
};
