//! Auditable verdicts for the nonexistence criteria: each hypothesis is
//! checked separately and recorded with its outcome and witness.

mod corollaries;
mod theorem_a;
mod verdict;

pub use corollaries::{
    corollary_prime_quadratic, corollary_q24, corollary_quadratic, corollary_ramified, corollary_splits3,
    theorem_b_check, theorem_b_check_with_bound, z2_layer_check,
};
pub use theorem_a::{contradiction_trace, theorem_a_check, theorem_s, TraceCase, TraceRecord};
pub use verdict::{Condition, CriterionVerdict, SolverRun, Status};
