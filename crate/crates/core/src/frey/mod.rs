//! Frey curves `y² = x(x + A)(x - B)` attached to solutions of
//! `x⁴ - y⁴ = n·z^p`.

mod conductor;
mod invariants;
mod triple;

pub use conductor::{
    bad_profiles, bad_slots, conductor_support, inertia_divisibility, valuation_profile, Attribution,
    ConductorReport, EvenSupport, OddSupport, Reduction, SlotProfile,
};
pub use invariants::{invariants, printed_ordj_comparison, DisplayAudit, FreyInvariants, InvariantChecks, OrdJComparison};
pub use triple::{
    nonprimitive_family, remark_valuations, validate_rational_triple, validate_triple, FreyTriple,
    NonPrimitiveSolution, NormalizedTriple,
};
