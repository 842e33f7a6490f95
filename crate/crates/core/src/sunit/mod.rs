//! S-unit groups and the equation `λ + μ = 1`: exhaustive search in an
//! exponent box, classification, orbit reduction and congruence filters.

mod filters;
mod group;
mod solve;

pub use filters::{congruence_filters, FilterOutcome, FilterReport, FilterStatus, UnitPartner};
pub use group::{slots_above, sunit_group, sunit_group_with_bound, SUnitGroup};
pub use solve::{
    classify, is_irrelevant, m_value, orbit_reduce, solve_sunit, solve_sunit_with_ceiling,
    Relevance, SUnitSolution, SlotValuation, SolutionOrbit, DEFAULT_ENUMERATION_CEILING,
};
