use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qfield::{FieldDescriptor, PrimeSlot};
use crate::sunit::{solve_sunit_with_ceiling, sunit_group_with_bound, SUnitGroup, SUnitSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Every condition passed and none depended on a bounded search.
    Holds,
    /// Every condition passed; solver-backed conditions only cover the box.
    HoldsAtBound,
    Fails,
    NotApplicable,
}

/// One checked hypothesis. A failed `gate` condition makes the statement
/// inapplicable rather than false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub passed: bool,
    pub gate: bool,
    pub detail: String,
    /// Set on failure whenever a concrete witness exists.
    pub witness: Option<String>,
}

impl Condition {
    pub fn check(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Condition { name: name.into(), passed, gate: false, detail: detail.into(), witness: None }
    }

    pub fn gate(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Condition { gate: true, ..Self::check(name, passed, detail) }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        if !self.passed {
            self.witness = witness;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub statement_id: String,
    pub field: String,
    pub parameters: BTreeMap<String, i64>,
    pub status: Status,
    pub evidence: Vec<Condition>,
    pub search_bound: Option<u32>,
    /// `{4·ord(2)}` at the distinguished prime above 2.
    pub alpha_exclusions: Vec<u64>,
    /// The exclusion as printed in the statement under check.
    pub printed_alpha_exclusions: Vec<u64>,
    pub caveats: Vec<String>,
}

impl CriterionVerdict {
    pub(crate) fn assemble(
        statement_id: &str,
        field: String,
        parameters: impl IntoIterator<Item = (&'static str, i64)>,
        evidence: Vec<Condition>,
        search_bound: Option<u32>,
    ) -> Self {
        let status = status_of(&evidence, search_bound);
        CriterionVerdict {
            statement_id: statement_id.into(),
            field,
            parameters: parameters.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            status,
            evidence,
            search_bound,
            alpha_exclusions: Vec::new(),
            printed_alpha_exclusions: Vec::new(),
            caveats: Vec::new(),
        }
    }

    /// Recomputes the status from the evidence list alone.
    pub fn replay_status(&self) -> Status {
        status_of(&self.evidence, self.search_bound)
    }

    pub fn failed_conditions(&self) -> impl Iterator<Item = &Condition> {
        self.evidence.iter().filter(|c| !c.passed)
    }
}

fn status_of(evidence: &[Condition], search_bound: Option<u32>) -> Status {
    if evidence.iter().any(|c| c.gate && !c.passed) {
        Status::NotApplicable
    } else if evidence.iter().any(|c| !c.passed) {
        Status::Fails
    } else if search_bound.is_some() {
        Status::HoldsAtBound
    } else {
        Status::Holds
    }
}

/// An S-unit group with every solution of `λ + μ = 1` in its exponent box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverRun {
    pub group: SUnitGroup,
    pub solutions: Vec<SUnitSolution>,
    pub bound: u32,
}

impl SolverRun {
    pub fn new(field: &FieldDescriptor, s: &[PrimeSlot], bound: u32) -> Result<Self> {
        Self::with_limits(
            field,
            s,
            bound,
            crate::qfield::DEFAULT_DISCRIMINANT_BOUND,
            crate::sunit::DEFAULT_ENUMERATION_CEILING,
        )
    }

    pub fn with_limits(
        field: &FieldDescriptor,
        s: &[PrimeSlot],
        bound: u32,
        disc_bound: u64,
        ceiling: u128,
    ) -> Result<Self> {
        let group = sunit_group_with_bound(field, s, disc_bound)?;
        let solutions = solve_sunit_with_ceiling(&group, bound, ceiling)?;
        Ok(SolverRun { group, solutions, bound })
    }
}

pub(crate) fn describe(sol: &SUnitSolution) -> String {
    format!("({}, {})", sol.lambda, sol.mu)
}

pub(crate) const BOX_CAVEAT: &str =
    "solutions were enumerated in a bounded exponent box; completeness outside the box is not established";

pub(crate) const CONJECTURAL_CAVEAT: &str =
    "field is not totally real: the conclusion is conditional on modularity and Eichler-Shimura type conjectures";
