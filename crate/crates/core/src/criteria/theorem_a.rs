use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::verdict::{describe, Condition, CriterionVerdict, BOX_CAVEAT, CONJECTURAL_CAVEAT};
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::legendre::j_from_solution;
use crate::qfield::{primes_above, valuation, AlgebraicNumber, PrimeSlot};
use crate::sunit::{m_value, SUnitGroup, SUnitSolution};

pub(crate) fn ord_two(slot: &PrimeSlot) -> Result<i64> {
    valuation(&AlgebraicNumber::from_int(slot.field, 2), slot)
}

/// `{slots above 2} ∪ {odd slots dividing n}`.
pub fn theorem_s(group: &SUnitGroup, n: u64) -> Result<Vec<PrimeSlot>> {
    let k = group.field;
    let mut primes: BTreeSet<u64> = factorize(n).into_iter().map(|(q, _)| q).collect();
    primes.insert(2);
    let nk = AlgebraicNumber::from_int(k, n);
    let mut out = Vec::new();
    for q in primes {
        for slot in primes_above(k, q)? {
            if q == 2 || valuation(&nk, &slot)? > 0 {
                out.push(slot);
            }
        }
    }
    Ok(out)
}

/// Every solution has `m ≤ 4·ord(2)` at `slot`, and `ord(n) ≠ 4·ord(2)`.
pub fn theorem_a_check(
    group: &SUnitGroup,
    n: u64,
    slot: &PrimeSlot,
    solutions: &[SUnitSolution],
    bound: u32,
) -> Result<CriterionVerdict> {
    if n == 0 {
        return Err(Error::InvalidN);
    }
    if slot.rational_prime != 2 || !group.s.contains(slot) {
        return Err(Error::PreconditionFailed(format!("{} is not a prime of S above 2", slot.label())));
    }
    let required = theorem_s(group, n)?;
    let have: BTreeSet<String> = group.s.iter().map(PrimeSlot::label).collect();
    let want: BTreeSet<String> = required.iter().map(PrimeSlot::label).collect();
    if have != want {
        return Err(Error::WrongS);
    }
    let k = group.field;
    let e = ord_two(slot)?;
    let limit = 4 * e;
    let mut worst: Option<(u32, &SUnitSolution)> = None;
    for sol in solutions {
        let m = m_value(&sol.lambda, &sol.mu, slot)?;
        if worst.map_or(true, |(w, _)| m > w) {
            worst = Some((m, sol));
        }
    }
    let max_m = worst.map_or(0, |(m, _)| m);
    let m_ok = (max_m as i64) <= limit;
    let ord_n = valuation(&AlgebraicNumber::from_int(k, n), slot)?;
    let evidence = vec![
        Condition::check(
            "valuation_bound",
            m_ok,
            format!("max m = {max_m} over {} solutions; limit 4·ord(2) = {limit}", solutions.len()),
        )
        .with_witness(worst.map(|(m, s)| format!("{} with m = {m}", describe(s)))),
        Condition::check("ord_n", ord_n != limit, format!("ord(n) = {ord_n}, 4·ord(2) = {limit}")),
    ];
    let field = k.descriptor();
    let mut v = CriterionVerdict::assemble(
        "theoremA",
        field.label(),
        [("n", n as i64), ("bound", bound as i64)],
        evidence,
        Some(bound),
    );
    v.alpha_exclusions = vec![limit as u64];
    v.printed_alpha_exclusions = vec![limit as u64];
    v.caveats.push(BOX_CAVEAT.into());
    if !field.is_totally_real() {
        v.caveats.push(CONJECTURAL_CAVEAT.into());
    }
    if n.is_power_of_two() && e != 1 {
        v.caveats.push(alpha_caveat(e));
    }
    Ok(v)
}

/// For `n = 2^α`, `ord(n) = α·ord(2)`, so the hypothesis `ord(n) ≠ 4·ord(2)`
/// excludes `α = 4` rather than `α = 4·ord(2)` whenever `ord(2) > 1`.
pub(crate) fn alpha_caveat(e: i64) -> String {
    format!(
        "with ord(2) = {e}, ord(2^alpha) = 4·ord(2) holds at alpha = 4, while the exclusion rule alpha != 4·ord(2) names alpha = {}",
        4 * e
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceCase {
    /// `m = 0`.
    M0,
    /// `v(λ) = v(μ) = -m`, so `v(λμ) = -2m`.
    BothNegative,
    /// `v(λ) = m > 0 = v(μ)`.
    LambdaPositive,
    /// `v(μ) = m > 0 = v(λ)`.
    MuPositive,
}

/// The valuation trichotomy at a prime above 2 and the resulting lower
/// bound `ord(j) ≥ 8·ord(2) - 2m` for `j = 2⁸(1 - λμ)³/(λμ)²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub slot: String,
    pub lambda: AlgebraicNumber,
    pub mu: AlgebraicNumber,
    pub case: TraceCase,
    pub m: u32,
    pub v_lambda_mu: i64,
    pub j: AlgebraicNumber,
    pub lower_bound: i64,
    /// `None` when `j = 0`, which satisfies every lower bound.
    pub ord_j: Option<i64>,
    pub bound_holds: bool,
}

pub fn contradiction_trace(sol: &SUnitSolution, slot: &PrimeSlot) -> Result<TraceRecord> {
    let (l, u) = (&sol.lambda, &sol.mu);
    if l.field() != slot.field {
        return Err(Error::FieldMismatch);
    }
    let j = j_from_solution(l, u)?;
    let vl = valuation(l, slot)?;
    let vu = valuation(u, slot)?;
    let m = vl.abs().max(vu.abs());
    let case = if m == 0 {
        TraceCase::M0
    } else if vl == -m && vu == -m {
        TraceCase::BothNegative
    } else if vl == m && vu == 0 {
        TraceCase::LambdaPositive
    } else if vu == m && vl == 0 {
        TraceCase::MuPositive
    } else {
        // excluded by the ultrametric inequality applied to λ + μ = 1
        unreachable!("valuations ({vl}, {vu}) violate the trichotomy");
    };
    let lower_bound = 8 * ord_two(slot)? - 2 * m;
    let ord_j = if j.is_zero() { None } else { Some(valuation(&j, slot)?) };
    Ok(TraceRecord {
        slot: slot.label(),
        lambda: l.clone(),
        mu: u.clone(),
        case,
        m: m as u32,
        v_lambda_mu: vl + vu,
        j,
        lower_bound,
        bound_holds: ord_j.map_or(true, |o| o >= lower_bound),
        ord_j,
    })
}
