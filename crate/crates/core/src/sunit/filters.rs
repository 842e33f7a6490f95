use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::group::SUnitGroup;
use super::solve::{m_value, SUnitSolution};
use crate::error::Result;
use crate::qfield::{primes_above, valuation, AlgebraicNumber, PrimeSlot, QuadField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterStatus {
    Passed,
    Failed,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterOutcome {
    pub status: FilterStatus,
    pub detail: String,
}

impl FilterOutcome {
    fn new(status: FilterStatus, detail: impl Into<String>) -> Self {
        FilterOutcome { status, detail: detail.into() }
    }

    fn check(ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { FilterStatus::Passed } else { FilterStatus::Failed };
        Self::new(status, detail)
    }
}

/// The normalized partner `(λ', μ')` with `λ'` integral, `μ'` a unit and
/// the same `m` at the prime above 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitPartner {
    pub lambda: AlgebraicNumber,
    pub mu: AlgebraicNumber,
    pub m: u32,
    /// `N(μ')`, which is `±1`.
    pub mu_norm: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    /// `λ ≡ μ ≡ -1` modulo every prime above 3.
    pub mod3: FilterOutcome,
    /// Existence and shape of the normalized unit partner.
    pub unit_partner: FilterOutcome,
    pub partner: Option<UnitPartner>,
    /// When `m ≥ 2·ord(2)` the partner satisfies `μ' ≡ 1 (mod 4)`, forcing
    /// `N(μ') = 1`.
    pub norm_sign: FilterOutcome,
}

/// Residue and normalization checks on a single solution.
///
/// Inapplicable checks are reported as such with the failing hypothesis.
pub fn congruence_filters(sol: &SUnitSolution, group: &SUnitGroup) -> Result<FilterReport> {
    let k = group.field;
    let mod3 = mod3_check(sol, group)?;
    let (unit_partner, partner) = partner_check(sol, group)?;
    let norm_sign = match &partner {
        None => FilterOutcome::new(FilterStatus::NotApplicable, "no unit partner"),
        Some(p) => {
            let ord2 = primes_above(k, 2)?[0].e;
            if p.m >= 2 * ord2 {
                FilterOutcome::check(p.mu_norm == 1, format!("m = {} >= {}; N(mu') = {}", p.m, 2 * ord2, p.mu_norm))
            } else {
                FilterOutcome::new(
                    FilterStatus::NotApplicable,
                    format!("m = {} < {}; N(mu') = {}", p.m, 2 * ord2, p.mu_norm),
                )
            }
        }
    };
    Ok(FilterReport { mod3, unit_partner, partner, norm_sign })
}

fn mod3_check(sol: &SUnitSolution, group: &SUnitGroup) -> Result<FilterOutcome> {
    use FilterStatus::NotApplicable;
    let k = group.field;
    let slots3 = primes_above(k, 3)?;
    if slots3.len() != k.degree() as usize || slots3.iter().any(|s| s.f != 1) {
        return Ok(FilterOutcome::new(NotApplicable, "3 does not split completely"));
    }
    if group.s.iter().any(|s| s.rational_prime == 3) {
        return Ok(FilterOutcome::new(NotApplicable, "S contains a prime above 3"));
    }
    if !sol.lambda.is_integral() || !sol.mu.is_integral() {
        return Ok(FilterOutcome::new(NotApplicable, "lambda or mu is not integral"));
    }
    let one = AlgebraicNumber::one(k);
    let is_minus_one = |x: &AlgebraicNumber, slot: &PrimeSlot| -> Result<bool> {
        let y = x + &one;
        Ok(y.is_zero() || valuation(&y, slot)? >= 1)
    };
    for slot in &slots3 {
        if !is_minus_one(&sol.lambda, slot)? || !is_minus_one(&sol.mu, slot)? {
            return Ok(FilterOutcome::check(false, format!("residue differs from -1 at {}", slot.label())));
        }
    }
    Ok(FilterOutcome::check(true, "lambda = mu = -1 at every prime above 3"))
}

fn partner_check(
    sol: &SUnitSolution,
    group: &SUnitGroup,
) -> Result<(FilterOutcome, Option<UnitPartner>)> {
    use FilterStatus::NotApplicable;
    let k: QuadField = group.field;
    let above2 = primes_above(k, 2)?;
    if above2.len() != 1 {
        return Ok((FilterOutcome::new(NotApplicable, "2 splits"), None));
    }
    let slot = &above2[0];
    if group.s.as_slice() != std::slice::from_ref(slot) {
        return Ok((FilterOutcome::new(NotApplicable, "S is not the single prime above 2"), None));
    }
    let m = m_value(&sol.lambda, &sol.mu, slot)?;
    let vl = valuation(&sol.lambda, slot)?;
    let vm = valuation(&sol.mu, slot)?;
    let (lambda, mu) = if vl < 0 {
        // both valuations are -m: pass to 1/λ
        let l = sol.lambda.inv()?;
        let mu = AlgebraicNumber::one(k) - &l;
        (l, mu)
    } else if vm > 0 {
        (sol.mu.clone(), sol.lambda.clone())
    } else {
        (sol.lambda.clone(), sol.mu.clone())
    };
    let m_new = m_value(&lambda, &mu, slot)?;
    let norm = mu.norm();
    let unit = mu.is_integral() && norm.abs() == num_rational::BigRational::from_integer(1.into());
    let ok = lambda.is_integral() && unit && m_new == m;
    let mu_norm = if norm.is_negative() { -1 } else { 1 };
    let detail = format!("ord(lambda) = {vl}, ord(mu) = {vm}; partner m = {m_new}");
    Ok((FilterOutcome::check(ok, detail), Some(UnitPartner { lambda, mu, m: m_new, mu_norm })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{make_field, FieldDescriptor};
    use crate::sunit::{slots_above, solve_sunit, sunit_group};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn setup(d: Option<i64>, primes: &[u64], bound: u32) -> (SUnitGroup, Vec<SUnitSolution>) {
        let f = d.map_or_else(FieldDescriptor::rational, |d| make_field(d).unwrap());
        let g = sunit_group(&f, &slots_above(&f, primes).unwrap()).unwrap();
        let sols = solve_sunit(&g, bound).unwrap();
        (g, sols)
    }

    #[test]
    fn rational_irrelevant_solutions() {
        let (g, sols) = setup(None, &[2], 10);
        let two = sols.iter().find(|s| s.lambda.is_rational_integer(2)).unwrap();
        let r = congruence_filters(two, &g).unwrap();
        assert_eq!(r.mod3.status, FilterStatus::Passed);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let h = sols.iter().find(|s| s.lambda.as_rational() == Some(&half)).unwrap();
        let r = congruence_filters(h, &g).unwrap();
        assert_eq!(r.mod3.status, FilterStatus::NotApplicable);
        // (1/2, 1/2) normalizes to (2, -1)
        let p = r.partner.unwrap();
        assert!(p.lambda.is_rational_integer(2) && p.mu.is_rational_integer(-1));
        assert_eq!(r.unit_partner.status, FilterStatus::Passed);
    }

    #[test]
    fn golden_ratio_partner_is_itself() {
        let (g, sols) = setup(Some(5), &[2], 6);
        let eps = &g.free_generators[0];
        let sol = sols.iter().find(|s| s.lambda == eps * eps).unwrap();
        let r = congruence_filters(sol, &g).unwrap();
        let p = r.partner.unwrap();
        assert_eq!((p.lambda.clone(), p.mu.clone(), p.m), (sol.lambda.clone(), sol.mu.clone(), 0));
        assert_eq!(r.unit_partner.status, FilterStatus::Passed);
        // 3 is inert in Q(sqrt 5)
        assert_eq!(r.mod3.status, FilterStatus::NotApplicable);
    }

    /// Every integral solution in a field where 3 splits completely and S
    /// avoids 3 has both terms congruent to -1 at each prime above 3.
    #[test]
    fn mod3_never_fails() {
        for (d, primes) in [(None, vec![2u64]), (None, vec![2, 5, 7]), (Some(13), vec![2]), (Some(-2), vec![2]), (Some(37), vec![2])] {
            let (g, sols) = setup(d, &primes, 6);
            for s in &sols {
                let r = congruence_filters(s, &g).unwrap();
                assert_ne!(r.mod3.status, FilterStatus::Failed, "{:?}", s.lambda);
                if s.lambda.is_integral() && s.mu.is_integral() && d != Some(13) && d != Some(37) {
                    assert_eq!(r.mod3.status, FilterStatus::Passed);
                }
            }
        }
    }

    #[test]
    fn partners_preserve_m() {
        for d in [-5i64, 5, 2, -1, 3, 13] {
            let (g, sols) = setup(Some(d), &[2], 6);
            for s in &sols {
                let r = congruence_filters(s, &g).unwrap();
                assert_eq!(r.unit_partner.status, FilterStatus::Passed, "d = {d}, {:?}", s.lambda);
            }
        }
    }
}
