use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::invariants::FreyInvariants;
use super::triple::{int, FreyTriple};
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::qfield::{primes_above, valuation, AlgebraicNumber, PrimeSlot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    Good,
    Multiplicative,
    /// `ord(Δ) > 0` and `ord(c4) > 0`: the model may be non-minimal and no
    /// reduction algorithm is applied. Does not occur for primitive triples.
    Undetermined,
}

/// Which of `c` and `n` the slot divides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attribution {
    COnly,
    NOnly,
    Both,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotProfile {
    pub slot: String,
    pub rational_prime: u64,
    pub even: bool,
    pub ord_delta: i64,
    /// `None` when `c4 = 0`.
    pub ord_c4: Option<i64>,
    /// `None` when `j = 0`.
    pub ord_j: Option<i64>,
    pub ord_c: i64,
    pub ord_n: i64,
    pub attribution: Attribution,
    /// Reduction type; only reported at odd slots.
    pub reduction: Option<Reduction>,
    pub p_divides_ord_delta: bool,
    /// `2 + 6·ord(2)` at slots above 2.
    pub exponent_bound: Option<i64>,
}

fn ord_or_none(x: &AlgebraicNumber, slot: &PrimeSlot) -> Result<Option<i64>> {
    if x.is_zero() {
        Ok(None)
    } else {
        valuation(x, slot).map(Some)
    }
}

pub fn valuation_profile(t: &FreyTriple, inv: &FreyInvariants, slot: &PrimeSlot) -> Result<SlotProfile> {
    if slot.field != t.field {
        return Err(Error::FieldMismatch);
    }
    let k = t.field;
    let even = slot.rational_prime == 2;
    let ord_delta = valuation(&inv.delta, slot)?;
    let ord_c4 = ord_or_none(&inv.c4, slot)?;
    let ord_j = ord_or_none(&inv.j, slot)?;
    // c = 0 forces a = ±b, hence Δ = 0, which invariants() rejects
    let ord_c = valuation(&t.c, slot)?;
    let ord_n = valuation(&int(k, t.n), slot)?;
    let attribution = match (ord_c > 0, ord_n > 0) {
        (true, false) => Attribution::COnly,
        (false, true) => Attribution::NOnly,
        (true, true) => Attribution::Both,
        (false, false) => Attribution::Neither,
    };
    let (reduction, exponent_bound) = if even {
        let ord_two = valuation(&int(k, 2), slot)?;
        (None, Some(2 + 6 * ord_two))
    } else {
        let r = match (ord_delta, ord_c4) {
            (0, _) => Reduction::Good,
            (_, Some(0)) => Reduction::Multiplicative,
            _ => Reduction::Undetermined,
        };
        (Some(r), None)
    };
    Ok(SlotProfile {
        slot: slot.label(),
        rational_prime: slot.rational_prime,
        even,
        ord_delta,
        ord_c4,
        ord_j,
        ord_c,
        ord_n,
        attribution,
        reduction,
        p_divides_ord_delta: ord_delta % t.p as i64 == 0,
        exponent_bound,
    })
}

/// Slots dividing `2·n·c`, ordered by rational prime.
pub fn bad_slots(t: &FreyTriple) -> Result<Vec<PrimeSlot>> {
    let k = t.field;
    let mut primes: BTreeSet<u64> = factorize(t.n).into_iter().map(|(q, _)| q).collect();
    primes.insert(2);
    let norm_c = t.c.norm();
    let norm_c = norm_c.numer().abs().to_u64().ok_or_else(|| {
        Error::InvalidArgument("norm of c does not fit in 64 bits".into())
    })?;
    primes.extend(factorize(norm_c).into_iter().map(|(q, _)| q));
    let two_nc = int(k, 2 * t.n as u128) * &t.c;
    let mut out = Vec::new();
    for q in primes {
        for slot in primes_above(k, q)? {
            if valuation(&two_nc, &slot)? > 0 {
                out.push(slot);
            }
        }
    }
    Ok(out)
}

/// Profiles at every slot dividing `2·n·c`.
pub fn bad_profiles(t: &FreyTriple, inv: &FreyInvariants) -> Result<Vec<SlotProfile>> {
    bad_slots(t)?.iter().map(|s| valuation_profile(t, inv, s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenSupport {
    pub slot: String,
    pub min_exponent: i64,
    pub max_exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddSupport {
    pub slot: String,
    pub reduction: Reduction,
    pub ord_delta: i64,
    pub p_divides_ord_delta: bool,
    pub attribution: Attribution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorReport {
    pub support_even: Vec<EvenSupport>,
    pub odd_multiplicative: Vec<OddSupport>,
    pub n_e_support: Vec<String>,
    pub n_p_support: Vec<String>,
    pub serre_support: Vec<String>,
}

pub fn conductor_support(t: &FreyTriple, profiles: &[SlotProfile]) -> Result<ConductorReport> {
    let required = bad_slots(t)?;
    for slot in &required {
        if !profiles.iter().any(|p| p.slot == slot.label()) {
            return Err(Error::IncompleteProfiles(slot.rational_prime));
        }
    }
    let mut report = ConductorReport {
        support_even: Vec::new(),
        odd_multiplicative: Vec::new(),
        n_e_support: Vec::new(),
        n_p_support: Vec::new(),
        serre_support: Vec::new(),
    };
    let mut sorted: Vec<&SlotProfile> = profiles.iter().collect();
    sorted.sort_by(|x, y| (x.rational_prime, &x.slot).cmp(&(y.rational_prime, &y.slot)));
    for p in sorted {
        if p.even {
            report.support_even.push(EvenSupport {
                slot: p.slot.clone(),
                min_exponent: 0,
                max_exponent: p.exponent_bound.unwrap_or(0),
            });
            report.n_e_support.push(p.slot.clone());
            report.n_p_support.push(p.slot.clone());
            report.serre_support.push(p.slot.clone());
            continue;
        }
        if p.ord_delta > 0 {
            let reduction = p.reduction.unwrap_or(Reduction::Undetermined);
            report.odd_multiplicative.push(OddSupport {
                slot: p.slot.clone(),
                reduction,
                ord_delta: p.ord_delta,
                p_divides_ord_delta: p.p_divides_ord_delta,
                attribution: p.attribution,
            });
            report.n_e_support.push(p.slot.clone());
            if !p.p_divides_ord_delta {
                report.n_p_support.push(p.slot.clone());
            }
        }
        if p.ord_n > 0 {
            report.serre_support.push(p.slot.clone());
        }
    }
    Ok(report)
}

/// Potentially multiplicative reduction with `p ∤ ord(j)`.
pub fn inertia_divisibility(ord_j: i64, p: u64) -> bool {
    ord_j < 0 && ord_j % p as i64 != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frey::{invariants, validate_rational_triple};

    fn report(a: i64, b: i64, c: i64, n: u64) -> (Vec<SlotProfile>, ConductorReport) {
        let t = validate_rational_triple(a, b, c, n, 5).unwrap();
        let inv = invariants(&t).unwrap();
        let profiles = bad_profiles(&t, &inv).unwrap();
        let r = conductor_support(&t, &profiles).unwrap();
        (profiles, r)
    }

    #[test]
    fn profile_examples() {
        let (profiles, r) = report(5, 3, 2, 17);
        let p17 = profiles.iter().find(|p| p.rational_prime == 17).unwrap();
        assert_eq!((p17.ord_delta, p17.ord_c4), (2, Some(0)));
        assert_eq!(p17.reduction, Some(Reduction::Multiplicative));
        assert!(!p17.p_divides_ord_delta);
        assert_eq!(p17.attribution, Attribution::NOnly);
        assert_eq!(r.n_p_support, vec!["2", "17"]);
        assert_eq!(r.support_even[0].max_exponent, 8);

        let (profiles, r) = report(2, 1, 1, 15);
        let p3 = profiles.iter().find(|p| p.rational_prime == 3).unwrap();
        assert_eq!(p3.ord_delta, 4);
        assert_eq!(p3.reduction, Some(Reduction::Multiplicative));
        assert_eq!(r.n_p_support, vec!["2", "3", "5"]);
        assert_eq!(r.serre_support, vec!["2", "3", "5"]);
    }

    #[test]
    fn good_reduction_away_from_2nc() {
        let t = validate_rational_triple(5, 3, 2, 17, 5).unwrap();
        let inv = invariants(&t).unwrap();
        for q in [3, 5, 7, 11, 13] {
            let slot = &primes_above(t.field, q).unwrap()[0];
            let p = valuation_profile(&t, &inv, slot).unwrap();
            assert_eq!((p.ord_delta, p.reduction), (0, Some(Reduction::Good)));
        }
    }

    #[test]
    fn odd_prime_dividing_c_only_leaves_np() {
        // 122⁴ - 121⁴ = 29525·3⁵ with 3 ∤ 29525
        let t = validate_rational_triple(122, 121, 3, 29525, 5).unwrap();
        let inv = invariants(&t).unwrap();
        let profiles = bad_profiles(&t, &inv).unwrap();
        let r = conductor_support(&t, &profiles).unwrap();
        let p3 = profiles.iter().find(|p| p.rational_prime == 3).unwrap();
        assert_eq!(p3.attribution, Attribution::COnly);
        assert!(p3.p_divides_ord_delta);
        assert!(r.n_e_support.contains(&"3".to_string()));
        assert!(!r.n_p_support.contains(&"3".to_string()));
    }

    #[test]
    fn missing_profiles() {
        let t = validate_rational_triple(5, 3, 2, 17, 5).unwrap();
        let inv = invariants(&t).unwrap();
        let mut profiles = bad_profiles(&t, &inv).unwrap();
        profiles.retain(|p| p.rational_prime != 17);
        assert_eq!(conductor_support(&t, &profiles), Err(Error::IncompleteProfiles(17)));
    }

    #[test]
    fn inertia_predicate() {
        assert!(inertia_divisibility(-12, 5));
        assert!(!inertia_divisibility(-10, 5));
        assert!(!inertia_divisibility(0, 5));
        assert!(!inertia_divisibility(7, 5));
    }
}
