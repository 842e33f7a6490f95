use serde::{Deserialize, Serialize};

use super::triple::{int, remark_valuations, FreyTriple};
use crate::error::{Error, Result};
use crate::qfield::{valuation, AlgebraicNumber, PrimeSlot};

/// Exact invariants of `y² = x³ + 4ab·x² - (a² - b²)²·x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreyInvariants {
    pub b2: AlgebraicNumber,
    pub b4: AlgebraicNumber,
    pub b6: AlgebraicNumber,
    pub b8: AlgebraicNumber,
    pub c4: AlgebraicNumber,
    pub c6: AlgebraicNumber,
    pub delta: AlgebraicNumber,
    pub j: AlgebraicNumber,
    pub checks: InvariantChecks,
    pub display_audit: DisplayAudit,
}

/// Agreement of the formulary values with closed forms in `a, b, n, c`
/// and `A, B, C`. All fields are true for every valid triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantChecks {
    /// `Δ = 2⁶·n²·c^{2p}·(a² - b²)²`.
    pub delta_nc_form: bool,
    /// `Δ = 2⁶·(ABC)²`.
    pub delta_abc_form: bool,
    /// `c4 = 2⁴(a² + 3b²)(3a² + b²) = 2⁴(2AC + 2BC - AB)`.
    pub c4_closed_form: bool,
    /// `c6 = -2⁷·ab·(2⁵a²b² + 9(a² - b²)²)`.
    pub c6_closed_form: bool,
    /// `j = 2⁶(a² + 3b²)³(3a² + b²)³ / (n²c^{2p}(a² - b²)²) = 2⁶(2AC + 2BC - AB)³/(ABC)²`.
    pub j_quotient_form: bool,
    /// `c4³ - c6² = 1728·Δ`.
    pub discriminant_identity: bool,
    /// `j·Δ = c4³`.
    pub j_identity: bool,
}

impl InvariantChecks {
    pub fn all(&self) -> bool {
        self.delta_nc_form
            && self.delta_abc_form
            && self.c4_closed_form
            && self.c6_closed_form
            && self.j_quotient_form
            && self.discriminant_identity
            && self.j_identity
    }
}

/// Closed forms as printed in the literature, evaluated on the triple and
/// compared against the formulary. A mismatch is reported, never corrected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplayAudit {
    /// `-2⁷(2⁵a²b² + 3(a² - b²)²)`.
    pub printed_c6: AlgebraicNumber,
    pub printed_c6_mismatch: bool,
    /// `2⁴(AB - 2AC - 2BC)`.
    pub printed_c4_alternative: AlgebraicNumber,
    pub printed_c4_alternative_mismatch: bool,
}

pub fn invariants(t: &FreyTriple) -> Result<FreyInvariants> {
    let k = t.field;
    let (a2, a4) = t.expanded_coefficients();
    let b2 = int(k, 4) * &a2;
    let b4 = int(k, 2) * &a4;
    let b6 = AlgebraicNumber::zero(k);
    let b8 = -(&a4 * &a4);
    let c4 = &b2 * &b2 - int(k, 24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + int(k, 36) * &b2 * &b4 - int(k, 216) * &b6;
    let delta = -(&b2 * &b2 * &b8) - int(k, 8) * &b4 * &b4 * &b4 - int(k, 27) * &b6 * &b6
        + int(k, 9) * &b2 * &b4 * &b6;
    if delta.is_zero() {
        return Err(Error::SingularCurve);
    }
    let c4_cubed = c4.pow(3)?;
    let j = c4_cubed.checked_div(&delta)?;

    let (a, b) = (&t.a, &t.b);
    let sa = a * a;
    let sb = b * b;
    let diff = &sa - &sb;
    let (ba, bb, bc) = (&t.big_a, &t.big_b, &t.big_c);
    let nc2p = int(k, t.n).pow(2)? * t.c.pow(2 * t.p as i64)?;
    let abc = ba * bb * bc;
    let c4_ab = int(k, 16) * (&sa + int(k, 3) * &sb) * (int(k, 3) * &sa + &sb);
    let c4_big = int(k, 16) * (int(k, 2) * ba * bc + int(k, 2) * bb * bc - ba * bb);
    let c6_model = int(k, -128) * a * b * (int(k, 32) * &sa * &sb + int(k, 9) * &diff * &diff);
    let j_num = int(k, 64) * (&sa + int(k, 3) * &sb).pow(3)? * (int(k, 3) * &sa + &sb).pow(3)?;
    let j_nc = j_num.checked_div(&(&nc2p * &diff * &diff))?;
    let j_abc = (int(k, 64) * (int(k, 2) * ba * bc + int(k, 2) * bb * bc - ba * bb).pow(3)?)
        .checked_div(&(&abc * &abc))?;

    let checks = InvariantChecks {
        delta_nc_form: delta == int(k, 64) * &nc2p * &diff * &diff,
        delta_abc_form: delta == int(k, 64) * &abc * &abc,
        c4_closed_form: c4 == c4_ab && c4 == c4_big,
        c6_closed_form: c6 == c6_model,
        j_quotient_form: j == j_nc && j == j_abc,
        discriminant_identity: &c4_cubed - &c6 * &c6 == int(k, 1728) * &delta,
        j_identity: &j * &delta == c4_cubed,
    };

    let printed_c6 = int(k, -128) * (int(k, 32) * &sa * &sb + int(k, 3) * &diff * &diff);
    let printed_c4_alternative = int(k, 16) * (ba * bb - int(k, 2) * ba * bc - int(k, 2) * bb * bc);
    let display_audit = DisplayAudit {
        printed_c6_mismatch: printed_c6 != c6,
        printed_c6,
        printed_c4_alternative_mismatch: printed_c4_alternative != c4,
        printed_c4_alternative,
    };

    Ok(FreyInvariants { b2, b4, b6, b8, c4, c6, delta, j, checks, display_audit })
}

/// The printed value `8·ord(2) - 4pk - 2·ord(n)` for `ord(j)` at a prime
/// above 2 dividing `c`, next to the valuation of the exact `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdJComparison {
    pub slot: String,
    pub printed_value: i64,
    pub direct_value: i64,
    pub discrepancy: bool,
}

pub fn printed_ordj_comparison(t: &FreyTriple, slot: &PrimeSlot) -> Result<OrdJComparison> {
    let norm = remark_valuations(t, slot)?;
    let inv = invariants(t)?;
    if inv.j.is_zero() {
        return Err(Error::PreconditionFailed("j = 0 has no valuation".into()));
    }
    let printed_value = 8 * norm.ord_two - 4 * t.p as i64 * norm.ord_c - 2 * norm.ord_n;
    let direct_value = valuation(&inv.j, slot)?;
    Ok(OrdJComparison {
        slot: slot.label(),
        printed_value,
        direct_value,
        discrepancy: printed_value != direct_value,
    })
}
