use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::qfield::{primes_above, valuation, AlgebraicNumber, FieldDescriptor, Ideal, PrimeSlot, QuadField};

/// A checked solution `(a, b, c)` of `a⁴ - b⁴ = n·c^p` with the Frey
/// parameters `A = (a+b)²`, `B = (a-b)²`, `C = a² + b²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreyTriple {
    pub field: QuadField,
    pub a: AlgebraicNumber,
    pub b: AlgebraicNumber,
    pub c: AlgebraicNumber,
    pub n: u64,
    pub p: u64,
    #[serde(rename = "A")]
    pub big_a: AlgebraicNumber,
    #[serde(rename = "B")]
    pub big_b: AlgebraicNumber,
    #[serde(rename = "C")]
    pub big_c: AlgebraicNumber,
    /// `abc = 0`.
    pub trivial: bool,
    /// The ideal `(a, b, c)` is the unit ideal.
    pub primitive: bool,
    /// Set when the roles of `a² + b²` and `a² - b²` were exchanged to reach
    /// the normalized valuations at a prime above 2.
    pub b_squared_swapped: bool,
}

pub fn validate_triple(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    c: &AlgebraicNumber,
    n: u64,
    p: u64,
    field: &FieldDescriptor,
) -> Result<FreyTriple> {
    let k = field.arith()?;
    for x in [a, b, c] {
        if x.field() != k {
            return Err(Error::FieldMismatch);
        }
        if !x.is_integral() {
            return Err(Error::NotIntegral("triple entries must be integral"));
        }
    }
    if n == 0 {
        return Err(Error::InvalidN);
    }
    if p < 5 || !is_prime(p) {
        return Err(Error::ExponentTooSmall(p));
    }
    let nk = AlgebraicNumber::from_int(k, n);
    let lhs = a.pow(4)? - b.pow(4)?;
    if lhs != &nk * &c.pow(p as i64)? {
        return Err(Error::EquationFails);
    }
    for (q, _) in factorize(n) {
        for slot in primes_above(k, q)? {
            let ord = valuation(&nk, &slot)?;
            if ord as u64 >= p {
                return Err(Error::NOrdTooLarge { prime: q, ord: ord as u32, p });
            }
        }
    }
    let nonzero: Vec<AlgebraicNumber> = [a, b, c].into_iter().filter(|x| !x.is_zero()).cloned().collect();
    let primitive = !nonzero.is_empty() && Ideal::from_elements(k, &nonzero)?.is_unit();
    let trivial = nonzero.len() < 3;
    let a2 = a * a;
    let b2 = b * b;
    Ok(FreyTriple {
        field: k,
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        n,
        p,
        big_a: (a + b).pow(2)?,
        big_b: (a - b).pow(2)?,
        big_c: &a2 + &b2,
        trivial,
        primitive,
        b_squared_swapped: false,
    })
}

/// Integer convenience wrapper over `Q`.
pub fn validate_rational_triple(a: i64, b: i64, c: i64, n: u64, p: u64) -> Result<FreyTriple> {
    let k = QuadField::Rational;
    validate_triple(
        &AlgebraicNumber::from_int(k, a),
        &AlgebraicNumber::from_int(k, b),
        &AlgebraicNumber::from_int(k, c),
        n,
        p,
        &FieldDescriptor::rational(),
    )
}

impl FreyTriple {
    /// `(a₂, a₄)` read off the expansion of `y² = x(x + A)(x - B)`.
    pub fn model_coefficients(&self) -> (AlgebraicNumber, AlgebraicNumber) {
        (&self.big_a - &self.big_b, -(&self.big_a * &self.big_b))
    }

    /// `(4ab, -(a² - b²)²)`, the coefficients of the expanded model.
    pub fn expanded_coefficients(&self) -> (AlgebraicNumber, AlgebraicNumber) {
        let k = self.field;
        let diff = &self.a * &self.a - &self.b * &self.b;
        (AlgebraicNumber::from_int(k, 4) * &self.a * &self.b, -(&diff * &diff))
    }
}

/// Valuations at a prime above 2 after the normalization that makes
/// `ord(a² + b²) = ord(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedTriple {
    pub triple: FreyTriple,
    pub slot: String,
    pub ord_two: i64,
    /// `k = ord(c) > 0`.
    pub ord_c: i64,
    pub ord_n: i64,
    /// `ord(a² + b²)` after normalization; equals `ord_two`.
    pub ord_sum: i64,
    /// `ord(a² - b²)` after normalization; equals `p·k + ord(n) - ord(2)`.
    pub ord_difference: i64,
    /// Whether both valuations exceed `ord(2)`; never true for valid input
    /// because their difference `2b²` has valuation exactly `ord(2)`.
    pub min_exceeds_ord_two: bool,
}

pub fn remark_valuations(t: &FreyTriple, slot: &PrimeSlot) -> Result<NormalizedTriple> {
    if slot.rational_prime != 2 || slot.field != t.field {
        return Err(Error::PreconditionFailed("slot must be a prime above 2 of the triple's field".into()));
    }
    if !t.primitive {
        return Err(Error::PreconditionFailed("triple is not primitive".into()));
    }
    if t.c.is_zero() || valuation(&t.c, slot)? <= 0 {
        return Err(Error::PreconditionFailed(format!("{} does not divide c", slot.label())));
    }
    let k = t.field;
    let ord_two = valuation(&AlgebraicNumber::from_int(k, 2), slot)?;
    if (t.p as i64) <= 2 * ord_two {
        return Err(Error::PreconditionFailed(format!("p = {} <= 2·ord(2) = {}", t.p, 2 * ord_two)));
    }
    let ord_c = valuation(&t.c, slot)?;
    let ord_n = valuation(&AlgebraicNumber::from_int(k, t.n), slot)?;
    let a2 = &t.a * &t.a;
    let b2 = &t.b * &t.b;
    let sum = valuation(&(&a2 + &b2), slot)?;
    let diff = valuation(&(&a2 - &b2), slot)?;
    let target = t.p as i64 * ord_c + ord_n - ord_two;
    let (swapped, ord_sum, ord_difference) = if sum == ord_two && diff == target {
        (false, sum, diff)
    } else if diff == ord_two && sum == target {
        (true, diff, sum)
    } else {
        return Err(Error::PreconditionFailed(format!(
            "valuations ({sum}, {diff}) admit no normalization"
        )));
    };
    let mut triple = t.clone();
    triple.b_squared_swapped = swapped;
    Ok(NormalizedTriple {
        triple,
        slot: slot.label(),
        ord_two,
        ord_c,
        ord_n,
        ord_sum,
        ord_difference,
        min_exceeds_ord_two: sum.min(diff) > ord_two,
    })
}

/// A member of the non-primitive family built from a seed `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonPrimitiveSolution {
    pub x: AlgebraicNumber,
    pub y: AlgebraicNumber,
    pub z: AlgebraicNumber,
    pub n: u64,
    pub p: u64,
}

/// With `u = na`, `v = nb`, `r = n³(a⁴ - b⁴)` so that `u⁴ - v⁴ = n·r`,
/// returns `(u·r^e, v·r^e, r^f)` where `(e, f) = ((p-1)/4, 1)` for
/// `p ≡ 1 (mod 4)` and `((3p-1)/4, 3)` for `p ≡ 3 (mod 4)`.
pub fn nonprimitive_family(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    n: u64,
    p: u64,
) -> Result<NonPrimitiveSolution> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if p < 5 || !is_prime(p) {
        return Err(Error::ExponentTooSmall(p));
    }
    if n == 0 {
        return Err(Error::InvalidN);
    }
    let k = a.field();
    let nk = AlgebraicNumber::from_int(k, n);
    let quartic = a.pow(4)? - b.pow(4)?;
    if quartic.is_zero() {
        return Err(Error::DegenerateSeed);
    }
    let r = nk.pow(3)? * quartic;
    let (e, f) = if p % 4 == 1 { ((p - 1) / 4, 1) } else { ((3 * p - 1) / 4, 3) };
    let re = r.pow(e as i64)?;
    let x = &nk * a * &re;
    let y = &nk * b * &re;
    let z = r.pow(f)?;
    if x.pow(4)? - y.pow(4)? != &nk * &z.pow(p as i64)? {
        return Err(Error::EquationFails);
    }
    Ok(NonPrimitiveSolution { x, y, z, n, p })
}

pub(crate) fn int(k: QuadField, n: impl Into<BigInt>) -> AlgebraicNumber {
    AlgebraicNumber::from_int(k, n)
}
