//! The Legendre line `Y² = X(X - 1)(X - λ)`: j-invariants, the orbit of
//! `λ` under the anharmonic group, and the λ of a Frey curve.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::strip_prime;
use crate::error::{Error, Result};
use crate::frey::FreyTriple;
use crate::qfield::{primes_above, valuation, AlgebraicNumber, PrimeSlot};

/// `{λ, 1/λ, 1-λ, 1/(1-λ), λ/(λ-1), (λ-1)/λ}` in this order with repeats
/// removed, and the j-invariant shared by all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaOrbit {
    pub values: Vec<AlgebraicNumber>,
    pub j: AlgebraicNumber,
}

fn check_lambda(lambda: &AlgebraicNumber) -> Result<()> {
    if lambda.is_zero() || lambda.is_one() {
        Err(Error::DegenerateLambda)
    } else {
        Ok(())
    }
}

/// `2⁸(λ² - λ + 1)³ / (λ²(1 - λ)²)`.
pub fn j_of_lambda(lambda: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    check_lambda(lambda)?;
    let k = lambda.field();
    let one = AlgebraicNumber::one(k);
    let num = (lambda * lambda - lambda + &one).pow(3)?;
    let den = (lambda * (&one - lambda)).pow(2)?;
    Ok(AlgebraicNumber::from_int(k, 256) * num.checked_div(&den)?)
}

pub fn lambda_orbit(lambda: &AlgebraicNumber) -> Result<LambdaOrbit> {
    check_lambda(lambda)?;
    let one = AlgebraicNumber::one(lambda.field());
    let l = lambda.clone();
    let inv = l.inv()?;
    let comp = &one - &l;
    let candidates = [
        l.clone(),
        inv.clone(),
        comp.clone(),
        comp.inv()?,
        l.checked_div(&(&l - &one))?,
        &one - &inv,
    ];
    let mut values: Vec<AlgebraicNumber> = Vec::with_capacity(6);
    for c in candidates {
        if !values.contains(&c) {
            values.push(c);
        }
    }
    Ok(LambdaOrbit { j: j_of_lambda(lambda)?, values })
}

/// `2⁸(1 - λμ)³/(λμ)²` for a solution of `λ + μ = 1`.
pub fn j_from_solution(lambda: &AlgebraicNumber, mu: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    lambda.check_field(mu)?;
    let k = lambda.field();
    let one = AlgebraicNumber::one(k);
    if lambda + mu != one {
        return Err(Error::NotASolution);
    }
    let prod = lambda * mu;
    if prod.is_zero() {
        return Err(Error::DegenerateLambda);
    }
    Ok(AlgebraicNumber::from_int(k, 256) * (&one - &prod).pow(3)?.checked_div(&(&prod * &prod))?)
}

/// `λ = A/(2C)`: the cross-ratio of the roots `(e₁, e₂, e₃) = (-A, B, 0)` of
/// `x(x + A)(x - B)`, using `A + B = 2C`.
pub fn frey_lambda(t: &FreyTriple) -> Result<AlgebraicNumber> {
    if t.big_c.is_zero() {
        return Err(Error::DegenerateTriple);
    }
    t.big_a.checked_div(&(AlgebraicNumber::from_int(t.field, 2) * &t.big_c))
}

/// Whether `ord(j) ≥ 0` at every slot outside `s`.
///
/// A rational prime dividing the exact denominator of `j` lies under a slot
/// where `j` has negative valuation, so only primes below `s` need a slot
/// by slot check.
pub fn s_integrality(j: &AlgebraicNumber, s: &[PrimeSlot]) -> Result<bool> {
    for slot in s {
        if slot.field != j.field() {
            return Err(Error::FieldMismatch);
        }
    }
    let below: BTreeSet<u64> = s.iter().map(|p| p.rational_prime).collect();
    let mut den = j.denominator();
    for &q in &below {
        den = strip_prime(&den, q);
    }
    if den != 1.into() {
        return Ok(false);
    }
    for &q in &below {
        for slot in primes_above(j.field(), q)? {
            if !s.contains(&slot) && valuation(j, &slot)? < 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frey::{invariants, validate_rational_triple};
    use crate::qfield::{fundamental_unit, make_field, QuadField};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(QuadField::Rational, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn j_examples() {
        assert_eq!(j_of_lambda(&q(2, 1)).unwrap(), q(1728, 1));
        assert_eq!(j_of_lambda(&q(1, 2)).unwrap(), q(1728, 1));
        assert_eq!(j_of_lambda(&q(3, 1)).unwrap(), q(21952, 9));
        assert_eq!(j_of_lambda(&q(1, 1)), Err(Error::DegenerateLambda));
        assert_eq!(j_of_lambda(&q(0, 1)), Err(Error::DegenerateLambda));
    }

    #[test]
    fn orbit_examples() {
        let o = lambda_orbit(&q(2, 1)).unwrap();
        assert_eq!(o.values, vec![q(2, 1), q(1, 2), q(-1, 1)]);
        assert_eq!(o.j, q(1728, 1));
        let o = lambda_orbit(&q(3, 1)).unwrap();
        assert_eq!(o.values, vec![q(3, 1), q(1, 3), q(-2, 1), q(-1, 2), q(3, 2), q(2, 3)]);
        let a: BTreeSet<String> = lambda_orbit(&q(-1, 1)).unwrap().values.iter().map(|v| v.to_string()).collect();
        let b: BTreeSet<String> = lambda_orbit(&q(2, 1)).unwrap().values.iter().map(|v| v.to_string()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn equianharmonic_orbit_has_two_values() {
        // ω = (1 + √-3)/2 satisfies ω² - ω + 1 = 0
        let k = QuadField::Quadratic { d: -3 };
        let o = lambda_orbit(&AlgebraicNumber::omega(k)).unwrap();
        assert_eq!(o.values.len(), 2);
        assert!(o.j.is_zero());
    }

    #[test]
    fn solution_j_examples() {
        assert_eq!(j_from_solution(&q(2, 1), &q(-1, 1)).unwrap(), q(1728, 1));
        assert_eq!(j_from_solution(&q(1, 2), &q(1, 2)).unwrap(), q(1728, 1));
        assert_eq!(j_from_solution(&q(2, 1), &q(1, 1)), Err(Error::NotASolution));
        let f = make_field(5).unwrap();
        let e = fundamental_unit(&f).unwrap();
        let j = j_from_solution(&e.pow(2).unwrap(), &-&e).unwrap();
        assert!(j.is_rational_integer(2048));
    }

    #[test]
    fn frey_lambda_examples() {
        for ((a, b, c, n), lam) in [((5, 3, 2, 17), q(16, 17)), ((1, 0, 1, 1), q(1, 2)), ((2, 1, 1, 15), q(9, 10))] {
            let t = validate_rational_triple(a, b, c, n, 5).unwrap();
            let l = frey_lambda(&t).unwrap();
            assert_eq!(l, lam);
            assert_eq!(j_of_lambda(&l).unwrap(), invariants(&t).unwrap().j);
        }
    }

    #[test]
    fn s_integrality_examples() {
        let f = make_field(5).unwrap();
        let k = f.arith().unwrap();
        let s = primes_above(k, 2).unwrap();
        assert!(s_integrality(&AlgebraicNumber::from_int(k, 2048), &s).unwrap());
        let two = primes_above(QuadField::Rational, 2).unwrap();
        assert!(!s_integrality(&q(48228544, 2025), &two).unwrap());
        assert!(s_integrality(&q(1728, 1), &[]).unwrap());
        assert!(s_integrality(&q(1, 1024), &two).unwrap());
        assert!(!s_integrality(&q(1, 1024), &[]).unwrap());
    }

    #[test]
    fn s_integrality_distinguishes_split_slots() {
        // 2 splits in Q(√17); ω = (1 + √17)/2 has norm -4
        let k = QuadField::Quadratic { d: 17 };
        let slots = primes_above(k, 2).unwrap();
        let w = AlgebraicNumber::omega(k);
        let x = w.inv().unwrap();
        let neg: Vec<&PrimeSlot> = slots.iter().filter(|s| valuation(&x, s).unwrap() < 0).collect();
        assert_eq!(neg.len(), 1);
        assert!(s_integrality(&x, &[neg[0].clone()]).unwrap());
        let other: Vec<PrimeSlot> = slots.iter().filter(|s| *s != neg[0]).cloned().collect();
        assert!(!s_integrality(&x, &other).unwrap());
    }

    fn rational_lambda() -> impl Strategy<Value = AlgebraicNumber> {
        (-500i64..500, 1i64..500)
            .prop_map(|(n, d)| q(n, d))
            .prop_filter("lambda avoids 0 and 1", |l| !l.is_zero() && !l.is_one())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn j_is_constant_on_orbits(l in rational_lambda()) {
            let o = lambda_orbit(&l).unwrap();
            prop_assert!([1, 2, 3, 6].contains(&o.values.len()));
            for v in &o.values {
                prop_assert_eq!(j_of_lambda(v).unwrap(), o.j.clone());
            }
        }

        #[test]
        fn both_j_formulas_agree(l in rational_lambda()) {
            let mu = AlgebraicNumber::one(QuadField::Rational) - &l;
            prop_assert_eq!(j_from_solution(&l, &mu).unwrap(), j_of_lambda(&l).unwrap());
        }
    }
}
