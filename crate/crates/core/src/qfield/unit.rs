use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldDescriptor, QuadField};
use super::number::AlgebraicNumber;
use crate::error::{Error, Result};

/// Fundamental unit `ε > 1` of a real quadratic field.
///
/// Expands `θ = w - t` (the negated conjugate of `w`) as a continued
/// fraction; the first convergent `p/q` with `N(p + q·w) = ±1` gives `ε`.
pub fn fundamental_unit(field: &FieldDescriptor) -> Result<AlgebraicNumber> {
    match field.arith()? {
        QuadField::Quadratic { d } if d > 0 => Ok(fundamental_unit_of(QuadField::Quadratic { d })),
        _ => Err(Error::NotRealQuadratic),
    }
}

pub(crate) fn fundamental_unit_of(k: QuadField) -> AlgebraicNumber {
    let d = k.d();
    debug_assert!(d > 1);
    let (t, _) = k.omega_relation();
    let dd = BigInt::from(d);
    let s = dd.sqrt();
    // θ = (P + sqrt d)/Q
    let (mut p_cf, mut q_cf) = if t == 1 {
        (BigInt::from(-1), BigInt::from(2))
    } else {
        (BigInt::zero(), BigInt::one())
    };
    // convergents h/k
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut kk) = (BigInt::one(), BigInt::zero());
    loop {
        let a = floor_quadratic(&p_cf, &q_cf, &s);
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &kk + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut kk, k_next);

        let cand = AlgebraicNumber::new(
            k,
            BigRational::from_integer(h.clone()),
            BigRational::from_integer(kk.clone()),
        );
        if cand.norm().abs().is_one() && !kk.is_zero() {
            debug_assert_eq!(cand.real_sign(), Some(Ordering::Greater));
            return cand;
        }

        p_cf = &a * &q_cf - &p_cf;
        q_cf = (&dd - &p_cf * &p_cf) / &q_cf;
    }
}

/// `floor((P + sqrt d)/Q)` given `s = floor(sqrt d)`, `d` not a square.
fn floor_quadratic(p: &BigInt, q: &BigInt, s: &BigInt) -> BigInt {
    let num = p + s;
    if q.is_positive() {
        num.div_floor(q)
    } else {
        -(num.div_floor(&-q)) - BigInt::one()
    }
}

/// Generator of the roots of unity in `k` and its order.
pub fn torsion_generator(k: QuadField) -> (AlgebraicNumber, u32) {
    match k.d() {
        -1 => (AlgebraicNumber::omega(k), 4),
        // w = (1 + sqrt -3)/2 is a primitive sixth root of unity
        -3 => (AlgebraicNumber::omega(k), 6),
        _ => (AlgebraicNumber::from_int(k, -1), 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::field::make_field;

    fn unit(d: i64) -> AlgebraicNumber {
        fundamental_unit(&make_field(d).unwrap()).unwrap()
    }

    /// Smallest unit > 1, found as `(a + b·sqrt d)/2` with `a² - d·b² = ±4`
    /// by scanning `b` upward.
    fn brute_force_unit(d: i64, b_max: i64) -> Option<AlgebraicNumber> {
        let k = QuadField::Quadratic { d };
        let half = d.rem_euclid(4) == 1;
        for b in 1..=b_max {
            if !half && b % 2 != 0 {
                continue;
            }
            for sign in [-4i64, 4] {
                let sq = d * b * b + sign;
                if sq <= 0 {
                    continue;
                }
                let a = crate::arith::isqrt_u64(sq as u64) as i64;
                if a * a == sq && (a - b) % 2 == 0 {
                    let two = BigRational::from_integer(2.into());
                    return Some(AlgebraicNumber::from_power_basis(
                        k,
                        BigRational::from_integer(a.into()) / &two,
                        BigRational::from_integer(b.into()) / &two,
                    ));
                }
            }
        }
        None
    }

    #[test]
    fn spec_units() {
        let f5 = unit(5);
        assert_eq!(f5.to_string(), "1/2+1/2*sqrt(5)");
        assert_eq!(f5.norm(), BigRational::from_integer((-1).into()));
        let f13 = unit(13);
        assert_eq!(f13.to_string(), "3/2+1/2*sqrt(13)");
        assert_eq!(f13.norm(), BigRational::from_integer((-1).into()));
        let f3 = unit(3);
        assert_eq!(f3.to_string(), "2+sqrt(3)");
        assert!(f3.norm().is_one());
    }

    #[test]
    fn larger_units() {
        assert_eq!(unit(94).to_string(), "2143295+221064*sqrt(94)");
        assert_eq!(unit(97).to_string(), "5604+569*sqrt(97)");
        assert_eq!(unit(46).to_string(), "24335+3588*sqrt(46)");
    }

    #[test]
    fn units_match_brute_force_for_small_d() {
        for d in 2i64..=100 {
            let Ok(f) = make_field(d) else { continue };
            let e = fundamental_unit(&f).unwrap();
            assert!(e.norm().abs().is_one());
            if let Some(b) = brute_force_unit(d, 2000) {
                assert_eq!(e, b, "d = {d}");
            }
        }
    }

    #[test]
    fn not_real_quadratic() {
        assert_eq!(fundamental_unit(&make_field(-5).unwrap()), Err(Error::NotRealQuadratic));
        assert_eq!(fundamental_unit(&FieldDescriptor::rational()), Err(Error::NotRealQuadratic));
    }

    #[test]
    fn torsion_orders() {
        let k = QuadField::Quadratic { d: -3 };
        let (z, n) = torsion_generator(k);
        assert!(z.pow(n as i64).unwrap().is_one());
        assert!(!z.pow(3).unwrap().is_one());
        let k = QuadField::Quadratic { d: -1 };
        let (i, n) = torsion_generator(k);
        assert_eq!(n, 4);
        assert!(i.pow(2).unwrap().is_rational_integer(-1));
    }
}
