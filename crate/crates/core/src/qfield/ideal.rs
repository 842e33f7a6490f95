//! Prime ideals above rational primes, valuations, and integral ideals in
//! Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::{QuadField, SplittingType};
use super::forms::{represent_unit, BinaryForm};
use super::number::AlgebraicNumber;
use crate::arith::{is_prime, ord_p, sqrt_mod};
use crate::error::{Error, Result};

/// A prime of `K` above a rational prime.
///
/// Split and ramified primes are `(p, w - r)` with `r` a root of
/// `X² - tX - n` mod `p`; inert primes are `(p)`. For split primes, index 1
/// takes the smaller root in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SlotRecord", into = "SlotRecord")]
pub struct PrimeSlot {
    pub field: QuadField,
    pub rational_prime: u64,
    pub splitting: SplittingType,
    pub index: u8,
    pub e: u32,
    pub f: u32,
    pub generators: Vec<AlgebraicNumber>,
    root: Option<u64>,
    /// Residue of `w` at the conjugate prime (split) or `root` (ramified).
    cofactor_root: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct SlotRecord {
    field: QuadField,
    rational_prime: u64,
    splitting: SplittingType,
    index: u8,
    e: u32,
    f: u32,
    generators: Vec<AlgebraicNumber>,
}

impl From<PrimeSlot> for SlotRecord {
    fn from(s: PrimeSlot) -> Self {
        SlotRecord {
            field: s.field,
            rational_prime: s.rational_prime,
            splitting: s.splitting,
            index: s.index,
            e: s.e,
            f: s.f,
            generators: s.generators,
        }
    }
}

impl TryFrom<SlotRecord> for PrimeSlot {
    type Error = Error;

    fn try_from(r: SlotRecord) -> Result<Self> {
        let slot = primes_above(r.field, r.rational_prime)?
            .into_iter()
            .find(|s| s.index == r.index)
            .ok_or_else(|| Error::InvalidArgument(format!("no prime with index {}", r.index)))?;
        if slot.splitting != r.splitting || slot.e != r.e || slot.f != r.f {
            return Err(Error::InvalidArgument("inconsistent prime record".into()));
        }
        Ok(slot)
    }
}

/// All primes of `k` above the rational prime `p`, in index order.
pub fn primes_above(k: QuadField, p: u64) -> Result<Vec<PrimeSlot>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pk = AlgebraicNumber::from_int(k, p);
    if k.is_rational() {
        return Ok(vec![PrimeSlot {
            field: k,
            rational_prime: p,
            splitting: SplittingType::Split,
            index: 1,
            e: 1,
            f: 1,
            generators: vec![pk],
            root: None,
            cofactor_root: None,
        }]);
    }
    let splitting = k.splitting_type(p);
    if splitting == SplittingType::Inert {
        return Ok(vec![PrimeSlot {
            field: k,
            rational_prime: p,
            splitting,
            index: 1,
            e: 1,
            f: 2,
            generators: vec![pk],
            root: None,
            cofactor_root: None,
        }]);
    }
    let roots = omega_roots(k, p);
    let gen = |r: u64| {
        vec![
            pk.clone(),
            AlgebraicNumber::omega(k) - AlgebraicNumber::from_int(k, r),
        ]
    };
    Ok(match splitting {
        SplittingType::Ramified => {
            let r = roots[0];
            vec![PrimeSlot {
                field: k,
                rational_prime: p,
                splitting,
                index: 1,
                e: 2,
                f: 1,
                generators: gen(r),
                root: Some(r),
                cofactor_root: Some(r),
            }]
        }
        _ => {
            let (r1, r2) = (roots[0], roots[1]);
            [(1u8, r1, r2), (2, r2, r1)]
                .into_iter()
                .map(|(index, r, other)| PrimeSlot {
                    field: k,
                    rational_prime: p,
                    splitting,
                    index,
                    e: 1,
                    f: 1,
                    generators: gen(r),
                    root: Some(r),
                    cofactor_root: Some(other),
                })
                .collect()
        }
    })
}

/// Roots of `X² - tX - n` modulo `p` in increasing order (one root when
/// `p` ramifies).
fn omega_roots(k: QuadField, p: u64) -> Vec<u64> {
    let (t, n) = k.omega_relation();
    let pi = p as i128;
    let poly = |x: i128| (x * x - t as i128 * x - n as i128).rem_euclid(pi);
    if p == 2 {
        return (0..2u64).filter(|&x| poly(x as i128) == 0).collect();
    }
    let disc = k.discriminant().rem_euclid(p as i64) as u64;
    let s = sqrt_mod(disc, p).expect("called only for split or ramified primes") as i128;
    let inv2 = (pi + 1) / 2;
    let mut roots: Vec<u64> = [s, -s]
        .iter()
        .map(|&sq| ((t as i128 + sq) * inv2).rem_euclid(pi) as u64)
        .collect();
    roots.sort_unstable();
    roots.dedup();
    debug_assert!(roots.iter().all(|&r| poly(r as i128) == 0));
    roots
}

impl PrimeSlot {
    pub fn is_above(&self, p: u64) -> bool {
        self.rational_prime == p
    }

    /// The slot as an integral ideal.
    pub fn ideal(&self) -> Ideal {
        Ideal::from_elements(self.field, &self.generators).expect("prime ideal is non-zero")
    }

    /// Absolute norm `p^f`.
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.rational_prime).pow(self.f)
    }

    pub fn label(&self) -> String {
        match (self.field, self.splitting) {
            (QuadField::Rational, _) => self.rational_prime.to_string(),
            (_, SplittingType::Split) => format!("P{}_{}", self.rational_prime, self.index),
            _ => format!("P{}", self.rational_prime),
        }
    }

    /// Whether `x + y·r ≡ 0 (mod p)`, i.e. the integral element lies in the slot.
    fn contains_coords(&self, x: &BigInt, y: &BigInt) -> bool {
        let p = BigInt::from(self.rational_prime);
        match self.root {
            Some(r) => (x + y * BigInt::from(r)).mod_floor(&p).is_zero(),
            None => x.mod_floor(&p).is_zero() && y.mod_floor(&p).is_zero(),
        }
    }
}

/// `ord_p` of zero reported as `None`.
fn ord_or_inf(n: &BigInt, p: u64) -> Option<u32> {
    (!n.is_zero()).then(|| ord_p(n, p))
}

/// Exact valuation of `x` at the slot.
///
/// Writes `x = (X + Y·w)/D` and strips the slot from `X + Y·w` by repeated
/// multiplication with an element of the complementary ideal followed by
/// division by `p`.
pub fn valuation(x: &AlgebraicNumber, slot: &PrimeSlot) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if x.field() != slot.field {
        return Err(Error::FieldMismatch);
    }
    let p = slot.rational_prime;
    let (mut bx, mut by, den) = x.integral_parts();
    let den_part = slot.e as i64 * ord_p(&den, p) as i64;
    let content = match (ord_or_inf(&bx, p), ord_or_inf(&by, p)) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!("non-zero element"),
    };
    if slot.root.is_none() {
        return Ok(content as i64 - den_part);
    }
    let pk = BigInt::from(p).pow(content);
    bx /= &pk;
    by /= &pk;
    let mut v = slot.e as i64 * content as i64;
    let (t, n) = slot.field.omega_relation();
    let (t, n) = (BigInt::from(t), BigInt::from(n));
    let s = BigInt::from(slot.cofactor_root.expect("split or ramified slot"));
    let pb = BigInt::from(p);
    while slot.contains_coords(&bx, &by) {
        // (X + Y w)(w - s) = (n Y - s X) + (X - s Y + t Y) w
        let nx = &n * &by - &s * &bx;
        let ny = &bx - &s * &by + &t * &by;
        debug_assert!((&nx % &pb).is_zero() && (&ny % &pb).is_zero());
        bx = nx / &pb;
        by = ny / &pb;
        v += 1;
    }
    Ok(v - den_part)
}

/// Non-zero integral ideal with Z-basis `{a, b + c·w}` in Hermite normal form:
/// `a, c > 0`, `0 ≤ b < a`, `c | a`, `c | b`. Over `Q` only `a` is used.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    field: QuadField,
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Ideal {
    pub fn unit(field: QuadField) -> Self {
        Ideal { field, a: BigInt::one(), b: BigInt::zero(), c: BigInt::one() }
    }

    /// The ideal generated by integral elements.
    pub fn from_elements(field: QuadField, gens: &[AlgebraicNumber]) -> Result<Self> {
        let mut vecs = Vec::with_capacity(2 * gens.len());
        for g in gens {
            if !g.is_integral() {
                return Err(Error::NotIntegral("ideal generator"));
            }
            let (x, y, _) = g.integral_parts();
            vecs.extend(module_span(field, x, y));
        }
        Self::from_z_span(field, vecs)
    }

    fn from_z_span(field: QuadField, vecs: Vec<(BigInt, BigInt)>) -> Result<Self> {
        let mut pivot: Option<(BigInt, BigInt)> = None;
        let mut xs: Vec<BigInt> = Vec::new();
        for (x, y) in vecs {
            if y.is_zero() {
                xs.push(x);
                continue;
            }
            pivot = Some(match pivot {
                None => (x, y),
                Some((px, py)) => {
                    let eg = py.extended_gcd(&y);
                    let g = eg.gcd;
                    xs.push(&y / &g * &px - &py / &g * &x);
                    (eg.x * px + eg.y * x, g)
                }
            });
        }
        let a = xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if field.is_rational() {
            return if a.is_zero() {
                Err(Error::ZeroElement)
            } else {
                Ok(Ideal { field, a, b: BigInt::zero(), c: BigInt::one() })
            };
        }
        let (mut px, mut py) = pivot.ok_or(Error::ZeroElement)?;
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        if py.is_negative() {
            px = -px;
            py = -py;
        }
        let b = px.mod_floor(&a);
        debug_assert!((&a % &py).is_zero() && (&b % &py).is_zero());
        Ok(Ideal { field, a, b, c: py })
    }

    fn basis(&self) -> [AlgebraicNumber; 2] {
        let k = self.field;
        let first = AlgebraicNumber::from_int(k, self.a.clone());
        if k.is_rational() {
            return [first.clone(), first];
        }
        let second = AlgebraicNumber::new(
            k,
            BigRational::from_integer(self.b.clone()),
            BigRational::from_integer(self.c.clone()),
        );
        [first, second]
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.field, other.field);
        if self.field.is_rational() {
            return Ideal { a: &self.a * &other.a, ..self.clone() };
        }
        let mut vecs = Vec::with_capacity(4);
        for u in self.basis() {
            for v in other.basis() {
                let (x, y, _) = (&u * &v).integral_parts();
                vecs.push((x, y));
            }
        }
        Self::from_z_span(self.field, vecs).expect("product of non-zero ideals")
    }

    pub fn pow(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(self.field);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn norm(&self) -> BigInt {
        if self.field.is_rational() {
            self.a.clone()
        } else {
            &self.a * &self.c
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// A generator when the ideal is principal.
    ///
    /// `I` is principal iff the form `N(X·a + Y·(b + c·w))/N(I)` represents
    /// `±1`; the representing vector gives the generator.
    pub fn principal_generator(&self) -> Option<AlgebraicNumber> {
        let k = self.field;
        if k.is_rational() {
            return Some(AlgebraicNumber::from_int(k, self.a.clone()));
        }
        let (t, n) = k.omega_relation();
        let (t, n) = (BigInt::from(t), BigInt::from(n));
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let norm_second = b * b + &t * b * c - &n * c * c;
        let form = BinaryForm {
            a: a / c,
            b: (BigInt::from(2) * b + c * &t) / c,
            c: norm_second / (a * c),
        };
        let (x, y) = represent_unit(&form)?;
        let [first, second] = self.basis();
        let gen = first.scale(&BigRational::from_integer(x)) + second.scale(&BigRational::from_integer(y));
        debug_assert_eq!(gen.norm().abs(), BigRational::from_integer(self.norm()));
        Some(gen)
    }
}

/// Z-module generators `{α, α·w}` of the ideal `(α)` for `α = x + y·w`.
fn module_span(k: QuadField, x: BigInt, y: BigInt) -> Vec<(BigInt, BigInt)> {
    if k.is_rational() {
        return vec![(x, y)];
    }
    let (t, n) = k.omega_relation();
    // (x + y w) w = n y + (x + t y) w
    let second = (BigInt::from(n) * &y, &x + BigInt::from(t) * &y);
    vec![(x, y), second]
}

/// Order of the class of `slot` in the class group, given the class number.
pub fn class_order(slot: &PrimeSlot, h: u64) -> u32 {
    let p = slot.ideal();
    let mut acc = Ideal::unit(slot.field);
    for k in 1..=h.max(1) as u32 {
        acc = acc.mul(&p);
        if acc.principal_generator().is_some() {
            return k;
        }
    }
    unreachable!("the order of an ideal class divides h")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(d: i64) -> QuadField {
        QuadField::Quadratic { d }
    }

    fn el(d: i64, x: i64, y: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_ints(k(d), x, y)
    }

    #[test]
    fn valuation_examples() {
        let p2 = &primes_above(k(-5), 2).unwrap()[0];
        assert_eq!(p2.splitting, SplittingType::Ramified);
        assert_eq!(valuation(&AlgebraicNumber::from_int(k(-5), 6), p2), Ok(2));
        let q2 = &primes_above(k(2), 2).unwrap()[0];
        assert_eq!(valuation(&el(2, 2, 1), q2), Ok(1));
        assert_eq!(valuation(&AlgebraicNumber::one(k(2)), q2), Ok(0));
        assert_eq!(valuation(&AlgebraicNumber::zero(k(2)), q2), Err(Error::ZeroElement));
    }

    #[test]
    fn split_primes_are_distinguished() {
        // 2 splits in Q(sqrt 17); w = (1 + sqrt 17)/2 and w² = w + 4
        let slots = primes_above(k(17), 2).unwrap();
        assert_eq!(slots.len(), 2);
        let w = AlgebraicNumber::omega(k(17));
        let v: Vec<i64> = slots.iter().map(|s| valuation(&w, s).unwrap()).collect();
        // N(w) = -4 and w, w' are coprime away from 2
        assert_eq!(v.iter().sum::<i64>(), 2);
        assert!(v.contains(&0));
        let half = AlgebraicNumber::from_rational(k(17), BigRational::new(1.into(), 2.into()));
        for s in &slots {
            assert_eq!(valuation(&half, s), Ok(-1));
        }
    }

    #[test]
    fn norm_formula_holds_over_slots() {
        for d in [-23i64, -5, -1, 2, 3, 5, 13, 17, 33, 41] {
            for p in [2u64, 3, 5, 7, 11] {
                let slots = primes_above(k(d), p).unwrap();
                for (x, y) in [(3i64, 5i64), (12, -4), (7, 1), (40, 6), (1, 2)] {
                    let a = el(d, x, y);
                    let total: i64 = slots.iter().map(|s| s.f as i64 * valuation(&a, s).unwrap()).sum();
                    let norm = a.norm();
                    let expected = ord_p(norm.numer(), p) as i64 - ord_p(norm.denom(), p) as i64;
                    assert_eq!(total, expected, "d={d} p={p} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn hnf_of_prime_ideals() {
        let p = primes_above(k(-5), 2).unwrap()[0].ideal();
        assert_eq!(p.norm(), BigInt::from(2));
        assert!(p.principal_generator().is_none());
        let g = p.pow(2).principal_generator().unwrap();
        assert_eq!(g.norm(), BigRational::from_integer(4.into()));
        assert_eq!(class_order(&primes_above(k(-5), 2).unwrap()[0], 2), 2);
        assert_eq!(class_order(&primes_above(k(-5), 3).unwrap()[1], 2), 2);
        // 3 = (1 + sqrt -2)(1 - sqrt -2)
        let s = &primes_above(k(-2), 3).unwrap()[0];
        let g = s.ideal().principal_generator().unwrap();
        assert_eq!(g.norm(), BigRational::from_integer(3.into()));
        assert_eq!(valuation(&g, s), Ok(1));
    }

    #[test]
    fn real_principal_generators() {
        // h(Q(sqrt 10)) = 2: the primes above 2, 3 are not principal
        let s2 = &primes_above(k(10), 2).unwrap()[0];
        assert!(s2.ideal().principal_generator().is_none());
        assert!(s2.ideal().pow(2).principal_generator().is_some());
        // Q(sqrt 7): 2 ramifies and P = (3 + sqrt 7)
        let s = &primes_above(k(7), 2).unwrap()[0];
        let g = s.ideal().principal_generator().unwrap();
        assert_eq!(g.norm().abs(), BigRational::from_integer(2.into()));
    }

    proptest! {
        #[test]
        fn valuations_are_additive(
            d in prop::sample::select(vec![-15i64, -5, -1, 2, 5, 17, 33]),
            x1 in -60i64..60, y1 in -60i64..60, x2 in -60i64..60, y2 in -60i64..60,
            den in 1i64..12,
        ) {
            let a = el(d, x1, y1).scale(&BigRational::new(1.into(), den.into()));
            let b = el(d, x2, y2);
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
            for p in [2u64, 3, 5] {
                for s in primes_above(k(d), p).unwrap() {
                    let lhs = valuation(&(&a * &b), &s).unwrap();
                    prop_assert_eq!(lhs, valuation(&a, &s).unwrap() + valuation(&b, &s).unwrap());
                }
            }
        }
    }
}
