//! Binary quadratic forms `a x² + b x y + c y²`: reduction with tracked
//! transformations, class counting, and representation of ±1.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{isqrt_u64, to_i64};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        BinaryForm { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }
}

/// Unimodular substitution, stored column-wise: `(x, y) = M·(X, Y)`.
#[derive(Clone, Debug)]
struct Transform {
    col1: (BigInt, BigInt),
    col2: (BigInt, BigInt),
}

impl Transform {
    fn identity() -> Self {
        Transform {
            col1: (BigInt::one(), BigInt::zero()),
            col2: (BigInt::zero(), BigInt::one()),
        }
    }

    /// Right-multiply by `[[0, -1], [1, t]]`.
    fn rho(&mut self, t: &BigInt) {
        let new2 = (
            -&self.col1.0 + t * &self.col2.0,
            -&self.col1.1 + t * &self.col2.1,
        );
        self.col1 = std::mem::replace(&mut self.col2, new2);
    }

    /// Right-multiply by `[[1, -k], [0, 1]]`.
    fn translate(&mut self, k: &BigInt) {
        self.col2 = (&self.col2.0 - k * &self.col1.0, &self.col2.1 - k * &self.col1.1);
    }

    /// Right-multiply by `[[0, -1], [1, 0]]`.
    fn swap(&mut self) {
        let neg1 = (-&self.col1.0, -&self.col1.1);
        self.col1 = std::mem::replace(&mut self.col2, neg1);
    }
}

/// Reduces a positive definite form to `|b| ≤ a ≤ c`, returning the
/// reduced form and the transformation reaching it.
fn reduce_definite(mut f: BinaryForm) -> (BinaryForm, Transform) {
    let mut m = Transform::identity();
    loop {
        // choose k so that b - 2ak lies in (-a, a]
        let two_a = BigInt::from(2) * &f.a;
        let k = (&f.b + &f.a - BigInt::one()).div_floor(&two_a);
        if !k.is_zero() {
            let c = &f.a * &k * &k - &f.b * &k + &f.c;
            f = BinaryForm { b: &f.b - &two_a * &k, c, a: f.a };
            m.translate(&k);
        }
        if f.a > f.c || (f.a == f.c && f.b.is_negative()) {
            f = BinaryForm { a: f.c, b: -f.b, c: f.a };
            m.swap();
            continue;
        }
        return (f, m);
    }
}

/// Parameters of an indefinite discriminant: `D` and `floor(sqrt D)`.
#[derive(Clone, Debug)]
struct Indefinite {
    disc: BigInt,
    s: BigInt,
}

impl Indefinite {
    fn new(disc: &BigInt) -> Self {
        Indefinite { disc: disc.clone(), s: disc.sqrt() }
    }

    fn is_reduced(&self, f: &BinaryForm) -> bool {
        if !f.b.is_positive() || f.b > self.s {
            return false;
        }
        let two_a = BigInt::from(2) * f.a.abs();
        // sqrt D - b < 2|a|  <=>  D < (2|a| + b)²
        let lo = &two_a + &f.b;
        let lower_ok = lo.is_positive() && self.disc < &lo * &lo;
        // 2|a| < sqrt D + b  <=>  2|a| - b < 0  or  (2|a| - b)² < D
        let hi = &two_a - &f.b;
        let upper_ok = hi.is_negative() || &hi * &hi < self.disc;
        lower_ok && upper_ok
    }

    /// One reduction step `(a, b, c) -> (c, b', a')`, returning the new form
    /// and the `t` of the substitution `[[0, -1], [1, t]]`.
    fn rho(&self, f: &BinaryForm) -> (BinaryForm, BigInt) {
        let c_abs = f.c.abs();
        let two_c = BigInt::from(2) * &c_abs;
        let target = -&f.b;
        // unique b' ≡ -b (mod 2|c|) in the window [lo, lo + 2|c|)
        let lo = if c_abs > self.s {
            -&c_abs + BigInt::one()
        } else {
            &self.s - &two_c + BigInt::one()
        };
        let b_new = &lo + (&target - &lo).mod_floor(&two_c);
        let t = (&b_new + &f.b) / (BigInt::from(2) * &f.c);
        let c_new = (&b_new * &b_new - &self.disc) / (BigInt::from(4) * &f.c);
        (BinaryForm { a: f.c.clone(), b: b_new, c: c_new }, t)
    }
}

/// Finds `(x, y)` with `f(x, y) = ±1`, if the form represents a unit.
///
/// Definite forms are reduced once; indefinite forms are reduced and then
/// their full cycle of reduced forms is walked.
pub fn represent_unit(f: &BinaryForm) -> Option<(BigInt, BigInt)> {
    let disc = f.discriminant();
    if disc.is_negative() {
        let (mut g, m) = if f.a.is_negative() {
            let neg = BinaryForm { a: -&f.a, b: -&f.b, c: -&f.c };
            reduce_definite(neg)
        } else {
            reduce_definite(f.clone())
        };
        if f.a.is_negative() {
            g.a = -g.a;
        }
        return g.a.abs().is_one().then(|| m.col1.clone());
    }
    let ind = Indefinite::new(&disc);
    let mut m = Transform::identity();
    let mut g = f.clone();
    let mut steps = 0usize;
    while !ind.is_reduced(&g) {
        if g.a.abs().is_one() {
            return Some(m.col1);
        }
        let (next, t) = ind.rho(&g);
        m.rho(&t);
        g = next;
        steps += 1;
        assert!(steps < 100_000, "indefinite reduction did not terminate");
    }
    let start = g.clone();
    loop {
        if g.a.abs().is_one() {
            return Some(m.col1);
        }
        let (next, t) = ind.rho(&g);
        m.rho(&t);
        g = next;
        if g == start {
            return None;
        }
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

/// Number of primitive reduced positive definite forms of discriminant `disc < 0`.
pub fn class_number_definite(disc: i64) -> u64 {
    assert!(disc < 0 && disc.rem_euclid(4) <= 1);
    let abs = disc.unsigned_abs();
    let a_max = isqrt_u64(abs / 3);
    let mut count = 0;
    for a in 1..=a_max as i64 {
        for b in -a + 1..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd3(a, b, c) == 1 {
                count += 1;
            }
        }
    }
    count
}

/// All primitive reduced indefinite forms of discriminant `disc > 0`
/// (non-square).
fn reduced_indefinite_forms(disc: i64) -> Vec<BinaryForm> {
    let ind = Indefinite::new(&BigInt::from(disc));
    let s = to_i64(&ind.s);
    let mut out = Vec::new();
    for b in 1..=s {
        if (b - disc).rem_euclid(2) != 0 {
            continue;
        }
        let m = (disc - b * b) / 4; // = -ac > 0
        let mut a = 1i64;
        while a * a <= m {
            if m % a == 0 {
                for abs_a in [a, m / a] {
                    for sign in [1i64, -1] {
                        let aa = sign * abs_a;
                        let c = -m / aa;
                        let f = BinaryForm::new(aa, b, c);
                        if gcd3(aa, b, c) == 1 && ind.is_reduced(&f) && !out.contains(&f) {
                            out.push(f);
                        }
                    }
                }
            }
            a += 1;
        }
    }
    out
}

/// Number of proper equivalence classes of primitive forms of discriminant
/// `disc > 0`, computed as the number of cycles of reduced forms.
pub fn class_number_indefinite(disc: i64) -> u64 {
    assert!(disc > 0);
    let forms = reduced_indefinite_forms(disc);
    let ind = Indefinite::new(&BigInt::from(disc));
    let mut seen: HashSet<BinaryForm> = HashSet::new();
    let mut cycles = 0;
    for f in forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut g = f.clone();
        loop {
            seen.insert(g.clone());
            g = ind.rho(&g).0;
            if g == f {
                break;
            }
        }
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definite_class_numbers() {
        let table = [(-3, 1), (-4, 1), (-20, 2), (-23, 3), (-56, 4), (-84, 4), (-163, 1), (-47, 5)];
        for (d, h) in table {
            assert_eq!(class_number_definite(d), h, "D = {d}");
        }
    }

    #[test]
    fn narrow_class_numbers() {
        // D = 12 and 28: fundamental units have norm +1
        let table = [(5, 1), (8, 1), (12, 2), (13, 1), (28, 2), (40, 2), (60, 4), (229, 3), (136, 4)];
        for (d, h) in table {
            assert_eq!(class_number_indefinite(d), h, "D = {d}");
        }
    }

    #[test]
    fn reduced_forms_of_minus_twenty() {
        // (1,0,5) and (2,2,3)
        assert_eq!(class_number_definite(-20), 2);
        let (g, m) = reduce_definite(BinaryForm::new(3, 2, 2));
        assert_eq!(g, BinaryForm::new(2, 2, 3));
        let f = BinaryForm::new(3, 2, 2);
        assert_eq!(f.eval(&m.col1.0, &m.col1.1), g.a);
    }

    #[test]
    fn unit_representation_indefinite() {
        // x² - 3y² represents 1; -x² + 3y² represents -1 only
        let f = BinaryForm::new(-1, 0, 3);
        let (x, y) = represent_unit(&f).unwrap();
        assert_eq!(f.eval(&x, &y).abs(), BigInt::one());
        // disc 12: 2x² + 2xy - y² represents -1 at (0, 1)
        let g = BinaryForm::new(2, 2, -1);
        assert!(represent_unit(&g).is_some());
        // disc 40: 2x² - 5y² represents neither 1 nor -1
        let h = BinaryForm::new(2, 0, -5);
        assert!(represent_unit(&h).is_none());
    }
}
