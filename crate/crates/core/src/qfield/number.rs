use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::QuadField;
use crate::error::{Error, Result};
use crate::serde_util::{parse_rational, rational_to_string};

/// An exact element `x + y·w` of `Q` or `Q(sqrt d)`, with coordinates over
/// the integral basis `{1, w}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    field: QuadField,
    x: BigRational,
    y: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl AlgebraicNumber {
    /// Builds `x + y·w`; over `Q` the second coordinate must vanish.
    pub fn new(field: QuadField, x: BigRational, y: BigRational) -> Self {
        assert!(
            !(field.is_rational() && !y.is_zero()),
            "rational element with a non-zero w-coordinate"
        );
        AlgebraicNumber { field, x, y }
    }

    pub fn from_int(field: QuadField, n: impl Into<BigInt>) -> Self {
        Self::new(field, BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_rational(field: QuadField, q: BigRational) -> Self {
        Self::new(field, q, BigRational::zero())
    }

    pub fn from_ints(field: QuadField, x: i64, y: i64) -> Self {
        Self::new(field, rat(x), rat(y))
    }

    /// `a + b·sqrt d` from power-basis coordinates.
    pub fn from_power_basis(field: QuadField, a: BigRational, b: BigRational) -> Self {
        let (t, _) = field.omega_relation();
        if t == 1 {
            // sqrt d = 2w - 1
            let two_b = &b * rat(2);
            Self::new(field, a - b, two_b)
        } else {
            Self::new(field, a, b)
        }
    }

    pub fn zero(field: QuadField) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: QuadField) -> Self {
        Self::from_int(field, 1)
    }

    /// The basis element `w`.
    pub fn omega(field: QuadField) -> Self {
        Self::new(field, BigRational::zero(), BigRational::one())
    }

    /// `sqrt d`.
    pub fn sqrt_d(field: QuadField) -> Self {
        Self::from_power_basis(field, BigRational::zero(), BigRational::one())
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn coords(&self) -> (&BigRational, &BigRational) {
        (&self.x, &self.y)
    }

    /// `(a, b)` with `self = a + b·sqrt d`.
    pub fn power_coords(&self) -> (BigRational, BigRational) {
        let (t, _) = self.field.omega_relation();
        if t == 1 {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            (&self.x + &self.y * &half, &self.y * &half)
        } else {
            (self.x.clone(), self.y.clone())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.y.is_zero().then_some(&self.x)
    }

    pub fn is_rational_integer(&self, n: i64) -> bool {
        self.y.is_zero() && self.x == rat(n)
    }

    /// Whether the element lies in `O_K`.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Least positive integer `D` with `D·self` integral.
    pub fn denominator(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }

    /// Integral coordinates of `D·self` together with `D`.
    pub fn integral_parts(&self) -> (BigInt, BigInt, BigInt) {
        let den = self.denominator();
        let x = (&self.x * BigRational::from_integer(den.clone())).to_integer();
        let y = (&self.y * BigRational::from_integer(den.clone())).to_integer();
        (x, y, den)
    }

    pub fn conj(&self) -> Self {
        let (t, _) = self.field.omega_relation();
        // conj(w) = t - w
        Self::new(
            self.field,
            &self.x + &self.y * rat(t),
            -self.y.clone(),
        )
    }

    pub fn norm(&self) -> BigRational {
        let (t, n) = self.field.omega_relation();
        &self.x * &self.x + &self.x * &self.y * rat(t) - &self.y * &self.y * rat(n)
    }

    pub fn trace(&self) -> BigRational {
        let (t, _) = self.field.omega_relation();
        if self.field.is_rational() {
            return self.x.clone();
        }
        &self.x * rat(2) + &self.y * rat(t)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.is_rational() {
            return Ok(Self::from_rational(self.field, self.x.recip()));
        }
        let nrm = self.norm();
        let c = self.conj();
        Ok(Self::new(self.field, c.x / &nrm, c.y / nrm))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(self.field, &self.x * q, &self.y * q)
    }

    pub fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Sign of the image under the real embedding with `sqrt d > 0`.
    ///
    /// Returns `None` for imaginary quadratic fields.
    pub fn real_sign(&self) -> Option<Ordering> {
        let d = self.field.d();
        if d < 0 {
            return None;
        }
        let (a, b) = self.power_coords();
        let sa = a.cmp(&BigRational::zero());
        let sb = b.cmp(&BigRational::zero());
        if sb == Ordering::Equal || d == 1 {
            return Some(sa);
        }
        if sa == Ordering::Equal || sa == sb {
            return Some(sb);
        }
        // signs differ: compare a² with b²·d
        let lhs = &a * &a;
        let rhs = &b * &b * rat(d);
        Some(match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        })
    }

    /// Exact comparison in the real embedding; `None` when imaginary.
    pub fn cmp_real(&self, other: &Self) -> Option<Ordering> {
        (self - other).real_sign()
    }

    /// Floating-point image under the real embedding, for display only.
    pub fn approx_real(&self) -> Option<f64> {
        use num_traits::ToPrimitive;
        let d = self.field.d();
        if d < 0 {
            return None;
        }
        let (a, b) = self.power_coords();
        Some(a.to_f64()? + b.to_f64()? * (d as f64).sqrt())
    }

    /// Total order used for deterministic output: by field, then coordinates.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.y.cmp(&other.y))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a AlgebraicNumber> for &'a AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $method(self, rhs: &'a AlgebraicNumber) -> AlgebraicNumber {
                assert_eq!(self.field, rhs.field, "mixed-field arithmetic");
                let f: fn(&AlgebraicNumber, &AlgebraicNumber) -> AlgebraicNumber = $body;
                f(self, rhs)
            }
        }
        impl $trait<AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $method(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $method(self, rhs: &'a AlgebraicNumber) -> AlgebraicNumber {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<AlgebraicNumber> for &'a AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $method(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| AlgebraicNumber::new(
    a.field,
    &a.x + &b.x,
    &a.y + &b.y
));
forward_binop!(Sub, sub, |a, b| AlgebraicNumber::new(
    a.field,
    &a.x - &b.x,
    &a.y - &b.y
));
forward_binop!(Mul, mul, |a, b| {
    let (t, n) = a.field.omega_relation();
    let yy = &a.y * &b.y;
    AlgebraicNumber::new(
        a.field,
        &a.x * &b.x + &yy * rat(n),
        &a.x * &b.y + &b.x * &a.y + yy * rat(t),
    )
});

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber::new(self.field, -self.x, -self.y)
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -(self.clone())
    }
}

fn fmt_coeff(q: &BigRational) -> String {
    q.to_string()
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.power_coords();
        if b.is_zero() {
            return write!(f, "{}", fmt_coeff(&a));
        }
        let d = self.field.d();
        let root = format!("sqrt({d})");
        let b_term = if b.is_one() {
            root
        } else if (-&b).is_one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", fmt_coeff(&b))
        };
        if a.is_zero() {
            write!(f, "{b_term}")
        } else if b.is_negative() {
            write!(f, "{}{b_term}", fmt_coeff(&a))
        } else {
            write!(f, "{}+{b_term}", fmt_coeff(&a))
        }
    }
}

impl AlgebraicNumber {
    /// Parses the display form `a`, `b*sqrt(d)` or `a+b*sqrt(d)` (with `a`,
    /// `b` rationals and `d` the field's own `d`).
    pub fn parse_in(field: QuadField, s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidArgument(format!("cannot parse {s:?} as an element of {field}: {why}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(root_at) = t.find("sqrt(") else {
            return parse_rational(&t).map(|q| Self::from_rational(field, q)).map_err(|e| bad(&e));
        };
        let tail = &t[root_at..];
        let d: i64 = tail
            .strip_prefix("sqrt(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| bad("malformed sqrt term"))?;
        if field.is_rational() || d != field.d() {
            return Err(bad("sqrt of a different d"));
        }
        let head = &t[..root_at];
        let split = head.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).last();
        let (a_part, coeff) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let coeff = coeff.strip_prefix('+').unwrap_or(coeff);
        let b = match coeff {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rational(c.strip_suffix('*').ok_or_else(|| bad("expected '*' before sqrt"))?)
                .map_err(|e| bad(&e))?,
        };
        let a = if a_part.is_empty() { BigRational::zero() } else { parse_rational(a_part).map_err(|e| bad(&e))? };
        Ok(Self::from_power_basis(field, a, b))
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    d: i64,
    a: String,
    b: String,
}

/// Serialised as `{"d": d, "a": "..", "b": ".."}` meaning `a + b·sqrt d`
/// (with `d = 1` for `Q`).
impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (a, b) = self.power_coords();
        Wire {
            d: self.field.d(),
            a: rational_to_string(&a),
            b: rational_to_string(&b),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(de)?;
        let field = QuadField::from_d(w.d).map_err(D::Error::custom)?;
        let a = parse_rational(&w.a).map_err(D::Error::custom)?;
        let b = parse_rational(&w.b).map_err(D::Error::custom)?;
        if field.is_rational() && !b.is_zero() {
            return Err(D::Error::custom("rational element with a sqrt coefficient"));
        }
        Ok(AlgebraicNumber::from_power_basis(field, a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(d: i64) -> QuadField {
        QuadField::Quadratic { d }
    }

    #[test]
    fn golden_ratio_identities() {
        let k = q(5);
        let w = AlgebraicNumber::omega(k);
        assert_eq!(w.norm(), rat(-1));
        assert_eq!(w.trace(), rat(1));
        // w² = w + 1
        assert_eq!(&w * &w, &w + &AlgebraicNumber::one(k));
        assert_eq!(w.to_string(), "1/2+1/2*sqrt(5)");
        assert_eq!(w.real_sign(), Some(Ordering::Greater));
        assert_eq!(w.conj().real_sign(), Some(Ordering::Less));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert_eq!(AlgebraicNumber::zero(q(3)).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_parses_back() {
        for d in [5i64, 13, -3, 2, 3, -5] {
            let k = q(d);
            for (x, y) in [(3, -7), (0, 1), (0, -1), (2, 0), (-1, 2), (1, 1)] {
                let v = AlgebraicNumber::from_ints(k, x, y);
                assert_eq!(AlgebraicNumber::parse_in(k, &v.to_string()).unwrap(), v);
            }
        }
        let k = q(2);
        assert_eq!(AlgebraicNumber::parse_in(k, "1 + sqrt(2)").unwrap(), AlgebraicNumber::from_ints(k, 1, 1));
        assert!(AlgebraicNumber::parse_in(k, "1+sqrt(3)").is_err());
        assert!(AlgebraicNumber::parse_in(QuadField::Rational, "-3/4").unwrap().as_rational().is_some());
    }

    #[test]
    fn power_basis_round_trip() {
        for d in [5i64, 13, -3, 2, 3, -5] {
            let k = q(d);
            let x = AlgebraicNumber::from_ints(k, 3, -7);
            let (a, b) = x.power_coords();
            assert_eq!(AlgebraicNumber::from_power_basis(k, a, b), x);
        }
    }

    #[test]
    fn serde_round_trip() {
        let x = AlgebraicNumber::from_ints(q(13), 1, 1);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"d":13,"a":"3/2","b":"1/2"}"#);
        let back: AlgebraicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    fn arb_elem() -> impl Strategy<Value = AlgebraicNumber> {
        (
            prop::sample::select(vec![-7i64, -5, -3, -1, 2, 3, 5, 13, 17]),
            -50i64..50,
            1i64..6,
            -50i64..50,
            1i64..6,
        )
            .prop_map(|(d, xn, xd, yn, yd)| {
                AlgebraicNumber::new(
                    q(d),
                    BigRational::new(xn.into(), xd.into()),
                    BigRational::new(yn.into(), yd.into()),
                )
            })
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in arb_elem(), c in -9i64..9, e in -9i64..9) {
            let y = AlgebraicNumber::from_ints(x.field(), c, e);
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn inverse_is_two_sided(x in arb_elem()) {
            prop_assume!(!x.is_zero());
            let inv = x.inv().unwrap();
            prop_assert!((&x * &inv).is_one());
            prop_assert_eq!(x.pow(-3).unwrap(), inv.pow(3).unwrap());
        }
    }
}
