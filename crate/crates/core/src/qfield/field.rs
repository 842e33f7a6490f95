use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_squarefree, kronecker};
use crate::error::{Error, Result};

/// How a rational prime decomposes in a field.
///
/// For abstract descriptors of higher degree the variants read as
/// "totally split", "inert" and "totally ramified"; `Mixed` covers every
/// other decomposition pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Rational,
    Quadratic,
    Abstract,
}

/// Arithmetic context of an element: either `Q` or `Q(sqrt d)`.
///
/// The integral basis is `{1, w}` with `w = sqrt d` when `d ≡ 2, 3 mod 4`
/// and `w = (1 + sqrt d)/2` when `d ≡ 1 mod 4`, so that `w² = t·w + n`.
///
/// Serialized as the integer `d`, with `1` standing for `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub enum QuadField {
    Rational,
    Quadratic { d: i64 },
}

impl QuadField {
    /// `d` for `Q(sqrt d)`, and `1` for `Q`.
    pub fn d(self) -> i64 {
        match self {
            QuadField::Rational => 1,
            QuadField::Quadratic { d } => d,
        }
    }

    pub fn from_d(d: i64) -> Result<Self> {
        if d == 1 {
            Ok(QuadField::Rational)
        } else {
            make_field(d)?.arith()
        }
    }

    pub fn degree(self) -> u32 {
        match self {
            QuadField::Rational => 1,
            QuadField::Quadratic { .. } => 2,
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, QuadField::Rational)
    }

    pub fn is_real(self) -> bool {
        self.d() > 0
    }

    pub fn discriminant(self) -> i64 {
        match self {
            QuadField::Rational => 1,
            QuadField::Quadratic { d } => {
                if d.rem_euclid(4) == 1 {
                    d
                } else {
                    4 * d
                }
            }
        }
    }

    /// `(t, n)` with `w² = t·w + n`.
    pub(crate) fn omega_relation(self) -> (i64, i64) {
        match self {
            QuadField::Rational => (0, 0),
            QuadField::Quadratic { d } => {
                if d.rem_euclid(4) == 1 {
                    (1, (d - 1) / 4)
                } else {
                    (0, d)
                }
            }
        }
    }

    pub fn splitting_type(self, p: u64) -> SplittingType {
        match self {
            QuadField::Rational => SplittingType::Split,
            QuadField::Quadratic { .. } => {
                let disc = self.discriminant();
                match kronecker(disc, p as i64) {
                    0 => SplittingType::Ramified,
                    1 => SplittingType::Split,
                    _ => SplittingType::Inert,
                }
            }
        }
    }

    pub fn descriptor(self) -> FieldDescriptor {
        match self {
            QuadField::Rational => FieldDescriptor::rational(),
            QuadField::Quadratic { d } => {
                make_field(d).expect("QuadField always holds a valid d")
            }
        }
    }
}

impl From<QuadField> for i64 {
    fn from(k: QuadField) -> i64 {
        k.d()
    }
}

impl TryFrom<i64> for QuadField {
    type Error = Error;

    fn try_from(d: i64) -> Result<Self> {
        QuadField::from_d(d)
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadField::Rational => write!(f, "Q"),
            QuadField::Quadratic { d } => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// Descriptor of the base field `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub d: Option<i64>,
    pub degree: u32,
    /// Absent for abstract descriptors.
    pub discriminant: Option<i64>,
    /// Number of real embeddings.
    pub signature: u32,
    /// Explicit splitting data; only consulted for abstract descriptors.
    #[serde(default)]
    pub ramification_table: BTreeMap<u64, SplittingType>,
    /// `Some(r)` marks the r-th layer of the cyclotomic Z_2-extension.
    #[serde(default)]
    pub z2_layer: Option<u32>,
    /// Parity of the narrow class number when it is supplied rather than computed.
    #[serde(default)]
    pub narrow_class_number_odd: Option<bool>,
}

/// Builds the descriptor of `Q(sqrt d)`.
pub fn make_field(d: i64) -> Result<FieldDescriptor> {
    if d == 0 || d == 1 {
        return Err(Error::InvalidD(d));
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    Ok(FieldDescriptor {
        kind: FieldKind::Quadratic,
        d: Some(d),
        degree: 2,
        discriminant: Some(disc),
        signature: if d > 0 { 2 } else { 0 },
        ramification_table: BTreeMap::new(),
        z2_layer: None,
        narrow_class_number_odd: None,
    })
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        FieldDescriptor {
            kind: FieldKind::Rational,
            d: None,
            degree: 1,
            discriminant: Some(1),
            signature: 1,
            ramification_table: BTreeMap::new(),
            z2_layer: None,
            narrow_class_number_odd: None,
        }
    }

    /// Descriptor for a field known only through its degree, signature and
    /// the splitting of a few primes.
    pub fn abstract_field(
        degree: u32,
        signature: u32,
        table: impl IntoIterator<Item = (u64, SplittingType)>,
    ) -> Result<Self> {
        if degree == 0 || signature > degree {
            return Err(Error::InvalidArgument(format!(
                "degree {degree} with {signature} real embeddings"
            )));
        }
        Ok(FieldDescriptor {
            kind: FieldKind::Abstract,
            d: None,
            degree,
            discriminant: None,
            signature,
            ramification_table: table.into_iter().collect(),
            z2_layer: None,
            narrow_class_number_odd: None,
        })
    }

    /// The field `Q(zeta_{2^{r+2}})^+`: totally real of degree `2^r`, with 2
    /// totally ramified and odd narrow class number.
    pub fn z2_layer(r: u32) -> Result<Self> {
        if r == 0 || r > 30 {
            return Err(Error::InvalidArgument(format!("layer r = {r} must satisfy 1 <= r <= 30")));
        }
        let degree = 1u32 << r;
        let mut desc =
            FieldDescriptor::abstract_field(degree, degree, [(2, SplittingType::Ramified)])?;
        desc.z2_layer = Some(r);
        desc.narrow_class_number_odd = Some(true);
        Ok(desc)
    }

    pub fn arith(&self) -> Result<QuadField> {
        match self.kind {
            FieldKind::Rational => Ok(QuadField::Rational),
            FieldKind::Quadratic => Ok(QuadField::Quadratic {
                d: self.d.expect("quadratic descriptor without d"),
            }),
            FieldKind::Abstract => Err(Error::AbstractField),
        }
    }

    pub fn is_totally_real(&self) -> bool {
        self.signature == self.degree
    }

    pub fn splitting_type(&self, p: u64) -> Result<SplittingType> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match self.kind {
            FieldKind::Abstract => self
                .ramification_table
                .get(&p)
                .copied()
                .ok_or(Error::MissingTableEntry(p)),
            _ => Ok(self.arith()?.splitting_type(p)),
        }
    }

    /// `(e, f, g)`: ramification index, residue degree and number of primes
    /// above `p`; `None` for a `Mixed` abstract entry.
    pub fn decomposition(&self, p: u64) -> Result<Option<(u32, u32, u32)>> {
        let n = self.degree;
        if self.kind == FieldKind::Rational {
            is_prime(p).then_some(()).ok_or(Error::NotPrime(p))?;
            return Ok(Some((1, 1, 1)));
        }
        Ok(match self.splitting_type(p)? {
            SplittingType::Split => Some((1, 1, n)),
            SplittingType::Inert => Some((1, n, 1)),
            SplittingType::Ramified => Some((n, 1, 1)),
            SplittingType::Mixed => None,
        })
    }

    pub fn is_totally_ramified(&self, p: u64) -> Result<bool> {
        Ok(matches!(self.decomposition(p)?, Some((e, _, _)) if e == self.degree))
    }

    pub fn is_totally_split(&self, p: u64) -> Result<bool> {
        Ok(matches!(self.decomposition(p)?, Some((_, _, g)) if g == self.degree))
    }

    /// `Some(e)` when exactly one prime lies above `p`.
    pub fn unique_prime_ord(&self, p: u64) -> Result<Option<u32>> {
        Ok(match self.decomposition(p)? {
            Some((e, _, 1)) => Some(e),
            _ => None,
        })
    }

    pub fn label(&self) -> String {
        match self.kind {
            FieldKind::Rational => "Q".into(),
            FieldKind::Quadratic => format!("Q(sqrt({}))", self.d.unwrap_or_default()),
            FieldKind::Abstract => match self.z2_layer {
                Some(r) => format!("Q_{{{r},2}}"),
                None => format!("abstract field of degree {}", self.degree),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_conventions() {
        let f = make_field(5).unwrap();
        assert_eq!((f.discriminant, f.signature), (Some(5), 2));
        let f = make_field(-5).unwrap();
        assert_eq!((f.discriminant, f.signature), (Some(-20), 0));
        assert_eq!(make_field(12), Err(Error::NotSquarefree(12)));
        assert_eq!(make_field(0), Err(Error::InvalidD(0)));
        assert_eq!(make_field(1), Err(Error::InvalidD(1)));
        assert_eq!(make_field(-1).unwrap().discriminant, Some(-4));
    }

    #[test]
    fn splitting_of_two() {
        let st = |d| make_field(d).unwrap().splitting_type(2).unwrap();
        assert_eq!(st(5), SplittingType::Inert);
        assert_eq!(st(17), SplittingType::Split);
        assert_eq!(st(-5), SplittingType::Ramified);
        assert_eq!(st(2), SplittingType::Ramified);
        assert_eq!(st(-7), SplittingType::Split);
    }

    #[test]
    fn abstract_lookup_and_missing_entries() {
        let f = FieldDescriptor::abstract_field(
            3,
            1,
            [(2, SplittingType::Ramified), (3, SplittingType::Split)],
        )
        .unwrap();
        assert!(f.is_totally_ramified(2).unwrap());
        assert!(f.is_totally_split(3).unwrap());
        assert_eq!(f.splitting_type(5), Err(Error::MissingTableEntry(5)));
        assert_eq!(f.arith(), Err(Error::AbstractField));
    }

    #[test]
    fn every_small_quadratic_field_has_degree_two_above_small_primes() {
        for d in -200i64..=200 {
            let Ok(f) = make_field(d) else { continue };
            for p in [2u64, 3, 5, 7] {
                let (e, fdeg, g) = f.decomposition(p).unwrap().unwrap();
                assert_eq!(e * fdeg * g, 2, "d = {d}, p = {p}");
            }
        }
    }
}
