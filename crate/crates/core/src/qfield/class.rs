use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::field::{FieldDescriptor, QuadField};
use super::forms::{class_number_definite, class_number_indefinite};
use super::number::AlgebraicNumber;
use super::unit::fundamental_unit_of;
use crate::error::{Error, Result};

/// Default ceiling on `|disc|` for class computations.
pub const DEFAULT_DISCRIMINANT_BOUND: u64 = 1_000_000;

/// Class number, narrow class number and unit data of `Q` or `Q(sqrt d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub field: QuadField,
    pub h: u64,
    /// Present for real quadratic fields only.
    pub fundamental_unit: Option<AlgebraicNumber>,
    /// `N(ε)`, present with the fundamental unit.
    pub unit_norm: Option<i8>,
    pub h_plus: u64,
}

pub fn class_data(field: &FieldDescriptor) -> Result<ClassData> {
    class_data_with_bound(field, DEFAULT_DISCRIMINANT_BOUND)
}

/// Class data from reduced forms of the field discriminant.
///
/// Real fields count cycles of reduced indefinite forms, which gives `h⁺`;
/// then `h = h⁺` when `N(ε) = -1` and `h = h⁺/2` otherwise.
pub fn class_data_with_bound(field: &FieldDescriptor, bound: u64) -> Result<ClassData> {
    let k = field.arith()?;
    class_data_of(k, bound)
}

pub(crate) fn class_data_of(k: QuadField, bound: u64) -> Result<ClassData> {
    let disc = k.discriminant();
    if disc.unsigned_abs() > bound {
        return Err(Error::DiscriminantTooLarge { disc, bound });
    }
    Ok(match k {
        QuadField::Rational => ClassData {
            field: k,
            h: 1,
            fundamental_unit: None,
            unit_norm: None,
            h_plus: 1,
        },
        QuadField::Quadratic { d } if d < 0 => {
            let h = class_number_definite(disc);
            ClassData { field: k, h, fundamental_unit: None, unit_norm: None, h_plus: h }
        }
        QuadField::Quadratic { .. } => {
            let eps = fundamental_unit_of(k);
            let negative = eps.norm().is_negative();
            let h_plus = class_number_indefinite(disc);
            let h = if negative { h_plus } else { h_plus / 2 };
            debug_assert_eq!(eps.norm().abs(), BigRational::from_integer(1.into()));
            ClassData {
                field: k,
                h,
                fundamental_unit: Some(eps),
                unit_norm: Some(if negative { -1 } else { 1 }),
                h_plus,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;
    use crate::qfield::field::make_field;

    fn data(d: i64) -> ClassData {
        class_data(&make_field(d).unwrap()).unwrap()
    }

    #[test]
    fn spec_class_data() {
        let c = data(-5);
        assert_eq!((c.h, c.h_plus), (2, 2));
        let c = data(5);
        assert_eq!((c.h, c.unit_norm, c.h_plus), (1, Some(-1), 1));
        let c = data(3);
        assert_eq!((c.h, c.unit_norm, c.h_plus), (1, Some(1), 2));
        let c = data(7);
        assert_eq!((c.h, c.h_plus), (1, 2));
    }

    #[test]
    fn known_class_numbers() {
        for (d, h) in [(10, 2), (15, 2), (79, 3), (-1, 1), (-3, 1), (-15, 2), (-23, 3), (-31, 3), (-163, 1), (-14, 4)] {
            assert_eq!(data(d).h, h, "d = {d}");
        }
    }

    #[test]
    fn discriminant_bound_is_enforced() {
        let f = make_field(1_000_003).unwrap();
        assert_eq!(
            class_data(&f),
            Err(Error::DiscriminantTooLarge { disc: 4_000_012, bound: DEFAULT_DISCRIMINANT_BOUND })
        );
        assert!(class_data_with_bound(&make_field(-5).unwrap(), 19).is_err());
    }

    /// Genus theory: the 2-rank of the narrow class group is one less than
    /// the number of ramified primes.
    #[test]
    fn narrow_parity_matches_genus_theory() {
        for d in -100i64..=100 {
            let Ok(f) = make_field(d) else { continue };
            let disc = f.discriminant.unwrap();
            let ramified = factorize(disc.unsigned_abs()).len() as u32;
            let h_plus = data(d).h_plus;
            assert_eq!(h_plus % (1 << (ramified - 1)), 0, "d = {d}");
            assert_eq!(h_plus % 2 == 1, ramified == 1, "d = {d}");
        }
    }
}
