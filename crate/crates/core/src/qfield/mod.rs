//! Exact arithmetic in `Q` and quadratic fields: elements, primes above
//! rational primes, valuations, units and class data.

mod class;
mod field;
pub mod forms;
mod ideal;
mod number;
mod unit;

pub use class::{class_data, class_data_with_bound, ClassData, DEFAULT_DISCRIMINANT_BOUND};
pub use field::{make_field, FieldDescriptor, FieldKind, QuadField, SplittingType};
pub use ideal::{class_order, primes_above, valuation, Ideal, PrimeSlot};
pub use number::AlgebraicNumber;
pub use unit::{fundamental_unit, torsion_generator};

pub use crate::arith::kronecker as kronecker_symbol;
