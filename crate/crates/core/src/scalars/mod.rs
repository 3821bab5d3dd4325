//! Exact scalars: finite fields and the cyclotomic numbers that carry
//! character values.

mod characters;
mod cyclo;
mod field;

pub use characters::{additive_char, additive_exponent, mult_char, mult_exponent};
pub(crate) use cyclo::rational_string;
pub use cyclo::{is_positive, CycloNumber, CycloRing, Rational};
pub use field::{is_prime, Fe, Field, DEFAULT_FIELD_BOUND};
