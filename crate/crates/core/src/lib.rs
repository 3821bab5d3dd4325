//! Supercharacter theories for unit groups of reduced algebras over finite
//! fields, with the triangular group `T(n, q)` worked out in closed form.

pub mod algebra;
pub mod error;
pub mod linalg;
pub mod scalars;
pub mod supercharacter;
pub mod superclass;
pub mod table;
pub mod triangular;
pub mod verify;

pub use error::{Error, Result};
