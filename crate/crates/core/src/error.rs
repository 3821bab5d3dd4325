use std::fmt;

use thiserror::Error;

/// The hypothesis on a reduced algebra that a candidate structure violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValidationKind {
    Malformed,
    NotAssociative,
    BadUnit,
    BadIdempotents,
    BlockNotField,
    RadicalNotIdeal,
    RadicalNotNilpotent,
    NotDirectSum,
    SNotCommutative,
}

impl fmt::Display for ValidationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ValidationKind::Malformed => "Malformed",
            ValidationKind::NotAssociative => "NotAssociative",
            ValidationKind::BadUnit => "BadUnit",
            ValidationKind::BadIdempotents => "BadIdempotents",
            ValidationKind::BlockNotField => "BlockNotField",
            ValidationKind::RadicalNotIdeal => "RadicalNotIdeal",
            ValidationKind::RadicalNotNilpotent => "RadicalNotNilpotent",
            ValidationKind::NotDirectSum => "NotDirectSum",
            ValidationKind::SNotCommutative => "SNotCommutative",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field GF({p}^{k}) exceeds the table bound {bound}")]
    DegreeTooLarge { p: u32, k: u32, bound: u64 },
    #[error("modulus is not irreducible over GF({0})")]
    NotIrreducible(u32),
    #[error("element does not generate the multiplicative group")]
    BadGenerator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("cyclotomic order {order} is not divisible by {needed}")]
    BadOrder { order: u32, needed: u32 },

    #[error("{kind} at {path}: {detail}")]
    Validation { kind: ValidationKind, path: String, detail: String },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element does not lie in the radical")]
    NotInRadical,
    #[error("element does not lie in H")]
    NotInH,
    #[error("space of {size} vectors exceeds the enumeration bound {bound}")]
    SpaceTooLarge { size: u128, bound: u64 },
    #[error("group of order {size} exceeds the enumeration bound {bound}")]
    GroupTooLarge { size: u128, bound: u64 },
    #[error("matrix size n = {0} is invalid (need n >= 2)")]
    BadSize(usize),

    #[error("superclass reduction failed: {0}")]
    ReductionFailed(String),
    #[error("form is not regular in J_e*: {0}")]
    NotRegular(String),
    #[error("element is not in the stabilizer subgroup")]
    NotInStabilizer,
    #[error("induced character is not constant on superclass {0}")]
    NotConstantOnSuperclass(String),
    #[error("class functions are defined on different partitions")]
    PartitionMismatch,
    #[error("the standard generators do not generate the unit group")]
    GeneratorsIncomplete,
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
}

impl Error {
    pub(crate) fn validation(kind: ValidationKind, path: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Validation { kind, path: path.into(), detail: detail.into() }
    }

    /// Whether the error is an enumeration bound being exceeded.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::SpaceTooLarge { .. } | Error::GroupTooLarge { .. } | Error::DegreeTooLarge { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
