use thiserror::Error;

use crate::exactnum::Rational;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    /// The Jordan reduction needs an eigenvalue outside the rationals.
    #[error("field extension required: discriminant {discriminant} is not a square in Q")]
    FieldExtensionRequired { discriminant: Rational },

    /// The pair `(f, g)` fails the defining identity.
    #[error("unverified pair: {0}")]
    UnverifiedPair(String),

    #[error("algebra is not one of the catalog algebras r3, r3(lambda), r2+C")]
    NotCatalogAlgebra,

    #[error("parse error: {0}")]
    Parse(String),

    /// A case-tree guard failed. Seeing this means the canonicalizer is wrong.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
