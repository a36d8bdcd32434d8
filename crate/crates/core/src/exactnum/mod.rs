//! Exact rational scalars and dense rational matrices.

mod matrix;
mod rational;

pub use matrix::RationalMatrix;
pub use rational::Rational;

/// Coefficient vector in the basis `e1, ..., en`.
pub type Vector = Vec<Rational>;

/// `true` when every entry of `v` is zero.
pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// Standard basis vector `e_index` (0-based) of length `dim`.
pub fn basis_vector(dim: usize, index: usize) -> Vector {
    (0..dim)
        .map(|k| if k == index { Rational::one() } else { Rational::zero() })
        .collect()
}

pub fn zero_vector(dim: usize) -> Vector {
    vec![Rational::zero(); dim]
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Rational, a: &[Rational]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// Builds a vector from small integers.
pub fn vector_from_i64(values: &[i64]) -> Vector {
    values.iter().map(|&v| Rational::from(v)).collect()
}
