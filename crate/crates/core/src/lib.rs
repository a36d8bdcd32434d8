//! Exact computation of Lie affgebra structures on the three-dimensional
//! non-nilpotent solvable Lie algebras `r3`, `r3(λ)` and `r2 ⊕ C`.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactnum`]: rationals and dense rational matrices.
//! * [`liecore`]: Lie algebras by structure constants, the catalog, and
//!   automorphism families.
//! * [`genderiv`]: pairs `(f, g)` with `f[a,b] = [fa,b] + [a,fb] - [a,gb]`.
//! * [`affgebra`]: the affine bracket `{a,b} = [a,b] + g(a) + f(b-a) + s`
//!   and its axiom checks.
//! * [`isoclass`]: the isomorphism action and canonical forms.
//! * [`cli`]: the command-line front end.

pub mod affgebra;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod genderiv;
pub mod isoclass;
pub mod liecore;

pub use error::{Error, Result};
pub use exactnum::{Rational, RationalMatrix, Vector};
