//! Lie algebras by structure constants, the catalog of the three solvable
//! algebras, and their automorphism families.

mod algebra;
mod automorphism;
mod catalog;

pub use algebra::{LieAlgebra, Violation};
pub use automorphism::{automorphisms, AutomorphismFamily, ParamDomain, ParamSpec};
pub use catalog::{catalog, Catalog};
