//! Isomorphisms of affgebras and their normal forms.
//!
//! Two affgebras `X(G; g, f, s)` and `X(G; g', f', s')` are isomorphic iff
//! there are an automorphism Ψ of `G` and `a ∈ G` with
//!
//! ```text
//! g' = Ψ g Ψ⁻¹,   f' = Ψ (f - ad_a) Ψ⁻¹,   s' = Ψ (s + a - g(a)).
//! ```
//!
//! [`canonicalize`] walks each catalog algebra to a unique member of one of
//! the families `F1..F4` (`r3`), `H1..H5`, `K1..K3` (`r3(λ)`) and `L1..L24`
//! (`r2 ⊕ C`).

mod canon;
mod family;
mod gauge;
mod sample;
mod search;

use serde::{Deserialize, Serialize};

use crate::affgebra::Affgebra;
use crate::error::{Error, Result};
use crate::exactnum::{zero_vector, RationalMatrix, Vector};

pub use canon::canonicalize;
pub use family::{families, family_spec, CanonicalForm, Cond, Expr, FamilyClass, FamilySpec, FamilyTag, Sym};
pub use gauge::{gauge_reduce, jordan_split, JordanBranch};
pub use sample::{random_move, random_params, random_rational, SAMPLE_VALUES};
pub use search::{default_grid, invariants, orbit_search, SearchOutcome};

/// One application of the action: an automorphism Ψ and a shift `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoMove {
    pub psi: RationalMatrix,
    pub a: Vector,
}

impl IsoMove {
    pub fn new(psi: RationalMatrix, a: Vector) -> Self {
        IsoMove { psi, a }
    }

    pub fn identity(dim: usize) -> Self {
        IsoMove {
            psi: RationalMatrix::identity(dim),
            a: zero_vector(dim),
        }
    }

    pub fn shift(a: Vector) -> Self {
        IsoMove {
            psi: RationalMatrix::identity(a.len()),
            a,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.psi == RationalMatrix::identity(self.psi.rows()) && self.a.iter().all(|v| v.is_zero())
    }

    /// `self` followed by `next`, as a single move: `Ψ = Ψ2 Ψ1` and
    /// `a = a1 + Ψ1⁻¹ a2`. Valid because `Ψ1⁻¹ ad_a2 Ψ1 = ad_(Ψ1⁻¹ a2)`.
    pub fn then(&self, next: &IsoMove) -> Result<IsoMove> {
        let back = self.psi.inverse()?.mul_vec(&next.a)?;
        Ok(IsoMove {
            psi: next.psi.checked_mul(&self.psi)?,
            a: self.a.iter().zip(&back).map(|(x, y)| x + y).collect(),
        })
    }
}

/// Applies the move to `x`. Fails with `NotAutomorphism` unless Ψ is an
/// automorphism of the underlying algebra.
pub fn apply_iso(x: &Affgebra, m: &IsoMove) -> Result<Affgebra> {
    let alg = x.algebra();
    if m.a.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: m.a.len(),
        });
    }
    if let Some(why) = alg.automorphism_defect(&m.psi) {
        return Err(Error::NotAutomorphism(why));
    }
    let psi = &m.psi;
    let inv = psi.inverse()?;
    let g = &(psi * x.g()) * &inv;
    let shifted = x.f().checked_sub(&alg.ad(&m.a)?)?;
    let f = &(psi * &shifted) * &inv;
    let ga = x.g().mul_vec(&m.a)?;
    let inner: Vector = (0..alg.dim()).map(|k| &x.s()[k] + &m.a[k] - &ga[k]).collect();
    let s = psi.mul_vec(&inner)?;
    Affgebra::from_parts(alg.clone(), f, g, s)
}

/// Applies a chain of moves in order.
pub fn replay(x: &Affgebra, chain: &[IsoMove]) -> Result<Affgebra> {
    chain.iter().try_fold(x.clone(), |acc, m| apply_iso(&acc, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{basis_vector, vector_from_i64, Rational};
    use crate::genderiv::{pair_from_params, GenDerivPair};
    use crate::liecore::{automorphisms, Catalog};
    use std::collections::BTreeMap;

    fn r3_general() -> Affgebra {
        let params: BTreeMap<String, Rational> = ["beta1", "beta2", "beta3", "beta4", "beta5"]
            .iter()
            .zip([2, -1, 3, 5, 7])
            .map(|(k, v)| (k.to_string(), Rational::from(v)))
            .collect();
        Affgebra::new(
            pair_from_params(&Catalog::R3, &params).unwrap(),
            vector_from_i64(&[1, 2, 3]),
        )
        .unwrap()
    }

    #[test]
    fn identity_move_is_neutral() {
        let x = r3_general();
        assert_eq!(apply_iso(&x, &IsoMove::identity(3)).unwrap(), x);
    }

    #[test]
    fn pure_shift() {
        let x = r3_general();
        let e1 = basis_vector(3, 0);
        let y = apply_iso(&x, &IsoMove::shift(e1.clone())).unwrap();
        let expected_f = x.f().checked_sub(&x.algebra().ad(&e1).unwrap()).unwrap();
        assert_eq!(y.f(), &expected_f);
        let ge1 = x.g().mul_vec(&e1).unwrap();
        let expected_s: Vector = (0..3).map(|k| &x.s()[k] + &e1[k] - &ge1[k]).collect();
        assert_eq!(y.s(), &expected_s);
        assert_eq!(y.g(), x.g());
        assert!(y.is_verified());
    }

    #[test]
    fn reduced_r3_translation_moves_n() {
        // With reduced data and a = (C1, C2, C3), s' = s + (1 - β1) a.
        let params = BTreeMap::from([
            ("beta1".to_string(), Rational::from(3)),
            ("beta4".to_string(), Rational::from(5)),
        ]);
        let x = Affgebra::new(
            pair_from_params(&Catalog::R3, &params).unwrap(),
            vector_from_i64(&[1, 2, 3]),
        )
        .unwrap();
        let y = apply_iso(&x, &IsoMove::shift(vector_from_i64(&[2, 0, 0]))).unwrap();
        // N1' = C1 (1 - β1) + N1
        assert_eq!(y.s()[0], Rational::from(2 * (1 - 3) + 1));
    }

    #[test]
    fn rejects_non_automorphisms() {
        let x = r3_general();
        let swap = RationalMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(matches!(
            apply_iso(&x, &IsoMove::new(swap, zero_vector(3))),
            Err(Error::NotAutomorphism(_))
        ));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let x = r3_general();
        let fam = automorphisms(&Catalog::R3);
        let m1 = IsoMove::new(
            fam.instantiate(&vector_from_i64(&[1, -2, 3, 2])).unwrap(),
            vector_from_i64(&[1, 0, -1]),
        );
        let m2 = IsoMove::new(
            fam.instantiate(&vector_from_i64(&[0, 4, -1, -3])).unwrap(),
            vector_from_i64(&[2, 5, 1]),
        );
        let seq = apply_iso(&apply_iso(&x, &m1).unwrap(), &m2).unwrap();
        let once = apply_iso(&x, &m1.then(&m2).unwrap()).unwrap();
        assert_eq!(seq, once);
    }

    #[test]
    fn action_preserves_pairs() {
        for c in [Catalog::R2C, Catalog::R3Lambda(Rational::one())] {
            let fam = automorphisms(&c);
            let n = fam.params().len();
            let values: Vec<Rational> = (0..n).map(|i| Rational::from(i as i64 + 1)).collect();
            let psi = fam.instantiate(&values).unwrap();
            let x = Affgebra::new(GenDerivPair::zero(c.algebra()), vector_from_i64(&[1, 1, 1])).unwrap();
            let y = apply_iso(&x, &IsoMove::new(psi, vector_from_i64(&[3, -2, 7]))).unwrap();
            assert!(y.is_verified());
        }
    }
}
