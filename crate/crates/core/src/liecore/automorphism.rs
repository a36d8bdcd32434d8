use std::collections::BTreeMap;

use super::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalMatrix};

/// Domain of one automorphism parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamDomain {
    Free,
    Nonzero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub domain: ParamDomain,
}

/// The automorphisms of a catalog algebra as a matrix-valued function of
/// named parameters `alpha1, alpha2, ...`.
///
/// Every family fixes `e1` modulo the derived algebra:
/// `Ψ(e1) = e1 + α1 e2 + α2 e3`. The remaining columns are
///
/// * `r3`: `Ψ(e2) = α4 e2`, `Ψ(e3) = α3 e2 + α4 e3`
/// * `r3(λ)`, `λ != 1`, and `r2 ⊕ C`: `Ψ(e2) = α3 e2`, `Ψ(e3) = α4 e3`
/// * `r3(1)`: `Ψ(e2) = α3 e2 + α5 e3`, `Ψ(e3) = α6 e2 + α4 e3`, with
///   `α3 α4 - α5 α6 != 0`
///
/// For `r3(-1)` the true group is larger (an extra component sends `e1` to
/// `-e1` and swaps `e2`, `e3`); this family only covers the identity
/// component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismFamily {
    catalog: Catalog,
    params: Vec<ParamSpec>,
}

const fn free(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        domain: ParamDomain::Free,
    }
}

const fn nonzero(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        domain: ParamDomain::Nonzero,
    }
}

impl AutomorphismFamily {
    pub fn new(catalog: Catalog) -> Self {
        let params = match &catalog {
            Catalog::R3 => vec![free("alpha1"), free("alpha2"), free("alpha3"), nonzero("alpha4")],
            c if c.is_lambda_one() => vec![
                free("alpha1"),
                free("alpha2"),
                free("alpha3"),
                free("alpha4"),
                free("alpha5"),
                free("alpha6"),
            ],
            _ => vec![free("alpha1"), free("alpha2"), nonzero("alpha3"), nonzero("alpha4")],
        };
        AutomorphismFamily { catalog, params }
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn params(&self) -> &[ParamSpec] {
        &self.params
    }

    /// Instantiates Ψ from values listed in parameter order.
    pub fn instantiate(&self, values: &[Rational]) -> Result<RationalMatrix> {
        if values.len() != self.params.len() {
            return Err(Error::BadParameter(format!(
                "expected {} automorphism parameters, got {}",
                self.params.len(),
                values.len()
            )));
        }
        for (spec, v) in self.params.iter().zip(values) {
            if spec.domain == ParamDomain::Nonzero && v.is_zero() {
                return Err(Error::BadParameter(format!("{} must be nonzero", spec.name)));
            }
        }
        let z = Rational::zero;
        let one = Rational::one;
        let a = |i: usize| values[i - 1].clone();
        let rows = match &self.catalog {
            Catalog::R3 => vec![vec![one(), z(), z()], vec![a(1), a(4), a(3)], vec![a(2), z(), a(4)]],
            c if c.is_lambda_one() => {
                if (a(3) * a(4) - a(5) * a(6)).is_zero() {
                    return Err(Error::BadParameter(
                        "alpha3*alpha4 - alpha5*alpha6 must be nonzero".into(),
                    ));
                }
                vec![vec![one(), z(), z()], vec![a(1), a(3), a(6)], vec![a(2), a(5), a(4)]]
            }
            _ => vec![vec![one(), z(), z()], vec![a(1), a(3), z()], vec![a(2), z(), a(4)]],
        };
        RationalMatrix::from_rows(rows)
    }

    /// Instantiates Ψ from named values; unnamed parameters default to 0 for
    /// free and 1 for nonzero parameters.
    pub fn instantiate_named(&self, values: &BTreeMap<String, Rational>) -> Result<RationalMatrix> {
        for key in values.keys() {
            if !self.params.iter().any(|p| p.name == key) {
                return Err(Error::BadParameter(format!("unknown automorphism parameter {key:?}")));
            }
        }
        let ordered: Vec<Rational> = self
            .params
            .iter()
            .map(|p| {
                values.get(p.name).cloned().unwrap_or_else(|| match p.domain {
                    ParamDomain::Free => Rational::zero(),
                    ParamDomain::Nonzero => Rational::one(),
                })
            })
            .collect();
        self.instantiate(&ordered)
    }

    /// Reads the parameters back from a matrix of this family's shape.
    pub fn parameters_of(&self, psi: &RationalMatrix) -> Option<Vec<Rational>> {
        if psi.rows() != 3 || psi.cols() != 3 {
            return None;
        }
        let e = |r, c| psi.get(r, c).clone();
        let values = match &self.catalog {
            Catalog::R3 => vec![e(1, 0), e(2, 0), e(1, 2), e(1, 1)],
            c if c.is_lambda_one() => vec![e(1, 0), e(2, 0), e(1, 1), e(2, 2), e(2, 1), e(1, 2)],
            _ => vec![e(1, 0), e(2, 0), e(1, 1), e(2, 2)],
        };
        match self.instantiate(&values) {
            Ok(m) if &m == psi => Some(values),
            _ => None,
        }
    }
}

/// The automorphism family of a catalog algebra.
pub fn automorphisms(catalog: &Catalog) -> AutomorphismFamily {
    AutomorphismFamily::new(catalog.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::basis_vector;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn catalogs() -> Vec<Catalog> {
        vec![
            Catalog::R3,
            Catalog::R2C,
            Catalog::R3Lambda(Rational::one()),
            Catalog::R3Lambda(Rational::new(1, 2).unwrap()),
            Catalog::R3Lambda(q(-1)),
        ]
    }

    #[test]
    fn r3_identity_instance() {
        let fam = automorphisms(&Catalog::R3);
        assert_eq!(
            fam.instantiate(&[q(0), q(0), q(0), q(1)]).unwrap(),
            RationalMatrix::identity(3)
        );
    }

    #[test]
    fn r3_sample_preserves_e1_e3_bracket() {
        let alg = Catalog::R3.algebra();
        let psi = automorphisms(&Catalog::R3)
            .instantiate(&[q(1), q(2), q(3), q(5)])
            .unwrap();
        let (e1, e3) = (basis_vector(3, 0), basis_vector(3, 2));
        let lhs = psi.mul_vec(&alg.bracket(&e1, &e3).unwrap()).unwrap();
        let rhs = alg
            .bracket(&psi.mul_vec(&e1).unwrap(), &psi.mul_vec(&e3).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(alg.is_automorphism(&psi));
    }

    #[test]
    fn nonzero_parameters_are_enforced() {
        let fam = automorphisms(&Catalog::R2C);
        assert!(matches!(
            fam.instantiate(&[q(0), q(0), q(1), q(0)]),
            Err(Error::BadParameter(_))
        ));
        let one = automorphisms(&Catalog::R3Lambda(Rational::one()));
        assert!(one.instantiate(&[q(0), q(0), q(1), q(1), q(1), q(1)]).is_err());
        assert!(one.instantiate(&[q(0), q(0), q(0), q(0), q(1), q(1)]).is_ok());
    }

    #[test]
    fn parameters_roundtrip() {
        for c in catalogs() {
            let fam = automorphisms(&c);
            let values: Vec<Rational> = (0..fam.params().len()).map(|i| q(i as i64 + 2)).collect();
            let psi = fam.instantiate(&values).unwrap();
            assert_eq!(fam.parameters_of(&psi), Some(values));
        }
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-6i64..7, 1i64..4).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]
        #[test]
        fn instances_are_automorphisms(values in proptest::collection::vec(small(), 6), other in proptest::collection::vec(small(), 6)) {
            for c in catalogs() {
                let fam = automorphisms(&c);
                let alg = c.algebra();
                let n = fam.params().len();
                let (Ok(p1), Ok(p2)) = (fam.instantiate(&values[..n]), fam.instantiate(&other[..n])) else {
                    continue;
                };
                prop_assert!(alg.is_automorphism(&p1));
                prop_assert!(alg.is_automorphism(&(&p1 * &p2)));
                prop_assert!(alg.is_automorphism(&p1.inverse().unwrap()));
            }
        }
    }
}
