use std::fmt;

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::exactnum::{Rational, Vector};

/// The three solvable, non-nilpotent three-dimensional Lie algebras.
///
/// * `R3`: `[e1,e2] = e2`, `[e1,e3] = e2 + e3`
/// * `R3Lambda(λ)`: `[e1,e2] = e2`, `[e1,e3] = λ e3`, `λ != 0`
/// * `R2C`: `[e1,e2] = e2`, with `e3` central
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Catalog {
    R3,
    R3Lambda(Rational),
    R2C,
}

impl Catalog {
    /// Parses `r3`, `r3lambda` or `r2c`. `lambda` is required (and must be
    /// nonzero) for `r3lambda` and ignored otherwise.
    pub fn from_tag(tag: &str, lambda: Option<Rational>) -> Result<Self> {
        match tag {
            "r3" => Ok(Catalog::R3),
            "r2c" => Ok(Catalog::R2C),
            "r3lambda" => match lambda {
                None => Err(Error::BadParameter("r3lambda needs a value for lambda".into())),
                Some(l) if l.is_zero() => Err(Error::BadParameter("lambda must be nonzero".into())),
                Some(l) => Ok(Catalog::R3Lambda(l)),
            },
            other => Err(Error::BadParameter(format!(
                "unknown algebra {other:?}; expected r3, r3lambda or r2c"
            ))),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Catalog::R3 => "r3",
            Catalog::R3Lambda(_) => "r3lambda",
            Catalog::R2C => "r2c",
        }
    }

    pub fn lambda(&self) -> Option<&Rational> {
        match self {
            Catalog::R3Lambda(l) => Some(l),
            _ => None,
        }
    }

    /// `true` for `r3(1)`, where the automorphism group is larger.
    pub fn is_lambda_one(&self) -> bool {
        matches!(self, Catalog::R3Lambda(l) if l.is_one())
    }

    pub fn algebra(&self) -> LieAlgebra {
        let q = |v: [i64; 3]| -> Vector { v.iter().map(|&x| Rational::from(x)).collect() };
        let brackets = match self {
            Catalog::R3 => vec![(0, 1, q([0, 1, 0])), (0, 2, q([0, 1, 1]))],
            Catalog::R3Lambda(l) => vec![
                (0, 1, q([0, 1, 0])),
                (0, 2, vec![Rational::zero(), Rational::zero(), l.clone()]),
            ],
            Catalog::R2C => vec![(0, 1, q([0, 1, 0]))],
        };
        LieAlgebra::from_brackets(3, &brackets).expect("catalog brackets are well formed")
    }

    pub fn identify(alg: &LieAlgebra) -> Option<Catalog> {
        if alg.dim() != 3 {
            return None;
        }
        let lambda = alg.constant(0, 2, 2).clone();
        let candidates = [
            Catalog::R3,
            Catalog::R2C,
            Catalog::R3Lambda(if lambda.is_zero() { Rational::one() } else { lambda }),
        ];
        candidates.into_iter().find(|c| &c.algebra() == alg)
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Catalog::R3 => write!(f, "r3"),
            Catalog::R3Lambda(l) => write!(f, "r3({l})"),
            Catalog::R2C => write!(f, "r2+C"),
        }
    }
}

/// Catalog algebra by tag; see [`Catalog::from_tag`].
pub fn catalog(tag: &str, lambda: Option<Rational>) -> Result<LieAlgebra> {
    Catalog::from_tag(tag, lambda).map(|c| c.algebra())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{basis_vector, vector_from_i64};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn catalog_brackets() {
        let r3 = catalog("r3", None).unwrap();
        assert_eq!(
            r3.bracket(&basis_vector(3, 0), &basis_vector(3, 2)).unwrap(),
            vector_from_i64(&[0, 1, 1])
        );
        assert_eq!(r3.constant(0, 1, 1), &q(1, 1));
        assert_eq!(r3.constant(1, 0, 1), &q(-1, 1));
        let half = catalog("r3lambda", Some(q(1, 2))).unwrap();
        assert_eq!(
            half.bracket(&basis_vector(3, 0), &basis_vector(3, 2)).unwrap(),
            vec![q(0, 1), q(0, 1), q(1, 2)]
        );
        let one = catalog("r3lambda", Some(q(1, 1))).unwrap();
        assert_eq!(one.brackets().len(), 2);
        assert_eq!(one.constant(0, 2, 2), &q(1, 1));
        let r2c = catalog("r2c", None).unwrap();
        assert_eq!(r2c.brackets(), vec![(0, 1, vector_from_i64(&[0, 1, 0]))]);
    }

    #[test]
    fn lambda_rules() {
        assert!(matches!(
            catalog("r3lambda", Some(q(0, 1))),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(catalog("r3lambda", None), Err(Error::BadParameter(_))));
        assert!(matches!(catalog("so3", None), Err(Error::BadParameter(_))));
    }

    #[test]
    fn catalog_algebras_validate_and_identify() {
        for c in [
            Catalog::R3,
            Catalog::R2C,
            Catalog::R3Lambda(q(1, 1)),
            Catalog::R3Lambda(q(-3, 2)),
        ] {
            let alg = c.algebra();
            assert_eq!(alg.validate(), Ok(()));
            assert_eq!(alg.identify(), Some(c));
        }
        assert_eq!(LieAlgebra::abelian(3).identify(), None);
    }

    #[test]
    fn ad_examples() {
        let r3 = Catalog::R3.algebra();
        let ad = r3.ad(&basis_vector(3, 0)).unwrap();
        assert_eq!(ad.column(0), vector_from_i64(&[0, 0, 0]));
        assert_eq!(ad.column(1), vector_from_i64(&[0, 1, 0]));
        assert_eq!(ad.column(2), vector_from_i64(&[0, 1, 1]));
        assert!(r3.ad(&vector_from_i64(&[0, 0, 0])).unwrap().is_zero());
        let r2c = Catalog::R2C.algebra();
        let ad = r2c.ad(&basis_vector(3, 1)).unwrap();
        assert_eq!(ad.column(0), vector_from_i64(&[0, -1, 0]));
        assert_eq!(ad.column(1), vector_from_i64(&[0, 0, 0]));
        assert_eq!(ad.column(2), vector_from_i64(&[0, 0, 0]));
    }

    #[test]
    fn ad_is_a_derivation() {
        for c in [
            Catalog::R3,
            Catalog::R2C,
            Catalog::R3Lambda(q(1, 1)),
            Catalog::R3Lambda(q(2, 3)),
        ] {
            let alg = c.algebra();
            for a in 0..3 {
                let ad = alg.ad(&basis_vector(3, a)).unwrap();
                for i in 0..3 {
                    for j in 0..3 {
                        let (x, y) = (basis_vector(3, i), basis_vector(3, j));
                        let lhs = ad.mul_vec(&alg.bracket(&x, &y).unwrap()).unwrap();
                        let r1 = alg.bracket(&ad.mul_vec(&x).unwrap(), &y).unwrap();
                        let r2 = alg.bracket(&x, &ad.mul_vec(&y).unwrap()).unwrap();
                        let rhs: Vector = r1.iter().zip(&r2).map(|(u, v)| u + v).collect();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
