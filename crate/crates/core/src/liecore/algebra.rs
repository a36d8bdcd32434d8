use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exactnum::{is_zero_vector, Rational, RationalMatrix, Vector};

/// A finite-dimensional Lie algebra given by structure constants
/// `[e_i, e_j] = sum_k c^k_ij e_k`, stored densely.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<Rational>,
}

/// First failure found by [`LieAlgebra::validate`]. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Antisymmetry {
        i: usize,
        j: usize,
        k: usize,
    },
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { i, j, k } => {
                write!(f, "antisymmetry fails at ({i},{j}): c^{k}_{i}{j} != -c^{k}_{j}{i}")
            }
            Violation::Jacobi { i, j, k, residual } => {
                write!(f, "Jacobi identity fails on (e{i}, e{j}, e{k}), residual {residual:?}")
            }
        }
    }
}

impl LieAlgebra {
    /// `constants[(i * dim + j) * dim + k]` is `c^k_ij` with 0-based indices.
    pub fn new(dim: usize, constants: Vec<Rational>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: constants.len(),
            });
        }
        Ok(LieAlgebra { dim, constants })
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            constants: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Builds an algebra from brackets `[e_i, e_j]` for `i < j` (0-based),
    /// completing the table by antisymmetry.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut alg = Self::abelian(dim);
        for (i, j, v) in brackets {
            if *i >= dim || *j >= dim {
                return Err(Error::BadParameter(format!(
                    "basis index out of range in [e{}, e{}]",
                    i + 1,
                    j + 1
                )));
            }
            if i >= j {
                return Err(Error::BadParameter(format!(
                    "brackets must be listed with i < j, got [e{}, e{}]",
                    i + 1,
                    j + 1
                )));
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            for (k, c) in v.iter().enumerate() {
                alg.set_constant(*i, *j, k, c.clone());
                alg.set_constant(*j, *i, k, -c);
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    /// `c^k_ij`, 0-based.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.index(i, j, k)]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let idx = self.index(i, j, k);
        self.constants[idx] = value;
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.dim).map(|k| self.constant(i, j, k).clone()).collect()
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o += &(&w * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `x -> [a, x]`.
    pub fn ad(&self, a: &[Rational]) -> Result<RationalMatrix> {
        self.check_len(a)?;
        let mut m = RationalMatrix::zeros(self.dim, self.dim);
        for (i, ai) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        let v = m.get(k, j) + &(ai * c);
                        m.set(k, j, v);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.iter().all(Rational::is_zero)
    }

    /// Checks antisymmetry on every `(i, j, k)` and the Jacobi identity on
    /// every basis triple. Both are multilinear, so this is exhaustive.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.constant(i, j, k) != &-self.constant(j, i, k) {
                        return Err(Violation::Antisymmetry {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        let e = |i| crate::exactnum::basis_vector(n, i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let br = |a: &Vector, b: &Vector| self.bracket(a, b).expect("basis vectors have length dim");
                    let t1 = br(&x, &br(&y, &z));
                    let t2 = br(&y, &br(&z, &x));
                    let t3 = br(&z, &br(&x, &y));
                    let residual: Vector = (0..n).map(|m| &t1[m] + &t2[m] + &t3[m]).collect();
                    if !is_zero_vector(&residual) {
                        return Err(Violation::Jacobi {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `true` when `psi` is invertible and `psi[e_i, e_j] = [psi e_i, psi e_j]`
    /// for all basis pairs.
    pub fn is_automorphism(&self, psi: &RationalMatrix) -> bool {
        self.automorphism_defect(psi).is_none()
    }

    /// Explanation of why `psi` fails to be an automorphism, if it does.
    pub fn automorphism_defect(&self, psi: &RationalMatrix) -> Option<String> {
        let n = self.dim;
        if psi.rows() != n || psi.cols() != n {
            return Some(format!("expected a {n}x{n} matrix, got {}x{}", psi.rows(), psi.cols()));
        }
        if psi.determinant().map_or(true, |d| d.is_zero()) {
            return Some("matrix is singular".into());
        }
        let cols: Vec<Vector> = (0..n).map(|c| psi.column(c)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = psi.mul_vec(&self.bracket_basis(i, j)).expect("square matrix");
                let rhs = self.bracket(&cols[i], &cols[j]).expect("columns have length dim");
                if lhs != rhs {
                    return Some(format!("bracket of e{} and e{} is not preserved", i + 1, j + 1));
                }
            }
        }
        None
    }

    /// The catalog algebra this one literally equals, if any.
    pub fn identify(&self) -> Option<Catalog> {
        Catalog::identify(self)
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`, 0-based.
    pub fn brackets(&self) -> Vec<(usize, usize, Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if !is_zero_vector(&v) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim={}", self.dim)?;
        for (i, j, v) in self.brackets() {
            write!(f, ", [e{},e{}]={v:?}", i + 1, j + 1)?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    result: Vector,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRepr {
    dim: usize,
    brackets: Vec<BracketEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogRepr {
    catalog: String,
    #[serde(default)]
    lambda: Option<Rational>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AlgebraRepr {
    Table(TableRepr),
    Catalog(CatalogRepr),
}

impl Serialize for LieAlgebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TableRepr {
            dim: self.dim,
            brackets: self
                .brackets()
                .into_iter()
                .map(|(i, j, result)| BracketEntry {
                    i: i + 1,
                    j: j + 1,
                    result,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Accepts `{"dim", "brackets"}` with 1-based indices, or the shorthand
/// `{"catalog": "r3lambda", "lambda": "1/2"}`.
impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match AlgebraRepr::deserialize(deserializer)? {
            AlgebraRepr::Table(t) => {
                let mut brackets = Vec::with_capacity(t.brackets.len());
                for b in t.brackets {
                    if b.i == 0 || b.j == 0 {
                        return Err(D::Error::custom("bracket indices are 1-based"));
                    }
                    brackets.push((b.i - 1, b.j - 1, b.result));
                }
                LieAlgebra::from_brackets(t.dim, &brackets).map_err(D::Error::custom)
            }
            AlgebraRepr::Catalog(c) => Catalog::from_tag(&c.catalog, c.lambda)
                .map(|cat| cat.algebra())
                .map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{basis_vector, vector_from_i64};

    #[test]
    fn antisymmetry_violation_is_reported() {
        let mut alg = LieAlgebra::abelian(3);
        alg.set_constant(0, 1, 1, Rational::one());
        alg.set_constant(1, 0, 1, Rational::one());
        assert_eq!(alg.validate(), Err(Violation::Antisymmetry { i: 1, j: 2, k: 2 }));
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // [e1,e2]=e3, [e1,e3]=e2, [e2,e3]=e2
        let alg = LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vector_from_i64(&[0, 0, 1])),
                (0, 2, vector_from_i64(&[0, 1, 0])),
                (1, 2, vector_from_i64(&[0, 1, 0])),
            ],
        )
        .unwrap();
        match alg.validate() {
            Err(Violation::Jacobi { residual, .. }) => assert!(!is_zero_vector(&residual)),
            other => panic!("expected a Jacobi violation, got {other:?}"),
        }
        let x = basis_vector(3, 0);
        let y = basis_vector(3, 1);
        let z = basis_vector(3, 2);
        let br = |a: &Vector, b: &Vector| alg.bracket(a, b).unwrap();
        let sum: Vector = (0..3)
            .map(|m| &br(&x, &br(&y, &z))[m] + &br(&y, &br(&z, &x))[m] + &br(&z, &br(&x, &y))[m])
            .collect();
        assert_eq!(sum, vector_from_i64(&[0, 0, 1]));
    }

    #[test]
    fn so3_like_table_is_a_lie_algebra() {
        let alg = LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vector_from_i64(&[0, 0, 1])),
                (0, 2, vector_from_i64(&[0, 1, 0])),
                (1, 2, vector_from_i64(&[1, 0, 0])),
            ],
        )
        .unwrap();
        assert_eq!(alg.validate(), Ok(()));
    }

    #[test]
    fn bracket_checks_lengths() {
        let alg = LieAlgebra::abelian(3);
        assert!(matches!(
            alg.bracket(&vector_from_i64(&[1, 0]), &vector_from_i64(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(alg.ad(&vector_from_i64(&[1])).is_err());
    }

    #[test]
    fn json_roundtrip_uses_one_based_indices() {
        let alg = LieAlgebra::from_brackets(3, &[(0, 1, vector_from_i64(&[0, 1, 0]))]).unwrap();
        let json = serde_json::to_string(&alg).unwrap();
        assert_eq!(json, r#"{"dim":3,"brackets":[{"i":1,"j":2,"result":["0","1","0"]}]}"#);
        let back: LieAlgebra = serde_json::from_str(&json).unwrap();
        assert_eq!(back, alg);
        assert!(
            serde_json::from_str::<LieAlgebra>(r#"{"dim":3,"brackets":[{"i":2,"j":1,"result":["0","1","0"]}]}"#)
                .is_err()
        );
        let cat: LieAlgebra = serde_json::from_str(r#"{"catalog":"r3lambda","lambda":"1/2"}"#).unwrap();
        assert_eq!(cat.identify(), Some(Catalog::R3Lambda(Rational::new(1, 2).unwrap())));
    }
}
