//! Pairs of linear maps `(f, g)` with
//! `f([a,b]) = [f(a),b] + [a,f(b)] - [a,g(b)]`, their solution spaces, and
//! the explicit parametrized forms for the catalog algebras.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{basis_vector, Rational, RationalMatrix, Vector};
use crate::liecore::{Catalog, LieAlgebra};

/// A pair `(f, g)` of linear maps on a Lie algebra. Matrices are in the
/// column convention: column `m` is the image of `e_(m+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDerivPair {
    pub algebra: LieAlgebra,
    pub f: RationalMatrix,
    pub g: RationalMatrix,
}

/// A basis pair on which the defining identity fails. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairViolation {
    pub i: usize,
    pub j: usize,
    pub lhs: Vector,
    pub rhs: Vector,
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f([e{i},e{j}]) = {:?} but [f e{i},e{j}] + [e{i},f e{j}] - [e{i},g e{j}] = {:?}",
            self.lhs,
            self.rhs,
            i = self.i,
            j = self.j
        )
    }
}

impl GenDerivPair {
    pub fn new(algebra: LieAlgebra, f: RationalMatrix, g: RationalMatrix) -> Result<Self> {
        let n = algebra.dim();
        for m in [&f, &g] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if m.rows() != n { m.rows() } else { m.cols() },
                });
            }
        }
        Ok(GenDerivPair { algebra, f, g })
    }

    pub fn zero(algebra: LieAlgebra) -> Self {
        let n = algebra.dim();
        GenDerivPair {
            algebra,
            f: RationalMatrix::zeros(n, n),
            g: RationalMatrix::zeros(n, n),
        }
    }

    /// Checks the identity on every basis pair, which is a complete check
    /// since both sides are bilinear.
    pub fn verify(&self) -> std::result::Result<(), PairViolation> {
        let n = self.algebra.dim();
        let alg = &self.algebra;
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (basis_vector(n, i), basis_vector(n, j));
                let lhs = self.f.mul_vec(&alg.bracket_basis(i, j)).expect("square");
                let fi = self.f.column(i);
                let fj = self.f.column(j);
                let gj = self.g.column(j);
                let t1 = alg.bracket(&fi, &ej).expect("dim");
                let t2 = alg.bracket(&ei, &fj).expect("dim");
                let t3 = alg.bracket(&ei, &gj).expect("dim");
                let rhs: Vector = (0..n).map(|k| &t1[k] + &t2[k] - &t3[k]).collect();
                if lhs != rhs {
                    return Err(PairViolation {
                        i: i + 1,
                        j: j + 1,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        Ok(())
    }

    /// Coordinates in the `2 n^2` space: `f` row-major, then `g` row-major.
    pub fn coordinates(&self) -> Vector {
        self.f.entries().iter().chain(self.g.entries()).cloned().collect()
    }

    fn from_coordinates(algebra: &LieAlgebra, coords: &[Rational]) -> Self {
        let n = algebra.dim();
        let f = RationalMatrix::new(n, n, coords[..n * n].to_vec()).expect("n^2 entries");
        let g = RationalMatrix::new(n, n, coords[n * n..].to_vec()).expect("n^2 entries");
        GenDerivPair {
            algebra: algebra.clone(),
            f,
            g,
        }
    }
}

/// Checks a pair; see [`GenDerivPair::verify`].
pub fn verify_pair(p: &GenDerivPair) -> std::result::Result<(), PairViolation> {
    p.verify()
}

/// Coefficient matrix of the homogeneous system whose solutions are the
/// pairs, one row per ordered basis pair `(i, j)` and component `k`.
///
/// The identity is not symmetric under `a <-> b` (the `g` term sits in one
/// slot only), so restricting to `i < j` loses equations.
fn constraint_matrix(alg: &LieAlgebra, all_pairs: bool) -> RationalMatrix {
    let n = alg.dim();
    let f_idx = |r: usize, c: usize| r * n + c;
    let g_idx = |r: usize, c: usize| n * n + r * n + c;
    let mut rows = Vec::new();
    for i in 0..n {
        let start = if all_pairs { 0 } else { i + 1 };
        for j in start..n {
            for k in 0..n {
                let mut row = vec![Rational::zero(); 2 * n * n];
                for m in 0..n {
                    row[f_idx(k, m)] += alg.constant(i, j, m);
                }
                for p in 0..n {
                    row[f_idx(p, i)] -= alg.constant(p, j, k);
                    row[f_idx(p, j)] -= alg.constant(i, p, k);
                    row[g_idx(p, j)] += alg.constant(i, p, k);
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return RationalMatrix::zeros(0, 2 * n * n);
    }
    RationalMatrix::from_rows(rows).expect("rows have equal length")
}

/// A basis of the space of pairs on one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpace {
    pub algebra: LieAlgebra,
    pub basis: Vec<GenDerivPair>,
}

impl PairSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    fn coordinate_matrix(&self) -> RationalMatrix {
        let n = self.algebra.dim();
        if self.basis.is_empty() {
            return RationalMatrix::zeros(0, 2 * n * n);
        }
        RationalMatrix::from_rows(self.basis.iter().map(GenDerivPair::coordinates).collect()).expect("uniform")
    }

    pub fn rank(&self) -> usize {
        self.coordinate_matrix().rank()
    }

    /// `true` when `p` lies in the span of the basis.
    pub fn contains(&self, p: &GenDerivPair) -> bool {
        let mut rows = self.coordinate_matrix().to_rows();
        rows.push(p.coordinates());
        RationalMatrix::from_rows(rows).expect("uniform").rank() == self.rank()
    }

    /// Span equality, decided by comparing ranks of the stacked bases.
    pub fn same_span(&self, other: &PairSpace) -> bool {
        let r1 = self.rank();
        let r2 = other.rank();
        let mut rows = self.coordinate_matrix().to_rows();
        rows.extend(other.coordinate_matrix().to_rows());
        if rows.is_empty() {
            return true;
        }
        let joint = RationalMatrix::from_rows(rows).expect("uniform").rank();
        r1 == r2 && joint == r1
    }
}

/// Solves for all pairs on `alg`. Basis vectors come from the RREF
/// nullspace with unknowns ordered `f` row-major, then `g` row-major.
pub fn solve_pairs(alg: &LieAlgebra) -> PairSpace {
    solve_with(alg, true)
}

fn solve_with(alg: &LieAlgebra, all_pairs: bool) -> PairSpace {
    let basis = constraint_matrix(alg, all_pairs)
        .nullspace()
        .into_iter()
        .map(|v| GenDerivPair::from_coordinates(alg, &v.column(0)))
        .collect();
    PairSpace {
        algebra: alg.clone(),
        basis,
    }
}

/// Names of the parameters in the explicit form for `catalog`.
pub fn pair_param_names(catalog: &Catalog) -> &'static [&'static str] {
    match catalog {
        Catalog::R3 => &["beta1", "beta2", "beta3", "beta4", "beta5"],
        c if c.is_lambda_one() => &["beta1", "beta2", "beta3", "beta4", "beta5", "beta6", "beta7"],
        Catalog::R3Lambda(_) => &["beta1", "beta2", "beta3", "beta4", "beta5"],
        Catalog::R2C => &[
            "beta1", "beta2", "beta3", "beta4", "beta5", "gamma1", "gamma2", "gamma3",
        ],
    }
}

/// Builds the explicit pair for a catalog algebra from named parameters.
/// Missing parameters are zero; unknown names are rejected.
///
/// All forms share `f(e1) = β1 e1 + β2 e2 + β3 e3` and `g = β1 id` on
/// `span(e1, e2)`. Then
///
/// * `r3`: `f(e2) = β4 e2`, `f(e3) = β5 e2 + β4 e3`, `g(e3) = β1 e3`
/// * `r3(λ)`, `λ != 1`: `f(e2) = β4 e2`, `f(e3) = β5 e3`, `g(e3) = β1 e3`
/// * `r3(1)`: `f(e2) = β4 e2 + β6 e3`, `f(e3) = β7 e2 + β5 e3`
/// * `r2 ⊕ C`: as `λ != 1`, but `g(e1) = β1 e1 + γ1 e3`,
///   `g(e2) = β1 e2 + γ2 e3`, `g(e3) = γ3 e3`
pub fn pair_from_params(catalog: &Catalog, params: &BTreeMap<String, Rational>) -> Result<GenDerivPair> {
    let names = pair_param_names(catalog);
    for key in params.keys() {
        if !names.contains(&key.as_str()) {
            return Err(Error::BadParameter(format!(
                "parameter {key:?} is not used by {catalog}; expected a subset of {names:?}"
            )));
        }
    }
    let p = |name: &str| params.get(name).cloned().unwrap_or_else(Rational::zero);
    let z = Rational::zero;
    let (b1, b2, b3, b4, b5) = (p("beta1"), p("beta2"), p("beta3"), p("beta4"), p("beta5"));
    let (f, g) = match catalog {
        Catalog::R3 => (
            vec![vec![b1.clone(), z(), z()], vec![b2, b4.clone(), b5], vec![b3, z(), b4]],
            RationalMatrix::diagonal(&[b1.clone(), b1.clone(), b1]),
        ),
        c if c.is_lambda_one() => (
            vec![
                vec![b1.clone(), z(), z()],
                vec![b2, b4, p("beta7")],
                vec![b3, p("beta6"), b5],
            ],
            RationalMatrix::diagonal(&[b1.clone(), b1.clone(), b1]),
        ),
        Catalog::R3Lambda(_) => (
            vec![vec![b1.clone(), z(), z()], vec![b2, b4, z()], vec![b3, z(), b5]],
            RationalMatrix::diagonal(&[b1.clone(), b1.clone(), b1]),
        ),
        Catalog::R2C => (
            vec![vec![b1.clone(), z(), z()], vec![b2, b4, z()], vec![b3, z(), b5]],
            RationalMatrix::from_rows(vec![
                vec![b1.clone(), z(), z()],
                vec![z(), b1, z()],
                vec![p("gamma1"), p("gamma2"), p("gamma3")],
            ])?,
        ),
    };
    GenDerivPair::new(catalog.algebra(), RationalMatrix::from_rows(f)?, g)
}

/// The span of the explicit form, one basis pair per named parameter.
pub fn param_space(catalog: &Catalog) -> PairSpace {
    let basis = pair_param_names(catalog)
        .iter()
        .map(|name| {
            let params = BTreeMap::from([(name.to_string(), Rational::one())]);
            pair_from_params(catalog, &params).expect("known parameter name")
        })
        .collect();
    PairSpace {
        algebra: catalog.algebra(),
        basis,
    }
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    f: RationalMatrix,
    g: RationalMatrix,
}

#[derive(Serialize, Deserialize)]
struct PairSpaceRepr {
    algebra: LieAlgebra,
    dimension: usize,
    basis: Vec<PairRepr>,
}

impl Serialize for PairSpace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PairSpaceRepr {
            algebra: self.algebra.clone(),
            dimension: self.dimension(),
            basis: self
                .basis
                .iter()
                .map(|p| PairRepr {
                    f: p.f.clone(),
                    g: p.g.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PairSpace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PairSpaceRepr::deserialize(deserializer)?;
        if repr.dimension != repr.basis.len() {
            return Err(D::Error::custom("dimension does not match the number of basis pairs"));
        }
        let basis = repr
            .basis
            .into_iter()
            .map(|p| GenDerivPair::new(repr.algebra.clone(), p.f, p.g))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(PairSpace {
            algebra: repr.algebra,
            basis,
        })
    }
}
