//! Lie affgebras `X(G; g, f, s)` on the standard affine model of a vector
//! space: heap `<a,b,c> = a - b + c`, action `(α,a,b) = (1-α)a + αb` and
//! bracket `{a,b} = [a,b] + g(a) + f(b-a) + s`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{basis_vector, zero_vector, Rational, RationalMatrix, Vector};
use crate::genderiv::{GenDerivPair, PairViolation};
use crate::liecore::LieAlgebra;

fn check_lengths(expected: usize, vs: &[&[Rational]]) -> Result<()> {
    for v in vs {
        if v.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: v.len(),
            });
        }
    }
    Ok(())
}

/// `<a, b, c> = a - b + c`.
pub fn heap(a: &[Rational], b: &[Rational], c: &[Rational]) -> Result<Vector> {
    check_lengths(a.len(), &[b, c])?;
    Ok((0..a.len()).map(|k| &a[k] - &b[k] + &c[k]).collect())
}

/// The five-fold heap `x1 - x2 + x3 - x4 + x5`.
pub fn heap5(x: [&[Rational]; 5]) -> Result<Vector> {
    let left = heap(x[0], x[1], x[2])?;
    heap(&left, x[3], x[4])
}

/// `(α, a, b) = (1 - α) a + α b`.
pub fn action(alpha: &Rational, a: &[Rational], b: &[Rational]) -> Result<Vector> {
    check_lengths(a.len(), &[b])?;
    let beta = Rational::one() - alpha;
    Ok(a.iter().zip(b).map(|(x, y)| &beta * x + alpha * y).collect())
}

/// The datum `(G; g, f, s)`.
///
/// Construction accepts pairs that fail the defining identity so that
/// negative cases can be expressed; `verified` records the outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affgebra {
    pair: GenDerivPair,
    s: Vector,
    verified: bool,
}

/// First failure found by [`Affgebra::check_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Antisymmetry {
        a: Vector,
        b: Vector,
        lhs: Vector,
        rhs: Vector,
    },
    Jacobi {
        a: Vector,
        b: Vector,
        c: Vector,
        residual: Vector,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Antisymmetry { a, b, lhs, rhs } => write!(
                f,
                "affine antisymmetry fails at a={a:?}, b={b:?}: <{{a,b}},{{a,a}},{{b,a}}> = {lhs:?}, {{b,b}} = {rhs:?}"
            ),
            AxiomViolation::Jacobi { a, b, c, residual } => {
                write!(
                    f,
                    "affine Jacobi identity fails at a={a:?}, b={b:?}, c={c:?}, residual {residual:?}"
                )
            }
        }
    }
}

impl Affgebra {
    pub fn new(pair: GenDerivPair, s: Vector) -> Result<Self> {
        check_lengths(pair.algebra.dim(), &[&s])?;
        let verified = pair.verify().is_ok();
        Ok(Affgebra { pair, s, verified })
    }

    pub fn from_parts(algebra: LieAlgebra, f: RationalMatrix, g: RationalMatrix, s: Vector) -> Result<Self> {
        Self::new(GenDerivPair::new(algebra, f, g)?, s)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.pair.algebra
    }

    pub fn pair(&self) -> &GenDerivPair {
        &self.pair
    }

    pub fn f(&self) -> &RationalMatrix {
        &self.pair.f
    }

    pub fn g(&self) -> &RationalMatrix {
        &self.pair.g
    }

    pub fn s(&self) -> &Vector {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.pair.algebra.dim()
    }

    /// Whether the pair satisfied the defining identity at construction.
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn verify_pair(&self) -> std::result::Result<(), PairViolation> {
        self.pair.verify()
    }

    /// `{a, b} = [a, b] + g(a) + f(b - a) + s`.
    pub fn aff_bracket(&self, a: &[Rational], b: &[Rational]) -> Result<Vector> {
        let n = self.dim();
        check_lengths(n, &[a, b])?;
        let br = self.algebra().bracket(a, b)?;
        let ga = self.g().mul_vec(a)?;
        let diff: Vector = b.iter().zip(a).map(|(x, y)| x - y).collect();
        let fd = self.f().mul_vec(&diff)?;
        Ok((0..n).map(|k| &br[k] + &ga[k] + &fd[k] + &self.s[k]).collect())
    }

    fn br(&self, a: &[Rational], b: &[Rational]) -> Vector {
        self.aff_bracket(a, b).expect("lengths checked by caller")
    }

    /// `<{a,b},{a,a},{b,a}>` and `{b,b}`.
    pub fn antisymmetry_sides(&self, a: &[Rational], b: &[Rational]) -> Result<(Vector, Vector)> {
        check_lengths(self.dim(), &[a, b])?;
        let lhs = heap(&self.br(a, b), &self.br(a, a), &self.br(b, a))?;
        Ok((lhs, self.br(b, b)))
    }

    /// `<{a,{b,c}}, {a,{a,a}}, {b,{c,a}}, {b,{b,b}}, {c,{a,b}}> - {c,{c,c}}`.
    pub fn jacobi_residual(&self, a: &[Rational], b: &[Rational], c: &[Rational]) -> Result<Vector> {
        check_lengths(self.dim(), &[a, b, c])?;
        let t1 = self.br(a, &self.br(b, c));
        let t2 = self.br(a, &self.br(a, a));
        let t3 = self.br(b, &self.br(c, a));
        let t4 = self.br(b, &self.br(b, b));
        let t5 = self.br(c, &self.br(a, b));
        let t6 = self.br(c, &self.br(c, c));
        let lhs = heap5([&t1, &t2, &t3, &t4, &t5])?;
        Ok(lhs.iter().zip(&t6).map(|(x, y)| x - y).collect())
    }

    /// Exact proof of affine antisymmetry and the affine Jacobi identity.
    ///
    /// Antisymmetry is affine in each argument, so `{0, e1, ..., en}` per
    /// argument suffices. The Jacobi expression contains `{a,{a,a}}`, which
    /// is quadratic in `a`; each argument therefore runs over
    /// `{0, e_i, 2e_i, e_i + e_j}`, a set on which a polynomial of degree at
    /// most 2 is determined by its values.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let n = self.dim();
        let mut affine_grid = vec![zero_vector(n)];
        affine_grid.extend((0..n).map(|i| basis_vector(n, i)));
        for a in &affine_grid {
            for b in &affine_grid {
                let (lhs, rhs) = self.antisymmetry_sides(a, b).expect("grid vectors have length dim");
                if lhs != rhs {
                    return Err(AxiomViolation::Antisymmetry {
                        a: a.clone(),
                        b: b.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        let grid = quadratic_grid(n);
        for a in &grid {
            for b in &grid {
                for c in &grid {
                    let residual = self.jacobi_residual(a, b, c).expect("grid vectors have length dim");
                    if residual.iter().any(|v| !v.is_zero()) {
                        return Err(AxiomViolation::Jacobi {
                            a: a.clone(),
                            b: b.clone(),
                            c: c.clone(),
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Structure constants of the tangent space at `e`:
    /// `[u, v] = {e+u, e+v} - {e+u, e} + {e, e} - {e, e+v}`.
    pub fn tangent_lie(&self, e: &[Rational]) -> Result<LieAlgebra> {
        let n = self.dim();
        check_lengths(n, &[e])?;
        let mut constants = Vec::with_capacity(n * n * n);
        let ee = self.br(e, e);
        for i in 0..n {
            let eu: Vector = e.iter().zip(basis_vector(n, i)).map(|(x, y)| x + y).collect();
            let eu_e = self.br(&eu, e);
            for j in 0..n {
                let ev: Vector = e.iter().zip(basis_vector(n, j)).map(|(x, y)| x + y).collect();
                let t1 = self.br(&eu, &ev);
                let t4 = self.br(e, &ev);
                constants.extend((0..n).map(|k| &t1[k] - &eu_e[k] + &ee[k] - &t4[k]));
            }
        }
        LieAlgebra::new(n, constants)
    }
}

/// `{0} ∪ {e_i} ∪ {2 e_i} ∪ {e_i + e_j : i < j}`.
fn quadratic_grid(n: usize) -> Vec<Vector> {
    let mut grid = vec![zero_vector(n)];
    for i in 0..n {
        grid.push(basis_vector(n, i));
        let mut twice = zero_vector(n);
        twice[i] = Rational::from(2);
        grid.push(twice);
        for j in i + 1..n {
            let mut sum = basis_vector(n, i);
            sum[j] = Rational::one();
            grid.push(sum);
        }
    }
    grid
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AffgebraRepr {
    algebra: LieAlgebra,
    f: RationalMatrix,
    g: RationalMatrix,
    s: Vector,
}

impl Serialize for Affgebra {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AffgebraRepr {
            algebra: self.algebra().clone(),
            f: self.f().clone(),
            g: self.g().clone(),
            s: self.s.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Affgebra {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = AffgebraRepr::deserialize(deserializer)?;
        Affgebra::from_parts(r.algebra, r.f, r.g, r.s).map_err(D::Error::custom)
    }
}
