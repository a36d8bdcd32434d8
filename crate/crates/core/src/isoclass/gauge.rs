use serde::{Deserialize, Serialize};

use super::{apply_iso, IsoMove};
use crate::affgebra::Affgebra;
use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalMatrix};
use crate::liecore::Catalog;

/// Outcome of the eigenvalue step on `r3(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JordanBranch {
    /// Block `diag(0, β5)` with `β5 ≥ 0`.
    Diagonal,
    /// `f(e2) = e3`, `f(e3) = 0` on the block.
    Nilpotent,
}

/// Catalog algebra of `x`, after checking that its pair verifies.
pub(crate) fn catalog_of(x: &Affgebra) -> Result<Catalog> {
    let catalog = x.algebra().identify().ok_or(Error::NotCatalogAlgebra)?;
    if let Err(v) = x.verify_pair() {
        return Err(Error::UnverifiedPair(v.to_string()));
    }
    Ok(catalog)
}

fn shape_error(what: &str, x: &Affgebra) -> Error {
    Error::Internal(format!("{what}: f = {}, g = {}", x.f(), x.g()))
}

fn is_scalar_g(x: &Affgebra) -> bool {
    let b1 = x.f().get(0, 0);
    x.g() == &RationalMatrix::identity(3).scale(b1)
}

/// Moves `x` into the reduced gauge of its algebra.
///
/// * `r3`: `f = diag(β1, β4, β4)`
/// * `r3(λ)`, `λ != 1`: `f = diag(β1, 0, β5)`
/// * `r3(1)`: see [`jordan_split`]
/// * `r2 ⊕ C`: `f(e1) = β1 e1 + β3 e3`, `f(e2) = 0`, `f(e3) = β5 e3`
///
/// In every case but `r2 ⊕ C`, `g = β1 I`.
pub fn gauge_reduce(x: &Affgebra) -> Result<(Affgebra, IsoMove)> {
    let catalog = catalog_of(x)?;
    if catalog.is_lambda_one() {
        let (_, y, m) = jordan_split(x)?;
        return Ok((y, m));
    }
    let f = x.f();
    let e = |r: usize, c: usize| f.get(r, c).clone();
    let z = Rational::zero;
    let a = match &catalog {
        // a = β5 e1 + (β3 - β2) e2 - β3 e3
        Catalog::R3 => vec![e(1, 2), e(2, 0) - e(1, 0), -e(2, 0)],
        Catalog::R3Lambda(l) => vec![e(1, 1), -e(1, 0), -(e(2, 0) / l)],
        Catalog::R2C => vec![e(1, 1), -e(1, 0), z()],
    };
    let m = IsoMove::shift(a);
    let y = apply_iso(x, &m)?;
    let ok = match &catalog {
        Catalog::R3 => {
            let r = y.f();
            let b4 = r.get(1, 1).clone();
            is_scalar_g(&y) && r == &RationalMatrix::diagonal(&[r.get(0, 0).clone(), b4.clone(), b4])
        }
        Catalog::R3Lambda(_) => {
            let r = y.f();
            is_scalar_g(&y)
                && r.get(1, 1).is_zero()
                && r == &RationalMatrix::diagonal(&[r.get(0, 0).clone(), z(), r.get(2, 2).clone()])
        }
        Catalog::R2C => {
            let r = y.f();
            let g = y.g();
            let b1 = r.get(0, 0);
            let zero_f = [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 1)];
            let zero_g = [(0, 1), (0, 2), (1, 0), (1, 2)];
            zero_f.iter().all(|&(i, j)| r.get(i, j).is_zero())
                && zero_g.iter().all(|&(i, j)| g.get(i, j).is_zero())
                && g.get(0, 0) == b1
                && g.get(1, 1) == b1
        }
    };
    if !ok {
        return Err(shape_error("gauge reduction left an unexpected shape", &y));
    }
    Ok((y, m))
}

fn block(x: &Affgebra) -> [[Rational; 2]; 2] {
    let f = x.f();
    [
        [f.get(1, 1).clone(), f.get(1, 2).clone()],
        [f.get(2, 1).clone(), f.get(2, 2).clone()],
    ]
}

fn embed_block(p: &[[Rational; 2]; 2]) -> RationalMatrix {
    let z = Rational::zero;
    RationalMatrix::from_rows(vec![
        vec![Rational::one(), z(), z()],
        vec![z(), p[0][0].clone(), p[0][1].clone()],
        vec![z(), p[1][0].clone(), p[1][1].clone()],
    ])
    .expect("3x3")
}

fn kernel_vector(s: &[[Rational; 2]; 2]) -> [Rational; 2] {
    let m = RationalMatrix::from_rows(vec![s[0].to_vec(), s[1].to_vec()]).expect("2x2");
    let v = m.nullspace().into_iter().next().expect("singular block has a kernel");
    [v.get(0, 0).clone(), v.get(1, 0).clone()]
}

/// Gauge reduction on `r3(1)`, where `f` restricted to `span(e2, e3)` is an
/// arbitrary 2x2 block.
///
/// Kills the `e2`, `e3` components of `f(e1)`, shifts the block by its
/// smaller eigenvalue `μ` (via `a = μ e1`) and conjugates it into
/// `diag(0, β5)`, `β5 ≥ 0`, or into the nilpotent Jordan block.
pub fn jordan_split(x: &Affgebra) -> Result<(JordanBranch, Affgebra, IsoMove)> {
    let catalog = catalog_of(x)?;
    if !catalog.is_lambda_one() {
        return Err(Error::BadParameter(format!("jordan_split needs r3(1), got {catalog}")));
    }
    let b = block(x);
    let trace = &b[0][0] + &b[1][1];
    let diff = &b[0][0] - &b[1][1];
    let discriminant = &diff * &diff + Rational::from(4) * &b[0][1] * &b[1][0];
    let d = discriminant.sqrt_exact().ok_or_else(|| Error::FieldExtensionRequired {
        discriminant: discriminant.clone(),
    })?;
    let two = Rational::from(2);
    let mu = (&trace - &d) / &two;
    let f = x.f();
    let shift = IsoMove::shift(vec![mu.clone(), -f.get(1, 0).clone(), -f.get(2, 0).clone()]);
    let s = [[&b[0][0] - &mu, b[0][1].clone()], [b[1][0].clone(), &b[1][1] - &mu]];
    let z = Rational::zero;
    let one = Rational::one;
    let s_is_zero = s.iter().flatten().all(Rational::is_zero);
    // columns of P are the new basis of span(e2, e3); Ψ acts by P⁻¹
    let (branch, p) = if s_is_zero {
        (JordanBranch::Diagonal, [[one(), z()], [z(), one()]])
    } else if !d.is_zero() {
        let v0 = kernel_vector(&s);
        let v1 = kernel_vector(&[[&s[0][0] - &d, s[0][1].clone()], [s[1][0].clone(), &s[1][1] - &d]]);
        (
            JordanBranch::Diagonal,
            [[v0[0].clone(), v1[0].clone()], [v0[1].clone(), v1[1].clone()]],
        )
    } else {
        let u = if s[0][0].is_zero() && s[1][0].is_zero() {
            [z(), one()]
        } else {
            [one(), z()]
        };
        let w = [&s[0][0] * &u[0] + &s[0][1] * &u[1], &s[1][0] * &u[0] + &s[1][1] * &u[1]];
        (
            JordanBranch::Nilpotent,
            [[u[0].clone(), w[0].clone()], [u[1].clone(), w[1].clone()]],
        )
    };
    let conj = IsoMove::new(embed_block(&p).inverse()?, vec![z(), z(), z()]);
    let m = shift.then(&conj)?;
    let y = apply_iso(x, &m)?;
    let r = y.f();
    let rest_zero = r.get(1, 0).is_zero() && r.get(2, 0).is_zero() && r.get(0, 1).is_zero() && r.get(0, 2).is_zero();
    let block_ok = match branch {
        JordanBranch::Diagonal => {
            r.get(1, 1).is_zero() && r.get(1, 2).is_zero() && r.get(2, 1).is_zero() && !r.get(2, 2).is_negative()
        }
        JordanBranch::Nilpotent => {
            r.get(1, 1).is_zero() && r.get(1, 2).is_zero() && r.get(2, 2).is_zero() && r.get(2, 1).is_one()
        }
    };
    if !(rest_zero && block_ok && is_scalar_g(&y)) {
        return Err(shape_error("Jordan reduction left an unexpected shape", &y));
    }
    Ok((branch, y, m))
}
