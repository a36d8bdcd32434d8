use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gauge::{catalog_of, gauge_reduce, jordan_split, JordanBranch};
use super::{apply_iso, IsoMove};
use crate::affgebra::Affgebra;
use crate::error::{Error, Result};
use crate::exactnum::{basis_vector, Rational, RationalMatrix};
use crate::liecore::{automorphisms, Catalog};

/// Quantities fixed by every isomorphism, read off the reduced gauge.
///
/// * `r3`: `β1, β4, N1`
/// * `r3(λ)`: `β1, β5, N1` (for `λ = 1` with a nilpotent block, `β1, N1`)
/// * `r2 ⊕ C`: `β1, β5, γ3, N1`
///
/// Different maps prove non-isomorphism; equal maps prove nothing.
pub fn invariants(x: &Affgebra) -> Result<BTreeMap<String, Rational>> {
    let catalog = catalog_of(x)?;
    let (y, nilpotent) = if catalog.is_lambda_one() {
        let (b, y, _) = jordan_split(x)?;
        (y, b == JordanBranch::Nilpotent)
    } else {
        (gauge_reduce(x)?.0, false)
    };
    let f = |r: usize, c: usize| y.f().get(r, c).clone();
    let mut out = BTreeMap::new();
    out.insert("beta1".to_string(), f(0, 0));
    out.insert("N1".to_string(), y.s()[0].clone());
    match catalog {
        Catalog::R3 => {
            out.insert("beta4".to_string(), f(1, 1));
        }
        Catalog::R3Lambda(_) if nilpotent => {}
        Catalog::R3Lambda(_) => {
            out.insert("beta5".to_string(), f(2, 2));
        }
        Catalog::R2C => {
            out.insert("beta5".to_string(), f(2, 2));
            out.insert("gamma3".to_string(), y.g().get(2, 2).clone());
        }
    }
    Ok(out)
}

/// Result of [`orbit_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum SearchOutcome {
    Found { r#move: IsoMove, examined: u64 },
    Exhausted { examined: u64 },
}

/// `0, 1, -1, 2, 1/2`
pub fn default_grid() -> Vec<Rational> {
    vec![
        Rational::zero(),
        Rational::one(),
        Rational::from(-1),
        Rational::from(2),
        Rational::new(1, 2).expect("nonzero"),
    ]
}

/// The shift completing Ψ to a move `x1 → x2`, if there is one.
fn solve_shift(x1: &Affgebra, x2: &Affgebra, psi: &RationalMatrix) -> Option<IsoMove> {
    let alg = x1.algebra();
    let n = alg.dim();
    if psi * x1.g() != x2.g() * psi {
        return None;
    }
    let inv = psi.inverse().ok()?;
    // ad_a = f1 - Ψ⁻¹ f2 Ψ   and   (I - g1) a = Ψ⁻¹ s2 - s1
    let target = x1.f().checked_sub(&(&(&inv * x2.f()) * psi)).ok()?;
    let back = inv.mul_vec(x2.s()).ok()?;
    let mut rows = vec![Vec::with_capacity(n); n * n + n];
    for i in 0..n {
        let e = basis_vector(n, i);
        let ad = alg.ad(&e).ok()?;
        for (k, v) in ad.entries().iter().enumerate() {
            rows[k].push(v.clone());
        }
        let ge = x1.g().mul_vec(&e).ok()?;
        for k in 0..n {
            rows[n * n + k].push(&e[k] - &ge[k]);
        }
    }
    let mut rhs: Vec<Rational> = target.entries().to_vec();
    rhs.extend((0..n).map(|k| &back[k] - &x1.s()[k]));
    let a = RationalMatrix::from_rows(rows).ok()?.solve(&rhs).ok()??;
    let m = IsoMove::new(psi.clone(), a);
    (apply_iso(x1, &m).ok()? == *x2).then_some(m)
}

/// Looks for a move `x1 → x2` whose automorphism parameters all lie in
/// `grid`, trying at most `budget` parameter tuples. The shift is solved
/// for exactly. `Exhausted` is evidence of non-isomorphism, not a proof.
///
/// Deterministic: the first hit in lexicographic order of grid indices is
/// returned, however the search is scheduled.
pub fn orbit_search(x1: &Affgebra, x2: &Affgebra, grid: &[Rational], budget: u64) -> Result<SearchOutcome> {
    let catalog: Catalog = catalog_of(x1)?;
    if catalog_of(x2)? != catalog {
        return Err(Error::BadParameter(
            "orbit_search needs both affgebras over the same algebra".into(),
        ));
    }
    if grid.is_empty() {
        return Ok(SearchOutcome::Exhausted { examined: 0 });
    }
    let fam = automorphisms(&catalog);
    let k = fam.params().len() as u32;
    let total = (grid.len() as u64).checked_pow(k).unwrap_or(u64::MAX).min(budget);
    let decode = |mut idx: u64| -> Vec<Rational> {
        let mut values = vec![Rational::zero(); k as usize];
        for slot in values.iter_mut().rev() {
            *slot = grid[(idx % grid.len() as u64) as usize].clone();
            idx /= grid.len() as u64;
        }
        values
    };
    let hit = (0..total).into_par_iter().find_map_first(|idx| {
        let psi = fam.instantiate(&decode(idx)).ok()?;
        solve_shift(x1, x2, &psi).map(|m| (idx, m))
    });
    Ok(match hit {
        Some((idx, m)) => SearchOutcome::Found {
            r#move: m,
            examined: idx + 1,
        },
        None => SearchOutcome::Exhausted { examined: total },
    })
}
