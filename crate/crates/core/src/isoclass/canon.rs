use std::collections::BTreeMap;

use super::family::{family_spec, CanonicalForm, FamilyClass, FamilyTag};
use super::gauge::{catalog_of, gauge_reduce, jordan_split, JordanBranch};
use super::{apply_iso, IsoMove};
use crate::affgebra::Affgebra;
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::liecore::{automorphisms, Catalog};

fn r(n: i64) -> Rational {
    Rational::from(n)
}

/// `a / b`, where the enclosing case has already excluded `b = 0`.
fn quo(a: &Rational, b: &Rational, what: &str) -> Result<Rational> {
    a.checked_div(b)
        .ok_or_else(|| Error::Internal(format!("case guard failed: {what} vanishes")))
}

fn inv(a: &Rational, what: &str) -> Result<Rational> {
    quo(&Rational::one(), a, what)
}

fn inv_or_one(a: &Rational) -> Rational {
    a.recip().unwrap_or_else(Rational::one)
}

/// `β1(1 - β1)`
fn q_of(b1: &Rational) -> Rational {
    b1 * &(Rational::one() - b1)
}

/// Automorphism parameters of one step; unset ones take their neutral value.
#[derive(Default)]
struct Alphas([Option<Rational>; 6]);

impl Alphas {
    fn set(mut self, k: usize, v: Rational) -> Self {
        self.0[k - 1] = Some(v);
        self
    }
}

/// Data read off a reduced affgebra.
struct Slots(Vec<Rational>);

impl Slots {
    fn at(&self, k: usize) -> &Rational {
        &self.0[k]
    }
}

struct Walk {
    catalog: Catalog,
    x: Affgebra,
    chain: Vec<IsoMove>,
}

impl Walk {
    fn push(&mut self, m: IsoMove) -> Result<()> {
        if m.is_identity() {
            return Ok(());
        }
        self.x = apply_iso(&self.x, &m)?;
        self.chain.push(m);
        Ok(())
    }

    /// Shift that re-kills the components of `f(e1)` along the derived
    /// algebra without touching the rest of the reduced gauge.
    fn restore(&self, y: &Affgebra) -> IsoMove {
        let f = y.f();
        let e = |r: usize, c: usize| f.get(r, c).clone();
        let a = match &self.catalog {
            Catalog::R3 => vec![e(1, 2), e(2, 0) - e(1, 0), -e(2, 0)],
            Catalog::R3Lambda(l) => vec![Rational::zero(), -e(1, 0), -(e(2, 0) / l)],
            Catalog::R2C => vec![e(1, 1), -e(1, 0), Rational::zero()],
        };
        IsoMove::shift(a)
    }

    /// One move `(Ψ, c3 e3)` followed by the restoring shift.
    fn step(&mut self, alphas: Alphas, c3: Rational) -> Result<()> {
        let fam = automorphisms(&self.catalog);
        let neutral = |k: usize| -> Rational {
            let free_off_diagonal = matches!(self.catalog, Catalog::R3) && k == 3;
            if (k == 3 || k == 4) && !free_off_diagonal {
                Rational::one()
            } else {
                Rational::zero()
            }
        };
        let values: Vec<Rational> = (1..=fam.params().len())
            .map(|k| alphas.0[k - 1].clone().unwrap_or_else(|| neutral(k)))
            .collect();
        let psi = fam.instantiate(&values)?;
        let first = IsoMove::new(psi, vec![Rational::zero(), Rational::zero(), c3]);
        let mid = apply_iso(&self.x, &first)?;
        let m = first.then(&self.restore(&mid))?;
        self.push(m)
    }

    fn slots(&self) -> Slots {
        let (f, g, s) = (self.x.f(), self.x.g(), self.x.s());
        let e = |r: usize, c: usize| f.get(r, c).clone();
        let mut v = match &self.catalog {
            Catalog::R3 => vec![e(0, 0), e(1, 1)],
            Catalog::R2C => vec![
                e(0, 0),
                e(2, 0),
                e(2, 2),
                g.get(2, 0).clone(),
                g.get(2, 1).clone(),
                g.get(2, 2).clone(),
            ],
            // the K shape has f(e2) = β6 e3 and a zero (2, 2) entry
            Catalog::R3Lambda(_) if !e(2, 1).is_zero() => vec![e(0, 0), e(2, 1)],
            Catalog::R3Lambda(_) => vec![e(0, 0), e(2, 2)],
        };
        v.extend(s.iter().cloned());
        Slots(v)
    }

    fn finish(self, tag: FamilyTag) -> Result<(CanonicalForm, Vec<IsoMove>)> {
        let spec = family_spec(&self.catalog, tag)
            .ok_or_else(|| Error::Internal(format!("{tag} is not a family of {}", self.catalog)))?;
        let slots = self.slots();
        let params: BTreeMap<String, Rational> = spec
            .params()
            .into_iter()
            .map(|sym| {
                let k = spec.slot_of(sym).expect("params are slots");
                (sym.key().to_string(), slots.at(k).clone())
            })
            .collect();
        let lambda = self.catalog.lambda().cloned();
        let form = CanonicalForm::new(tag, lambda, params)
            .map_err(|e| Error::Internal(format!("reduction ended outside {tag}: {e}")))?;
        let rep = form.representative()?;
        if rep != self.x {
            return Err(Error::Internal(format!(
                "reduction ended at data that is not {form}: f = {}, g = {}, s = {:?}",
                self.x.f(),
                self.x.g(),
                self.x.s()
            )));
        }
        Ok((form, self.chain))
    }
}

/// Reduces `x` to its normal form.
///
/// Returns the form and the moves realizing it: replaying the chain from
/// `x` with [`apply_iso`] gives `form.representative()` exactly.
pub fn canonicalize(x: &Affgebra) -> Result<(CanonicalForm, Vec<IsoMove>)> {
    let catalog = catalog_of(x)?;
    let (branch, y, m) = if catalog.is_lambda_one() {
        let (b, y, m) = jordan_split(x)?;
        (Some(b), y, m)
    } else {
        let (y, m) = gauge_reduce(x)?;
        (None, y, m)
    };
    let mut walk = Walk {
        catalog: catalog.clone(),
        x: x.clone(),
        chain: Vec::new(),
    };
    walk.push(m)?;
    debug_assert_eq!(walk.x, y);
    let tag = match (&catalog, branch) {
        (Catalog::R3, _) => f_tree(&mut walk)?,
        (Catalog::R2C, _) => l_tree(&mut walk)?,
        (_, Some(JordanBranch::Nilpotent)) => k_tree(&mut walk)?,
        _ => h_tree(&mut walk)?,
    };
    walk.finish(tag)
}

fn tag(class: FamilyClass, index: u8) -> FamilyTag {
    FamilyTag::new(class, index)
}

fn f_tree(w: &mut Walk) -> Result<FamilyTag> {
    let d = w.slots();
    let (b1, b4, n1, n2, n3) = (d.at(0), d.at(1), d.at(2), d.at(3), d.at(4));
    let p = (b1 - b4) * (Rational::one() - b1);
    if n1 != &p {
        let den = &p - n1;
        let a2 = quo(n3, &den, "P - N1")?;
        let a1 = quo(&(n2 + &a2 * &p), &den, "P - N1")?;
        w.step(Alphas::default().set(1, a1).set(2, a2), r(0))?;
        return Ok(tag(FamilyClass::F, 1));
    }
    if !n3.is_zero() {
        let a4 = inv(n3, "N3")?;
        let a3 = -(&a4 * n2) / n3;
        w.step(Alphas::default().set(3, a3).set(4, a4), r(0))?;
        return Ok(tag(FamilyClass::F, 2));
    }
    if !n1.is_zero() {
        let a2 = -quo(n2, n1, "N1")?;
        w.step(Alphas::default().set(2, a2), r(0))?;
        return Ok(tag(FamilyClass::F, 1));
    }
    if n2.is_zero() {
        return Ok(tag(FamilyClass::F, 1));
    }
    let same = b1 == b4;
    w.step(Alphas::default().set(4, inv(n2, "N2")?), r(0))?;
    Ok(tag(FamilyClass::F, if same { 3 } else { 4 }))
}

fn h_tree(w: &mut Walk) -> Result<FamilyTag> {
    let lambda = w.catalog.lambda().cloned().expect("r3(λ)");
    let d = w.slots();
    let (b1, b5, n1, n2, n3) = (
        d.at(0).clone(),
        d.at(1).clone(),
        d.at(2).clone(),
        d.at(3).clone(),
        d.at(4).clone(),
    );
    let p1 = q_of(&b1);
    let h = |k| Ok(tag(FamilyClass::H, k));
    if lambda.is_one() && b5.is_zero() {
        // f vanishes on span(e2, e3) and all of GL2 acts there
        if n1 != p1 {
            let den = &p1 - &n1;
            let a1 = quo(&n2, &den, "P1 - N1")?;
            let a2 = quo(&n3, &den, "P1 - N1")?;
            w.step(Alphas::default().set(1, a1).set(2, a2), r(0))?;
            return h(1);
        }
        if n2.is_zero() && n3.is_zero() {
            return h(1);
        }
        let alphas = if !n2.is_zero() {
            Alphas::default().set(3, inv(&n2, "N2")?).set(5, -(&n3 / &n2))
        } else {
            Alphas::default()
                .set(3, r(0))
                .set(4, r(0))
                .set(5, r(1))
                .set(6, inv(&n3, "N3")?)
        };
        w.step(alphas, r(0))?;
        return h(2);
    }
    let p2 = quo(&((&b1 - &b5) * (Rational::one() - &b1)), &lambda, "λ")?;
    let a1 = if n1 != p1 {
        quo(&n2, &(&p1 - &n1), "P1 - N1")?
    } else {
        r(0)
    };
    let a2 = if n1 != p2 {
        quo(&n3, &(&p2 - &n1), "P2 - N1")?
    } else {
        r(0)
    };
    w.step(Alphas::default().set(1, a1).set(2, a2), r(0))?;
    let d = w.slots();
    let (n2, n3) = (d.at(3).clone(), d.at(4).clone());
    w.step(Alphas::default().set(3, inv_or_one(&n2)).set(4, inv_or_one(&n3)), r(0))?;
    match (n2.is_zero(), n3.is_zero()) {
        (true, true) => h(1),
        (false, true) => h(2),
        (true, false) => h(3),
        (false, false) => {
            if b1.is_one() && b5 != Rational::one() - &lambda {
                h(4)
            } else {
                h(5)
            }
        }
    }
}

fn k_tree(w: &mut Walk) -> Result<FamilyTag> {
    let b6 = w.slots().at(1).clone();
    if !b6.is_one() {
        w.step(Alphas::default().set(3, b6), r(0))?;
    }
    let d = w.slots();
    let (b1, n1, n2, n3) = (d.at(0).clone(), d.at(2).clone(), d.at(3).clone(), d.at(4).clone());
    let p = q_of(&b1);
    let one_minus_b1 = Rational::one() - &b1;
    let k = |i| Ok(tag(FamilyClass::K, i));
    if n1 != p {
        let den = &p - &n1;
        let a1 = quo(&n2, &den, "P1 - N1")?;
        let a2 = quo(&(&n3 + &a1 * &one_minus_b1), &den, "P1 - N1")?;
        w.step(Alphas::default().set(1, a1).set(2, a2), r(0))?;
        return k(1);
    }
    if !n2.is_zero() {
        let a = inv(&n2, "N2")?;
        let a5 = -(&a * &n3) / &n2;
        w.step(Alphas::default().set(3, a.clone()).set(4, a).set(5, a5), r(0))?;
        return k(2);
    }
    if n3.is_zero() {
        return k(1);
    }
    if !b1.is_one() {
        let a1 = -quo(&n3, &one_minus_b1, "1 - β1")?;
        w.step(Alphas::default().set(1, a1), r(0))?;
        return k(1);
    }
    let a = inv(&n3, "N3")?;
    w.step(Alphas::default().set(3, a.clone()).set(4, a), r(0))?;
    k(3)
}

/// Reduced `r2 ⊕ C` data, named as in the family tuples.
struct L {
    b1: Rational,
    b3: Rational,
    b5: Rational,
    g1: Rational,
    g2: Rational,
    g3: Rational,
    n1: Rational,
    n2: Rational,
    n3: Rational,
}

impl L {
    fn read(w: &Walk) -> L {
        let d = w.slots().0;
        let mut it = d.into_iter();
        let mut next = || it.next().expect("nine slots");
        L {
            b1: next(),
            b3: next(),
            b5: next(),
            g1: next(),
            g2: next(),
            g3: next(),
            n1: next(),
            n2: next(),
            n3: next(),
        }
    }

    fn q(&self) -> Rational {
        q_of(&self.b1)
    }
}

fn l_step(w: &mut Walk, a1: Rational, a2: Rational, a3: Rational, a4: Rational, c3: Rational) -> Result<()> {
    w.step(Alphas::default().set(1, a1).set(2, a2).set(3, a3).set(4, a4), c3)
}

fn scale(w: &mut Walk, a3: Rational, a4: Rational) -> Result<()> {
    l_step(w, r(0), r(0), a3, a4, r(0))
}

fn l_tree(w: &mut Walk) -> Result<FamilyTag> {
    let d = L::read(w);
    match (d.b1 != d.b5, !d.g2.is_zero()) {
        (true, true) => l_split_g2(w),
        (true, false) => l_split_no_g2(w),
        (false, true) => l_equal_g2(w),
        (false, false) => l_equal_no_g2(w),
    }
}

fn lt(k: u8) -> Result<FamilyTag> {
    Ok(tag(FamilyClass::L, k))
}

/// Kills β3 when `β1 != β5`.
fn kill_b3(w: &mut Walk) -> Result<()> {
    let d = L::read(w);
    if !d.b3.is_zero() {
        let a2 = -quo(&d.b3, &(&d.b1 - &d.b5), "β1 - β5")?;
        l_step(w, r(0), a2, r(1), r(1), r(0))?;
    }
    Ok(())
}

/// Normalizes `γ2 = 1` and then kills `γ1`.
fn normalize_g2(w: &mut Walk) -> Result<()> {
    let d = L::read(w);
    if !d.g2.is_one() {
        scale(w, r(1), inv(&d.g2, "γ2")?)?;
    }
    let d = L::read(w);
    if !d.g1.is_zero() {
        l_step(w, d.g1, r(0), r(1), r(1), r(0))?;
    }
    Ok(())
}

/// Kills `N3` through the central shift `C3 e3`; needs `γ3 != 1`.
fn kill_n3_by_c3(w: &mut Walk) -> Result<()> {
    let d = L::read(w);
    if !d.n3.is_zero() {
        let c3 = quo(&d.n3, &(&d.g3 - &Rational::one()), "γ3 - 1")?;
        l_step(w, r(0), r(0), r(1), r(1), c3)?;
    }
    Ok(())
}

fn l_split_g2(w: &mut Walk) -> Result<FamilyTag> {
    kill_b3(w)?;
    normalize_g2(w)?;
    // residual: α1 = α2 = 0, α4 = α3
    let d = L::read(w);
    if !d.g3.is_one() {
        kill_n3_by_c3(w)?;
    } else if !d.n3.is_zero() {
        let a = inv(&d.n3, "N3")?;
        scale(w, a.clone(), a)?;
        return lt(3);
    }
    let d = L::read(w);
    if d.n2.is_zero() {
        return lt(1);
    }
    let a = inv(&d.n2, "N2")?;
    scale(w, a.clone(), a)?;
    lt(2)
}

fn l_split_no_g2(w: &mut Walk) -> Result<FamilyTag> {
    kill_b3(w)?;
    // residual: α2 = 0
    let d = L::read(w);
    let q = d.q();
    if d.n1 != q && !d.n2.is_zero() {
        let a1 = quo(&d.n2, &(&q - &d.n1), "Q - N1")?;
        l_step(w, a1, r(0), r(1), r(1), r(0))?;
    }
    if !d.g3.is_one() {
        kill_n3_by_c3(w)?;
    }
    let d = L::read(w);
    let a4 = if !d.n3.is_zero() {
        inv(&d.n3, "N3")?
    } else {
        inv_or_one(&d.g1)
    };
    scale(w, inv_or_one(&d.n2), a4)?;
    let d = L::read(w);
    match (d.n3.is_zero(), d.g1.is_zero(), d.n2.is_zero()) {
        (false, _, true) => lt(6),
        (false, _, false) => lt(9),
        (true, true, true) => lt(4),
        (true, false, true) => lt(5),
        (true, true, false) => lt(7),
        (true, false, false) => lt(8),
    }
}

/// Residual move once `β1 = β5`, `γ2 = 1`, `γ1 = 0`.
fn b_step(w: &mut Walk, a2: Rational, a3: Rational, c3: Rational) -> Result<()> {
    let d = L::read(w);
    let a1 = &a2 * &(&d.b1 - &d.g3);
    l_step(w, a1, a2, a3.clone(), a3, c3)
}

fn l_equal_g2(w: &mut Walk) -> Result<FamilyTag> {
    normalize_g2(w)?;
    let d = L::read(w);
    let q = d.q();
    if !d.g3.is_one() {
        let pivot = (&d.b1 - &d.g3) * (&d.n1 - &q);
        if !pivot.is_zero() {
            if !d.n2.is_zero() {
                b_step(w, -(&d.n2 / &pivot), r(1), r(0))?;
            }
            kill_n3_by_c3_b(w)?;
            let d = L::read(w);
            if d.b3.is_zero() {
                return lt(1);
            }
            b_step(w, r(0), inv(&d.b3, "β3")?, r(0))?;
            return lt(10);
        }
        kill_n3_by_c3_b(w)?;
        let d = L::read(w);
        if d.b3.is_zero() {
            if d.n2.is_zero() {
                return lt(1);
            }
            b_step(w, r(0), inv(&d.n2, "N2")?, r(0))?;
            return lt(2);
        }
        b_step(w, r(0), inv(&d.b3, "β3")?, r(0))?;
        return lt(if d.g3 == d.b1 { 11 } else { 12 });
    }
    if d.n1 != q {
        if !d.n3.is_zero() {
            b_step(w, quo(&d.n3, &(&q - &d.n1), "Q - N1")?, r(1), r(0))?;
        }
    } else if !d.n3.is_zero() {
        b_step(w, r(0), inv(&d.n3, "N3")?, r(0))?;
        return lt(14);
    }
    let d = L::read(w);
    if !d.b3.is_zero() {
        b_step(w, r(0), inv(&d.b3, "β3")?, r(0))?;
        return lt(13);
    }
    if d.n2.is_zero() {
        return lt(1);
    }
    b_step(w, r(0), inv(&d.n2, "N2")?, r(0))?;
    lt(2)
}

fn kill_n3_by_c3_b(w: &mut Walk) -> Result<()> {
    let d = L::read(w);
    if !d.n3.is_zero() {
        let c3 = quo(&d.n3, &(&d.g3 - &Rational::one()), "γ3 - 1")?;
        b_step(w, r(0), r(1), c3)?;
    }
    Ok(())
}

fn l_equal_no_g2(w: &mut Walk) -> Result<FamilyTag> {
    let d = L::read(w);
    let q = d.q();
    if d.n1 != q && !d.n2.is_zero() {
        let a1 = quo(&d.n2, &(&q - &d.n1), "Q - N1")?;
        l_step(w, a1, r(0), r(1), r(1), r(0))?;
    }
    let d = L::read(w);
    if !d.g3.is_one() {
        if d.g3 != d.b1 && !d.g1.is_zero() {
            let a2 = quo(&d.g1, &(&d.g3 - &d.b1), "γ3 - β1")?;
            l_step(w, r(0), a2, r(1), r(1), r(0))?;
        }
        kill_n3_by_c3(w)?;
        let d = L::read(w);
        let a4 = if !d.g1.is_zero() {
            inv(&d.g1, "γ1")?
        } else {
            inv_or_one(&d.b3)
        };
        scale(w, inv_or_one(&d.n2), a4)?;
        let d = L::read(w);
        return match (d.g1.is_zero(), d.b3.is_zero(), d.n2.is_zero()) {
            (false, _, true) => lt(16),
            (false, _, false) => lt(20),
            (true, true, true) => lt(4),
            (true, true, false) => lt(7),
            (true, false, true) => lt(15),
            (true, false, false) => lt(19),
        };
    }
    if d.n1 != q {
        if !d.n1.is_zero() {
            if !d.n3.is_zero() {
                l_step(w, r(0), -quo(&d.n3, &d.n1, "N1")?, r(1), r(1), r(0))?;
            }
            let d = L::read(w);
            let a4 = if !d.g1.is_zero() {
                inv(&d.g1, "γ1")?
            } else {
                inv_or_one(&d.b3)
            };
            scale(w, r(1), a4)?;
            let d = L::read(w);
            return lt(if !d.g1.is_zero() {
                17
            } else if d.b3.is_zero() {
                4
            } else {
                15
            });
        }
        if !d.g1.is_zero() {
            let a2 = quo(&d.g1, &(Rational::one() - &d.b1), "1 - β1")?;
            l_step(w, r(0), a2, r(1), r(1), r(0))?;
        }
        let d = L::read(w);
        let a4 = if !d.n3.is_zero() {
            inv(&d.n3, "N3")?
        } else {
            inv_or_one(&d.b3)
        };
        scale(w, r(1), a4)?;
        let d = L::read(w);
        return lt(if !d.n3.is_zero() {
            18
        } else if d.b3.is_zero() {
            4
        } else {
            15
        });
    }
    if !d.b1.is_one() && !d.g1.is_zero() {
        let a2 = quo(&d.g1, &(Rational::one() - &d.b1), "1 - β1")?;
        l_step(w, r(0), a2, r(1), r(1), r(0))?;
    }
    let d = L::read(w);
    if !d.g1.is_zero() {
        scale(w, inv_or_one(&d.n2), inv(&d.g1, "γ1")?)?;
        let d = L::read(w);
        return lt(if d.n2.is_zero() { 23 } else { 24 });
    }
    let a4 = if !d.n3.is_zero() {
        inv(&d.n3, "N3")?
    } else {
        inv_or_one(&d.b3)
    };
    scale(w, inv_or_one(&d.n2), a4)?;
    let d = L::read(w);
    lt(match (d.n3.is_zero(), d.b3.is_zero(), d.n2.is_zero()) {
        (false, _, true) => 21,
        (false, _, false) => 22,
        (true, true, true) => 4,
        (true, true, false) => 7,
        (true, false, true) => 15,
        (true, false, false) => 19,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::vector_from_i64;
    use crate::genderiv::pair_from_params;
    use crate::isoclass::replay;

    fn build(c: &Catalog, values: &[(&str, i64)], s: [i64; 3]) -> Affgebra {
        let p: BTreeMap<String, Rational> = values.iter().map(|(k, v)| (k.to_string(), r(*v))).collect();
        Affgebra::new(pair_from_params(c, &p).unwrap(), vector_from_i64(&s)).unwrap()
    }

    fn params(form: &CanonicalForm) -> Vec<(String, String)> {
        form.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    }

    #[test]
    fn f1_example() {
        let x = build(&Catalog::R3, &[("beta1", 2), ("beta4", 3)], [5, 7, 11]);
        let (form, chain) = canonicalize(&x).unwrap();
        assert_eq!(form.family.to_string(), "F1");
        assert_eq!(form.to_string(), "F1(2, 3, 5, 0, 0)");
        assert_eq!(replay(&x, &chain).unwrap(), form.representative().unwrap());
    }

    #[test]
    fn f3_is_a_fixed_point() {
        let x = build(&Catalog::R3, &[("beta1", 4), ("beta4", 4)], [0, 1, 0]);
        let (form, chain) = canonicalize(&x).unwrap();
        assert_eq!(form.family.to_string(), "F3");
        assert!(chain.is_empty());
    }

    #[test]
    fn h4_example() {
        let c = Catalog::R3Lambda(Rational::new(1, 2).unwrap());
        let x = build(&c, &[("beta1", 1), ("beta5", 2)], [0, 3, 5]);
        let (form, _) = canonicalize(&x).unwrap();
        assert_eq!(form.to_string(), "H4(1, 2, 0, 1, 1) at λ = 1/2");
    }

    #[test]
    fn l1_example() {
        let x = build(
            &Catalog::R2C,
            &[("beta1", 2), ("beta5", 3), ("gamma2", 5), ("gamma3", 4)],
            [7, 0, 6],
        );
        let (form, chain) = canonicalize(&x).unwrap();
        assert_eq!(form.family.to_string(), "L1");
        assert_eq!(
            params(&form),
            [("N1", "7"), ("beta1", "2"), ("beta5", "3"), ("gamma3", "4")].map(|(a, b)| (a.to_string(), b.to_string()))
        );
        assert_eq!(replay(&x, &chain).unwrap(), form.representative().unwrap());
    }

    #[test]
    fn lambda_one_h3_with_zero_block_becomes_h2() {
        let c = Catalog::R3Lambda(r(1));
        let x = build(&c, &[("beta1", 3)], [-6, 0, 1]);
        let (form, _) = canonicalize(&x).unwrap();
        assert_eq!(form.to_string(), "H2(3, 0, -6, 1, 0) at λ = 1");
    }

    #[test]
    fn lambda_one_nilpotent_block_goes_to_k() {
        let c = Catalog::R3Lambda(r(1));
        let x = build(&c, &[("beta1", 1), ("beta6", 3)], [0, 0, 2]);
        let (form, chain) = canonicalize(&x).unwrap();
        assert_eq!(form.family.to_string(), "K3");
        assert_eq!(replay(&x, &chain).unwrap(), form.representative().unwrap());
    }

    #[test]
    fn irrational_spectrum_is_reported() {
        let c = Catalog::R3Lambda(r(1));
        let x = build(&c, &[("beta6", 1), ("beta7", -1)], [0, 0, 0]);
        assert!(matches!(canonicalize(&x), Err(Error::FieldExtensionRequired { .. })));
    }

    #[test]
    fn small_orbit_soundness_run() {
        use crate::isoclass::{families, random_move, random_params};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let catalogs = [
            Catalog::R3,
            Catalog::R3Lambda(Rational::new(1, 2).unwrap()),
            Catalog::R3Lambda(r(2)),
            Catalog::R3Lambda(r(1)),
            Catalog::R2C,
        ];
        for c in catalogs {
            for spec in families(&c) {
                for _ in 0..3 {
                    let Some(p) = random_params(&spec, &c, &mut rng, 500) else {
                        continue;
                    };
                    let form = CanonicalForm::new(spec.tag, c.lambda().cloned(), p).unwrap();
                    let rep = form.representative().unwrap();
                    for _ in 0..5 {
                        let m = random_move(&c, &mut rng, 4);
                        let x = apply_iso(&rep, &m).unwrap();
                        let (got, chain) = canonicalize(&x).unwrap_or_else(|e| panic!("{form}: {e}"));
                        assert_eq!(got, form, "moved by {m:?}");
                        assert_eq!(replay(&x, &chain).unwrap(), rep);
                    }
                }
            }
        }
    }
}
