use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::affgebra::Affgebra;
use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalMatrix};
use crate::liecore::Catalog;

/// Letter of a family: `F` lives on `r3`, `H` and `K` on `r3(λ)` (`K` only
/// at `λ = 1`), `L` on `r2 ⊕ C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyClass {
    F,
    H,
    K,
    L,
}

impl FamilyClass {
    fn letter(self) -> char {
        match self {
            FamilyClass::F => 'F',
            FamilyClass::H => 'H',
            FamilyClass::K => 'K',
            FamilyClass::L => 'L',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyTag {
    pub class: FamilyClass,
    pub index: u8,
}

impl FamilyTag {
    pub const fn new(class: FamilyClass, index: u8) -> Self {
        FamilyTag { class, index }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.class.letter(), self.index)
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad family tag {s:?}"));
        let mut chars = s.chars();
        let class = match chars.next() {
            Some('F') => FamilyClass::F,
            Some('H') => FamilyClass::H,
            Some('K') => FamilyClass::K,
            Some('L') => FamilyClass::L,
            _ => return Err(bad()),
        };
        let index: u8 = chars.as_str().parse().map_err(|_| bad())?;
        let max = match class {
            FamilyClass::F => 4,
            FamilyClass::H => 5,
            FamilyClass::K => 3,
            FamilyClass::L => 24,
        };
        if index == 0 || index > max {
            return Err(bad());
        }
        Ok(FamilyTag { class, index })
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A residual parameter of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Beta1,
    Beta3,
    Beta4,
    Beta5,
    Beta6,
    Gamma1,
    Gamma3,
    N1,
    N2,
    N3,
}

impl Sym {
    pub const ALL: [Sym; 10] = [
        Sym::Beta1,
        Sym::Beta3,
        Sym::Beta4,
        Sym::Beta5,
        Sym::Beta6,
        Sym::Gamma1,
        Sym::Gamma3,
        Sym::N1,
        Sym::N2,
        Sym::N3,
    ];

    /// JSON key.
    pub fn key(self) -> &'static str {
        match self {
            Sym::Beta1 => "beta1",
            Sym::Beta3 => "beta3",
            Sym::Beta4 => "beta4",
            Sym::Beta5 => "beta5",
            Sym::Beta6 => "beta6",
            Sym::Gamma1 => "gamma1",
            Sym::Gamma3 => "gamma3",
            Sym::N1 => "N1",
            Sym::N2 => "N2",
            Sym::N3 => "N3",
        }
    }

    pub fn from_key(key: &str) -> Option<Sym> {
        Sym::ALL.into_iter().find(|s| s.key() == key)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sym::Beta1 => "β1",
            Sym::Beta3 => "β3",
            Sym::Beta4 => "β4",
            Sym::Beta5 => "β5",
            Sym::Beta6 => "β6",
            Sym::Gamma1 => "γ1",
            Sym::Gamma3 => "γ3",
            Sym::N1 => "N1",
            Sym::N2 => "N2",
            Sym::N3 => "N3",
        }
    }
}

/// Arithmetic over residual parameters and `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Sym(Sym),
    Lambda,
    Int(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

/// Values for the symbols of an [`Expr`].
pub struct Env<'a> {
    pub params: &'a BTreeMap<String, Rational>,
    pub lambda: Option<&'a Rational>,
}

impl Expr {
    pub fn eval(&self, env: &Env<'_>) -> Result<Rational> {
        let bin = |a: &Expr, b: &Expr| -> Result<(Rational, Rational)> { Ok((a.eval(env)?, b.eval(env)?)) };
        match self {
            Expr::Sym(s) => env
                .params
                .get(s.key())
                .cloned()
                .ok_or_else(|| Error::BadParameter(format!("missing parameter {}", s.key()))),
            Expr::Lambda => env
                .lambda
                .cloned()
                .ok_or_else(|| Error::BadParameter("expression needs lambda".into())),
            Expr::Int(n) => Ok(Rational::from(*n)),
            Expr::Add(a, b) => bin(a, b).map(|(x, y)| x + y),
            Expr::Sub(a, b) => bin(a, b).map(|(x, y)| x - y),
            Expr::Mul(a, b) => bin(a, b).map(|(x, y)| x * y),
            Expr::Div(a, b) => {
                let (x, y) = bin(a, b)?;
                x.checked_div(&y)
                    .ok_or_else(|| Error::BadParameter(format!("division by zero in {self}")))
            }
        }
    }

    pub fn as_sym(&self) -> Option<Sym> {
        match self {
            Expr::Sym(s) => Some(*s),
            _ => None,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Int(n) if *n < 0 => 1,
            _ => 3,
        }
    }

    fn write_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sym(s) => f.write_str(s.symbol()),
            Expr::Lambda => f.write_str("λ"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Add(a, b) => {
                a.write_operand(f, 1)?;
                f.write_str(" + ")?;
                b.write_operand(f, 1)
            }
            Expr::Sub(a, b) => {
                a.write_operand(f, 1)?;
                f.write_str(" - ")?;
                b.write_operand(f, 2)
            }
            // juxtaposition, so operands that are products need no parentheses
            Expr::Mul(a, b) => {
                a.write_operand(f, 2)?;
                b.write_operand(f, 3)
            }
            Expr::Div(a, b) => {
                a.write_operand(f, 2)?;
                f.write_str("/")?;
                b.write_operand(f, 3)
            }
        }
    }
}

/// A condition on residual parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    Eq(Expr, Expr),
    Ne(Expr, Expr),
    Gt(Expr, Expr),
    Ge(Expr, Expr),
    Any(Vec<Cond>),
    All(Vec<Cond>),
    /// Never satisfied: the family is absorbed by another one.
    Never(&'static str),
}

impl Cond {
    pub fn holds(&self, env: &Env<'_>) -> Result<bool> {
        Ok(match self {
            Cond::Eq(a, b) => a.eval(env)? == b.eval(env)?,
            Cond::Ne(a, b) => a.eval(env)? != b.eval(env)?,
            Cond::Gt(a, b) => a.eval(env)? > b.eval(env)?,
            Cond::Ge(a, b) => a.eval(env)? >= b.eval(env)?,
            Cond::Any(cs) => {
                for c in cs {
                    if c.holds(env)? {
                        return Ok(true);
                    }
                }
                false
            }
            Cond::All(cs) => {
                for c in cs {
                    if !c.holds(env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Cond::Never(_) => false,
        })
    }
}

impl fmt::Display for Cond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, cs: &[Cond], sep: &str| -> fmt::Result {
            for (k, c) in cs.iter().enumerate() {
                if k > 0 {
                    f.write_str(sep)?;
                }
                match c {
                    Cond::Any(_) | Cond::All(_) => write!(f, "({c})")?,
                    _ => write!(f, "{c}")?,
                }
            }
            Ok(())
        };
        match self {
            Cond::Eq(a, b) => write!(f, "{a} = {b}"),
            Cond::Ne(a, b) => write!(f, "{a} ≠ {b}"),
            Cond::Gt(a, b) => write!(f, "{a} > {b}"),
            Cond::Ge(a, b) => write!(f, "{a} ≥ {b}"),
            Cond::Any(cs) => join(f, cs, " or "),
            Cond::All(cs) => join(f, cs, " and "),
            Cond::Never(why) => write!(f, "empty ({why})"),
        }
    }
}

/// One family of normal forms.
///
/// `slots` are the printed coordinates: `(β1, β4|β5|β6, N1, N2, N3)` for F, H,
/// K and `(β1, β3, β5, γ1, γ2, γ3, N1, N2, N3)` for L. `side` holds the
/// conditions printed with the family, `domain` the extra ones under which
/// the form is its own normal form (outside them it is isomorphic to a
/// member of another family).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub tag: FamilyTag,
    pub slots: Vec<Expr>,
    pub side: Vec<Cond>,
    pub domain: Vec<Cond>,
}

impl FamilySpec {
    /// Residual parameters: the slots that are a bare symbol, in order.
    pub fn params(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        for s in self.slots.iter().filter_map(Expr::as_sym) {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// Position of the first slot holding `sym`.
    pub fn slot_of(&self, sym: Sym) -> Option<usize> {
        self.slots.iter().position(|e| e.as_sym() == Some(sym))
    }

    /// `F1(β1, β4, N1, 0, 0)`.
    pub fn signature(&self) -> String {
        let inner: Vec<String> = self.slots.iter().map(|e| e.to_string()).collect();
        format!("{}({})", self.tag, inner.join(", "))
    }

    fn check_keys(&self, params: &BTreeMap<String, Rational>) -> Result<()> {
        let expected: Vec<&str> = self.params().iter().map(|s| s.key()).collect();
        for key in params.keys() {
            if !expected.contains(&key.as_str()) {
                return Err(Error::BadParameter(format!("{} has no parameter {key:?}", self.tag)));
            }
        }
        for key in &expected {
            if !params.contains_key(*key) {
                return Err(Error::BadParameter(format!("{} needs parameter {key:?}", self.tag)));
            }
        }
        Ok(())
    }

    /// Conditions (side, then domain) that fail for `params`.
    pub fn failing(&self, params: &BTreeMap<String, Rational>, lambda: Option<&Rational>) -> Result<Vec<Cond>> {
        self.check_keys(params)?;
        let env = Env { params, lambda };
        let mut bad = Vec::new();
        for c in self.side.iter().chain(&self.domain) {
            if !c.holds(&env)? {
                bad.push(c.clone());
            }
        }
        Ok(bad)
    }

    pub fn slot_values(&self, params: &BTreeMap<String, Rational>, lambda: Option<&Rational>) -> Result<Vec<Rational>> {
        self.check_keys(params)?;
        let env = Env { params, lambda };
        self.slots.iter().map(|e| e.eval(&env)).collect()
    }

    /// The affgebra the printed tuple stands for. Conditions are not checked.
    pub fn representative(&self, catalog: &Catalog, params: &BTreeMap<String, Rational>) -> Result<Affgebra> {
        let v = self.slot_values(params, catalog.lambda())?;
        let z = Rational::zero;
        let (f, g, s) = match self.tag.class {
            FamilyClass::F | FamilyClass::H | FamilyClass::K => {
                let b1 = v[0].clone();
                let mut f = RationalMatrix::zeros(3, 3);
                f.set(0, 0, b1.clone());
                match self.tag.class {
                    FamilyClass::F => {
                        f.set(1, 1, v[1].clone());
                        f.set(2, 2, v[1].clone());
                    }
                    FamilyClass::H => f.set(2, 2, v[1].clone()),
                    _ => f.set(2, 1, v[1].clone()),
                }
                let g = RationalMatrix::identity(3).scale(&b1);
                (f, g, vec![v[2].clone(), v[3].clone(), v[4].clone()])
            }
            FamilyClass::L => {
                let f = RationalMatrix::from_rows(vec![
                    vec![v[0].clone(), z(), z()],
                    vec![z(), z(), z()],
                    vec![v[1].clone(), z(), v[2].clone()],
                ])?;
                let g = RationalMatrix::from_rows(vec![
                    vec![v[0].clone(), z(), z()],
                    vec![z(), v[0].clone(), z()],
                    vec![v[3].clone(), v[4].clone(), v[5].clone()],
                ])?;
                (f, g, vec![v[6].clone(), v[7].clone(), v[8].clone()])
            }
        };
        let x = Affgebra::from_parts(catalog.algebra(), f, g, s)?;
        if !x.is_verified() {
            return Err(Error::Internal(format!(
                "{} representative fails the pair identity",
                self.tag
            )));
        }
        Ok(x)
    }
}

fn sym(s: Sym) -> Expr {
    Expr::Sym(s)
}

fn int(n: i64) -> Expr {
    Expr::Int(n)
}

fn sub(a: Expr, b: Expr) -> Expr {
    Expr::Sub(Box::new(a), Box::new(b))
}

fn mul(a: Expr, b: Expr) -> Expr {
    Expr::Mul(Box::new(a), Box::new(b))
}

fn div(a: Expr, b: Expr) -> Expr {
    Expr::Div(Box::new(a), Box::new(b))
}

fn ne(a: Expr, b: Expr) -> Cond {
    Cond::Ne(a, b)
}

/// `β1(1 - β1)`
fn q_expr() -> Expr {
    mul(sym(Sym::Beta1), sub(int(1), sym(Sym::Beta1)))
}

fn spec(class: FamilyClass, index: u8, slots: Vec<Expr>, side: Vec<Cond>, domain: Vec<Cond>) -> FamilySpec {
    FamilySpec {
        tag: FamilyTag::new(class, index),
        slots,
        side,
        domain,
    }
}

fn f_families() -> Vec<FamilySpec> {
    use Sym::*;
    let p = mul(sub(sym(Beta1), sym(Beta4)), sub(int(1), sym(Beta1)));
    vec![
        spec(
            FamilyClass::F,
            1,
            vec![sym(Beta1), sym(Beta4), sym(N1), int(0), int(0)],
            vec![],
            vec![],
        ),
        spec(
            FamilyClass::F,
            2,
            vec![sym(Beta1), sym(Beta4), p, int(0), int(1)],
            vec![],
            vec![],
        ),
        spec(
            FamilyClass::F,
            3,
            vec![sym(Beta1), sym(Beta1), int(0), int(1), int(0)],
            vec![],
            vec![],
        ),
        spec(
            FamilyClass::F,
            4,
            vec![int(1), sym(Beta4), int(0), int(1), int(0)],
            vec![ne(sym(Beta4), int(1))],
            vec![],
        ),
    ]
}

fn h_families(lambda_one: bool) -> Vec<FamilySpec> {
    use Sym::*;
    let one_minus_lambda = || sub(int(1), Expr::Lambda);
    let p2 = div(mul(sub(sym(Beta1), sym(Beta5)), sub(int(1), sym(Beta1))), Expr::Lambda);
    // at λ = 1 the block diag(0, β5) is only determined up to the order of
    // its eigenvalues; the reduction keeps β5 ≥ 0, and swapping e2, e3 when
    // β5 = 0 turns H3 into H2
    let nonneg = || Cond::Ge(sym(Beta5), int(0));
    let pos = || Cond::Gt(sym(Beta5), int(0));
    let (d12, d34, d5) = if lambda_one {
        (
            vec![nonneg()],
            vec![pos()],
            vec![Cond::Never("isomorphic to H2 when λ = 1")],
        )
    } else {
        (vec![], vec![], vec![])
    };
    vec![
        spec(
            FamilyClass::H,
            1,
            vec![sym(Beta1), sym(Beta5), sym(N1), int(0), int(0)],
            vec![],
            d12.clone(),
        ),
        spec(
            FamilyClass::H,
            2,
            vec![sym(Beta1), sym(Beta5), q_expr(), int(1), int(0)],
            vec![],
            d12,
        ),
        spec(
            FamilyClass::H,
            3,
            vec![sym(Beta1), sym(Beta5), p2, int(0), int(1)],
            vec![],
            d34.clone(),
        ),
        spec(
            FamilyClass::H,
            4,
            vec![int(1), sym(Beta5), int(0), int(1), int(1)],
            vec![ne(sym(Beta5), one_minus_lambda())],
            d34,
        ),
        spec(
            FamilyClass::H,
            5,
            vec![
                sym(Beta1),
                mul(sym(Beta1), one_minus_lambda()),
                q_expr(),
                int(1),
                int(1),
            ],
            vec![],
            d5,
        ),
    ]
}

fn k_families() -> Vec<FamilySpec> {
    use Sym::*;
    vec![
        spec(
            FamilyClass::K,
            1,
            vec![sym(Beta1), int(1), sym(N1), int(0), int(0)],
            vec![],
            vec![],
        ),
        spec(
            FamilyClass::K,
            2,
            vec![sym(Beta1), int(1), q_expr(), int(1), int(0)],
            vec![],
            vec![],
        ),
        spec(
            FamilyClass::K,
            3,
            vec![int(1), int(1), int(0), int(0), int(1)],
            vec![],
            vec![],
        ),
    ]
}

fn l_families() -> Vec<FamilySpec> {
    use Sym::*;
    let b1 = || sym(Beta1);
    let b3 = || sym(Beta3);
    let b5 = || sym(Beta5);
    let g1 = || sym(Gamma1);
    let g3 = || sym(Gamma3);
    let n1 = || sym(N1);
    let n2 = || sym(N2);
    let n3 = || sym(N3);
    let i = int;
    let q = q_expr;
    let split = || vec![ne(b5(), b1())];
    let l = |k: u8, slots: Vec<Expr>, side: Vec<Cond>, domain: Vec<Cond>| spec(FamilyClass::L, k, slots, side, domain);
    vec![
        l(
            1,
            vec![b1(), i(0), b5(), i(0), i(1), g3(), n1(), i(0), i(0)],
            vec![],
            vec![],
        ),
        l(
            2,
            vec![b1(), i(0), b5(), i(0), i(1), g3(), n1(), i(1), i(0)],
            vec![],
            vec![Cond::Any(vec![
                ne(b5(), b1()),
                Cond::Eq(g3(), i(1)),
                Cond::Eq(g3(), b1()),
                Cond::Eq(n1(), q()),
            ])],
        ),
        l(
            3,
            vec![b1(), i(0), b5(), i(0), i(1), i(1), n1(), n2(), i(1)],
            vec![],
            split(),
        ),
        l(
            4,
            vec![b1(), i(0), b5(), i(0), i(0), g3(), n1(), i(0), i(0)],
            vec![],
            vec![],
        ),
        l(
            5,
            vec![b1(), i(0), b5(), i(1), i(0), g3(), n1(), i(0), i(0)],
            vec![],
            split(),
        ),
        l(
            6,
            vec![b1(), i(0), b5(), g1(), i(0), i(1), n1(), i(0), i(1)],
            vec![],
            split(),
        ),
        l(
            7,
            vec![b1(), i(0), b5(), i(0), i(0), g3(), q(), i(1), i(0)],
            vec![],
            vec![],
        ),
        l(
            8,
            vec![b1(), i(0), b5(), i(1), i(0), g3(), q(), i(1), i(0)],
            vec![],
            split(),
        ),
        l(
            9,
            vec![b1(), i(0), b5(), g1(), i(0), i(1), q(), i(1), i(1)],
            vec![],
            split(),
        ),
        l(
            10,
            vec![b1(), i(1), b1(), i(0), i(1), g3(), n1(), i(0), i(0)],
            vec![],
            vec![ne(g3(), i(1)), ne(g3(), b1()), ne(n1(), q())],
        ),
        l(
            11,
            vec![b1(), i(1), b1(), i(0), i(1), b1(), n1(), n2(), i(0)],
            vec![ne(b1(), i(1))],
            vec![],
        ),
        l(
            12,
            vec![b1(), i(1), b1(), i(0), i(1), g3(), q(), n2(), i(0)],
            vec![ne(g3(), i(1))],
            vec![ne(g3(), b1())],
        ),
        l(
            13,
            vec![b1(), i(1), b1(), i(0), i(1), i(1), n1(), n2(), i(0)],
            vec![],
            vec![],
        ),
        l(
            14,
            vec![b1(), b3(), b1(), i(0), i(1), i(1), q(), n2(), i(1)],
            vec![],
            vec![],
        ),
        l(
            15,
            vec![b1(), i(1), b1(), i(0), i(0), g3(), n1(), i(0), i(0)],
            vec![],
            vec![],
        ),
        l(
            16,
            vec![b1(), b3(), b1(), i(1), i(0), b1(), n1(), i(0), i(0)],
            vec![ne(b1(), i(1))],
            vec![],
        ),
        l(
            17,
            vec![b1(), b3(), b1(), i(1), i(0), i(1), n1(), i(0), i(0)],
            vec![],
            vec![ne(n1(), q()), ne(n1(), i(0))],
        ),
        l(
            18,
            vec![b1(), b3(), b1(), i(0), i(0), i(1), i(0), i(0), i(1)],
            vec![],
            vec![ne(b1(), i(0)), ne(b1(), i(1))],
        ),
        l(
            19,
            vec![b1(), i(1), b1(), i(0), i(0), g3(), q(), i(1), i(0)],
            vec![],
            vec![],
        ),
        l(
            20,
            vec![b1(), b3(), b1(), i(1), i(0), b1(), q(), i(1), i(0)],
            vec![ne(b1(), i(1))],
            vec![],
        ),
        l(
            21,
            vec![b1(), b3(), b1(), i(0), i(0), i(1), q(), i(0), i(1)],
            vec![],
            vec![],
        ),
        l(
            22,
            vec![b1(), b3(), b1(), i(0), i(0), i(1), q(), i(1), i(1)],
            vec![],
            vec![],
        ),
        l(
            23,
            vec![i(1), b3(), i(1), i(1), i(0), i(1), i(0), i(0), n3()],
            vec![],
            vec![],
        ),
        l(
            24,
            vec![i(1), b3(), i(1), i(1), i(0), i(1), i(0), i(1), n3()],
            vec![],
            vec![],
        ),
    ]
}

/// The normal-form families of a catalog algebra, in printed order.
pub fn families(catalog: &Catalog) -> Vec<FamilySpec> {
    match catalog {
        Catalog::R3 => f_families(),
        Catalog::R2C => l_families(),
        c if c.is_lambda_one() => {
            let mut out = h_families(true);
            out.extend(k_families());
            out
        }
        Catalog::R3Lambda(_) => h_families(false),
    }
}

pub fn family_spec(catalog: &Catalog, tag: FamilyTag) -> Option<FamilySpec> {
    families(catalog).into_iter().find(|s| s.tag == tag)
}

/// A family tag with the values of its residual parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalForm {
    pub family: FamilyTag,
    pub lambda: Option<Rational>,
    pub params: BTreeMap<String, Rational>,
}

impl CanonicalForm {
    /// Validates the tag against `λ`, the parameter names and all
    /// conditions.
    pub fn new(family: FamilyTag, lambda: Option<Rational>, params: BTreeMap<String, Rational>) -> Result<Self> {
        let form = CanonicalForm { family, lambda, params };
        let spec = form.spec()?;
        let bad = spec.failing(&form.params, form.lambda.as_ref())?;
        if !bad.is_empty() {
            let list: Vec<String> = bad.iter().map(|c| c.to_string()).collect();
            return Err(Error::BadParameter(format!("{} requires {}", family, list.join(", "))));
        }
        Ok(form)
    }

    pub fn catalog(&self) -> Result<Catalog> {
        match (self.family.class, &self.lambda) {
            (FamilyClass::F, None) => Ok(Catalog::R3),
            (FamilyClass::L, None) => Ok(Catalog::R2C),
            (FamilyClass::H, Some(l)) if !l.is_zero() => Ok(Catalog::R3Lambda(l.clone())),
            (FamilyClass::K, Some(l)) if l.is_one() => Ok(Catalog::R3Lambda(l.clone())),
            _ => Err(Error::BadParameter(format!(
                "family {} does not fit lambda {:?}",
                self.family,
                self.lambda.as_ref().map(|l| l.to_string())
            ))),
        }
    }

    pub fn spec(&self) -> Result<FamilySpec> {
        let catalog = self.catalog()?;
        family_spec(&catalog, self.family).ok_or_else(|| Error::BadParameter(format!("unknown family {}", self.family)))
    }

    pub fn representative(&self) -> Result<Affgebra> {
        self.spec()?.representative(&self.catalog()?, &self.params)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values = self
            .spec()
            .and_then(|s| s.slot_values(&self.params, self.lambda.as_ref()))
            .map_err(|_| fmt::Error)?;
        let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}({})", self.family, inner.join(", "))?;
        if let Some(l) = &self.lambda {
            write!(f, " at λ = {l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), q(*v))).collect()
    }

    #[test]
    fn tags_parse_and_print() {
        for s in ["F1", "H5", "K3", "L24"] {
            assert_eq!(s.parse::<FamilyTag>().unwrap().to_string(), s);
        }
        for s in ["F5", "K0", "L25", "X1", "L"] {
            assert!(s.parse::<FamilyTag>().is_err());
        }
    }

    #[test]
    fn family_counts() {
        assert_eq!(families(&Catalog::R3).len(), 4);
        assert_eq!(families(&Catalog::R3Lambda(Rational::new(1, 2).unwrap())).len(), 5);
        assert_eq!(families(&Catalog::R3Lambda(q(1))).len(), 8);
        assert_eq!(families(&Catalog::R2C).len(), 24);
    }

    #[test]
    fn signatures_print_like_the_theorems() {
        let f = families(&Catalog::R3);
        assert_eq!(f[1].signature(), "F2(β1, β4, (β1 - β4)(1 - β1), 0, 1)");
        assert_eq!(f[3].signature(), "F4(1, β4, 0, 1, 0)");
        assert_eq!(f[3].side[0].to_string(), "β4 ≠ 1");
        let h = families(&Catalog::R3Lambda(q(2)));
        assert_eq!(h[2].signature(), "H3(β1, β5, (β1 - β5)(1 - β1)/λ, 0, 1)");
        assert_eq!(h[4].signature(), "H5(β1, β1(1 - λ), β1(1 - β1), 1, 1)");
        let l = families(&Catalog::R2C);
        assert_eq!(l[13].signature(), "L14(β1, β3, β1, 0, 1, 1, β1(1 - β1), N2, 1)");
    }

    #[test]
    fn params_are_the_bare_slots() {
        let l = families(&Catalog::R2C);
        let keys = |k: usize| -> Vec<&str> { l[k].params().iter().map(|s| s.key()).collect() };
        assert_eq!(keys(10), ["beta1", "N1", "N2"]);
        assert_eq!(keys(22), ["beta3", "N3"]);
        assert_eq!(families(&Catalog::R3)[0].params(), [Sym::Beta1, Sym::Beta4, Sym::N1]);
    }

    #[test]
    fn every_representative_is_a_verified_affgebra() {
        let lambda_half = Catalog::R3Lambda(Rational::new(1, 2).unwrap());
        for c in [Catalog::R3, lambda_half, Catalog::R3Lambda(q(1)), Catalog::R2C] {
            for spec in families(&c) {
                let p: BTreeMap<String, Rational> = spec.params().iter().map(|s| (s.key().to_string(), q(3))).collect();
                let x = spec.representative(&c, &p).unwrap();
                assert!(x.check_axioms().is_ok(), "{}", spec.tag);
            }
        }
    }

    #[test]
    fn canonical_form_checks_conditions() {
        assert!(CanonicalForm::new("F4".parse().unwrap(), None, params(&[("beta4", 1)])).is_err());
        assert!(CanonicalForm::new("F4".parse().unwrap(), None, params(&[("beta4", 2)])).is_ok());
        assert!(CanonicalForm::new("F1".parse().unwrap(), None, params(&[("beta1", 2)])).is_err());
        assert!(CanonicalForm::new("H5".parse().unwrap(), Some(q(1)), params(&[("beta1", 2)])).is_err());
        assert!(CanonicalForm::new("K1".parse().unwrap(), Some(q(2)), params(&[("beta1", 2), ("N1", 0)])).is_err());
    }

    #[test]
    fn canonical_form_json() {
        let form = CanonicalForm::new(
            "F1".parse().unwrap(),
            None,
            params(&[("beta1", 2), ("beta4", 3), ("N1", 5)]),
        )
        .unwrap();
        let text = serde_json::to_string(&form).unwrap();
        assert_eq!(
            text,
            r#"{"family":"F1","lambda":null,"params":{"N1":"5","beta1":"2","beta4":"3"}}"#
        );
        assert_eq!(serde_json::from_str::<CanonicalForm>(&text).unwrap(), form);
        assert_eq!(form.to_string(), "F1(2, 3, 5, 0, 0)");
    }
}
