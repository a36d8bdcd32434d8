use std::collections::BTreeMap;

use rand::Rng;

use super::family::FamilySpec;
use super::IsoMove;
use crate::exactnum::Rational;
use crate::liecore::{automorphisms, Catalog};

/// Values residual parameters are drawn from. Small on purpose, so that the
/// special loci (`β1 = 1`, `N1 = β1(1 - β1)`, ...) are hit.
pub const SAMPLE_VALUES: [(i64, i64); 9] = [
    (-2, 1),
    (-1, 1),
    (-1, 2),
    (0, 1),
    (1, 3),
    (1, 2),
    (1, 1),
    (2, 1),
    (3, 1),
];

/// `n/d` with `n` in `-bound..=bound` and `d` in `1..=bound`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Rational::new(n, d).expect("nonzero denominator")
}

/// A random move for `catalog`: automorphism parameters and shift entries
/// are `random_rational(rng, bound)`, redrawn until Ψ is invertible.
pub fn random_move<R: Rng + ?Sized>(catalog: &Catalog, rng: &mut R, bound: i64) -> IsoMove {
    let fam = automorphisms(catalog);
    loop {
        let values: Vec<Rational> = (0..fam.params().len()).map(|_| random_rational(rng, bound)).collect();
        if let Ok(psi) = fam.instantiate(&values) {
            let a = (0..3).map(|_| random_rational(rng, bound)).collect();
            return IsoMove::new(psi, a);
        }
    }
}

/// Residual parameters for `spec` satisfying its side and domain
/// conditions, or `None` after `tries` rejected draws.
pub fn random_params<R: Rng + ?Sized>(
    spec: &FamilySpec,
    catalog: &Catalog,
    rng: &mut R,
    tries: usize,
) -> Option<BTreeMap<String, Rational>> {
    for _ in 0..tries {
        let params: BTreeMap<String, Rational> = spec
            .params()
            .iter()
            .map(|s| {
                let (n, d) = SAMPLE_VALUES[rng.gen_range(0..SAMPLE_VALUES.len())];
                (s.key().to_string(), Rational::new(n, d).expect("nonzero denominator"))
            })
            .collect();
        if matches!(spec.failing(&params, catalog.lambda()), Ok(bad) if bad.is_empty()) {
            return Some(params);
        }
    }
    None
}
