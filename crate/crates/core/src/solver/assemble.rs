//! Pieces shared by the solving modes: auxiliary places, local-degree claims, generators.

use num_traits::Zero;

use crate::arith::{gcd_u64, primes};
use crate::cyclic::{automorphism_order, CyclicExtension};
use crate::error::{Error, Result};
use crate::field::{root_of_unity_order, Field, NFElement};
use crate::kummer::{binomial_irreducible, KummerTower};
use crate::local::local_binomial_irreducible;
use crate::places::{split_prime, Place};
use crate::real::sign_at_root;

use super::certificate::{Claim, GeneratorRecord, Restriction};

/// Search limits and the seed for randomized steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub seed: u64,
    pub norm_height: u64,
    pub twist_height: u64,
    /// Rational prime for the auxiliary place, instead of the smallest admissible one.
    pub aux_prime: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { seed: 0, norm_height: 10_000, twist_height: 10_000, aux_prime: None }
    }
}

/// Sign of `x` under the real embedding `w`.
pub fn real_sign(k: &Field, w: &Place, x: &NFElement) -> i32 {
    match w {
        Place::Real { interval, .. } => sign_at_root(k.poly(), interval, &x.to_poly()),
        Place::Finite { .. } => panic!("real_sign needs a real place"),
    }
}

/// First place over the smallest prime not dividing `disc(f) * m`; `x^m - q` has full
/// local degree there, which forces global irreducibility when `S` has no finite place.
pub fn auxiliary_place(k: &Field, m: u64) -> Result<Place> {
    let disc = k.discriminant();
    for q in primes() {
        if m.is_multiple_of(q) || (disc % q).is_zero() {
            continue;
        }
        if let Ok(places) = split_prime(k, q) {
            if let Some(p) = places.into_iter().next() {
                return Ok(p);
            }
        }
    }
    unreachable!("infinitely many primes")
}

/// `[K_w(b^(1/m)) : K_w]` is as large as possible at `w`.
pub fn full_local_degree_at(k: &Field, w: &Place, b: &NFElement, m: u64) -> Result<bool> {
    match w {
        Place::Finite { .. } => local_binomial_irreducible(k, w, b, m),
        Place::Real { .. } => Ok(gcd_u64(2, m) == 1 || real_sign(k, w, b) < 0),
    }
}

/// Claims common to every mode: the root of unity, the degree of `L`, global and local irreducibility.
pub fn tower_claims(
    tower: &KummerTower,
    zeta: &NFElement,
    places: &[Place],
    aux: Option<&Place>,
) -> Result<Vec<Claim>> {
    let k = &tower.base;
    let m = tower.exponent;
    let mut out = vec![
        Claim::new(
            format!("zeta is a primitive {m}-th root of unity"),
            "root_of_unity_order",
            root_of_unity_order(zeta, m) == Some(m),
        ),
        Claim::new(
            format!("[L:Q] = {} * {m}", k.degree()),
            "degree",
            tower.field.degree() == k.degree() * m as usize && tower.verify(),
        ),
        Claim::new(
            format!("x^{m} - B is irreducible over K"),
            "binomial_irreducible",
            binomial_irreducible(&tower.radicand, m)?.irreducible,
        ),
    ];
    for w in places.iter().chain(aux) {
        let checker = if w.is_real() { "real_sign" } else { "local_binomial_irreducible" };
        out.push(Claim::new(
            format!("full local degree at {}", w.label()),
            checker,
            full_local_degree_at(k, w, &tower.radicand, m)?,
        ));
    }
    Ok(out)
}

/// Record an automorphism of `L` given by the image of its generator, with its checks.
pub fn make_generator(
    tower: &KummerTower,
    e: &CyclicExtension,
    name: &str,
    image: NFElement,
    restricts_to: Restriction,
    expected_order: usize,
) -> Result<(GeneratorRecord, Vec<Claim>)> {
    let order = automorphism_order(&tower.field, &image).map_err(|_| Error::IrreducibilityLost)?;
    let target = match restricts_to {
        Restriction::Sigma => tower.push(e.sigma()),
        Restriction::Identity => tower.theta_image.clone(),
    };
    let restricted = tower.theta_image.eval_at(&image) == target;
    let claims = vec![
        Claim::new(format!("{name} is an automorphism of L"), "root_of_defining_polynomial", true),
        Claim::new(format!("{name} restricts to {restricts_to:?} on K"), "restriction", restricted),
        Claim::new(format!("{name} has order {expected_order}"), "order", order == expected_order),
    ];
    let rec = GeneratorRecord { name: name.into(), image: image.to_json(), restricts_to, order: order as u64 };
    Ok((rec, claims))
}
