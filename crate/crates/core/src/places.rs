//! Finite primes (via Dedekind factorization) and real embeddings of a number field.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, is_prime};
use crate::cyclic::{CyclicExtension, Subfield};
use crate::error::{Error, Result};
use crate::field::{Field, NumberField};
use crate::fp::FpPoly;
use crate::poly::Polynomial;
use crate::real::{sign_at_root, RootInterval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// The prime `(q, factor(theta))` with ramification `e` and residue degree `f`.
    Finite { q: u64, factor: FpPoly, e: usize, f: usize },
    /// The real embedding sending `theta` to the root isolated by `interval`.
    Real { interval: RootInterval, index: usize },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum PlaceJson {
    Finite { q: u64, factor: Vec<u64>, e: usize, f: usize },
    Real { interval: RootInterval, index: usize },
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Finite { q, factor, e, f } => {
                PlaceJson::Finite { q: *q, factor: factor.coeffs().to_vec(), e: *e, f: *f }.serialize(s)
            }
            Place::Real { interval, index } => {
                PlaceJson::Real { interval: interval.clone(), index: *index }.serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match PlaceJson::deserialize(d)? {
            PlaceJson::Finite { q, factor, e, f } => Place::Finite { q, factor: FpPoly::new(q, factor), e, f },
            PlaceJson::Real { interval, index } => Place::Real { interval, index },
        })
    }
}

impl Place {
    pub fn is_real(&self) -> bool {
        matches!(self, Place::Real { .. })
    }

    /// Residue characteristic, or `None` for a real place.
    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Finite { q, .. } => Some(*q),
            Place::Real { .. } => None,
        }
    }

    /// `e * f` for finite places, 1 for real ones.
    pub fn local_degree(&self) -> usize {
        match self {
            Place::Finite { e, f, .. } => e * f,
            Place::Real { .. } => 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Place::Finite { q, factor, e, f } => format!("P({q}; {factor:?}; e={e}, f={f})"),
            Place::Real { index, .. } => format!("real#{index}"),
        }
    }
}

/// The primes of `K` over `q`, one per irreducible factor of `f mod q`, in canonical order.
pub fn split_prime(k: &NumberField, q: u64) -> Result<Vec<Place>> {
    if !is_prime(q) {
        return Err(Error::Malformed(format!("{q} is not prime")));
    }
    let f = k.poly();
    let fq = FpPoly::from_poly(f, q).expect("integral defining polynomial");
    let facs = fq.factor();
    if !dedekind_ok(f, &fq, &facs) {
        return Err(Error::IndexPrimeUnsupported { q });
    }
    Ok(facs
        .into_iter()
        .map(|(g, e)| {
            let deg = g.degree();
            Place::Finite { q, factor: g, e, f: deg }
        })
        .collect())
}

/// Dedekind's criterion: `q` does not divide `[O_K : Z[theta]]`.
fn dedekind_ok(f: &Polynomial, fq: &FpPoly, facs: &[(FpPoly, usize)]) -> bool {
    let q = fq.modulus();
    let one = FpPoly::one(q);
    let g = facs.iter().fold(one.clone(), |acc, (g, _)| acc.mul(g));
    let h = fq.div_rem(&g).0;
    let lift = &g.to_poly() * &h.to_poly();
    let diff = &lift - f;
    let qr = crate::arith::int(q as i64);
    let fz = FpPoly::from_poly(&diff.scale(&qr.recip()), q).expect("lifts agree modulo q");
    let t = g.gcd(&h);
    fz.gcd(&t).degree() == 0
}

pub fn real_places(k: &NumberField) -> Vec<Place> {
    k.real_roots().iter().enumerate().map(|(index, iv)| Place::Real { interval: iv.clone(), index }).collect()
}

/// Image of a place under `sigma`, as an index into the matching place list.
fn sigma_image(e: &CyclicExtension, p: &Place, all: &[Place]) -> Option<usize> {
    let k = e.field();
    let s = e.sigma().to_poly();
    match p {
        Place::Finite { q, factor, .. } => {
            // sigma(P) = (q, g(sigma theta)) equals P_j iff g(sigma theta) vanishes mod P_j
            let sq = FpPoly::from_poly(&s, *q)?;
            all.iter().position(|w| match w {
                Place::Finite { factor: g, .. } => factor.compose_mod(&sq, g).is_zero(),
                _ => false,
            })
        }
        Place::Real { interval, .. } => {
            // the embedding theta -> s(alpha) lands in exactly one isolating interval
            all.iter().position(|w| match w {
                Place::Real { interval: iv, .. } => {
                    let lo = &s - &Polynomial::constant(iv.lo.clone());
                    let hi = &s - &Polynomial::constant(iv.hi.clone());
                    sign_at_root(k.poly(), interval, &lo) > 0 && sign_at_root(k.poly(), interval, &hi) < 0
                }
                _ => false,
            })
        }
    }
}

/// Partition `S` into classes of places with the same restriction to `k`.
pub fn restrict_place_set(e: &CyclicExtension, s: &[Place]) -> Result<Vec<Vec<Place>>> {
    let k = e.field();
    let mut classes: Vec<Vec<Place>> = Vec::new();
    for p in s {
        let all = match p {
            Place::Finite { q, .. } => split_prime(k, *q)?,
            Place::Real { .. } => real_places(k),
        };
        let orbit = place_orbit(e, p, &all)?;
        match classes.iter_mut().find(|c| orbit.contains(&c[0])) {
            Some(c) => c.push(p.clone()),
            None => classes.push(vec![p.clone()]),
        }
    }
    Ok(classes)
}

/// All conjugates of `p` under `Gal(K/k)`.
pub fn place_orbit(e: &CyclicExtension, p: &Place, all: &[Place]) -> Result<Vec<Place>> {
    let mut orbit = vec![p.clone()];
    let mut cur = p.clone();
    for _ in 1..e.order() {
        let j = sigma_image(e, &cur, all)
            .ok_or_else(|| Error::Malformed(format!("place {} not found among conjugates", cur.label())))?;
        cur = all[j].clone();
        if orbit.contains(&cur) {
            break;
        }
        orbit.push(cur.clone());
    }
    Ok(orbit)
}

/// Largest local degree a degree-`lk` extension can have at `v`.
pub fn local_degree_bound(v: &Place, lk: u64) -> u64 {
    match v {
        Place::Finite { .. } => lk,
        Place::Real { .. } => gcd_u64(2, lk),
    }
}

/// First place over `q` in canonical order.
pub fn first_place_over(k: &Field, q: u64) -> Result<Place> {
    split_prime(k, q)?.into_iter().next().ok_or_else(|| Error::Malformed(format!("no place over {q}")))
}

/// Check that a place given as data really is a place of `k`.
pub fn validate_place(k: &Field, p: &Place) -> Result<()> {
    let ok = match p {
        Place::Finite { q, .. } => split_prime(k, *q)?.contains(p),
        Place::Real { index, .. } => real_places(k).get(*index).is_some_and(|r| match (r, p) {
            (Place::Real { interval: a, .. }, Place::Real { interval: b, .. }) => {
                // any interval isolating the same root is acceptable
                a.lo.clone().max(b.lo.clone()) < a.hi.clone().min(b.hi.clone())
            }
            _ => false,
        }),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Malformed(format!("{} is not a place of the field", p.label())))
    }
}

/// The place of a subfield below a place `w` of `K`.
pub fn place_below(sub: &Subfield, w: &Place) -> Result<Place> {
    let small = sub.ext.field();
    let big_poly = sub.embedding.field().poly();
    let gamma = sub.embedding.to_poly();
    let found = match w {
        Place::Finite { q, factor: g, .. } => {
            let gq = FpPoly::from_poly(&gamma, *q)
                .ok_or(Error::UnsupportedCompletion("embedding of the subfield is not integral at q".into()))?;
            split_prime(small, *q)?.into_iter().find(|v| match v {
                Place::Finite { factor: h, .. } => h.compose_mod(&gq, g).is_zero(),
                _ => false,
            })
        }
        Place::Real { interval: iv, .. } => real_places(small).into_iter().find(|v| match v {
            Place::Real { interval, .. } => {
                let lo = &gamma - &Polynomial::constant(interval.lo.clone());
                let hi = &gamma - &Polynomial::constant(interval.hi.clone());
                sign_at_root(big_poly, iv, &lo) > 0 && sign_at_root(big_poly, iv, &hi) < 0
            }
            _ => false,
        }),
    };
    found.ok_or_else(|| Error::Malformed(format!("no place of the subfield below {}", w.label())))
}
