//! Local norm tests for cyclic `K/k`: Hilbert symbols over `Q`, the tame unit
//! criterion, and the sign condition at real places.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{legendre, val_int, Rational};
use crate::cyclic::{CyclicExtension, Subfield};
use crate::error::{Error, Result};
use crate::field::NFElement;
use crate::fp::{FpPoly, ResidueField};
use crate::places::{real_places, split_prime, Place};
use crate::poly::Polynomial;
use crate::real::sign_at_root;

use super::padic::{to_local, Completion};

/// Squarefree-class representative: `a` times a square, as an integer.
fn integral_class(a: &Rational) -> BigInt {
    a.numer() * a.denom()
}

fn split_q(a: &BigInt, q: u64) -> (i64, BigInt) {
    let v = val_int(a, q).expect("nonzero");
    (v, a / num_traits::pow(BigInt::from(q), v as usize))
}

fn mod_u(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).try_into().expect("small residue")
}

/// The quadratic Hilbert symbol `(a, b)_v` over `Q`; `q = None` is the real place.
pub fn hilbert_symbol(a: &Rational, b: &Rational, q: Option<u64>) -> i32 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    let Some(q) = q else {
        return if a.is_negative() && b.is_negative() { -1 } else { 1 };
    };
    let (alpha, u) = split_q(&integral_class(a), q);
    let (beta, v) = split_q(&integral_class(b), q);
    if q == 2 {
        let eps = |x: &BigInt| ((mod_u(x, 8) - 1) / 2) % 2;
        let omega = |x: &BigInt| {
            let r = mod_u(x, 8);
            ((r * r - 1) / 8) % 2
        };
        let e = eps(&u) * eps(&v) + (alpha.rem_euclid(2) as u64) * omega(&v) + (beta.rem_euclid(2) as u64) * omega(&u);
        return if e.is_multiple_of(2) { 1 } else { -1 };
    }
    let mut s = 1;
    if (alpha * beta).rem_euclid(2) == 1 && q % 4 == 3 {
        s = -s;
    }
    if beta.rem_euclid(2) == 1 {
        s *= legendre(&u, q);
    }
    if alpha.rem_euclid(2) == 1 {
        s *= legendre(&v, q);
    }
    s
}

/// The place of `K` over `v` selected for local tests, with relative `(e, f)`.
pub fn place_above(e: &CyclicExtension, base: &Subfield, v: &Place) -> Result<Option<(Place, usize, usize)>> {
    let big = e.field();
    let gamma = base.embedding.to_poly();
    match v {
        Place::Finite { q, factor: h, e: ev, f: fv } => {
            for w in split_prime(big, *q)? {
                let Place::Finite { factor: g, e: ew, f: fw, .. } = &w else { unreachable!() };
                let gq = FpPoly::from_poly(&gamma, *q)
                    .ok_or(Error::UnsupportedCompletion("embedding of the base field is not integral at q".into()))?;
                if h.compose_mod(&gq, g).is_zero() {
                    let (er, fr) = (ew / ev, fw / fv);
                    return Ok(Some((w.clone(), er, fr)));
                }
            }
            Err(Error::Malformed(format!("no place of K over {}", v.label())))
        }
        Place::Real { interval, .. } => {
            for w in real_places(big) {
                let Place::Real { interval: iv, .. } = &w else { unreachable!() };
                let lo = &gamma - &Polynomial::constant(interval.lo.clone());
                let hi = &gamma - &Polynomial::constant(interval.hi.clone());
                if sign_at_root(big.poly(), iv, &lo) > 0 && sign_at_root(big.poly(), iv, &hi) < 0 {
                    return Ok(Some((w, 1, 1)));
                }
            }
            // v is real and K_w = C
            Ok(None)
        }
    }
}

/// Residue of a `w`-unit lies in `(F_v^*)^e_rel` where `F_v` has `q^f_v` elements.
fn tame_unit_residue_ok(c: &Completion, unit: &[BigInt], f_v: usize, e_rel: usize) -> bool {
    let field = ResidueField::new(c.residue_poly().clone());
    let r = c.residue(unit);
    let qv = num_traits::pow(BigUint::from(c.q), f_v) - BigUint::one();
    let g = qv.gcd(&BigUint::from(e_rel as u64));
    field.pow(&r, &(qv / g)).is_one()
}

/// Whether `zeta` (an element of `k`, given in `k`'s own coordinates) is a norm from `K_w` to `k_v`.
pub fn is_local_norm(e: &CyclicExtension, base: &Subfield, zeta: &NFElement, v: &Place) -> Result<bool> {
    if zeta.is_zero() {
        return Err(Error::ZeroElement);
    }
    let k = base.ext.field();
    let Some((w, e_rel, f_rel)) = place_above(e, base, v)? else {
        // K_w = C over k_v = R: norms are the positive reals
        let Place::Real { interval, .. } = v else { unreachable!() };
        return Ok(sign_at_root(k.poly(), interval, &zeta.to_poly()) > 0);
    };
    let Place::Finite { q, e: e_w, f: f_w, .. } = &w else {
        return Ok(true);
    };
    let (q, f_v) = (*q, f_w / f_rel);
    if e_rel * f_rel == 1 {
        return Ok(true);
    }
    let zk = base.push(zeta);
    let (c, x) = to_local(e.field(), &w, &zk, 8)?;
    debug_assert_eq!(*e_w, c.e);
    if x.val % e_rel as i64 != 0 {
        return Err(Error::Malformed("element of k has a valuation not divisible by e(w|v)".into()));
    }
    let val_v = x.val / e_rel as i64;
    if e_rel == 1 {
        return Ok(val_v % f_rel as i64 == 0);
    }
    if k.degree() == 1 && e.field().degree() >= 2 && c.degree() == 2 {
        let d = local_quadratic_disc(e, &w)?;
        return Ok(hilbert_symbol(&zeta.coords()[0], &d, Some(q)) == 1);
    }
    if (e_rel as u64).is_multiple_of(q) {
        return Err(Error::WildCaseUnsupported(format!(
            "ramified local extension of degree {} at q = {q}",
            e_rel * f_rel
        )));
    }
    if val_v == 0 {
        return Ok(tame_unit_residue_ok(&c, &x.unit, f_v, e_rel));
    }
    if k.degree() == 1 {
        return rational_tame_norm(&c, &zeta.coords()[0], val_v, f_rel, e_rel);
    }
    Err(Error::ScopeExceeded("local norm of a non-unit in a ramified extension of a nontrivial base".into()))
}

/// `K_w = Q_q(sqrt D)`: the discriminant of the lifted local factor, made exact to enough digits.
fn local_quadratic_disc(e: &CyclicExtension, w: &Place) -> Result<Rational> {
    let c = Completion::new(e.field(), w, 40)?;
    let f = Polynomial::from_bigints(c.modpoly());
    let d = f.discriminant().numer().clone();
    let m = num_traits::pow(BigInt::from(c.q), 40);
    let d = crate::arith::symmetric_mod(&d, &m);
    if d.is_zero() || val_int(&d, c.q).unwrap_or(40) > 30 {
        return Err(Error::InsufficientPrecision { precision: 40 });
    }
    Ok(Rational::from_integer(d))
}

/// Tame case over `Q_q`: `zeta` is a norm iff `f | v(zeta)` and the unit
/// `zeta / N(pi)^(v/f)` has residue in `(F_q^*)^e`.
fn rational_tame_norm(c: &Completion, zeta: &Rational, val: i64, f: usize, e: usize) -> Result<bool> {
    if val % f as i64 != 0 {
        return Ok(false);
    }
    let modpoly = Polynomial::from_bigints(c.modpoly());
    let pi = Polynomial::from_bigints(c.uniformizer());
    let npi = modpoly.resultant(&pi);
    let u = zeta / num_traits::Pow::pow(&npi, (val / f as i64) as i32);
    let q = c.q;
    let qv = crate::arith::val_rat(&u, q).unwrap_or(0);
    if qv != 0 {
        return Err(Error::InsufficientPrecision { precision: c.precision() });
    }
    let m = BigInt::from(q);
    let r = crate::arith::rat_mod(&u, &m).expect("q-unit");
    let r: u64 = r.try_into().expect("small residue");
    let g = crate::arith::gcd_u64(q - 1, e as u64);
    Ok(crate::arith::pow_mod(r, (q - 1) / g, q) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::cyclic::examples;
    use crate::places::first_place_over;

    /// `(a, b)_q = 1` iff `a x^2 + b y^2 = z^2` has a primitive solution mod `q^k`, searched exhaustively.
    fn brute_hilbert(a: i64, b: i64, q: i64) -> i32 {
        let m = if q == 2 { 64 } else { q * q * q };
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % q == 0 && y % q == 0 && z % q == 0 {
                        continue;
                    }
                    if (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn hilbert_matches_brute_force() {
        for q in [2i64, 3, 5] {
            for a in [-6i64, -3, -2, -1, 2, 3, 5, 6, 7, 10] {
                for b in [-5i64, -2, -1, 3, 6] {
                    let want = brute_hilbert(a, b, q);
                    assert_eq!(hilbert_symbol(&int(a), &int(b), Some(q as u64)), want, "({a},{b})_{q}");
                }
            }
        }
        assert_eq!(hilbert_symbol(&int(-1), &int(-1), None), -1);
        assert_eq!(hilbert_symbol(&int(-1), &int(3), None), 1);
        assert_eq!(hilbert_symbol(&rat(-1, 4), &int(-1), Some(2)), -1);
    }

    #[test]
    fn product_formula() {
        for (a, b) in [(2i64, 3i64), (-1, -1), (5, -7), (6, 10), (-3, 13)] {
            let mut prod = hilbert_symbol(&int(a), &int(b), None);
            for q in [2u64, 3, 5, 7, 11, 13] {
                prod *= hilbert_symbol(&int(a), &int(b), Some(q));
            }
            assert_eq!(prod, 1, "({a},{b})");
        }
    }

    #[test]
    fn norms_from_gaussian_completions() {
        let g = examples::gaussian();
        let base = g.base_field().unwrap();
        let q = base.ext.field().clone();
        let two = first_place_over(&q, 2).unwrap();
        let m1 = NFElement::from_int(&q, -1);
        assert!(!is_local_norm(&g, &base, &m1, &two).unwrap());
        assert!(is_local_norm(&g, &base, &NFElement::from_int(&q, 5), &two).unwrap());
        assert!(is_local_norm(&g, &base, &NFElement::from_int(&q, 2), &two).unwrap());
        // C/R: -1 is not a norm, 3 is
        let inf = real_places(&q).remove(0);
        assert!(!is_local_norm(&g, &base, &m1, &inf).unwrap());
        assert!(is_local_norm(&g, &base, &NFElement::from_int(&q, 3), &inf).unwrap());
        // 5 splits in Q(i): everything is a local norm
        let five = first_place_over(&q, 5).unwrap();
        assert!(is_local_norm(&g, &base, &m1, &five).unwrap());
        // 3 is inert: units are norms, 3 itself is not
        let three = first_place_over(&q, 3).unwrap();
        assert!(is_local_norm(&g, &base, &m1, &three).unwrap());
        assert!(!is_local_norm(&g, &base, &NFElement::from_int(&q, 3), &three).unwrap());
    }

    #[test]
    fn tame_cubic_norms() {
        // Q(zeta_7)^+ is totally and tamely ramified at 7 with e = 3
        let c = examples::real_cubic7();
        let base = c.base_field().unwrap();
        let q = base.ext.field().clone();
        let seven = first_place_over(&q, 7).unwrap();
        // residues that are cubes mod 7: {1, 6}
        assert!(is_local_norm(&c, &base, &NFElement::from_int(&q, -1), &seven).unwrap());
        assert!(!is_local_norm(&c, &base, &NFElement::from_int(&q, 2), &seven).unwrap());
        assert!(!is_local_norm(&c, &base, &NFElement::from_int(&q, 3), &seven).unwrap());
        // global norms are local norms
        for a in [2i64, 3, 5] {
            let t = NFElement::gen(c.field());
            let x = &NFElement::from_int(c.field(), a) - &t;
            assert!(is_local_norm(&c, &base, &NFElement::from_rational(&q, x.norm()), &seven).unwrap());
        }
        assert!(is_local_norm(&c, &base, &NFElement::from_int(&q, 7), &seven).unwrap());
        assert!(!is_local_norm(&c, &base, &NFElement::from_int(&q, 14), &seven).unwrap());
    }

    #[test]
    fn relative_base() {
        // Q(zeta_5)/Q(sqrt 5) ramifies only at 5, tamely with e = 2
        let z = examples::zeta5();
        let rel = CyclicExtension::new(z.field(), z.apply_sigma_pow(&NFElement::gen(z.field()), 2)).unwrap();
        let base = rel.base_field().unwrap();
        assert_eq!(base.ext.field().degree(), 2);
        let k = base.ext.field().clone();
        let five = first_place_over(&k, 5).unwrap();
        assert!(is_local_norm(&rel, &base, &NFElement::from_int(&k, -1), &five).unwrap());
        assert!(!is_local_norm(&rel, &base, &NFElement::from_int(&k, 2), &five).unwrap());
        assert!(is_local_norm(&rel, &base, &NFElement::from_int(&k, 4), &five).unwrap());
    }
}
