//! Binomials `x^n - a`: irreducibility over number fields and their completions,
//! local radicand choice, and Kummer extensions `K(a^(1/n))` as absolute fields.

use num_integer::Integer;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::arith::{divisors, fmt_rational, int, prime_divisors, rat, Rational};
use crate::cyclic::{CyclicExtension, Subfield};
use crate::error::{Error, Result};
use crate::factor::is_irreducible;
use crate::field::{nth_root_in, Field, KPoly, NFElement, NumberField};
use crate::linalg::{solve, transpose, Matrix};
use crate::local::local_binomial_irreducible;
use crate::places::Place;
use crate::poly::Polynomial;

/// Largest `|c|` tried for the primitive element `alpha + c*theta`.
pub const KUMMER_SHIFT_BOUND: i64 = 30;

#[derive(Clone, Debug, PartialEq)]
pub enum BinomialWitness {
    /// `a = root^p`.
    PthPower { p: u64, root: NFElement },
    /// `a = -4 c^4`.
    MinusFourFourth { c: NFElement },
    /// `x^p - a` has no root in the field.
    NotPthPower { p: u64 },
    /// `x^4 + 4a` has no root in the field.
    NotMinusFourFourth,
}

impl Serialize for BinomialWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v = match self {
            BinomialWitness::PthPower { p, root } => {
                serde_json::json!({"kind": "pth_power", "p": p, "root": root.to_json()})
            }
            BinomialWitness::MinusFourFourth { c } => {
                serde_json::json!({"kind": "minus_four_fourth", "c": c.to_json()})
            }
            BinomialWitness::NotPthPower { p } => serde_json::json!({"kind": "not_pth_power", "p": p}),
            BinomialWitness::NotMinusFourFourth => serde_json::json!({"kind": "not_minus_four_fourth"}),
        };
        v.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinomialVerdict {
    pub irreducible: bool,
    pub witnesses: Vec<BinomialWitness>,
}

impl BinomialVerdict {
    /// Re-derive `a` from a reducibility witness.
    pub fn check(&self, a: &NFElement) -> bool {
        self.witnesses.iter().all(|w| match w {
            BinomialWitness::PthPower { p, root } => root.pow(*p as i64).is_ok_and(|r| &r == a),
            BinomialWitness::MinusFourFourth { c } => c.pow(4).is_ok_and(|c4| c4.scale(&int(-4)) == *a),
            _ => true,
        })
    }
}

/// Capelli's criterion: `x^n - a` is irreducible iff `a` is not a `p`-th power for
/// each prime `p | n`, and not of the form `-4c^4` when `4 | n`.
pub fn binomial_irreducible(a: &NFElement, n: u64) -> Result<BinomialVerdict> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if n == 0 {
        return Err(Error::Malformed("exponent must be positive".into()));
    }
    let mut witnesses = Vec::new();
    for p in prime_divisors(n) {
        match nth_root_in(a, p as u32)? {
            Some(root) => {
                return Ok(BinomialVerdict {
                    irreducible: false,
                    witnesses: vec![BinomialWitness::PthPower { p, root }],
                })
            }
            None => witnesses.push(BinomialWitness::NotPthPower { p }),
        }
    }
    if n.is_multiple_of(4) {
        // a = -4c^4 iff x^4 + 4a has the root 2c
        match nth_root_in(&a.scale(&int(-4)), 4)? {
            Some(r) => {
                let c = r.scale(&rat(1, 2));
                return Ok(BinomialVerdict {
                    irreducible: false,
                    witnesses: vec![BinomialWitness::MinusFourFourth { c }],
                });
            }
            None => witnesses.push(BinomialWitness::NotMinusFourFourth),
        }
    }
    Ok(BinomialVerdict { irreducible: true, witnesses })
}

/// For `a` in the base field of a Galois `K/k` with `a` not in `-k^2` when `4 | n`:
/// `x^n - a` is irreducible over `K` iff `a` is not a `p`-th power in `K` for all `p | n`.
pub fn galois_persistent_irreducible(e: &CyclicExtension, base: &Subfield, a: &NFElement, n: u64) -> Result<bool> {
    if !e.is_fixed(a) {
        return Err(Error::Malformed("radicand does not lie in the base field".into()));
    }
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if n.is_multiple_of(4) {
        let ak = base.pull(a).ok_or_else(|| Error::Malformed("radicand does not lie in the base field".into()))?;
        if nth_root_in(&-&ak, 2)?.is_some() {
            return Err(Error::HypothesisViolated(format!("4 divides {n} and the radicand lies in -k^2")));
        }
    }
    for p in prime_divisors(n) {
        if nth_root_in(a, p as u32)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A local radicand `a_v` for one restriction class, with the exponent it was certified for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalRadicand {
    #[serde(serialize_with = "ser_rat")]
    pub value: Rational,
    /// The rational prime under the class, or `None` for real places.
    pub q: Option<u64>,
    pub exponent: u64,
}

fn ser_rat<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

/// Largest `|t|` tried in the radicand search.
pub const RADICAND_SEARCH_BOUND: i64 = 60;

/// Rational candidates in the fixed search order: `q`, then `q t` for units `t`,
/// then `q^j t` for `1 < j < p`, then the units `t` themselves.
fn radicand_candidates(q: u64, p: u64) -> Vec<Rational> {
    let units: Vec<i64> =
        (1..=RADICAND_SEARCH_BOUND).flat_map(|t| [t, -t]).filter(|t| t.unsigned_abs() % q != 0 && *t != 1).collect();
    let qr = int(q as i64);
    let mut out = vec![qr.clone()];
    out.extend(units.iter().map(|&t| &qr * int(t)));
    for j in 2..p.max(2) {
        let qj = num_traits::Pow::pow(&qr, j as i32);
        out.push(qj.clone());
        out.extend(units.iter().map(|&t| &qj * int(t)));
    }
    out.extend(units.iter().map(|&t| int(t)));
    out
}

/// Choose `a_v` with `x^n - a_v` irreducible over `K_w` for every `w` in `class`
/// (all places of `K` over one rational prime, or real places).
pub fn radicand_search_local(k: &Field, class: &[Place], p: u64, s: u32) -> Result<Option<LocalRadicand>> {
    let n = p.pow(s);
    let first = class.first().ok_or_else(|| Error::Malformed("empty place class".into()))?;
    let Some(q) = first.prime() else {
        // real places: local degree bound gcd(2, n)
        return Ok((p == 2).then(|| LocalRadicand { value: int(-1), q: None, exponent: n }));
    };
    if class.iter().any(|w| w.prime() != Some(q)) {
        return Err(Error::Malformed("a radicand class must lie over a single prime".into()));
    }
    for cand in radicand_candidates(q, p) {
        let x = NFElement::from_rational(k, cand.clone());
        let mut ok = true;
        for w in class {
            if !local_binomial_irreducible(k, w, &x, n)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(LocalRadicand { value: cand, q: Some(q), exponent: n }));
        }
    }
    Err(Error::SearchExhausted(format!(
        "no rational radicand of height <= {RADICAND_SEARCH_BOUND} at {q} for exponent {n}"
    )))
}

/// `L = K(alpha)` with `alpha^n = a`, presented as `Q[x]/(R)` with primitive element `alpha + c*theta`.
#[derive(Clone, Debug)]
pub struct KummerTower {
    pub base: Field,
    pub radicand: NFElement,
    pub exponent: u64,
    pub field: Field,
    pub alpha: NFElement,
    pub theta_image: NFElement,
    pub shift: i64,
}

impl KummerTower {
    /// Image in `L` of an element of `K`.
    pub fn push(&self, x: &NFElement) -> NFElement {
        x.eval_at(&self.theta_image)
    }

    /// Exact tower invariants: `f(theta') = 0`, `alpha^n = a(theta')`, and `[L:Q] = [K:Q] n`.
    pub fn verify(&self) -> bool {
        let f_ok = crate::field::eval_poly(self.base.poly(), &self.theta_image).is_zero();
        let pow_ok = self.alpha.pow(self.exponent as i64).is_ok_and(|x| x == self.push(&self.radicand));
        f_ok && pow_ok && self.field.degree() == self.base.degree() * self.exponent as usize
    }
}

fn shifts() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=KUMMER_SHIFT_BOUND).flat_map(|s| [s, -s]))
}

/// `Res_y(f(y), (x - c y)^n - a(y))`, by interpolation in `x`.
fn kummer_resultant(k: &Field, a: &NFElement, n: usize, c: i64) -> Polynomial {
    let deg = k.degree() * n;
    let theta = NFElement::gen(k);
    let ct = theta.scale(&int(c));
    let points: Vec<(Rational, Rational)> = (0..=deg as i64)
        .map(|x0| {
            let base = &NFElement::from_int(k, x0) - &ct;
            let v = &base.pow(n as i64).expect("nonzero exponent") - a;
            (int(x0), v.norm())
        })
        .collect();
    Polynomial::interpolate(&points)
}

/// Build `K(a^(1/p^s))`.
pub fn build_kummer(a: &NFElement, p: u64, s: u32) -> Result<KummerTower> {
    build_kummer_exponent(a, p.pow(s))
}

/// Build `K(a^(1/n))` for any `n` with `x^n - a` irreducible over `K`.
pub fn build_kummer_exponent(a: &NFElement, n: u64) -> Result<KummerTower> {
    let k = a.field().clone();
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let d = k.degree();
    let nu = n as usize;
    // clear denominators: a' = D^n a has integral coordinates, alpha' = D alpha
    let den = a.coords().iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let dr = Rational::from_integer(den);
    let a_int = a.scale(&num_traits::Pow::pow(&dr, n as i32));
    for c in shifts() {
        if k.degree() == 1 && c != 0 {
            break;
        }
        let r = kummer_resultant(&k, &a_int, nu, c);
        if r.degree() != d * nu || !r.is_squarefree() {
            continue;
        }
        if !is_irreducible(&r)? {
            return Err(Error::IrreducibilityLost);
        }
        let field = NumberField::new(r)?;
        let (theta_image, alpha_int) = tower_coordinates(&k, &field, &a_int, nu, c)?;
        let alpha = alpha_int.scale(&dr.recip());
        let tower =
            KummerTower { base: k.clone(), radicand: a.clone(), exponent: n, field, alpha, theta_image, shift: c };
        if !tower.verify() {
            return Err(Error::IrreducibilityLost);
        }
        return Ok(tower);
    }
    Err(Error::ShiftExhausted { bound: KUMMER_SHIFT_BOUND })
}

/// Express `theta` and `alpha` in the power basis of `xi = alpha + c theta` by inverting
/// the change of basis from `{theta^i alpha^j}` to `{xi^k}`.
fn tower_coordinates(k: &Field, l: &Field, a: &NFElement, n: usize, c: i64) -> Result<(NFElement, NFElement)> {
    let d = k.degree();
    let modulus = KPoly::binomial(n, a);
    let xi = KPoly::new(k, vec![NFElement::gen(k).scale(&int(c)), NFElement::one(k)]);
    let mut rows: Matrix = Vec::with_capacity(d * n);
    let mut cur = KPoly::one(k);
    for _ in 0..d * n {
        let mut row = vec![Rational::default(); d * n];
        for (j, cj) in cur.coeffs().iter().enumerate() {
            for (i, x) in cj.coords().iter().enumerate() {
                row[i + d * j] = x.clone();
            }
        }
        rows.push(row);
        cur = (&cur * &xi).rem(&modulus);
    }
    let mt = transpose(&rows);
    let unit = |idx: usize| {
        let mut v = vec![Rational::default(); d * n];
        v[idx] = Rational::one();
        v
    };
    let theta = if d == 1 {
        NFElement::from_rational(l, -k.poly().coeffs()[0].clone())
    } else {
        NFElement::new(l, solve(&mt, &unit(1)).ok_or(Error::IrreducibilityLost)?)
    };
    let alpha = if n == 1 {
        a.eval_at(&theta)
    } else {
        NFElement::new(l, solve(&mt, &unit(d)).ok_or(Error::IrreducibilityLost)?)
    };
    Ok((theta, alpha))
}

/// Order of the class of `b` in `K^*/(K^*)^m`.
pub fn power_class_order(b: &NFElement, m: u64) -> Result<u64> {
    if b.is_zero() {
        return Err(Error::ZeroElement);
    }
    for d in divisors(m) {
        let bd = b.pow(d as i64)?;
        if nth_root_in(&bd, m as u32)?.is_some() {
            return Ok(d);
        }
    }
    unreachable!("b^m is an m-th power")
}
