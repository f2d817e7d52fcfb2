//! Completions `K_w` at finite places, realized as `Z_q[x]/(F_w)` truncated
//! modulo `q^N`, where `F_w` is the Hensel lift of the local factor `g^e`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{val_int, val_u64};
use crate::error::{Error, Result};
use crate::factor::hensel_lift_pair;
use crate::field::{NFElement, NumberField};
use crate::fp::FpPoly;
use crate::places::Place;

/// Hard cap on q-adic digits for precision doubling.
pub const MAX_PRECISION: u32 = 256;

/// `pi^val * unit` with `unit` known modulo `q^prec`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalElement {
    pub q: u64,
    pub val: i64,
    #[serde(with = "crate::arith::big_vec")]
    pub unit: Vec<BigInt>,
    pub prec: u32,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub q: u64,
    pub e: usize,
    pub f: usize,
    residue: FpPoly,
    modpoly: Vec<BigInt>,
    prec: u32,
    modulus: BigInt,
    pi: Vec<BigInt>,
    q_over_pi: Vec<BigInt>,
    /// `q / pi^e`, a unit.
    q_over_pie: Vec<BigInt>,
}

fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

impl Completion {
    pub fn new(k: &NumberField, w: &Place, prec: u32) -> Result<Self> {
        let Place::Finite { q, factor, e, f } = w else {
            return Err(Error::UnsupportedCompletion("real places have no p-adic completion".into()));
        };
        let (q, e, f) = (*q, *e, *f);
        let (_, fz) = k.poly().primitive_part();
        let fq = FpPoly::from_bigints(&fz, q);
        let ge = (0..e).fold(FpPoly::one(q), |acc, _| acc.mul(factor));
        let (cof, r) = fq.div_rem(&ge);
        if !r.is_zero() || cof.gcd(factor).degree() > 0 {
            return Err(Error::UnsupportedCompletion(format!("{} does not match f mod {q}", w.label())));
        }
        let modulus = num_traits::pow(BigInt::from(q), prec as usize);
        let modpoly = if cof.degree() == 0 {
            fz.iter().map(|c| c.mod_floor(&modulus)).collect()
        } else {
            hensel_lift_pair(&fz, &cof, &ge, prec).1
        };
        let mut c = Completion {
            q,
            e,
            f,
            residue: factor.clone(),
            modpoly,
            prec,
            modulus,
            pi: Vec::new(),
            q_over_pi: Vec::new(),
            q_over_pie: vec![BigInt::one()],
        };
        if e == 1 {
            c.pi = vec![BigInt::from(q)];
            c.q_over_pi = vec![BigInt::one()];
        } else {
            c.pi = c.reduce(&factor.to_bigints());
            // q / pi = pi^(e-1) * (pi^e / q)^(-1)
            let pe = c.pow(&c.pi, e as u64);
            let u: Vec<BigInt> = pe.iter().map(|x| x / q).collect();
            let uinv =
                c.unit_inverse(&u).ok_or_else(|| Error::UnsupportedCompletion("pi^e / q is not a unit".into()))?;
            c.q_over_pi = c.mul(&c.pow(&c.pi, e as u64 - 1), &uinv);
            c.q_over_pie = uinv;
        }
        Ok(c)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn degree(&self) -> usize {
        self.e * self.f
    }

    /// The lifted local factor `F_w`, monic with coefficients in `[0, q^N)`.
    pub fn modpoly(&self) -> &[BigInt] {
        &self.modpoly
    }

    pub fn residue_poly(&self) -> &FpPoly {
        &self.residue
    }

    /// Residue field size `q^f`.
    pub fn residue_size(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.q), self.f)
    }

    pub fn uniformizer(&self) -> &[BigInt] {
        &self.pi
    }

    pub fn reduce(&self, a: &[BigInt]) -> Vec<BigInt> {
        let d = self.modpoly.len() - 1;
        let mut r: Vec<BigInt> = a.iter().map(|c| c.mod_floor(&self.modulus)).collect();
        if r.len() > d {
            for i in (d..r.len()).rev() {
                let c = r[i].clone();
                if c.is_zero() {
                    continue;
                }
                for (j, m) in self.modpoly.iter().enumerate() {
                    r[i - d + j] = (&r[i - d + j] - &c * m).mod_floor(&self.modulus);
                }
            }
            r.truncate(d);
        }
        trim(r)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        self.reduce(&(0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        self.reduce(&(0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect::<Vec<_>>())
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(&out)
    }

    pub fn pow(&self, a: &[BigInt], mut n: u64) -> Vec<BigInt> {
        let mut acc = vec![BigInt::one()];
        let mut b = a.to_vec();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            n >>= 1;
        }
        self.reduce(&acc)
    }

    fn residue_of(&self, a: &[BigInt]) -> FpPoly {
        FpPoly::from_bigints(a, self.q)
    }

    /// Image in the residue field `F_q[x]/(g)`.
    pub fn residue(&self, a: &[BigInt]) -> FpPoly {
        self.residue_of(a).rem(&self.residue)
    }

    pub fn divisible_by_pi(&self, a: &[BigInt]) -> bool {
        self.residue(a).is_zero()
    }

    /// `a / pi` for `a` divisible by `pi`; loses one digit of precision.
    pub fn div_pi(&self, a: &[BigInt]) -> Vec<BigInt> {
        let qb = BigInt::from(self.q);
        let t = if self.e == 1 { a.to_vec() } else { self.mul(a, &self.q_over_pi) };
        debug_assert!(t.iter().all(|c| (c % &qb).is_zero()));
        trim(t.iter().map(|c| c / &qb).collect())
    }

    /// Valuation and unit part of an element known modulo `q^prec`;
    /// `None` when it vanishes at this precision.
    pub fn split_valuation(&self, a: &[BigInt]) -> Option<(i64, Vec<BigInt>, u32)> {
        let mut x = self.reduce(a);
        let mut v = 0i64;
        let mut prec = self.prec;
        while !x.is_empty() && self.divisible_by_pi(&x) {
            x = self.div_pi(&x);
            v += 1;
            prec = prec.saturating_sub(1);
        }
        (!x.is_empty() && prec > 0).then_some((v, x, prec))
    }

    /// Inverse of a unit by Newton iteration from its inverse modulo `q`.
    pub fn unit_inverse(&self, a: &[BigInt]) -> Option<Vec<BigInt>> {
        let fq = FpPoly::from_bigints(&self.modpoly, self.q);
        let (g, s, _) = self.residue_of(a).ext_gcd(&fq);
        if !g.is_one() {
            return None;
        }
        let mut y = s.to_bigints();
        let mut digits = 1;
        let two = vec![BigInt::from(2)];
        while digits < self.prec {
            let ay = self.mul(a, &y);
            y = self.mul(&y, &self.sub(&two, &ay));
            digits *= 2;
        }
        Some(y)
    }

    /// Embed an exact global element.
    pub fn embed(&self, b: &NFElement) -> Result<LocalElement> {
        if b.is_zero() {
            return Err(Error::ZeroElement);
        }
        let (content, num) = b.to_poly().primitive_part();
        let qv = crate::arith::val_rat(&content, self.q).expect("nonzero content");
        let x = self.reduce(&num);
        let (v, unit, p) = self.split_valuation(&x).ok_or(Error::InsufficientPrecision { precision: self.prec })?;
        // content = q^qv * c0 with c0 a q-unit, and q = pi^e * (q / pi^e)
        let c0 = &content / num_traits::Pow::pow(crate::arith::int(self.q as i64), qv as i32);
        let cn = c0.numer().mod_floor(&self.modulus);
        let cd = crate::arith::inv_mod_big(c0.denom(), &self.modulus).expect("q-unit denominator");
        let mut unit = self.mul(&unit, &[(cn * cd).mod_floor(&self.modulus)]);
        let adj = if qv >= 0 {
            self.pow(&self.q_over_pie, qv as u64)
        } else {
            self.pow(&self.unit_inverse(&self.q_over_pie).expect("unit"), (-qv) as u64)
        };
        unit = self.mul(&unit, &adj);
        Ok(LocalElement { q: self.q, val: v + qv * self.e as i64, unit, prec: p })
    }

    pub fn local_mul(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        LocalElement {
            q: self.q,
            val: a.val + b.val,
            unit: self.truncate(&self.mul(&a.unit, &b.unit), a.prec.min(b.prec)),
            prec: a.prec.min(b.prec),
        }
    }

    pub fn local_inv(&self, a: &LocalElement) -> LocalElement {
        let inv = self.unit_inverse(&a.unit).expect("unit part is a unit");
        LocalElement { q: self.q, val: -a.val, unit: self.truncate(&inv, a.prec), prec: a.prec }
    }

    fn truncate(&self, a: &[BigInt], prec: u32) -> Vec<BigInt> {
        let m = num_traits::pow(BigInt::from(self.q), prec as usize);
        trim(a.iter().map(|c| c.mod_floor(&m)).collect())
    }

    /// Whether `a - b` vanishes modulo `q^prec`.
    fn agrees(&self, a: &[BigInt], b: &[BigInt], prec: u32) -> bool {
        self.truncate(&self.sub(a, b), prec).is_empty()
    }

    /// `pi`-adic valuation of `a` capped at `cap`.
    fn val_capped(&self, a: &[BigInt], cap: u32) -> u32 {
        let mut x = a.to_vec();
        let mut v = 0;
        while v < cap {
            if x.is_empty() {
                return cap;
            }
            if !self.divisible_by_pi(&x) {
                return v;
            }
            x = self.div_pi(&x);
            v += 1;
        }
        v
    }

    /// Residue representatives: polynomials of degree < f with digits in `[0, q)`.
    fn residue_reps(&self) -> Vec<Vec<BigInt>> {
        let total = (self.q as u128).pow(self.f as u32);
        (0..total)
            .map(|mut k| {
                let mut c = Vec::with_capacity(self.f);
                for _ in 0..self.f {
                    c.push(BigInt::from((k % self.q as u128) as u64));
                    k /= self.q as u128;
                }
                trim(c)
            })
            .collect()
    }

    /// Decide `u` in `(K_w^*)^n`; on success return an `n`-th root known to `u.prec` digits.
    pub fn nth_power_test(&self, u: &LocalElement, n: u64) -> Result<Option<LocalElement>> {
        if n == 1 {
            return Ok(Some(u.clone()));
        }
        if u.val.rem_euclid(n as i64) != 0 {
            return Ok(None);
        }
        let s = val_u64(n, self.q);
        let vn = self.e as u32 * s;
        let need = 2 * vn + 1;
        if (u.prec as usize) * self.e < need as usize || self.prec < u.prec + s + 1 {
            return Err(Error::InsufficientPrecision { precision: u.prec });
        }
        // residue digits c mod pi^j with v(c^n - u) >= min(j, need), extended depth first
        let reps = self.residue_reps();
        let mut frontier: Vec<(Vec<BigInt>, Vec<BigInt>)> = vec![(Vec::new(), vec![BigInt::one()])];
        let mut depth = 0;
        while depth < need {
            let mut next = Vec::new();
            for (c, pipow) in &frontier {
                for t in &reps {
                    if depth == 0 && t.is_empty() {
                        continue;
                    }
                    let cand = self.add(c, &self.mul(t, pipow));
                    let diff = self.sub(&self.pow(&cand, n), &u.unit);
                    if self.val_capped(&diff, depth + 1) > depth {
                        next.push((cand, self.mul(pipow, &self.pi)));
                    }
                }
            }
            if next.is_empty() {
                return Ok(None);
            }
            frontier = next;
            depth += 1;
        }
        let Some((c, _)) = frontier.into_iter().find(|(c, _)| {
            let diff = self.sub(&self.pow(c, n), &u.unit);
            self.val_capped(&diff, need) >= need
        }) else {
            return Ok(None);
        };
        let root = self.newton_root(&c, &u.unit, n, u.prec)?;
        Ok(Some(LocalElement { q: self.q, val: u.val / n as i64, unit: root, prec: u.prec }))
    }

    /// Newton iteration `r <- r - (r^n - u) / (n r^(n-1))` until `r^n = u mod q^prec`.
    fn newton_root(&self, c: &[BigInt], u: &[BigInt], n: u64, prec: u32) -> Result<Vec<BigInt>> {
        let s = val_u64(n, self.q);
        let qs = num_traits::pow(BigInt::from(self.q), s as usize);
        let n0 = BigInt::from(n) / &qs;
        let mut r = c.to_vec();
        for _ in 0..2 * MAX_PRECISION {
            let d = self.sub(&self.pow(&r, n), u);
            if self.agrees(&d, &[], prec) {
                return Ok(self.truncate(&r, prec));
            }
            let w: Vec<BigInt> = d.iter().map(|x| x / &qs).collect();
            let deriv = self.mul(std::slice::from_ref(&n0), &self.pow(&r, n - 1));
            let inv = self.unit_inverse(&deriv).ok_or(Error::InsufficientPrecision { precision: prec })?;
            r = self.sub(&r, &self.mul(&w, &inv));
        }
        Err(Error::InsufficientPrecision { precision: prec })
    }

    /// Exact certificate check: `r^n = u (mod q^prec)` after matching valuations.
    pub fn check_root(&self, r: &LocalElement, u: &LocalElement, n: u64) -> bool {
        r.val * n as i64 == u.val && self.agrees(&self.pow(&r.unit, n), &u.unit, u.prec.min(r.prec))
    }
}

/// A completion precise enough to embed `b` with `digits` digits of unit precision.
pub fn completion_for(k: &NumberField, w: &Place, b: &NFElement, digits: u32) -> Result<Completion> {
    let q = w.prime().ok_or_else(|| Error::UnsupportedCompletion("real place".into()))?;
    let (_, num) = b.to_poly().primitive_part();
    let norm = NFElement::from_poly(b.field(), &crate::poly::Polynomial::from_bigints(&num)).norm();
    let vb = val_int(&norm.to_integer(), q).unwrap_or(0).max(0) as u32;
    let e = match w {
        Place::Finite { e, .. } => *e as u32,
        _ => 1,
    };
    Completion::new(k, w, digits + vb * e + val_u64(64, q) + 4)
}

/// Embed a global element with the given unit precision.
pub fn to_local(k: &NumberField, w: &Place, b: &NFElement, digits: u32) -> Result<(Completion, LocalElement)> {
    let c = completion_for(k, w, b, digits)?;
    let mut x = c.embed(b)?;
    if x.prec < digits {
        return Err(Error::InsufficientPrecision { precision: x.prec });
    }
    x.unit = c.truncate(&x.unit, digits);
    x.prec = digits;
    Ok((c, x))
}

/// `b` in `(K_w^*)^n`, with the documented precision doubling policy.
pub fn is_local_nth_power(k: &NumberField, w: &Place, b: &NFElement, n: u64) -> Result<bool> {
    let q = w.prime().ok_or_else(|| Error::UnsupportedCompletion("real place".into()))?;
    let mut digits = 2 * val_u64(n, q) + 3;
    loop {
        let (c, u) = to_local(k, w, b, digits)?;
        match c.nth_power_test(&u, n) {
            Ok(r) => {
                if let Some(r) = &r {
                    debug_assert!(c.check_root(r, &u, n));
                }
                return Ok(r.is_some());
            }
            Err(Error::InsufficientPrecision { .. }) if digits < MAX_PRECISION => {
                digits = (digits * 2).min(MAX_PRECISION)
            }
            Err(e) => return Err(e),
        }
    }
}

/// `x^n - b` irreducible over `K_w`: `b` is not a `p`-th power for any prime `p | n`,
/// and `b` is not in `-4 K_w^4` when `4 | n`.
pub fn local_binomial_irreducible(k: &NumberField, w: &Place, b: &NFElement, n: u64) -> Result<bool> {
    if b.is_zero() {
        return Err(Error::ZeroElement);
    }
    if n == 1 {
        return Ok(true);
    }
    for p in crate::arith::prime_divisors(n) {
        if is_local_nth_power(k, w, b, p)? {
            return Ok(false);
        }
    }
    if n.is_multiple_of(4) {
        let c = b.scale(&crate::arith::rat(-1, 4));
        if is_local_nth_power(k, w, &c, 4)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Local degree of `K_w(b^(1/n))` over `K_w` equals `n` (full local degree).
pub fn full_local_degree(k: &NumberField, w: &Place, b: &NFElement, n: u64) -> Result<bool> {
    local_binomial_irreducible(k, w, b, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::examples;
    use crate::places::{first_place_over, split_prime};

    fn rat_elem(k: &crate::field::Field, n: i64) -> NFElement {
        NFElement::from_int(k, n)
    }

    #[test]
    fn two_adic_squares() {
        let q = NumberField::rationals();
        let w = first_place_over(&q, 2).unwrap();
        assert!(is_local_nth_power(&q, &w, &rat_elem(&q, 17), 2).unwrap());
        assert!(!is_local_nth_power(&q, &w, &rat_elem(&q, 5), 2).unwrap());
        assert!(!is_local_nth_power(&q, &w, &rat_elem(&q, -1), 2).unwrap());
        assert!(is_local_nth_power(&q, &w, &rat_elem(&q, 1), 7).unwrap());
        assert!(is_local_nth_power(&q, &w, &rat_elem(&q, 4), 2).unwrap());
        assert!(!is_local_nth_power(&q, &w, &rat_elem(&q, 2), 2).unwrap());
        // 17 = r^2 with certified root
        let (c, u) = to_local(&q, &w, &rat_elem(&q, 17), 12).unwrap();
        let r = c.nth_power_test(&u, 2).unwrap().unwrap();
        assert!(c.check_root(&r, &u, 2));
    }

    #[test]
    fn gaussian_two_adic() {
        // K_w = Q_2(i): -1 is a square, 2 = -i (1+i)^2 is not
        let e = examples::gaussian();
        let k = e.field();
        let w = first_place_over(k, 2).unwrap();
        assert!(is_local_nth_power(k, &w, &rat_elem(k, -1), 2).unwrap());
        assert!(!is_local_nth_power(k, &w, &rat_elem(k, 2), 2).unwrap());
        assert!(is_local_nth_power(k, &w, &rat_elem(k, -4), 2).unwrap());
        let (c, x) = to_local(k, &w, &rat_elem(k, 2), 8).unwrap();
        assert_eq!(x.val, 2);
        assert_eq!(c.e, 2);
    }

    #[test]
    fn binomial_over_completions() {
        let q = NumberField::rationals();
        let w3 = first_place_over(&q, 3).unwrap();
        assert!(local_binomial_irreducible(&q, &w3, &rat_elem(&q, 3), 3).unwrap());
        assert!(!local_binomial_irreducible(&q, &w3, &rat_elem(&q, 1), 2).unwrap());
        let w2 = first_place_over(&q, 2).unwrap();
        assert!(!local_binomial_irreducible(&q, &w2, &rat_elem(&q, 17), 2).unwrap());
        // -4 = -4 * 1^4: x^4 + 4 splits over every field
        assert!(!local_binomial_irreducible(&q, &w2, &rat_elem(&q, -4), 4).unwrap());
        // Q_3(sqrt 2) is the unramified quadratic extension; 3 stays a non-cube
        let s2 = examples::sqrt2();
        let w = first_place_over(s2.field(), 3).unwrap();
        assert!(local_binomial_irreducible(s2.field(), &w, &rat_elem(s2.field(), 3), 3).unwrap());
        // 2 is a square in Q(sqrt 2) but not in Q_3
        assert!(!local_binomial_irreducible(s2.field(), &w, &rat_elem(s2.field(), 2), 2).unwrap());
        assert!(local_binomial_irreducible(&q, &w3, &rat_elem(&q, 2), 2).unwrap());
    }

    #[test]
    fn unramified_quartic_at_two() {
        // Q(zeta_5) at 2 has f = 4; 2 has valuation 1 so it is no fifth power
        let e = examples::zeta5();
        let k = e.field();
        let w = split_prime(k, 2).unwrap().remove(0);
        assert!(local_binomial_irreducible(k, &w, &rat_elem(k, 2), 5).unwrap());
        // units of F_16 are 15 = 3 * 5 divisible: only fifth powers of (F_16)^* form index 5
        assert!(is_local_nth_power(k, &w, &rat_elem(k, 1), 5).unwrap());
    }

    #[test]
    fn local_element_json() {
        let q = NumberField::rationals();
        let w = first_place_over(&q, 5).unwrap();
        let (_, x) = to_local(&q, &w, &rat_elem(&q, 50), 4).unwrap();
        assert_eq!(x.val, 2);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"q":5,"val":2,"unit":["2"],"prec":4}"#);
    }

    /// Classical criteria for powers in `Q_p`, independent of the digit search.
    fn oracle_power(a: i64, p: i64, n: i64) -> bool {
        let mut u = a;
        let mut v = 0;
        while u % p == 0 {
            u /= p;
            v += 1;
        }
        if v % n != 0 {
            return false;
        }
        match (p, n) {
            (2, 2) => u.rem_euclid(8) == 1,
            (3, 3) => matches!(u.rem_euclid(9), 1 | 8),
            (_, 2) => (1..p).any(|x| (x * x - u).rem_euclid(p) == 0),
            (_, 3) => (1..p).any(|x| (x * x * x - u).rem_euclid(p) == 0),
            _ => unreachable!(),
        }
    }

    #[test]
    fn agrees_with_classical_criteria() {
        let q = NumberField::rationals();
        for (p, n) in [(2, 2), (3, 2), (5, 2), (3, 3), (7, 3), (2, 3)] {
            let w = first_place_over(&q, p as u64).unwrap();
            for a in (-60i64..=60).filter(|&a| a != 0) {
                let got = is_local_nth_power(&q, &w, &rat_elem(&q, a), n as u64).unwrap();
                assert_eq!(got, oracle_power(a, p, n), "a={a} p={p} n={n}");
            }
        }
    }
}
