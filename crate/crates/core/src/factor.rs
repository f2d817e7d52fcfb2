//! Factorization of rational polynomials: Yun squarefree split, then
//! Zassenhaus (modular factorization, quadratic Hensel lifting, subset
//! recombination) on each primitive squarefree part.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, symmetric_mod, Rational};
use crate::error::{Error, Result};
use crate::fp::FpPoly;
use crate::poly::Polynomial;

/// Largest squarefree degree handed to Zassenhaus.
pub const DEGREE_CAP: usize = 24;

/// Number of good primes examined before choosing the lifting prime.
const PRIME_TRIALS: usize = 6;

/// Unit times monic irreducible factors with multiplicities, canonically sorted.
pub type Factorization = (Rational, Vec<(Polynomial, usize)>);

pub fn factor_integer_poly(g: &Polynomial) -> Result<Factorization> {
    if g.is_zero() {
        return Err(Error::Malformed("cannot factor the zero polynomial".into()));
    }
    let unit = g.lc();
    let mut out = Vec::new();
    if g.degree() == 0 {
        return Ok((unit, out));
    }
    for (part, mult) in g.squarefree_decomposition() {
        for f in factor_squarefree(&part)? {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok((unit, out))
}

pub fn is_irreducible(g: &Polynomial) -> Result<bool> {
    if g.degree() == 0 {
        return Ok(false);
    }
    if g.degree() == 1 {
        return Ok(true);
    }
    if !g.is_squarefree() {
        return Ok(false);
    }
    Ok(factor_squarefree(&g.monic())?.len() == 1)
}

/// Monic irreducible factors of a squarefree polynomial.
fn factor_squarefree(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let f = f.monic();
    let n = f.degree();
    if n <= 1 {
        return Ok(vec![f]);
    }
    if n > DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { degree: n, cap: DEGREE_CAP });
    }
    let (_, h) = f.primitive_part();
    let mut out: Vec<Polynomial> = zassenhaus(&h).iter().map(|c| Polynomial::from_bigints(c).monic()).collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let next: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(next);
    }
    s
}

/// Primitive irreducible factors over Z of a primitive squarefree `h`.
fn zassenhaus(h: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = h.len() - 1;
    let lc = h[n].clone();
    let hp = Polynomial::from_bigints(h);

    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut found = 0;
    for p in (2u64..).filter(|&p| is_prime(p)) {
        if found >= PRIME_TRIALS || p > 5000 {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = FpPoly::from_bigints(h, p);
        if !fp.is_squarefree() {
            continue;
        }
        found += 1;
        let facs: Vec<FpPoly> = fp.factor().into_iter().map(|(g, _)| g).collect();
        let degs: Vec<usize> = facs.iter().map(|g| g.degree()).collect();
        allowed = allowed.intersection(&subset_sums(&degs)).copied().collect();
        if facs.len() == 1 || allowed.len() <= 2 {
            return vec![h.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.expect("a squarefree reduction exists for some small prime");

    // Mignotte-style bound on factor coefficients, times lc for the recombination shift.
    let norm2: BigInt = h.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (BigInt::one() << n) * norm2 * lc.abs();
    let target = bound * 2 + 1;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus < target {
        modulus = &modulus * &modulus;
    }
    let lifted = multi_lift(h, &facs, &pb, &modulus);

    recombine(hp, lifted, &allowed, &modulus)
}

fn recombine(
    mut hp: Polynomial,
    mut lifted: Vec<Vec<BigInt>>,
    allowed: &BTreeSet<usize>,
    m: &BigInt,
) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut k = 1;
    while 2 * k <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), k) {
            let deg: usize = subset.iter().map(|&i| lifted[i].len() - 1).sum();
            // every factor of the remaining part divides the original
            if !allowed.contains(&deg) {
                continue;
            }
            let (_, hz) = hp.primitive_part();
            let lc = hz.last().unwrap().clone();
            let mut g = vec![lc];
            for &i in &subset {
                g = zm_mul(&g, &lifted[i], m);
            }
            let g: Vec<BigInt> = g.iter().map(|c| symmetric_mod(c, m)).collect();
            let cand = Polynomial::from_bigints(&Polynomial::from_bigints(&g).primitive_part().1);
            if cand.degree() == 0 {
                continue;
            }
            let (q, r) = hp.div_rem(&cand);
            if r.is_zero() && q.is_integral() {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                out.push(cand.primitive_part().1);
                hp = q;
                let keep: Vec<Vec<BigInt>> =
                    lifted.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, f)| f).collect();
                lifted = keep;
            }
            None => k += 1,
        }
    }
    if hp.degree() > 0 {
        out.push(hp.primitive_part().1);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Lift `h = lc * prod facs (mod p)` to monic factors modulo `m = p^(2^j)`.
fn multi_lift(h: &[BigInt], facs: &[FpPoly], p: &BigInt, m: &BigInt) -> Vec<Vec<BigInt>> {
    let pu = facs[0].modulus();
    let mut target: Vec<BigInt> = h.iter().map(|c| c.mod_floor(m)).collect();
    let mut out = Vec::new();
    for i in 0..facs.len() - 1 {
        let hfac = &facs[i];
        let rest = facs[i + 1..].iter().fold(FpPoly::one(pu), |acc, f| acc.mul(f));
        let g0 = FpPoly::from_bigints(&target, pu).div_rem(hfac).0;
        debug_assert_eq!(g0.monic(), rest);
        let (one, s, t) = g0.ext_gcd(hfac);
        debug_assert!(one.is_one());
        let (g, hl) =
            hensel_quadratic(&target, g0.to_bigints(), hfac.to_bigints(), s.to_bigints(), t.to_bigints(), p, m);
        out.push(hl);
        target = g;
    }
    let lc = target.last().unwrap().clone();
    let inv = crate::arith::inv_mod_big(&lc, m).expect("lc is a unit mod p");
    out.push(target.iter().map(|c| (c * &inv).mod_floor(m)).collect());
    out
}

/// Lift `f = cof * monic (mod q)` to a factorization modulo `q^digits`; returns `(cof, monic)`.
pub(crate) fn hensel_lift_pair(f: &[BigInt], cof: &FpPoly, monic: &FpPoly, digits: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let q = BigInt::from(cof.modulus());
    let target = num_traits::pow(q.clone(), digits as usize);
    let mut m = q.clone();
    while m < target {
        m = &m * &m;
    }
    let (one, s, t) = cof.ext_gcd(monic);
    assert!(one.is_one(), "factors must be coprime mod q");
    let (g, h) = hensel_quadratic(f, cof.to_bigints(), monic.to_bigints(), s.to_bigints(), t.to_bigints(), &q, &m);
    (zm_reduce(&g, &target), zm_reduce(&h, &target))
}

/// Lift `f = g h` with `h` monic and `s g + t h = 1` from modulus `p` to `m`.
fn hensel_quadratic(
    f: &[BigInt],
    mut g: Vec<BigInt>,
    mut h: Vec<BigInt>,
    mut s: Vec<BigInt>,
    mut t: Vec<BigInt>,
    p: &BigInt,
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut cur = p.clone();
    while &cur < m {
        let mm = (&cur * &cur).min(m.clone());
        let e = zm_sub(&zm_reduce(f, &mm), &zm_mul(&g, &h, &mm), &mm);
        let (q, r) = zm_divrem_monic(&zm_mul(&s, &e, &mm), &h, &mm);
        let g1 = zm_add(&zm_add(&g, &zm_mul(&t, &e, &mm), &mm), &zm_mul(&q, &g, &mm), &mm);
        let h1 = zm_add(&h, &r, &mm);
        let b = zm_sub(&zm_add(&zm_mul(&s, &g1, &mm), &zm_mul(&t, &h1, &mm), &mm), &[BigInt::one()], &mm);
        let (c, d) = zm_divrem_monic(&zm_mul(&s, &b, &mm), &h1, &mm);
        s = zm_sub(&s, &d, &mm);
        t = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &mm), &mm), &zm_mul(&c, &g1, &mm), &mm);
        g = g1;
        h = h1;
        cur = mm;
    }
    (g, h)
}

fn zm_trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zm_reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    zm_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let z = BigInt::zero();
    let n = a.len().max(b.len());
    zm_trim((0..n).map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let z = BigInt::zero();
    let n = a.len().max(b.len());
    zm_trim((0..n).map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_reduce(&out, m)
}

/// Division by a monic divisor modulo `m`.
fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
        }
        q[i] = c;
    }
    r.truncate(db);
    (zm_trim(q), zm_reduce(&r, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn expand(f: &Factorization) -> Polynomial {
        f.1.iter().fold(Polynomial::constant(f.0.clone()), |acc, (g, m)| &acc * &g.pow(*m as u32))
    }

    #[test]
    fn sophie_germain_quartic() {
        let f = Polynomial::from_ints(&[4, 0, 0, 0, 1]);
        let fac = factor_integer_poly(&f).unwrap();
        assert_eq!(fac.1, vec![(Polynomial::from_ints(&[2, -2, 1]), 1), (Polynomial::from_ints(&[2, 2, 1]), 1)]);
        assert_eq!(expand(&fac), f);
    }

    #[test]
    fn irreducible_and_split_binomials() {
        assert!(is_irreducible(&Polynomial::from_ints(&[-2, 0, 0, 0, 1])).unwrap());
        let fac = factor_integer_poly(&Polynomial::from_ints(&[-1, 0, 1])).unwrap();
        assert_eq!(fac.1.len(), 2);
        // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
        let f = Polynomial::binomial(8, &int(1));
        let fac = factor_integer_poly(&f).unwrap();
        assert_eq!(fac.1.len(), 4);
        assert_eq!(expand(&fac), f);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // minimal polynomial of sqrt2 + sqrt3 splits into quadratics mod every prime
        let f = Polynomial::from_ints(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f).unwrap());
        let g = &f * &Polynomial::from_ints(&[-3, 0, 1]);
        let fac = factor_integer_poly(&g.scale(&int(6))).unwrap();
        assert_eq!(fac.0, int(6));
        assert_eq!(fac.1.len(), 2);
    }

    #[test]
    fn repeated_and_rational_factors() {
        let a = Polynomial::new(vec![crate::arith::rat(1, 2), int(1)]);
        let b = Polynomial::from_ints(&[1, 1, 1]);
        let f = &a.pow(3) * &b;
        let fac = factor_integer_poly(&f).unwrap();
        assert_eq!(fac.1, vec![(a, 3), (b, 1)]);
    }

    #[test]
    fn combination_enumeration() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 1).len(), 5);
    }
}
