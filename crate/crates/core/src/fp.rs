//! Polynomials over prime fields `F_p` (small `p`) and their factorization.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{big_to_u64, inv_mod, mul_mod, rat_mod};
use crate::poly::Polynomial;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for a in c.iter_mut() {
            *a %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, a: u64) -> Self {
        Self::new(p, vec![a])
    }

    /// Reduction of a rational polynomial; `None` if a denominator vanishes mod p.
    pub fn from_poly(f: &Polynomial, p: u64) -> Option<Self> {
        let m = BigInt::from(p);
        let c =
            f.coeffs().iter().map(|x| rat_mod(x, &m).map(|r| big_to_u64(&r).unwrap())).collect::<Option<Vec<_>>>()?;
        Some(Self::new(p, c))
    }

    pub fn from_bigints(cs: &[BigInt], p: u64) -> Self {
        let m = BigInt::from(p);
        Self::new(p, cs.iter().map(|x| big_to_u64(&x.mod_floor(&m)).unwrap()).collect())
    }

    /// Integer lift with coefficients in `[0, p)`.
    pub fn to_poly(&self) -> Polynomial {
        Polynomial::from_bigints(&self.to_bigints())
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.c.iter().map(|&a| BigInt::from(a)).collect()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn scale(&self, a: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| mul_mod(x, a, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.c.iter().map(|&a| (self.p - a) % self.p).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::new(self.p, out.into_iter().map(|x| x as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.c.len() < d.c.len() {
            return (Self::zero(self.p), self.clone());
        }
        let p = self.p;
        let inv = inv_mod(d.lc(), p);
        let dl = d.degree();
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dl];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dl], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.c.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mul_mod(c, dc, p)) % p;
            }
            q[i] = c;
        }
        r.truncate(dl);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mul_mod(a, i as u64 % self.p, self.p)).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| (mul_mod(acc, x, self.p) + a) % self.p)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Evaluate `self(g) mod m`.
    pub fn compose_mod(&self, g: &Self, m: &Self) -> Self {
        self.c.iter().rev().fold(Self::zero(self.p), |acc, &a| acc.mul(g).add(&Self::constant(self.p, a)).rem(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// canonically sorted. Constant factors are dropped.
    pub fn factor(&self) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        for (g, mult) in self.monic().squarefree() {
            for (h, d) in g.distinct_degree() {
                for irr in h.equal_degree(d) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
        out
    }

    fn squarefree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let mut c = self.gcd(&self.derivative());
        let mut w = self.div_rem(&c).0;
        let mut i = 1;
        while w.degree() > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.degree() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y.clone();
            c = c.div_rem(&y).0;
        }
        if c.degree() > 0 {
            // c is a p-th power
            let root = FpPoly::new(p, c.c.iter().step_by(p as usize).copied().collect());
            for (g, m) in root.squarefree() {
                out.push((g, m * p as usize));
            }
        }
        out
    }

    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let pe = BigUint::from(p);
        let mut d = 1;
        while f.degree() >= 2 * d {
            h = h.pow_mod(&pe, &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.degree() > 0 {
            let dd = f.degree();
            out.push((f, dd));
        }
        out
    }

    fn equal_degree(&self, d: usize) -> Vec<FpPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6777_5f66_705f_6564);
        let mut out = Vec::new();
        self.edf_rec(d, &mut rng, &mut out);
        out
    }

    fn edf_rec(&self, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
        let n = self.degree();
        if n == d {
            out.push(self.monic());
            return;
        }
        let p = self.p;
        loop {
            let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree() == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / 2u32;
                a.pow_mod(&e, self).sub(&Self::one(p))
            };
            let g = b.gcd(self);
            if g.degree() > 0 && g.degree() < n {
                let h = self.div_rem(&g).0;
                g.edf_rec(d, rng, out);
                h.edf_rec(d, rng, out);
                return;
            }
        }
    }

    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.c, self.p)
    }
}

/// Arithmetic in the residue field `F_p[x]/(g)` for irreducible `g`.
#[derive(Clone, Debug)]
pub struct ResidueField {
    pub modulus: FpPoly,
}

impl ResidueField {
    pub fn new(modulus: FpPoly) -> Self {
        ResidueField { modulus }
    }

    pub fn p(&self) -> u64 {
        self.modulus.modulus()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    /// Number of elements `p^f`.
    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.p()), self.degree())
    }

    pub fn reduce(&self, a: &FpPoly) -> FpPoly {
        a.rem(&self.modulus)
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b).rem(&self.modulus)
    }

    pub fn pow(&self, a: &FpPoly, e: &BigUint) -> FpPoly {
        a.pow_mod(e, &self.modulus)
    }

    pub fn inv(&self, a: &FpPoly) -> Option<FpPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        g.is_one().then(|| s.rem(&self.modulus))
    }

    /// Whether `a` (nonzero) is an n-th power in the multiplicative group.
    pub fn is_nth_power(&self, a: &FpPoly, n: u64) -> bool {
        let q1 = self.order() - BigUint::one();
        let g = q1.gcd(&BigUint::from(n));
        self.pow(a, &(q1 / g)).is_one()
    }

    /// All elements, in a fixed enumeration order (coefficient vectors base p).
    pub fn elements(&self) -> impl Iterator<Item = FpPoly> + '_ {
        let p = self.p();
        let f = self.degree() as u32;
        let total = p.pow(f);
        (0..total).map(move |mut k| {
            let mut c = Vec::with_capacity(f as usize);
            for _ in 0..f {
                c.push(k % p);
                k /= p;
            }
            FpPoly::new(p, c)
        })
    }

    pub fn is_zero_elem(&self, a: &FpPoly) -> bool {
        self.reduce(a).is_zero()
    }
}

impl FpPoly {
    pub fn is_zero_big(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(fs: &[(FpPoly, usize)], p: u64) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)))
    }

    #[test]
    fn factor_mod_small_primes() {
        // x^3 + x^2 - 2x - 1 = (x - 2)^3 mod 7 and irreducible mod 2
        let f = Polynomial::from_ints(&[-1, -2, 1, 1]);
        let f7 = FpPoly::from_poly(&f, 7).unwrap();
        assert_eq!(f7.factor(), vec![(FpPoly::new(7, vec![5, 1]), 3)]);
        let f2 = FpPoly::from_poly(&f, 2).unwrap();
        assert!(f2.is_irreducible());
    }

    #[test]
    fn factor_products_match() {
        for p in [2u64, 3, 5, 7, 13] {
            let f = FpPoly::new(p, vec![1, 0, 0, 0, 1, 1, 0, 1, 1, 0, 1]);
            let fs = f.factor();
            assert_eq!(prod(&fs, p), f.monic(), "p = {p}");
            for (g, _) in &fs {
                assert_eq!(g.lc(), 1);
            }
        }
        // p-th power content
        let g = FpPoly::new(3, vec![1, 1]);
        let f = g.mul(&g).mul(&g).mul(&FpPoly::new(3, vec![1, 0, 1]));
        assert_eq!(f.factor(), vec![(g, 3), (FpPoly::new(3, vec![1, 0, 1]), 1)]);
    }

    #[test]
    fn residue_field_powers() {
        // F_9 = F_3[x]/(x^2 - 2)
        let k = ResidueField::new(FpPoly::new(3, vec![1, 0, 1]));
        let squares = k.elements().filter(|a| !a.is_zero() && k.is_nth_power(a, 2)).count();
        assert_eq!(squares, 4);
    }
}
