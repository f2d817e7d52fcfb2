//! Absolute number fields `Q[x]/(f)` with exact power-basis arithmetic,
//! polynomials over them, and Trager factorization.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{exact_root_rat, fmt_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::factor::{factor_integer_poly, is_irreducible};
use crate::linalg::{kernel, transpose, Matrix};
use crate::poly::Polynomial;
use crate::real::{isolate_real_roots, RootInterval};

/// Largest shift tried by the norm/resultant factorization.
pub const TRAGER_SHIFT_BOUND: i64 = 50;

pub struct NumberField {
    poly: Polynomial,
    disc: BigInt,
    real_roots: Vec<RootInterval>,
}

pub type Field = Arc<NumberField>;

impl NumberField {
    pub fn new(f: Polynomial) -> Result<Field> {
        Self::check_shape(&f)?;
        if !is_irreducible(&f)? {
            return Err(Error::ReduciblePolynomial);
        }
        Ok(Self::build(f))
    }

    /// Construction for a polynomial whose irreducibility was just proven.
    pub(crate) fn from_irreducible(f: Polynomial) -> Result<Field> {
        Self::check_shape(&f)?;
        Ok(Self::build(f))
    }

    fn check_shape(f: &Polynomial) -> Result<()> {
        if f.degree() == 0 {
            return Err(Error::Malformed("defining polynomial must have degree >= 1".into()));
        }
        if !f.is_monic() {
            return Err(Error::NonMonic);
        }
        if !f.is_integral() {
            return Err(Error::NonIntegral);
        }
        Ok(())
    }

    fn build(f: Polynomial) -> Field {
        let disc = f.discriminant().to_integer();
        let real_roots = isolate_real_roots(&f);
        Arc::new(NumberField { poly: f, disc, real_roots })
    }

    pub fn rationals() -> Field {
        Self::build(Polynomial::x())
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn real_roots(&self) -> &[RootInterval] {
        &self.real_roots
    }

    /// `(r1, r2)`: real embeddings and pairs of complex embeddings.
    pub fn signature(&self) -> (usize, usize) {
        let r1 = self.real_roots.len();
        (r1, (self.degree() - r1) / 2)
    }

    pub fn same(&self, other: &NumberField) -> bool {
        self.poly == other.poly
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.poly)
    }
}

#[derive(Clone)]
pub struct NFElement {
    field: Field,
    coords: Vec<Rational>,
}

impl NFElement {
    pub fn new(field: &Field, coords: Vec<Rational>) -> Self {
        Self::from_poly(field, &Polynomial::new(coords))
    }

    pub fn from_poly(field: &Field, p: &Polynomial) -> Self {
        let r = p.rem(field.poly());
        let mut coords = r.coeffs().to_vec();
        coords.resize(field.degree(), Rational::zero());
        NFElement { field: field.clone(), coords }
    }

    pub fn from_rational(field: &Field, c: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = c;
        NFElement { field: field.clone(), coords }
    }

    pub fn from_int(field: &Field, c: i64) -> Self {
        Self::from_rational(field, int(c))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    /// The class of `x`.
    pub fn gen(field: &Field) -> Self {
        Self::from_poly(field, &Polynomial::x())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|c| c.is_one())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| self.coords[0].clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let (g, s, _) = self.to_poly().ext_gcd(self.field.poly());
        debug_assert_eq!(g, Polynomial::one());
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        NFElement { field: self.field.clone(), coords: self.coords.iter().map(|x| x * c).collect() }
    }

    /// Absolute norm `N_{K/Q}`, computed as `Res(f, a)`.
    pub fn norm(&self) -> Rational {
        if self.field.degree() == 1 {
            return self.coords[0].clone();
        }
        self.field.poly().resultant(&self.to_poly())
    }

    /// Absolute trace: the trace of the multiplication matrix.
    pub fn trace(&self) -> Rational {
        let n = self.field.degree();
        let mut t = Rational::zero();
        let mut basis = Self::one(&self.field);
        let theta = Self::gen(&self.field);
        for j in 0..n {
            t += (self * &basis).coords[j].clone();
            basis = &basis * &theta;
        }
        t
    }

    /// Minimal polynomial over Q, monic.
    pub fn min_poly(&self) -> Polynomial {
        let n = self.field.degree();
        let mut powers = vec![Self::one(&self.field)];
        for d in 1..=n {
            powers.push(&powers[d - 1] * self);
            let cols: Matrix = powers.iter().map(|p| p.coords.clone()).collect();
            let k = kernel(&transpose(&cols), d + 1);
            if let Some(v) = k.first() {
                return Polynomial::new(v.clone()).monic();
            }
        }
        unreachable!("n + 1 powers in an n-dimensional space are dependent")
    }

    /// Evaluate this element's coordinate polynomial at `x`, which may live in another field.
    pub fn eval_at(&self, x: &NFElement) -> NFElement {
        let mut acc = NFElement::zero(&x.field);
        for c in self.coords.iter().rev() {
            acc = &(&acc * x) + &NFElement::from_rational(&x.field, c.clone());
        }
        acc
    }

    pub fn to_json(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rational).collect()
    }

    pub fn from_json(field: &Field, cs: &[String]) -> Result<Self> {
        if cs.len() != field.degree() {
            return Err(Error::Malformed(format!("expected {} coordinates, got {}", field.degree(), cs.len())));
        }
        Ok(Self::new(field, cs.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?))
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl PartialEq for NFElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field.same(&other.field)
    }
}

impl Eq for NFElement {}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl Add for &NFElement {
    type Output = NFElement;
    fn add(self, o: &NFElement) -> NFElement {
        NFElement { field: self.field.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &NFElement {
    type Output = NFElement;
    fn sub(self, o: &NFElement) -> NFElement {
        NFElement { field: self.field.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        NFElement { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Mul for &NFElement {
    type Output = NFElement;
    fn mul(self, o: &NFElement) -> NFElement {
        NFElement::from_poly(&self.field, &(&self.to_poly() * &o.to_poly()))
    }
}

/// Dense polynomial with coefficients in a number field, ascending degree.
#[derive(Clone)]
pub struct KPoly {
    field: Field,
    coeffs: Vec<NFElement>,
}

impl KPoly {
    pub fn new(field: &Field, mut coeffs: Vec<NFElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Self {
        KPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: NFElement) -> Self {
        let f = c.field.clone();
        Self::new(&f, vec![c])
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(NFElement::one(field))
    }

    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![NFElement::zero(field), NFElement::one(field)])
    }

    pub fn from_rational_poly(field: &Field, p: &Polynomial) -> Self {
        Self::new(field, p.coeffs().iter().map(|c| NFElement::from_rational(field, c.clone())).collect())
    }

    /// `x^n - a`.
    pub fn binomial(n: usize, a: &NFElement) -> Self {
        let f = a.field.clone();
        let mut cs = vec![NFElement::zero(&f); n + 1];
        cs[0] = -a;
        cs[n] = NFElement::one(&f);
        Self::new(&f, cs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[NFElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> NFElement {
        self.coeffs.last().cloned().unwrap_or_else(|| NFElement::zero(&self.field))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &NFElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn as_rational_poly(&self) -> Option<Polynomial> {
        self.coeffs.iter().map(|c| c.as_rational()).collect::<Option<Vec<_>>>().map(Polynomial::new)
    }

    pub fn eval(&self, x: &NFElement) -> NFElement {
        self.coeffs.iter().rev().fold(NFElement::zero(&self.field), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&int(i as i64))).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(&self.field), self.clone());
        }
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let dl = d.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![NFElement::zero(&self.field); r.len() - dl];
        for i in (0..q.len()).rev() {
            let c = &r[i + dl] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] - &(&c * dc);
            }
            q[i] = c;
        }
        r.truncate(dl);
        (Self::new(&self.field, q), Self::new(&self.field, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &NFElement) -> Self {
        let lin = Self::new(&self.field, vec![c.clone(), NFElement::one(&self.field)]);
        self.coeffs.iter().rev().fold(Self::zero(&self.field), |acc, a| &(&acc * &lin) + &Self::constant(a.clone()))
    }

    /// Yun's squarefree decomposition of the monic associate.
    pub fn squarefree_decomposition(&self) -> Vec<(KPoly, usize)> {
        let f = self.monic();
        if f.degree() == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree() == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                let o = a.canonical_cmp(b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialEq for KPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for KPoly {}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl Add for &KPoly {
    type Output = KPoly;
    fn add(self, o: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = NFElement::zero(&self.field);
        KPoly::new(
            &self.field,
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect(),
        )
    }
}

impl Sub for &KPoly {
    type Output = KPoly;
    fn sub(self, o: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = NFElement::zero(&self.field);
        KPoly::new(
            &self.field,
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z)).collect(),
        )
    }
}

impl Mul for &KPoly {
    type Output = KPoly;
    fn mul(self, o: &KPoly) -> KPoly {
        if self.is_zero() || o.is_zero() {
            return KPoly::zero(&self.field);
        }
        let mut out = vec![NFElement::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        KPoly::new(&self.field, out)
    }
}

/// Evaluate a rational polynomial at a field element.
pub fn eval_poly(p: &Polynomial, x: &NFElement) -> NFElement {
    p.coeffs()
        .iter()
        .rev()
        .fold(NFElement::zero(x.field()), |acc, c| &(&acc * x) + &NFElement::from_rational(x.field(), c.clone()))
}

/// Shift order 0, 1, -1, 2, -2, ...
fn shifts() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=TRAGER_SHIFT_BOUND).flat_map(|s| [s, -s]))
}

/// Factor `g` over its coefficient field into monic irreducibles with multiplicities.
pub fn factor_over(g: &KPoly) -> Result<Vec<(KPoly, usize)>> {
    if g.is_zero() {
        return Err(Error::Malformed("cannot factor the zero polynomial".into()));
    }
    let mut out = Vec::new();
    for (part, mult) in g.squarefree_decomposition() {
        for f in trager_squarefree(&part)? {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Norm of `g(x - s*theta)` as a rational polynomial, by interpolation.
pub fn shifted_norm(g: &KPoly, s: i64) -> Polynomial {
    let k = g.field();
    let deg = k.degree() * g.degree();
    let theta = NFElement::gen(k);
    let st = theta.scale(&int(s));
    let points: Vec<(Rational, Rational)> = (0..=deg as i64)
        .map(|x0| {
            let arg = &NFElement::from_int(k, x0) - &st;
            (int(x0), g.eval(&arg).norm())
        })
        .collect();
    Polynomial::interpolate(&points)
}

fn trager_squarefree(g: &KPoly) -> Result<Vec<KPoly>> {
    let k = g.field().clone();
    if g.degree() <= 1 {
        return Ok(vec![g.monic()]);
    }
    if k.degree() == 1 {
        let p = g.as_rational_poly().expect("degree-one field elements are rational");
        return Ok(factor_integer_poly(&p)?.1.into_iter().map(|(h, _)| KPoly::from_rational_poly(&k, &h)).collect());
    }
    let theta = NFElement::gen(&k);
    for s in shifts() {
        let n = shifted_norm(g, s);
        if !n.is_squarefree() {
            continue;
        }
        let (_, facs) = factor_integer_poly(&n)?;
        if facs.len() == 1 {
            return Ok(vec![g.monic()]);
        }
        let st = theta.scale(&int(s));
        let mut out: Vec<KPoly> = facs
            .iter()
            .map(|(h, _)| g.gcd(&KPoly::from_rational_poly(&k, h).shift(&st)))
            .filter(|h| h.degree() > 0)
            .collect();
        out.sort_by(|a, b| a.canonical_cmp(b));
        return Ok(out);
    }
    Err(Error::ShiftExhausted { bound: TRAGER_SHIFT_BOUND })
}

/// Some `r` in the field with `r^n = a`, if one exists.
pub fn nth_root_in(a: &NFElement, n: u32) -> Result<Option<NFElement>> {
    let k = a.field().clone();
    if a.is_zero() || n == 1 {
        return Ok(Some(a.clone()));
    }
    if let Some(c) = a.as_rational() {
        if let Some(r) = exact_root_rat(&c, n) {
            return Ok(Some(NFElement::from_rational(&k, r)));
        }
    }
    if k.degree() == 1 {
        return Ok(None);
    }
    // N(r)^n = N(a) is necessary
    if exact_root_rat(&a.norm(), n).is_none() {
        return Ok(None);
    }
    let facs = factor_over(&KPoly::binomial(n as usize, a))?;
    Ok(facs.iter().find(|(h, _)| h.degree() == 1).map(|(h, _)| -&h.coeffs()[0]))
}

/// The cyclotomic polynomial `Phi_m`.
pub fn cyclotomic(m: u64) -> Polynomial {
    let mut f = Polynomial::binomial(m as usize, &Rational::one());
    for d in crate::arith::divisors(m) {
        if d < m {
            f = f.div_rem(&cyclotomic(d)).0;
        }
    }
    f
}

/// The canonical primitive `m`-th root of unity in the field, if any: the
/// root of the first linear factor of `Phi_m` in canonical order.
pub fn primitive_root_of_unity(k: &Field, m: u64) -> Result<Option<NFElement>> {
    match m {
        0 => return Err(Error::Malformed("m must be positive".into())),
        1 => return Ok(Some(NFElement::one(k))),
        2 => return Ok(Some(NFElement::from_int(k, -1))),
        _ => {}
    }
    let phi = cyclotomic(m);
    if !k.degree().is_multiple_of(phi.degree()) {
        return Ok(None);
    }
    let facs = factor_over(&KPoly::from_rational_poly(k, &phi))?;
    Ok(facs.iter().find(|(h, _)| h.degree() == 1).map(|(h, _)| -&h.coeffs()[0]))
}

pub fn roots_of_unity_in(k: &Field, m: u64) -> Result<bool> {
    Ok(primitive_root_of_unity(k, m)?.is_some())
}

/// Multiplicative order of a root of unity, if it is one of order dividing `bound`.
pub fn root_of_unity_order(z: &NFElement, bound: u64) -> Option<u64> {
    let mut acc = z.clone();
    for d in 1..=bound {
        if acc.is_one() {
            return Some(d);
        }
        acc = &acc * z;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn field(cs: &[i64]) -> Field {
        NumberField::new(Polynomial::from_ints(cs)).unwrap()
    }

    #[test]
    fn field_construction() {
        let k = field(&[-2, 0, 1]);
        assert_eq!(k.degree(), 2);
        assert_eq!(*k.discriminant(), BigInt::from(8));
        assert_eq!(k.real_roots().len(), 2);
        let c = field(&[-1, -2, 1, 1]);
        assert_eq!(*c.discriminant(), BigInt::from(49));
        assert_eq!(c.real_roots().len(), 3);
        assert_eq!(NumberField::new(Polynomial::from_ints(&[-1, 0, 1])).err(), Some(Error::ReduciblePolynomial));
        assert_eq!(NumberField::new(Polynomial::from_ints(&[1, 2])).err(), Some(Error::NonMonic));
        assert_eq!(NumberField::new(Polynomial::new(vec![rat(1, 2), int(1)])).err(), Some(Error::NonIntegral));
    }

    #[test]
    fn element_arithmetic() {
        let k = field(&[-2, 0, 1]);
        let a = NFElement::new(&k, vec![int(1), int(1)]);
        assert_eq!(a.norm(), int(-1));
        assert_eq!(a.trace(), int(2));
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(a.min_poly(), Polynomial::from_ints(&[-1, -2, 1]));
        assert_eq!(a.pow(-2).unwrap(), (&inv * &inv));
        assert_eq!(NFElement::zero(&k).inv().err(), Some(Error::ZeroElement));
    }

    #[test]
    fn trager_examples() {
        let k = field(&[-2, 0, 1]);
        let f = factor_over(&KPoly::from_rational_poly(&k, &Polynomial::from_ints(&[-2, 0, 1]))).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(h, m)| h.degree() == 1 && *m == 1));
        let f = factor_over(&KPoly::from_rational_poly(&k, &Polynomial::from_ints(&[-3, 0, 1]))).unwrap();
        assert_eq!(f.len(), 1);
        let i = field(&[1, 0, 1]);
        let f = factor_over(&KPoly::from_rational_poly(&i, &Polynomial::from_ints(&[1, 0, 1]))).unwrap();
        assert_eq!(f.len(), 2);
        // product of factors reproduces the input
        let g = KPoly::from_rational_poly(&i, &Polynomial::from_ints(&[4, 0, 0, 0, 1]));
        let prod = factor_over(&g).unwrap().iter().fold(KPoly::one(&i), |acc, (h, _)| &acc * h);
        assert_eq!(prod, g);
    }

    #[test]
    fn roots_and_unity() {
        let k = field(&[-2, 0, 1]);
        let two = NFElement::from_int(&k, 2);
        let r = nth_root_in(&two, 2).unwrap().unwrap();
        assert_eq!(&r * &r, two);
        assert!(nth_root_in(&NFElement::from_int(&k, 3), 2).unwrap().is_none());
        assert!(!roots_of_unity_in(&k, 4).unwrap());
        let z3 = field(&[1, 1, 1]);
        assert!(roots_of_unity_in(&z3, 3).unwrap());
        let z = primitive_root_of_unity(&z3, 3).unwrap().unwrap();
        assert_eq!(root_of_unity_order(&z, 12), Some(3));
        assert_eq!(cyclotomic(12), Polynomial::from_ints(&[1, 0, -1, 0, 1]));
        assert!(roots_of_unity_in(&NumberField::rationals(), 2).unwrap());
    }
}
