//! Cyclic extensions `K/k` presented by a generator `sigma` of `Gal(K/k)`.
//! The base field `k` lives inside `K` as the span of a sigma-fixed basis.

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::field::{eval_poly, primitive_root_of_unity, Field, NFElement, NumberField};
use crate::linalg::{rank, solve, transpose, Matrix};

#[derive(Clone, Debug)]
pub struct CyclicExtension {
    field: Field,
    sigma: NFElement,
    order: usize,
    base_basis: Vec<NFElement>,
}

/// A subfield `F` of `K` presented absolutely, with the image of its generator in `K`.
#[derive(Clone, Debug)]
pub struct Subfield {
    pub ext: CyclicExtension,
    pub embedding: NFElement,
}

/// Order of the automorphism `theta -> image`, after checking it is one.
pub fn automorphism_order(field: &Field, image: &NFElement) -> Result<usize> {
    if !image.field().same(field) {
        return Err(Error::Malformed("sigma lives in a different field".into()));
    }
    if !eval_poly(field.poly(), image).is_zero() {
        return Err(Error::Malformed("sigma is not a root of the defining polynomial".into()));
    }
    let theta = NFElement::gen(field);
    let n = field.degree();
    let mut cur = image.clone();
    let mut order = 1;
    while cur != theta {
        cur = cur.eval_at(image);
        order += 1;
        if order > n {
            return Err(Error::Malformed("sigma does not have finite order dividing the degree".into()));
        }
    }
    if !n.is_multiple_of(order) {
        return Err(Error::Malformed("order of sigma does not divide the degree".into()));
    }
    Ok(order)
}

impl CyclicExtension {
    /// Validate `sigma` (the image of the generator) and compute the fixed field.
    pub fn new(field: &Field, sigma: NFElement) -> Result<Self> {
        let order = automorphism_order(field, &sigma)?;
        let n = field.degree();
        let mut ext = CyclicExtension { field: field.clone(), sigma, order, base_basis: Vec::new() };
        ext.base_basis = ext.fixed_basis(1);
        if ext.base_basis.len() != n / order {
            return Err(Error::Malformed("fixed field has the wrong dimension".into()));
        }
        Ok(ext)
    }

    /// `K/K` with the identity.
    pub fn trivial(field: &Field) -> Self {
        Self::new(field, NFElement::gen(field)).expect("identity is an automorphism")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn sigma(&self) -> &NFElement {
        &self.sigma
    }

    /// `[K:k]`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `[k:Q]`.
    pub fn base_degree(&self) -> usize {
        self.field.degree() / self.order
    }

    pub fn base_basis(&self) -> &[NFElement] {
        &self.base_basis
    }

    pub fn apply_sigma(&self, a: &NFElement) -> NFElement {
        a.eval_at(&self.sigma)
    }

    pub fn apply_sigma_pow(&self, a: &NFElement, j: usize) -> NFElement {
        (0..j % self.order).fold(a.clone(), |x, _| self.apply_sigma(&x))
    }

    pub fn is_fixed(&self, a: &NFElement) -> bool {
        self.apply_sigma(a) == *a
    }

    pub fn relative_norm(&self, a: &NFElement) -> Result<NFElement> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut acc = a.clone();
        let mut conj = a.clone();
        for _ in 1..self.order {
            conj = self.apply_sigma(&conj);
            acc = &acc * &conj;
        }
        Ok(acc)
    }

    /// Sum of the conjugates of `a` under the subgroup generated by `sigma^step`.
    pub fn partial_trace(&self, a: &NFElement, step: usize) -> NFElement {
        let count = self.order / step;
        let mut acc = a.clone();
        let mut conj = a.clone();
        for _ in 1..count {
            conj = self.apply_sigma_pow(&conj, step);
            acc = &acc + &conj;
        }
        acc
    }

    /// Basis of the fixed field of `sigma^step`, built greedily from `1` and traces of powers.
    fn fixed_basis(&self, step: usize) -> Vec<NFElement> {
        let n = self.field.degree();
        let target = n * step / self.order;
        let theta = NFElement::gen(&self.field);
        let mut out = vec![NFElement::one(&self.field)];
        let mut power = NFElement::one(&self.field);
        for _ in 1..n {
            if out.len() == target {
                break;
            }
            power = &power * &theta;
            let t = self.partial_trace(&power, step);
            let mut cand = out.clone();
            cand.push(t);
            let m: Matrix = cand.iter().map(|e| e.coords().to_vec()).collect();
            if rank(&m) == cand.len() {
                out = cand;
            }
        }
        out
    }

    /// Coordinates of a sigma-fixed element in the base basis.
    pub fn base_coords(&self, a: &NFElement) -> Option<Vec<Rational>> {
        let cols: Matrix = self.base_basis.iter().map(|b| b.coords().to_vec()).collect();
        solve(&transpose(&cols), a.coords())
    }

    pub fn from_base_coords(&self, c: &[Rational]) -> NFElement {
        self.base_basis.iter().zip(c).fold(NFElement::zero(&self.field), |acc, (b, x)| &acc + &b.scale(x))
    }

    /// The fixed field of `sigma^step` as an absolute field, with its induced generator.
    pub fn fixed_field(&self, step: usize) -> Result<Subfield> {
        assert!(step >= 1 && self.order.is_multiple_of(step), "step must divide the order");
        let basis = self.fixed_basis(step);
        let dim = basis.len();
        let gamma = self.primitive_element(step, dim);
        let mp = gamma.min_poly();
        let sub = NumberField::from_irreducible(mp)?;
        let powers: Vec<NFElement> = (0..dim as i64).map(|j| gamma.pow(j).unwrap()).collect();
        let cols: Matrix = powers.iter().map(|e| e.coords().to_vec()).collect();
        let image = self.apply_sigma(&gamma);
        let c = solve(&transpose(&cols), image.coords()).ok_or(Error::IrreducibilityLost)?;
        let ext = CyclicExtension::new(&sub, NFElement::new(&sub, c))?;
        Ok(Subfield { ext, embedding: gamma })
    }

    /// An algebraic integer generating the fixed field of `sigma^step`.
    fn primitive_element(&self, step: usize, dim: usize) -> NFElement {
        if dim == 1 {
            return NFElement::zero(&self.field);
        }
        let n = self.field.degree();
        let theta = NFElement::gen(&self.field);
        let mut traces = Vec::new();
        let mut power = NFElement::one(&self.field);
        for _ in 1..n.max(2) {
            power = &power * &theta;
            let t = self.partial_trace(&power, step);
            if t.min_poly().degree() == dim {
                return t;
            }
            traces.push(t);
        }
        // integer combinations of traces, by increasing height
        for h in 1i64.. {
            for (i, a) in traces.iter().enumerate() {
                for b in traces.iter().skip(i + 1) {
                    for c in [h, -h] {
                        let g = a + &b.scale(&int(c));
                        if g.min_poly().degree() == dim {
                            return g;
                        }
                    }
                }
            }
        }
        unreachable!()
    }

    /// The unique subfield `K_p` with `[K_p:k]` the exact `p`-part of `[K:k]`.
    pub fn subfield_at_prime(&self, p: u64) -> Result<Subfield> {
        let mut pa = 1usize;
        while self.order.is_multiple_of(pa * p as usize) {
            pa *= p as usize;
        }
        self.fixed_field(pa)
    }

    /// The base field `k` as an absolute field, with its embedding into `K`.
    pub fn base_field(&self) -> Result<Subfield> {
        self.fixed_field(1)
    }

    /// A primitive `m`-th root of unity of `K` lying in `k`, if `mu_m` is contained in `k`.
    pub fn base_root_of_unity(&self, m: u64) -> Result<Option<NFElement>> {
        Ok(primitive_root_of_unity(&self.field, m)?.filter(|z| self.is_fixed(z)))
    }
}

impl Subfield {
    /// Image in `K` of an element of the subfield.
    pub fn push(&self, a: &NFElement) -> NFElement {
        a.eval_at(&self.embedding)
    }

    /// Preimage of an element of `K` lying in the subfield.
    pub fn pull(&self, a: &NFElement) -> Option<NFElement> {
        let f = self.ext.field();
        let powers: Vec<Vec<Rational>> =
            (0..f.degree() as i64).map(|j| self.embedding.pow(j).unwrap().coords().to_vec()).collect();
        let c = solve(&transpose(&powers), a.coords())?;
        Some(NFElement::new(f, c))
    }
}

/// Small fields used throughout the tests and the command-line examples.
pub mod examples {
    use super::*;
    use crate::poly::Polynomial;

    fn ext(f: &[i64], sigma: Vec<i64>) -> CyclicExtension {
        let k = NumberField::new(Polynomial::from_ints(f)).expect("irreducible");
        let s = NFElement::new(&k, sigma.into_iter().map(int).collect());
        CyclicExtension::new(&k, s).expect("valid automorphism")
    }

    /// Q(sqrt 2)/Q.
    pub fn sqrt2() -> CyclicExtension {
        ext(&[-2, 0, 1], vec![0, -1])
    }

    /// Q(sqrt 3)/Q.
    pub fn sqrt3() -> CyclicExtension {
        ext(&[-3, 0, 1], vec![0, -1])
    }

    /// Q(i)/Q.
    pub fn gaussian() -> CyclicExtension {
        ext(&[1, 0, 1], vec![0, -1])
    }

    /// Q(zeta_5)/Q with sigma: zeta -> zeta^2.
    pub fn zeta5() -> CyclicExtension {
        ext(&[1, 1, 1, 1, 1], vec![0, 0, 1, 0])
    }

    /// Q(zeta_7)/Q with sigma: zeta -> zeta^3.
    pub fn zeta7() -> CyclicExtension {
        ext(&[1, 1, 1, 1, 1, 1, 1], vec![0, 0, 0, 1, 0, 0])
    }

    /// Q(zeta_7 + zeta_7^-1)/Q with sigma: t -> t^2 - 2.
    pub fn real_cubic7() -> CyclicExtension {
        ext(&[-1, -2, 1, 1], vec![-2, 0, 1])
    }

    /// Q/Q.
    pub fn rationals() -> CyclicExtension {
        CyclicExtension::trivial(&NumberField::rationals())
    }
}

impl CyclicExtension {
    /// Whether `sigma^[K:k]` is the identity and no smaller power is.
    pub fn sigma_order_check(&self) -> bool {
        let theta = NFElement::gen(&self.field);
        let back = self.apply_sigma_pow(&theta, self.order);
        back == theta && (1..self.order).all(|j| self.apply_sigma_pow(&theta, j) != theta)
    }

    pub fn zero(&self) -> NFElement {
        NFElement::zero(&self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::poly::Polynomial;

    #[test]
    fn relative_norms() {
        let e = sqrt2();
        let a = NFElement::new(e.field(), vec![int(1), int(1)]);
        assert_eq!(e.relative_norm(&a).unwrap(), NFElement::from_int(e.field(), -1));
        let g = gaussian();
        let b = NFElement::new(g.field(), vec![int(2), int(1)]);
        assert_eq!(g.relative_norm(&b).unwrap(), NFElement::from_int(g.field(), 5));
        assert!(e.relative_norm(&e.zero()).is_err());
    }

    #[test]
    fn sigma_orders() {
        for (e, r) in [(sqrt2(), 2), (zeta5(), 4), (zeta7(), 6), (real_cubic7(), 3), (rationals(), 1)] {
            assert_eq!(e.order(), r);
            assert!(e.sigma_order_check());
            assert_eq!(e.base_degree(), 1);
            assert!(e.base_basis()[0].is_one());
        }
        let bad = NFElement::new(sqrt2().field(), vec![int(1), int(1)]);
        assert!(CyclicExtension::new(sqrt2().field(), bad).is_err());
    }

    #[test]
    fn subfields_of_zeta7() {
        let e = zeta7();
        let two = e.subfield_at_prime(2).unwrap();
        assert_eq!(two.ext.field().poly(), &Polynomial::from_ints(&[2, 1, 1]));
        assert_eq!(two.ext.order(), 2);
        let three = e.subfield_at_prime(3).unwrap();
        assert_eq!(three.ext.field().poly(), &Polynomial::from_ints(&[-1, -2, 1, 1]));
        assert_eq!(three.ext.order(), 3);
        // the embedding is compatible with sigma
        let g = NFElement::gen(three.ext.field());
        assert_eq!(three.push(&three.ext.apply_sigma(&g)), e.apply_sigma(&three.push(&g)));
        assert_eq!(three.pull(&three.embedding).unwrap(), g);
        let trivial = sqrt2().subfield_at_prime(3).unwrap();
        assert_eq!(trivial.ext.field().degree(), 1);
    }

    #[test]
    fn base_roots_of_unity() {
        let e = gaussian();
        assert!(e.base_root_of_unity(2).unwrap().is_some());
        assert!(e.base_root_of_unity(4).unwrap().is_none());
        assert!(primitive_root_of_unity(e.field(), 4).unwrap().is_some());
    }

    #[test]
    fn nontrivial_base() {
        // Q(zeta_5) over Q(sqrt 5) via sigma^2: zeta -> zeta^4
        let k = zeta5().field().clone();
        let s = NFElement::new(&k, vec![int(-1), int(-1), int(-1), int(-1)]);
        let e = CyclicExtension::new(&k, s).unwrap();
        assert_eq!(e.order(), 2);
        assert_eq!(e.base_degree(), 2);
        let b = e.base_field().unwrap();
        assert_eq!(b.ext.field().degree(), 2);
        assert_eq!(b.ext.field().discriminant(), &num_bigint::BigInt::from(5));
        let z = int(0);
        let c = e.base_coords(&e.base_basis()[1]).unwrap();
        assert_eq!(c, vec![z, int(1)]);
    }
}
