//! Cyclic mode: norms of roots of unity, Hilbert 90 resolvents and twists.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{big_to_u64, exact_root_int, factor_u64, fmt_rational, int, Rational};
use crate::cyclic::{CyclicExtension, Subfield};
use crate::error::{Error, Result};
use crate::field::{nth_root_in, root_of_unity_order, NFElement};
use crate::kummer::{binomial_irreducible, build_kummer_exponent, power_class_order};
use crate::local::{is_local_norm, local_binomial_irreducible};
use crate::places::{place_below, real_places, split_prime, Place};

use super::assemble::{make_generator, real_sign, tower_claims, SolveOptions};
use super::certificate::{BlockRecord, Claim, Obstruction, Outcome, Restriction, SolutionCertificate};
use super::instance::{Mode, ProblemInstance};

/// Resolvent attempts before giving up; each uses a fresh random `c`.
pub const RESOLVENT_ATTEMPTS: usize = 64;

/// The `p`-part of the problem: `K_p/k` of degree the `p`-part of `[K:k]`, and `m_p`.
#[derive(Clone, Debug)]
pub struct CyclicBlock {
    pub p: u64,
    pub exponent: u64,
    /// `K_p` inside `K`.
    pub sub: Subfield,
    /// `k` inside `K_p`.
    pub base: Subfield,
    /// A primitive `m_p`-th root of unity, in `K_p`.
    pub zeta: NFElement,
}

pub fn cyclic_blocks(e: &CyclicExtension, m: u64) -> Result<Vec<CyclicBlock>> {
    factor_u64(m)
        .into_iter()
        .map(|(p, s)| {
            let exponent = p.pow(s);
            let sub = e.subfield_at_prime(p)?;
            let base = sub.ext.base_field()?;
            let zeta = sub.ext.base_root_of_unity(exponent)?.ok_or_else(|| {
                Error::HypothesisViolated(format!("k does not contain the {exponent}-th roots of unity"))
            })?;
            Ok(CyclicBlock { p, exponent, sub, base, zeta })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormTestEntry {
    pub p: u64,
    /// A place of `k`.
    pub place: Place,
    pub is_norm: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormTestReport {
    pub holds: bool,
    pub entries: Vec<NormTestEntry>,
}

impl NormTestReport {
    pub fn first_failure(&self) -> Option<&NormTestEntry> {
        self.entries.iter().find(|e| !e.is_norm)
    }
}

fn prime_factors_big(n: &BigInt) -> Result<Vec<u64>> {
    let v = big_to_u64(&n.abs()).ok_or_else(|| Error::ScopeExceeded("discriminant does not fit in 64 bits".into()))?;
    Ok(factor_u64(v).into_iter().map(|(q, _)| q).collect())
}

/// Places of `k` where `zeta` is tested: primes under the discriminant of `K_p`
/// (those prime to `m_p` first), then the real places.
fn norm_test_places(b: &CyclicBlock) -> Result<Vec<Place>> {
    let k = b.base.ext.field();
    let mut qs = prime_factors_big(b.sub.ext.field().discriminant())?;
    qs.sort_by_key(|q| (b.exponent.is_multiple_of(*q), *q));
    let mut out = Vec::new();
    for q in qs {
        out.extend(split_prime(k, q)?);
    }
    out.extend(real_places(k));
    Ok(out)
}

fn norm_test_block(b: &CyclicBlock) -> Result<Vec<NormTestEntry>> {
    if b.sub.ext.order() == 1 {
        return Ok(Vec::new());
    }
    let zk = b.base.pull(&b.zeta).expect("zeta lies in k");
    norm_test_places(b)?
        .into_iter()
        .map(|v| Ok(NormTestEntry { p: b.p, is_norm: is_local_norm(&b.sub.ext, &b.base, &zk, &v)?, place: v }))
        .collect()
}

/// Is a primitive `m`-th root of unity of `k` a norm from `K`? Decided place by place
/// (Hasse norm theorem); unramified places pass automatically.
pub fn norm_test(e: &CyclicExtension, m: u64) -> Result<NormTestReport> {
    let mut entries = Vec::new();
    for b in cyclic_blocks(e, m)? {
        entries.extend(norm_test_block(&b)?);
    }
    Ok(NormTestReport { holds: entries.iter().all(|x| x.is_norm), entries })
}

fn rational_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        None
    } else {
        exact_root_int(x, 2)
    }
}

/// `x + y gamma` of norm `zeta` in a quadratic field over `Q`: run over `y = r/s` by
/// height and solve the quadratic in `x` when its discriminant is a square.
fn pell_search(ext: &CyclicExtension, zeta: &Rational, height: u64) -> Option<NFElement> {
    let f = ext.field().poly();
    let (b1, b0) = (f.coeff(1), f.coeff(0));
    // N(x + y gamma) = x^2 - b1 x y + b0 y^2
    let disc = &b1 * &b1 - int(4) * &b0;
    let (dn, zn) = (disc.to_integer(), (int(4) * zeta).to_integer());
    for h in 1..=height as i64 {
        for (r, s) in (0..=h).flat_map(|r| [(r, h), (h, r)]) {
            if s == 0 || r.gcd(&s) != 1 {
                continue;
            }
            for r in [r, -r] {
                let (rb, sb) = (BigInt::from(r), BigInt::from(s));
                let Some(root) = rational_sqrt(&(&dn * &rb * &rb + &zn * &sb * &sb)) else { continue };
                let y = Rational::new(rb, sb.clone());
                let x = (&b1 * &y + Rational::new(root, sb)) / int(2);
                let a = NFElement::new(ext.field(), vec![x, y]);
                if ext.relative_norm(&a).ok()?.as_rational().as_ref() == Some(zeta) {
                    return Some(a);
                }
            }
        }
    }
    None
}

/// Integral vectors with sup norm exactly `h`.
fn shell(dim: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|v| (-h..=h).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|c| c.abs() == h));
    out
}

/// Integral `a` in a box with `N(a)/zeta` a `[K_p:k]`-th power `r^d` in `k`; returns `a/r`.
fn box_search(b: &CyclicBlock, height: u64) -> Result<Option<NFElement>> {
    let ext = &b.sub.ext;
    let kp = ext.field();
    let d = ext.order() as u32;
    let mut tried = 0u64;
    for h in 1i64.. {
        for v in shell(kp.degree(), h) {
            tried += 1;
            if tried > height {
                return Ok(None);
            }
            let a = NFElement::new(kp, v.into_iter().map(int).collect());
            if a.is_zero() {
                continue;
            }
            let ratio = b.base.pull(&ext.relative_norm(&a)?.div(&b.zeta)?).expect("norms lie in k");
            if let Some(r) = nth_root_in(&ratio, d)? {
                let cand = a.div(&b.base.push(&r))?;
                if ext.relative_norm(&cand)? == b.zeta {
                    return Ok(Some(cand));
                }
            }
        }
    }
    unreachable!()
}

/// `a` in `K_p` with `N_{K_p/k}(a) = zeta`.
pub fn find_norm_element(b: &CyclicBlock, height: u64) -> Result<NFElement> {
    let ext = &b.sub.ext;
    if ext.order() == 1 {
        return Ok(b.zeta.clone());
    }
    if ext.field().degree() == 2 {
        if let Some(z) = b.zeta.as_rational() {
            return pell_search(ext, &z, height).ok_or(Error::NormSearchExhausted { height });
        }
    }
    box_search(b, height)?.ok_or(Error::NormSearchExhausted { height })
}

/// Constructive Hilbert 90: `b` with `sigma(b)/b = a^m`, from the resolvent of `x = a^(-m)`.
pub fn hilbert90(e: &CyclicExtension, a: &NFElement, m: u64, rng: &mut ChaCha8Rng) -> Result<NFElement> {
    let k = e.field();
    let x = a.pow(-(m as i64))?;
    let target = a.pow(m as i64)?;
    for _ in 0..RESOLVENT_ATTEMPTS {
        let c = NFElement::new(k, (0..k.degree()).map(|_| int(rng.gen_range(-3..=3))).collect());
        let mut b = NFElement::zero(k);
        let mut prefix = NFElement::one(k);
        let mut conj_c = c.clone();
        let mut conj_x = x.clone();
        for _ in 0..e.order() {
            b = &b + &(&prefix * &conj_c);
            prefix = &prefix * &conj_x;
            conj_x = e.apply_sigma(&conj_x);
            conj_c = e.apply_sigma(&conj_c);
        }
        if b.is_zero() {
            continue;
        }
        if e.apply_sigma(&b).div(&b)? != target {
            return Err(Error::NormPreconditionFailed("resolvent does not satisfy sigma(b)/b = a^m".into()));
        }
        return Ok(b);
    }
    Err(Error::ResolventDegenerate { attempts: RESOLVENT_ATTEMPTS })
}

/// Checks `N(a)` is a primitive `m`-th root of unity, then returns `(b, class order of b)`.
fn albert_step(e: &CyclicExtension, a: &NFElement, m: u64, rng: &mut ChaCha8Rng) -> Result<(NFElement, u64)> {
    let nrm = e.relative_norm(a)?;
    if root_of_unity_order(&nrm, m) != Some(m) {
        return Err(Error::NormPreconditionFailed(format!("N(a) is not a primitive {m}-th root of unity")));
    }
    let mut b = hilbert90(e, a, m, rng)?;
    // sigma(b)/b = a^m is totally positive, so the sign of b is constant on sigma-orbits; prefer b >> 0
    let reals = real_places(e.field());
    if m.is_multiple_of(2) && !reals.is_empty() && reals.iter().all(|w| real_sign(e.field(), w, &b) < 0) {
        let flipped = b.scale(&int(-1));
        if power_class_order(&flipped, m)? == m {
            b = flipped;
        }
    }
    let order = power_class_order(&b, m)?;
    if order != m {
        return Err(Error::IrreducibilityLost);
    }
    Ok((b, order))
}

/// Squarefree integers by increasing absolute value, positive first.
fn twists(height: u64) -> impl Iterator<Item = i64> {
    (1..=height as i64).filter(|d| factor_u64(*d as u64).iter().all(|(_, e)| *e == 1)).flat_map(|d| [d, -d])
}

/// Smallest twist `d` with `b d` of full local degree at every place of `places` (of `K_p`)
/// and `x^(m_p) - b d` irreducible over `K_p`.
fn twist_search(b: &CyclicBlock, b0: &NFElement, places: &[Place], height: u64) -> Result<i64> {
    let kp = b.sub.ext.field();
    let mp = b.exponent;
    'cand: for d in twists(height) {
        let x = b0.scale(&int(d));
        for w in places {
            let ok = match w {
                Place::Finite { .. } => local_binomial_irreducible(kp, w, &x, mp)?,
                Place::Real { .. } => b.p != 2 || real_sign(kp, w, &x) < 0,
            };
            if !ok {
                continue 'cand;
            }
        }
        if binomial_irreducible(&x, mp)?.irreducible {
            return Ok(d);
        }
    }
    Err(Error::TwistSearchExhausted { height })
}

/// Build the certificate for `L = K(B^(1/m))` with `sigma~(alpha) = A alpha`.
fn assemble(
    inst: &ProblemInstance,
    zeta: &NFElement,
    a: &NFElement,
    radicand: &NFElement,
    blocks: Vec<BlockRecord>,
    mut transcript: Vec<Claim>,
) -> Result<SolutionCertificate> {
    let e = &inst.extension;
    let k = e.field();
    let m = inst.m;
    let tower = build_kummer_exponent(radicand, m)?;
    transcript.extend(tower_claims(&tower, zeta, &inst.places, None)?);
    let h90 = e.apply_sigma(radicand).div(radicand)? == a.pow(m as i64)?;
    transcript.push(Claim::new(format!("sigma(B)/B = A^{m}"), "hilbert90", h90));
    let c = int(tower.shift);
    let image = &(&tower.push(a) * &tower.alpha) + &tower.push(e.sigma()).scale(&c);
    let (g, claims) = make_generator(&tower, e, "sigma", image, Restriction::Sigma, e.order() * m as usize)?;
    transcript.extend(claims);
    Ok(SolutionCertificate {
        mode: Mode::Cyclic,
        instance: inst.to_json(),
        m,
        base_degree: k.degree(),
        zeta: zeta.to_json(),
        radicand: radicand.to_json(),
        field: tower.field.poly().to_json(),
        shift: tower.shift,
        alpha: tower.alpha.to_json(),
        theta_image: tower.theta_image.to_json(),
        sigma_multiplier: Some(a.to_json()),
        generators: vec![g],
        blocks,
        auxiliary_place: None,
        transcript,
    })
}

/// `S = empty` solution from a given `a` with `N(a)` a primitive `m`-th root of unity;
/// every prime factor of `m` must divide `[K:k]`.
pub fn albert_embed(e: &CyclicExtension, m: u64, a: &NFElement, opts: &SolveOptions) -> Result<SolutionCertificate> {
    let n = e.order() as u64;
    if let Some((p, _)) = factor_u64(m).into_iter().find(|(p, _)| !n.is_multiple_of(*p)) {
        return Err(Error::HypothesisViolated(format!("{p} divides m but not [K:k]")));
    }
    let zeta = e
        .base_root_of_unity(m)?
        .ok_or_else(|| Error::HypothesisViolated(format!("k does not contain the {m}-th roots of unity")))?;
    let inst = ProblemInstance::new(e.clone(), m, Vec::new(), Mode::Cyclic)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let one = NFElement::one(e.field());
    let a = if m == 1 { &one } else { a };
    let (b, order) = if m == 1 { (one.clone(), 1) } else { albert_step(e, a, m, &mut rng)? };
    let transcript = vec![
        Claim::new(format!("N(a) is a primitive {m}-th root of unity"), "relative_norm", true),
        Claim::new(format!("b has order {m} modulo {m}-th powers"), "power_class_order", order == m),
    ];
    let block = BlockRecord {
        p: 0,
        exponent: m,
        local: Vec::new(),
        radicand: b.to_json(),
        norm_element: Some(a.to_json()),
        hilbert90: Some(b.to_json()),
        twist: None,
        class_order: Some(order),
    };
    assemble(&inst, &zeta, a, &b, vec![block], transcript)
}

fn norm_failure(b: &CyclicBlock, entry: &NormTestEntry) -> Obstruction {
    let zk = b.base.pull(&b.zeta).expect("zeta lies in k");
    Obstruction::NormFailure {
        p: b.p,
        exponent: b.exponent,
        base_field: b.base.ext.field().poly().to_json(),
        place: entry.place.clone(),
        zeta: zk.to_json(),
        detail: format!("zeta_{} is not a local norm from K_{} at {}", b.exponent, b.p, entry.place.label()),
    }
}

fn unique_places_below(sub: &Subfield, places: &[Place]) -> Result<Vec<Place>> {
    let mut out: Vec<Place> = Vec::new();
    for w in places {
        let v = place_below(sub, w)?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Solve `(K/k, m, S)` with `L/k` cyclic, or return the local norm obstruction.
pub fn solve_cyclic(inst: &ProblemInstance, opts: &SolveOptions) -> Result<Outcome> {
    let e = &inst.extension;
    let k = e.field();
    let m = inst.m;
    let zeta = e
        .base_root_of_unity(m)?
        .ok_or_else(|| Error::HypothesisViolated(format!("k does not contain the {m}-th roots of unity")))?;
    let blocks = cyclic_blocks(e, m)?;
    for b in &blocks {
        if let Some(entry) = norm_test_block(b)?.iter().find(|x| !x.is_norm) {
            return Ok(Outcome::Obstructed(norm_failure(b, entry)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut a_total = NFElement::one(k);
    let mut b_total = NFElement::one(k);
    let mut records = Vec::new();
    let mut transcript = Vec::new();
    for b in &blocks {
        let mp = b.exponent;
        let (a, b0, order) = if b.sub.ext.order() > 1 {
            let a = find_norm_element(b, opts.norm_height)?;
            let (b0, order) = albert_step(&b.sub.ext, &a, mp, &mut rng)?;
            transcript.push(Claim::new(
                format!("N(a_{}) is a primitive {mp}-th root of unity", b.p),
                "relative_norm",
                true,
            ));
            transcript.push(Claim::new(
                format!("b_{} has order {mp} modulo {mp}-th powers", b.p),
                "power_class_order",
                order == mp,
            ));
            (a, b0, Some(order))
        } else {
            (b.zeta.clone(), NFElement::one(b.sub.ext.field()), None)
        };
        let below = unique_places_below(&b.sub, &inst.places)?;
        let d = twist_search(b, &b0, &below, opts.twist_height)?;
        let bt = b0.scale(&int(d));
        a_total = &a_total * &b.sub.push(&a);
        b_total = &b_total * &b.sub.push(&bt).pow((m / mp) as i64)?;
        records.push(BlockRecord {
            p: b.p,
            exponent: mp,
            local: Vec::new(),
            radicand: b.sub.push(&bt).to_json(),
            norm_element: Some(b.sub.push(&a).to_json()),
            hilbert90: Some(b.sub.push(&b0).to_json()),
            twist: Some(fmt_rational(&int(d))),
            class_order: order,
        });
    }
    let cert = assemble(inst, &zeta, &a_total, &b_total, records, transcript)?;
    Ok(Outcome::Solved(Box::new(cert)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::examples;
    use crate::places::first_place_over;

    fn failing_prime(r: &NormTestReport) -> Option<u64> {
        r.first_failure().and_then(|e| e.place.prime())
    }

    #[test]
    fn norm_test_examples() {
        assert!(norm_test(&examples::sqrt2(), 2).unwrap().holds);
        let r = norm_test(&examples::gaussian(), 2).unwrap();
        assert!(!r.holds);
        assert_eq!(failing_prime(&r), Some(2));
        let r = norm_test(&examples::sqrt3(), 2).unwrap();
        assert_eq!(failing_prime(&r), Some(3));
        assert!(r.entries.iter().any(|e| e.place.prime() == Some(2) && !e.is_norm));
    }

    #[test]
    fn pell_finds_fundamental_unit() {
        let b = &cyclic_blocks(&examples::sqrt2(), 2).unwrap()[0];
        let a = find_norm_element(b, 100).unwrap();
        assert_eq!(b.sub.ext.relative_norm(&a).unwrap(), NFElement::from_int(b.sub.ext.field(), -1));
    }

    #[test]
    fn albert_on_sqrt2() {
        let e = examples::sqrt2();
        let k = e.field().clone();
        let a = NFElement::new(&k, vec![int(1), int(1)]);
        let c = albert_embed(&e, 2, &a, &SolveOptions::default()).unwrap();
        assert!(c.all_claims_hold(), "{:#?}", c.transcript);
        assert_eq!(c.generators[0].order, 4);
        assert_eq!(c.blocks[0].class_order, Some(2));
        assert_eq!(c.field.len(), 5);
        let l = crate::field::NumberField::new(crate::poly::Polynomial::from_json(&c.field).unwrap()).unwrap();
        assert_eq!(l.signature(), (4, 0), "L should be totally real");
    }

    #[test]
    fn albert_rejects_non_norms() {
        let e = examples::gaussian();
        let a = NFElement::new(e.field(), vec![int(2), int(1)]);
        assert!(matches!(albert_embed(&e, 2, &a, &SolveOptions::default()), Err(Error::NormPreconditionFailed(_))));
    }

    #[test]
    fn albert_trivial_exponent() {
        let e = examples::real_cubic7();
        let c = albert_embed(&e, 1, &NFElement::one(e.field()), &SolveOptions::default()).unwrap();
        assert_eq!(c.field.len(), 4);
        assert_eq!(c.generators[0].order, 3);
        assert!(c.all_claims_hold());
    }

    #[test]
    fn cyclic_quartic_with_full_degree_at_three() {
        let e = examples::sqrt2();
        let w = first_place_over(e.field(), 3).unwrap();
        let inst = ProblemInstance::new(e, 2, vec![w], Mode::Cyclic).unwrap();
        let Outcome::Solved(c) = solve_cyclic(&inst, &SolveOptions::default()).unwrap() else {
            panic!("expected a solution")
        };
        assert!(c.all_claims_hold(), "{:#?}", c.transcript);
        assert_eq!(c.generators[0].order, 4);
    }

    #[test]
    fn cyclic_obstructions() {
        let opts = SolveOptions::default();
        for (e, q) in [(examples::gaussian(), 2), (examples::sqrt3(), 3)] {
            let inst = ProblemInstance::new(e, 2, vec![], Mode::Cyclic).unwrap();
            match solve_cyclic(&inst, &opts).unwrap() {
                Outcome::Obstructed(Obstruction::NormFailure { place, .. }) => assert_eq!(place.prime(), Some(q)),
                other => panic!("unexpected {other:?}"),
            }
        }
        let inst = ProblemInstance::new(examples::real_cubic7(), 3, vec![], Mode::Cyclic).unwrap();
        assert!(matches!(solve_cyclic(&inst, &opts), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn coprime_block_is_kummer_over_the_base() {
        // m = 2 over the cubic field: the block is a Kummer extension of k = Q
        let e = examples::real_cubic7();
        let k = e.field().clone();
        let s = vec![first_place_over(&k, 7).unwrap(), real_places(&k)[0].clone()];
        let inst = ProblemInstance::new(e, 2, s, Mode::Cyclic).unwrap();
        let Outcome::Solved(c) = solve_cyclic(&inst, &SolveOptions::default()).unwrap() else {
            panic!("expected a solution")
        };
        assert!(c.all_claims_hold(), "{:#?}", c.transcript);
        assert_eq!(c.generators[0].order, 6);
    }
}
