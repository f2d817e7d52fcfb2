//! Re-check a certificate file from its contents alone. Nothing here reads solver state or
//! repeats a search: every statement is recomputed with deterministic core operations.

use serde::Serialize;

use gw_core::arith::{int, parse_rational, val_rat};
use gw_core::brauer::{splits, BrauerClass, KummerSplitting, MaximalSubfieldCertificate};
use gw_core::cyclic::automorphism_order;
use gw_core::field::{eval_poly, root_of_unity_order};
use gw_core::kummer::{binomial_irreducible, power_class_order};
use gw_core::local::{exists_cyclic_extension, is_local_norm, local_binomial_irreducible};
use gw_core::places::validate_place;
use gw_core::real::sign_at_root;
use gw_core::solver::{no_solution_check_p2, InstanceJson, Restriction};
use gw_core::{
    Field, Mode, NFElement, NumberField, Obstruction, Place, Polynomial, ProblemInstance, Rational,
    SolutionCertificate, Subfield,
};

use crate::file::{CertificateFile, Payload};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub claim: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub verified: bool,
    /// Claims that did not re-verify, in the order they were checked.
    pub failed: Vec<String>,
    pub checks: Vec<Check>,
}

#[derive(Default)]
struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn check(&mut self, claim: impl Into<String>, ok: bool) -> bool {
        self.checks.push(Check { claim: claim.into(), ok, detail: None });
        ok
    }

    /// Record a failure when a recomputation errors; the claim is not checked further.
    fn attempt<T>(&mut self, claim: impl Into<String>, r: gw_core::Result<T>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.checks.push(Check { claim: claim.into(), ok: false, detail: Some(e.to_string()) });
                None
            }
        }
    }

    fn element(&mut self, what: &str, k: &Field, cs: &[String]) -> Option<NFElement> {
        self.attempt(format!("{what} is an element of its field"), NFElement::from_json(k, cs))
    }

    fn report(self) -> VerifyReport {
        let failed = self.checks.iter().filter(|c| !c.ok).map(|c| c.claim.clone()).collect::<Vec<_>>();
        VerifyReport { verified: failed.is_empty() && !self.checks.is_empty(), failed, checks: self.checks }
    }
}

pub fn verify_file(f: &CertificateFile) -> VerifyReport {
    let mut ch = Checker::default();
    ch.check("checksum matches the canonical serialization", f.checksum_matches());
    ch.check(format!("format version {}", crate::file::FORMAT_VERSION), f.version == crate::file::FORMAT_VERSION);
    match &f.payload {
        Payload::Solution(c) => {
            verify_solution(&mut ch, &f.instance, c);
        }
        Payload::Obstruction(o) => verify_obstruction(&mut ch, &f.instance, o),
        Payload::MaximalSubfield(c) => verify_maximal_subfield(&mut ch, &f.instance, c),
    }
    ch.report()
}

/// `[K_w(b^(1/m)) : K_w]` is as large as possible.
fn full_local_degree(k: &Field, w: &Place, b: &NFElement, m: u64) -> gw_core::Result<bool> {
    match w {
        Place::Finite { .. } => local_binomial_irreducible(k, w, b, m),
        Place::Real { interval, .. } => Ok(m % 2 == 1 || sign_at_root(k.poly(), interval, &b.to_poly()) < 0),
    }
}

fn product(k: &Field, xs: impl IntoIterator<Item = (NFElement, u64)>) -> gw_core::Result<NFElement> {
    let mut acc = NFElement::one(k);
    for (x, e) in xs {
        acc = &acc * &x.pow(e as i64)?;
    }
    Ok(acc)
}

struct Verified {
    field: Field,
    radicand: NFElement,
    instance: ProblemInstance,
}

fn verify_solution(ch: &mut Checker, file_instance: &InstanceJson, c: &SolutionCertificate) -> Option<Verified> {
    ch.check("certificate instance matches the file instance", &c.instance == file_instance);
    let inst = ch.attempt("instance rebuilds", ProblemInstance::from_json(&c.instance, None))?;
    let e = inst.extension.clone();
    let k = e.field().clone();
    let m = c.m;
    let n = e.order();
    ch.check("mode matches the instance", inst.mode == c.mode);
    ch.check("m matches the instance", m == inst.m);
    ch.check("[K:Q] matches the instance", c.base_degree == k.degree());

    let lpoly = ch.attempt("polynomial of L parses", Polynomial::from_json(&c.field))?;
    let l = ch.attempt("polynomial of L is monic, integral and irreducible", NumberField::new(lpoly))?;
    ch.check(format!("[L:Q] = {} * {m}", k.degree()), l.degree() == k.degree() * m as usize);
    let theta = ch.element("theta_image", &l, &c.theta_image)?;
    let alpha = ch.element("alpha", &l, &c.alpha)?;
    let b = ch.element("radicand", &k, &c.radicand)?;
    let zeta = ch.element("zeta", &k, &c.zeta)?;
    let push = |x: &NFElement| x.eval_at(&theta);

    ch.check("theta_image is a root of the polynomial of K", eval_poly(k.poly(), &theta).is_zero());
    ch.check(format!("alpha^{m} = B"), alpha.pow(m as i64).is_ok_and(|x| x == push(&b)));
    ch.check("alpha + c*theta generates L", &alpha + &theta.scale(&int(c.shift)) == NFElement::gen(&l));
    ch.check(format!("zeta is a primitive {m}-th root of unity"), root_of_unity_order(&zeta, m) == Some(m));
    if c.mode != Mode::General {
        ch.check("zeta lies in k", e.is_fixed(&zeta));
    }
    if c.mode != Mode::Cyclic {
        ch.check("B lies in k", e.is_fixed(&b));
    }
    if let Some(v) = ch.attempt("binomial criterion runs", binomial_irreducible(&b, m)) {
        ch.check(format!("x^{m} - B is irreducible over K"), v.irreducible && v.check(&b));
    }
    let aux = c.auxiliary_place.iter();
    for w in inst.places.iter().chain(aux) {
        if ch.attempt(format!("{} is a place of K", w.label()), validate_place(&k, w)).is_none() {
            continue;
        }
        if let Some(ok) = ch.attempt(format!("local degree at {}", w.label()), full_local_degree(&k, w, &b, m)) {
            ch.check(format!("full local degree at {}", w.label()), ok);
        }
    }

    // automorphisms: the group they generate maps onto Gal(K/k) and contains Gal(L/K)
    let sigma_l = push(e.sigma());
    let mut images = Vec::new();
    for g in &c.generators {
        let img = ch.element(&format!("image of {}", g.name), &l, &g.image)?;
        if let Some(ord) = ch.attempt(format!("{} is an automorphism of L", g.name), automorphism_order(&l, &img)) {
            ch.check(format!("{} has order {}", g.name, g.order), ord as u64 == g.order);
        }
        let target = match g.restricts_to {
            Restriction::Sigma => sigma_l.clone(),
            Restriction::Identity => theta.clone(),
        };
        ch.check(format!("{} restricts to {:?} on K", g.name, g.restricts_to), theta.eval_at(&img) == target);
        images.push((g.name.as_str(), g.restricts_to, g.order, img));
    }
    let names: Vec<_> = images.iter().map(|(name, r, o, _)| (*name, *r, *o)).collect();
    let c_shift = int(c.shift);
    match c.mode {
        Mode::General | Mode::Abelian => {
            let mut expected = vec![("sigma", Restriction::Sigma, n as u64)];
            if m > 1 {
                expected.push(("tau", Restriction::Identity, m));
            }
            ch.check("generators are sigma (order [K:k]) and tau (order m)", names == expected);
            if images.len() == expected.len() {
                let sigma_img = &images[0].3;
                ch.check("sigma fixes alpha", *sigma_img == &alpha + &sigma_l.scale(&c_shift));
                if m > 1 {
                    let tau_img = &images[1].3;
                    ch.check(
                        "tau multiplies alpha by zeta",
                        *tau_img == &(&push(&zeta) * &alpha) + &theta.scale(&c_shift),
                    );
                    if c.mode == Mode::Abelian {
                        ch.check("sigma and tau commute", tau_img.eval_at(sigma_img) == sigma_img.eval_at(tau_img));
                    }
                }
            }
            verify_general_blocks(ch, &k, c, &b);
        }
        Mode::Cyclic => {
            ch.check(
                "one generator sigma of order m [K:k]",
                names == vec![("sigma", Restriction::Sigma, n as u64 * m)],
            );
            let a = ch.element("sigma_multiplier", &k, c.sigma_multiplier.as_deref().unwrap_or(&[]))?;
            ch.check("sigma(B)/B = A^m", a.pow(m as i64).is_ok_and(|am| e.apply_sigma(&b) == &b * &am));
            if let Some((_, _, _, img)) = images.first() {
                ch.check("sigma sends alpha to A alpha", *img == &(&push(&a) * &alpha) + &sigma_l.scale(&c_shift));
            }
            verify_cyclic_blocks(ch, &inst, c, &a, &b);
        }
    }
    ch.check("every transcript claim holds", c.all_claims_hold());
    Some(Verified { field: k, radicand: b, instance: inst })
}

fn verify_general_blocks(ch: &mut Checker, k: &Field, c: &SolutionCertificate, b: &NFElement) {
    let mut parts = Vec::new();
    for blk in &c.blocks {
        let Some(r) = ch.element(&format!("radicand of block {}", blk.p), k, &blk.radicand) else { return };
        let rational = r.as_rational();
        ch.check(format!("radicand of block {} is rational", blk.p), rational.is_some());
        for choice in &blk.local {
            let Some(q) = choice.q else { continue };
            let Some(v) = ch.attempt("local radicand parses", parse_rational(&choice.value)) else { continue };
            let close = rational.as_ref().is_some_and(|a| {
                let d: Rational = a - &v;
                d == Rational::from_integer(0.into()) || val_rat(&d, q).is_some_and(|x| x >= choice.digits as i64)
            });
            ch.check(format!("block {} radicand agrees with {} mod {q}^{}", blk.p, choice.value, choice.digits), close);
            for w in &choice.places {
                if let Some(ok) =
                    ch.attempt("local degree of the block radicand", full_local_degree(k, w, &r, blk.exponent))
                {
                    ch.check(format!("block {} has full local degree at {}", blk.p, w.label()), ok);
                }
            }
        }
        parts.push((r, c.m / blk.exponent.max(1)));
    }
    let exps: u64 = c.blocks.iter().map(|x| x.exponent).product();
    ch.check("block exponents multiply to m", exps == c.m);
    if let Some(p) = ch.attempt("block product", product(k, parts)) {
        ch.check("B is the product of the block radicands", &p == b);
    }
}

fn verify_cyclic_blocks(
    ch: &mut Checker,
    inst: &ProblemInstance,
    c: &SolutionCertificate,
    a: &NFElement,
    b: &NFElement,
) {
    let e = &inst.extension;
    let k = e.field();
    let mut a_parts = Vec::new();
    let mut b_parts = Vec::new();
    for blk in &c.blocks {
        let name = format!("block {}", blk.p);
        let sub = if blk.p == 0 {
            Subfield { ext: e.clone(), embedding: NFElement::gen(k) }
        } else {
            match ch.attempt(format!("subfield for {name}"), e.subfield_at_prime(blk.p)) {
                Some(s) => s,
                None => return,
            }
        };
        let pull = |ch: &mut Checker, what: &str, cs: Option<&[String]>| -> Option<NFElement> {
            let x = ch.element(&format!("{what} of {name}"), k, cs.unwrap_or(&[]))?;
            let y = sub.pull(&x).filter(|y| sub.push(y) == x);
            ch.check(format!("{what} of {name} lies in its subfield"), y.is_some());
            y
        };
        let Some(an) = pull(ch, "norm element", blk.norm_element.as_deref()) else { return };
        let Some(b0) = pull(ch, "Hilbert 90 element", blk.hilbert90.as_deref()) else { return };
        let Some(rad) = pull(ch, "radicand", Some(&blk.radicand)) else { return };
        let mp = blk.exponent;
        if sub.ext.order() > 1 {
            if let Some(nm) = ch.attempt("relative norm", sub.ext.relative_norm(&an)) {
                ch.check(
                    format!("N(a) is a primitive {mp}-th root of unity for {name}"),
                    root_of_unity_order(&nm, mp) == Some(mp),
                );
            }
            let rel = an.pow(mp as i64).is_ok_and(|x| sub.ext.apply_sigma(&b0) == &b0 * &x);
            ch.check(format!("sigma(b)/b = a^{mp} for {name}"), rel);
            if let Some(ord) = ch.attempt("power class order", power_class_order(&b0, mp)) {
                ch.check(
                    format!("b has order {mp} modulo {mp}-th powers for {name}"),
                    ord == mp && blk.class_order == Some(mp),
                );
            }
        }
        let d = match &blk.twist {
            Some(t) => ch.attempt(format!("twist of {name} parses"), parse_rational(t)),
            None => Some(int(1)),
        };
        let Some(d) = d else { return };
        ch.check(format!("radicand of {name} is the twisted Hilbert 90 element"), rad == b0.scale(&d));
        a_parts.push((sub.push(&an), 1));
        b_parts.push((sub.push(&rad), c.m / mp.max(1)));
    }
    let exps: u64 = c.blocks.iter().map(|x| x.exponent).product();
    ch.check("block exponents multiply to m", exps == c.m);
    if let Some(p) = ch.attempt("block product", product(k, a_parts)) {
        ch.check("A is the product of the block norm elements", &p == a);
    }
    if let Some(p) = ch.attempt("block product", product(k, b_parts)) {
        ch.check("B is the product of the block radicands", &p == b);
    }
}

fn verify_obstruction(ch: &mut Checker, file_instance: &InstanceJson, o: &Obstruction) {
    let Some(inst) = ch.attempt("instance rebuilds", ProblemInstance::from_json(file_instance, None)) else { return };
    match o {
        Obstruction::NormFailure { p, exponent, base_field, place, zeta, .. } => {
            let e = &inst.extension;
            ch.check("instance asks for a cyclic solution", inst.mode == Mode::Cyclic);
            let pe = gw_core::arith::factor_u64(inst.m).into_iter().find(|(q, _)| q == p).map(|(q, s)| q.pow(s));
            ch.check(format!("{exponent} is the {p}-part of m"), pe == Some(*exponent));
            let Some(sub) = ch.attempt(format!("subfield for {p}"), e.subfield_at_prime(*p)) else { return };
            let Some(base) = ch.attempt("base field", sub.ext.base_field()) else { return };
            let kb = base.ext.field().clone();
            ch.check("base field polynomial matches", &kb.poly().to_json() == base_field);
            let Some(z) = ch.element("zeta", &kb, zeta) else { return };
            ch.check(
                format!("zeta is a primitive {exponent}-th root of unity"),
                root_of_unity_order(&z, *exponent) == Some(*exponent),
            );
            if ch.attempt(format!("{} is a place of k", place.label()), validate_place(&kb, place)).is_none() {
                return;
            }
            if let Some(is_norm) = ch.attempt("local norm test", is_local_norm(&sub.ext, &base, &z, place)) {
                ch.check(format!("zeta is not a local norm at {}", place.label()), !is_norm);
            }
        }
        Obstruction::LocalStructure { witnesses } => {
            for w in witnesses {
                let v = exists_cyclic_extension(w.q, w.degree, w.ramification);
                ch.check(
                    format!("Q_{} has no {:?} cyclic extension of degree {}", w.q, w.ramification, w.degree),
                    !v.exists && !w.exists,
                );
            }
            if let Some(r) = ch.attempt("structure check", no_solution_check_p2(&inst)) {
                ch.check("both group structures are ruled out by these witnesses", r.as_ref() == Some(o));
            }
        }
    }
}

fn verify_maximal_subfield(ch: &mut Checker, file_instance: &InstanceJson, c: &MaximalSubfieldCertificate) {
    let Some(v) = verify_solution(ch, file_instance, &c.certificate) else { return };
    ch.check("the subfield solves a general instance", v.instance.mode == Mode::General);
    let Some(class) = ch.attempt("Brauer class rebuilds", BrauerClass::from_json(&v.field, &c.class)) else { return };
    ch.check("m is the degree of the class", class.degree() == v.instance.m);
    let support = class.support();
    let same = support.len() == v.instance.places.len() && support.iter().all(|w| v.instance.places.contains(w));
    ch.check("S is the support of the class", same);
    let l = KummerSplitting { radicand: v.radicand, exponent: class.degree() };
    if let Some(r) = ch.attempt("splitting check", splits(&l, &class)) {
        ch.check("L splits the class at every place", r.splits);
        ch.check("recorded splitting report matches", r == c.splitting);
    }
}
