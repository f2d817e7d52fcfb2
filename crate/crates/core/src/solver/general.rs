//! General and abelian modes: a rational radicand built prime by prime from local choices.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{factor_u64, fmt_rational, val_rat, val_u64, Rational};
use crate::error::{Error, Result};
use crate::field::{eval_poly, primitive_root_of_unity, Field, NFElement};
use crate::kummer::{build_kummer_exponent, radicand_search_local};
use crate::places::Place;

use super::assemble::{auxiliary_place, full_local_degree_at, make_generator, tower_claims, SolveOptions};
use super::certificate::{BlockRecord, Claim, LocalChoice, Restriction, SolutionCertificate};
use super::instance::{Mode, ProblemInstance};

/// Places of `S` over each rational prime (in order of first appearance), and the real places.
pub fn group_by_prime(places: &[Place]) -> (Vec<(u64, Vec<Place>)>, Vec<Place>) {
    let mut finite: Vec<(u64, Vec<Place>)> = Vec::new();
    let mut reals = Vec::new();
    for w in places {
        match w.prime() {
            None => reals.push(w.clone()),
            Some(q) => match finite.iter_mut().find(|(r, _)| *r == q) {
                Some((_, c)) => c.push(w.clone()),
                None => finite.push((q, vec![w.clone()])),
            },
        }
    }
    (finite, reals)
}

/// An integer `A` agreeing with a local radicand closely enough at every class that
/// `A / a_v` is a `p^s`-th power there; negative when a real class needs it.
pub fn block_radicand(
    k: &Field,
    finite: &[(u64, Vec<Place>)],
    reals: &[Place],
    p: u64,
    s: u32,
) -> Result<(BigInt, Vec<LocalChoice>)> {
    let n = p.pow(s);
    let mut residues = Vec::new();
    let mut choices = Vec::new();
    for (q, class) in finite {
        let lr = radicand_search_local(k, class, p, s)?.expect("finite classes always get a candidate");
        let j = val_rat(&lr.value, *q).expect("nonzero radicand");
        // A = a_v (1 + O(q^(2 v_q(n) + 1))) and such units are n-th powers
        let digits = j as u32 + 2 * val_u64(n, *q) + 1;
        let modulus = num_traits::pow(BigInt::from(*q), digits as usize);
        let value = lr.value.to_integer();
        residues.push((value.clone(), modulus));
        choices.push(LocalChoice { q: Some(*q), value: fmt_rational(&lr.value), digits, places: class.clone() });
    }
    let (mut a, modulus) =
        crate::arith::crt(&residues).ok_or_else(|| Error::ApproximationFailed("moduli not coprime".into()))?;
    if p == 2 && !reals.is_empty() {
        a -= &modulus;
        choices.push(LocalChoice { q: None, value: "-1".into(), digits: 0, places: reals.to_vec() });
    }
    debug_assert!(!num_traits::Zero::is_zero(&a));
    // the approximation must keep the local degrees
    let x = NFElement::from_rational(k, Rational::from_integer(a.clone()));
    for (_, class) in finite {
        for w in class {
            if !full_local_degree_at(k, w, &x, n)? {
                return Err(Error::ApproximationFailed(format!("{} lost full degree at {}", a, w.label())));
            }
        }
    }
    if p == 2 && !reals.is_empty() && !a.is_negative() {
        return Err(Error::ApproximationFailed("sign condition lost".into()));
    }
    Ok((a, choices))
}

/// Solve in general mode (`mu_m` in `K`) or abelian mode (`mu_m` in `k`).
pub fn solve_general(inst: &ProblemInstance, opts: &SolveOptions) -> Result<SolutionCertificate> {
    let e = &inst.extension;
    let k = e.field();
    let m = inst.m;
    let zeta = match inst.mode {
        Mode::General => primitive_root_of_unity(k, m)?
            .ok_or_else(|| Error::HypothesisViolated(format!("K does not contain the {m}-th roots of unity")))?,
        Mode::Abelian => e
            .base_root_of_unity(m)?
            .ok_or_else(|| Error::HypothesisViolated(format!("k does not contain the {m}-th roots of unity")))?,
        Mode::Cyclic => return Err(Error::Malformed("cyclic instances go through solve_cyclic".into())),
    };
    let (mut finite, reals) = group_by_prime(&inst.places);
    let aux = if finite.is_empty() && m > 1 {
        let w = match opts.aux_prime {
            Some(q) => crate::places::first_place_over(k, q)?,
            None => auxiliary_place(k, m)?,
        };
        finite.push((w.prime().expect("finite"), vec![w.clone()]));
        Some(w)
    } else {
        None
    };
    let mut b = BigInt::one();
    let mut blocks = Vec::new();
    for (p, s) in factor_u64(m) {
        let mp = p.pow(s);
        let (a, local) = block_radicand(k, &finite, &reals, p, s)?;
        b *= num_traits::pow(a.clone(), (m / mp) as usize);
        let radicand = NFElement::from_rational(k, Rational::from_integer(a)).to_json();
        blocks.push(BlockRecord {
            p,
            exponent: mp,
            local,
            radicand,
            norm_element: None,
            hilbert90: None,
            twist: None,
            class_order: None,
        });
    }
    let radicand = NFElement::from_rational(k, Rational::from_integer(b));
    let tower = build_kummer_exponent(&radicand, m)?;
    let mut transcript = tower_claims(&tower, &zeta, &inst.places, aux.as_ref())?;
    transcript.push(Claim::new("B lies in k", "sigma_fixed", e.is_fixed(&radicand)));

    let c = crate::arith::int(tower.shift);
    let sigma_theta = tower.push(e.sigma());
    let sigma_img = &tower.alpha + &sigma_theta.scale(&c);
    let n = e.order();
    let mut generators = Vec::new();
    let (g, claims) = make_generator(&tower, e, "sigma", sigma_img.clone(), Restriction::Sigma, n)?;
    generators.push(g);
    transcript.extend(claims);
    if m > 1 {
        let tau_img = &(&tower.push(&zeta) * &tower.alpha) + &tower.theta_image.scale(&c);
        let (g, claims) = make_generator(&tower, e, "tau", tau_img.clone(), Restriction::Identity, m as usize)?;
        generators.push(g);
        transcript.extend(claims);
        if inst.mode == Mode::Abelian {
            let commute = tau_img.eval_at(&sigma_img) == sigma_img.eval_at(&tau_img);
            transcript.push(Claim::new("sigma and tau commute", "commutator", commute));
        }
    }
    debug_assert!(eval_poly(tower.field.poly(), &sigma_img).is_zero());

    Ok(SolutionCertificate {
        mode: inst.mode,
        instance: inst.to_json(),
        m,
        base_degree: k.degree(),
        zeta: zeta.to_json(),
        radicand: radicand.to_json(),
        field: tower.field.poly().to_json(),
        shift: tower.shift,
        alpha: tower.alpha.to_json(),
        theta_image: tower.theta_image.to_json(),
        sigma_multiplier: None,
        generators,
        blocks,
        auxiliary_place: aux,
        transcript,
    })
}
