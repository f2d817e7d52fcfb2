//! Real root isolation by Sturm sequences with exact rational endpoints.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rational, parse_rational, sign_rat, Rational};
use crate::error::Result;
use crate::poly::Polynomial;

/// Open interval `(lo, hi)` containing exactly one root; endpoints are never roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn to_json(&self) -> [String; 2] {
        [fmt_rational(&self.lo), fmt_rational(&self.hi)]
    }

    pub fn from_json(v: &[String; 2]) -> Result<Self> {
        Ok(RootInterval { lo: parse_rational(&v[0])?, hi: parse_rational(&v[1])? })
    }
}

impl Serialize for RootInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootInterval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[String; 2]>::deserialize(d)?;
        RootInterval::from_json(&v).map_err(serde::de::Error::custom)
    }
}

pub fn sturm_sequence(f: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![f.clone(), f.derivative()];
    while !seq.last().unwrap().is_zero() && seq.last().unwrap().degree() > 0 {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq.retain(|p| !p.is_zero());
    seq
}

fn sign_changes(seq: &[Polynomial], x: &Rational) -> usize {
    let signs: Vec<i32> = seq.iter().map(|p| sign_rat(&p.eval(x))).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`.
pub fn count_roots(seq: &[Polynomial], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// Bound on the absolute value of every complex root.
pub fn cauchy_bound(f: &Polynomial) -> Rational {
    let lc = f.lc().abs();
    let m =
        f.coeffs()[..f.degree()].iter().map(|c| c.abs() / &lc).fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

/// Isolating intervals for the distinct real roots, in increasing order.
pub fn isolate_real_roots(f: &Polynomial) -> Vec<RootInterval> {
    if f.degree() == 0 {
        return Vec::new();
    }
    let f = f.div_rem(&f.gcd(&f.derivative())).0;
    let seq = sturm_sequence(&f);
    let b = cauchy_bound(&f);
    let mut out = Vec::new();
    let mut stack = vec![RootInterval { lo: -b.clone(), hi: b }];
    while let Some(iv) = stack.pop() {
        let c = count_roots(&seq, &iv.lo, &iv.hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            out.push(iv);
            continue;
        }
        let m = split_point(&f, &iv);
        stack.push(RootInterval { lo: iv.lo.clone(), hi: m.clone() });
        stack.push(RootInterval { lo: m, hi: iv.hi });
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// A point strictly inside the interval that is not a root of `f`.
fn split_point(f: &Polynomial, iv: &RootInterval) -> Rational {
    let w = iv.width();
    let mut k = 2i64;
    loop {
        let m = &iv.lo + &w * Rational::new(1.into(), 2.into()) + &w / Rational::from_integer((k * k).into());
        if m < iv.hi && !f.eval(&m).is_zero() {
            return m;
        }
        k += 1;
    }
}

/// Halve the interval around the root of `f`.
pub fn refine(f: &Polynomial, seq: &[Polynomial], iv: &RootInterval) -> RootInterval {
    let m = split_point(f, iv);
    if count_roots(seq, &iv.lo, &m) == 1 {
        RootInterval { lo: iv.lo.clone(), hi: m }
    } else {
        RootInterval { lo: m, hi: iv.hi.clone() }
    }
}

/// Refine until the width is below `eps`.
pub fn refine_to(f: &Polynomial, iv: &RootInterval, eps: &Rational) -> RootInterval {
    let seq = sturm_sequence(&f.div_rem(&f.gcd(&f.derivative())).0);
    let mut iv = iv.clone();
    while iv.width() > *eps {
        iv = refine(f, &seq, &iv);
    }
    iv
}

/// Exact sign of `g(alpha)` where `alpha` is the root of `f` isolated by `iv`.
pub fn sign_at_root(f: &Polynomial, iv: &RootInterval, g: &Polynomial) -> i32 {
    let g = g.rem(f);
    if g.is_zero() {
        return 0;
    }
    let fs = f.div_rem(&f.gcd(&f.derivative())).0;
    let h = fs.gcd(&g);
    if h.degree() > 0 && count_roots(&sturm_sequence(&h), &iv.lo, &iv.hi) == 1 {
        return 0;
    }
    let fseq = sturm_sequence(&fs);
    let gseq = sturm_sequence(&g.div_rem(&g.gcd(&g.derivative())).0);
    let mut iv = iv.clone();
    while g.degree() > 0 && (count_roots(&gseq, &iv.lo, &iv.hi) > 0 || g.eval(&iv.hi).is_zero()) {
        iv = refine(&fs, &fseq, &iv);
    }
    sign_rat(&g.eval(&iv.hi))
}
