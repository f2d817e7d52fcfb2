//! Brauer classes of number fields given by Hasse invariants, symbol algebras at tame
//! places, splitting by Kummer extensions, and maximal subfields Galois over `k`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, fmt_rational, int, Rational};
use crate::cyclic::CyclicExtension;
use crate::error::{Error, Result};
use crate::field::{primitive_root_of_unity, root_of_unity_order, Field, NFElement};
use crate::fp::ResidueField;
use crate::local::{is_local_nth_power, to_local};
use crate::places::{real_places, validate_place, Place};
use crate::solver::assemble::real_sign;
use crate::solver::{solve_general, Mode, PlaceSpec, ProblemInstance, SolutionCertificate, SolveOptions};

/// `inv_v(A) = num/den` in lowest terms, `0 < num < den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant {
    pub place: Place,
    pub value: Rational,
}

/// A class in `Br(K)` of index dividing `m`, stored by its nonzero invariants.
#[derive(Clone, Debug)]
pub struct BrauerClass {
    field: Field,
    m: u64,
    invariants: Vec<Invariant>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantJson {
    pub place: PlaceSpec,
    pub num: u64,
    pub den: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerClassJson {
    pub m: u64,
    #[serde(default)]
    pub inv: Vec<InvariantJson>,
}

fn frac_part(x: &Rational) -> Rational {
    x - Rational::from_integer(x.floor().to_integer())
}

/// Validate invariants: denominators divide `m`, real places carry `0` or `1/2`, sum is `0 mod 1`.
pub fn brauer_create(k: &Field, m: u64, invariants: Vec<(Place, Rational)>) -> Result<BrauerClass> {
    if m == 0 {
        return Err(Error::Malformed("degree must be positive".into()));
    }
    let mut out: Vec<Invariant> = Vec::new();
    let mut sum = Rational::zero();
    for (place, value) in invariants {
        validate_place(k, &place)?;
        if out.iter().any(|i| i.place == place) {
            return Err(Error::Malformed(format!("two invariants at {}", place.label())));
        }
        let value = frac_part(&value);
        if !(int(m as i64) * &value).is_integer() {
            return Err(Error::BadDenominator);
        }
        if place.is_real() && !(int(2) * &value).is_integer() {
            return Err(Error::BadDenominator);
        }
        sum += &value;
        if !value.is_zero() {
            out.push(Invariant { place, value });
        }
    }
    if !sum.is_integer() {
        return Err(Error::InvariantSumNonzero);
    }
    Ok(BrauerClass { field: k.clone(), m, invariants: out })
}

impl BrauerClass {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> u64 {
        self.m
    }

    pub fn invariants(&self) -> &[Invariant] {
        &self.invariants
    }

    pub fn invariant_at(&self, v: &Place) -> Rational {
        self.invariants.iter().find(|i| &i.place == v).map(|i| i.value.clone()).unwrap_or_default()
    }

    /// The places with nonzero invariant.
    pub fn support(&self) -> Vec<Place> {
        self.invariants.iter().map(|i| i.place.clone()).collect()
    }

    pub fn from_json(k: &Field, j: &BrauerClassJson) -> Result<Self> {
        let n_real = real_places(k).len();
        let mut invs = Vec::new();
        for i in &j.inv {
            if let PlaceSpec::Real { index, .. } = &i.place {
                if *index >= n_real {
                    return Err(Error::ComplexPlaceInvariant);
                }
            }
            if i.den == 0 {
                return Err(Error::BadDenominator);
            }
            invs.push((i.place.resolve(k)?, Rational::new((i.num as i64).into(), (i.den as i64).into())));
        }
        brauer_create(k, j.m, invs)
    }

    pub fn to_json(&self) -> BrauerClassJson {
        BrauerClassJson {
            m: self.m,
            inv: self
                .invariants
                .iter()
                .map(|i| InvariantJson {
                    place: PlaceSpec::from_place(&i.place),
                    num: crate::arith::big_to_u64(i.value.numer()).expect("small numerator"),
                    den: crate::arith::big_to_u64(i.value.denom()).expect("small denominator"),
                })
                .collect(),
        }
    }
}

/// The cyclic algebra with `x^m = a`, `y^m = b`, `y x = zeta x y`.
#[derive(Clone, Debug)]
pub struct SymbolAlgebra {
    pub a: NFElement,
    pub b: NFElement,
    pub m: u64,
    pub zeta: NFElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolAlgebraJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub m: u64,
    /// Defaults to the canonical primitive `m`-th root of unity of `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Vec<String>>,
}

impl SymbolAlgebra {
    pub fn new(a: NFElement, b: NFElement, m: u64, zeta: NFElement) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroElement);
        }
        if root_of_unity_order(&zeta, m) != Some(m) {
            return Err(Error::Malformed(format!("zeta is not a primitive {m}-th root of unity")));
        }
        Ok(SymbolAlgebra { a, b, m, zeta })
    }

    pub fn from_json(k: &Field, j: &SymbolAlgebraJson) -> Result<Self> {
        let zeta = match &j.zeta {
            Some(z) => NFElement::from_json(k, z)?,
            None => primitive_root_of_unity(k, j.m)?.ok_or_else(|| {
                Error::HypothesisViolated(format!("K does not contain the {}-th roots of unity", j.m))
            })?,
        };
        Self::new(NFElement::from_json(k, &j.a)?, NFElement::from_json(k, &j.b)?, j.m, zeta)
    }

    pub fn to_json(&self) -> SymbolAlgebraJson {
        SymbolAlgebraJson { a: self.a.to_json(), b: self.b.to_json(), m: self.m, zeta: Some(self.zeta.to_json()) }
    }
}

/// Hasse invariant `j/m` of the symbol algebra at a tame place: the residue of
/// `(-1)^(v(a) v(b)) a^v(b) / b^v(a)` raised to `(q^f - 1)/m` equals `zeta^j`.
pub fn tame_symbol_invariant(s: &SymbolAlgebra, v: &Place) -> Result<Rational> {
    let Place::Finite { q, .. } = v else {
        return Err(Error::Malformed("tame symbols need a finite place".into()));
    };
    if s.m.is_multiple_of(*q) {
        return Err(Error::WildPlace { q: *q });
    }
    let k = s.a.field();
    let (ca, la) = to_local(k, v, &s.a, 1)?;
    let (_, lb) = to_local(k, v, &s.b, 1)?;
    let (_, lz) = to_local(k, v, &s.zeta, 1)?;
    let rf = ResidueField::new(ca.residue_poly().clone());
    let size = rf.order();
    let pow = |x: &crate::fp::FpPoly, e: i64| -> crate::fp::FpPoly {
        if e >= 0 {
            rf.pow(x, &BigUint::from(e as u64))
        } else {
            let inv = rf.inv(x).expect("unit residue");
            rf.pow(&inv, &BigUint::from((-e) as u64))
        }
    };
    let (ua, ub) = (ca.residue(&la.unit), ca.residue(&lb.unit));
    let mut c = rf.mul(&pow(&ua, lb.val), &pow(&ub, -la.val));
    if (la.val * lb.val).is_odd() {
        c = rf.reduce(&c.neg());
    }
    let e = (&size - BigUint::one()) / BigUint::from(s.m);
    let sym = rf.pow(&c, &e);
    let z = ca.residue(&lz.unit);
    let mut acc = crate::fp::FpPoly::one(*q);
    for j in 0..s.m {
        if rf.reduce(&acc) == rf.reduce(&sym) {
            return Ok(Rational::new((j as i64).into(), (s.m as i64).into()));
        }
        acc = rf.mul(&acc, &z);
    }
    Err(Error::Malformed("symbol value is not a power of zeta".into()))
}

fn candidate_primes(s: &SymbolAlgebra) -> Result<Vec<u64>> {
    let mut n = num_bigint::BigInt::from(s.m);
    for x in [&s.a, &s.b] {
        let nm = x.norm();
        n *= nm.numer() * nm.denom();
        for c in x.coords() {
            n *= c.denom();
        }
    }
    let n = crate::arith::big_to_u64(&num_traits::Signed::abs(&n))
        .ok_or_else(|| Error::ScopeExceeded("symbol entries too large to factor".into()))?;
    Ok(crate::arith::factor_u64(n).into_iter().map(|(q, _)| q).collect())
}

/// The class of a symbol algebra. Invariants can only be nonzero at primes dividing
/// `m`, the norms or the denominators of `a` and `b`, and at real places.
/// Wild places are handled by the quadratic Hilbert symbol over `Q` only.
pub fn symbol_class(s: &SymbolAlgebra) -> Result<BrauerClass> {
    let k = s.a.field();
    let mut invs = Vec::new();
    for q in candidate_primes(s)? {
        for v in crate::places::split_prime(k, q)? {
            let value = if !s.m.is_multiple_of(q) {
                tame_symbol_invariant(s, &v)?
            } else if s.m == 2 && k.degree() == 1 {
                let (a, b) = (s.a.as_rational().expect("rational"), s.b.as_rational().expect("rational"));
                if crate::local::hilbert_symbol(&a, &b, Some(q)) == -1 {
                    Rational::new(1.into(), 2.into())
                } else {
                    Rational::zero()
                }
            } else {
                return Err(Error::WildCaseUnsupported(format!("symbol of degree {} at a place over {q}", s.m)));
            };
            invs.push((v, value));
        }
    }
    if s.m == 2 {
        for v in real_places(k) {
            if real_sign(k, &v, &s.a) < 0 && real_sign(k, &v, &s.b) < 0 {
                invs.push((v, Rational::new(1.into(), 2.into())));
            }
        }
    }
    brauer_create(k, s.m, invs)
}

/// A Kummer extension `K(radicand^(1/exponent))` of `K`, with `mu_exponent` in `K`.
#[derive(Clone, Debug)]
pub struct KummerSplitting {
    pub radicand: NFElement,
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEntry {
    pub place: Place,
    pub invariant: String,
    pub local_degree: u64,
    pub killed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub splits: bool,
    pub entries: Vec<SplitEntry>,
}

/// `[L_w : K_v]` for `L = K(b^(1/n))`: the order of `b` in `K_v^* / (K_v^*)^n`.
pub fn kummer_local_degree(l: &KummerSplitting, v: &Place) -> Result<u64> {
    let k = l.radicand.field();
    let n = l.exponent;
    match v {
        Place::Real { .. } => Ok(if n.is_multiple_of(2) && real_sign(k, v, &l.radicand) < 0 { 2 } else { 1 }),
        Place::Finite { .. } => {
            for d in divisors(n) {
                if is_local_nth_power(k, v, &l.radicand.pow(d as i64)?, n)? {
                    return Ok(d);
                }
            }
            unreachable!("b^n is an n-th power")
        }
    }
}

/// `L` splits `A` iff `[L_w : K_v] inv_v(A) = 0 mod 1` at every `v`.
pub fn splits(l: &KummerSplitting, a: &BrauerClass) -> Result<SplitReport> {
    let k = l.radicand.field();
    if !k.same(a.field()) {
        return Err(Error::Malformed("the class and the extension live over different fields".into()));
    }
    if primitive_root_of_unity(k, l.exponent)?.is_none() {
        return Err(Error::HypothesisViolated(format!("K does not contain the {}-th roots of unity", l.exponent)));
    }
    let mut entries = Vec::new();
    for inv in a.invariants() {
        let d = kummer_local_degree(l, &inv.place)?;
        let killed = (int(d as i64) * &inv.value).is_integer();
        entries.push(SplitEntry {
            place: inv.place.clone(),
            invariant: fmt_rational(&inv.value),
            local_degree: d,
            killed,
        });
    }
    Ok(SplitReport { splits: entries.iter().all(|e| e.killed), entries })
}

/// A solution of `(K/k, deg A, support of A)` that splits `A`: a maximal subfield of the
/// division algebra in the class, Galois over `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalSubfieldCertificate {
    pub class: BrauerClassJson,
    pub certificate: SolutionCertificate,
    pub splitting: SplitReport,
}

pub fn galois_maximal_subfield_certificate(
    a: &BrauerClass,
    e: &CyclicExtension,
    opts: &SolveOptions,
) -> Result<MaximalSubfieldCertificate> {
    let k = e.field();
    if !k.same(a.field()) {
        return Err(Error::Malformed("the class and the extension live over different fields".into()));
    }
    let m = a.degree();
    if primitive_root_of_unity(k, m)?.is_none() {
        return Err(Error::HypothesisViolated(format!("K does not contain the {m}-th roots of unity")));
    }
    let inst = ProblemInstance::new(e.clone(), m, a.support(), Mode::General)?;
    let certificate = solve_general(&inst, opts)?;
    let radicand = NFElement::from_json(k, &certificate.radicand)?;
    let splitting = splits(&KummerSplitting { radicand, exponent: m }, a)?;
    if !splitting.splits {
        return Err(Error::IrreducibilityLost);
    }
    Ok(MaximalSubfieldCertificate { class: a.to_json(), certificate, splitting })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::cyclic::examples;
    use crate::local::hilbert_symbol;
    use crate::places::{first_place_over, split_prime};

    fn quaternions() -> BrauerClass {
        let k = examples::rationals().field().clone();
        let two = first_place_over(&k, 2).unwrap();
        let inf = real_places(&k)[0].clone();
        brauer_create(&k, 2, vec![(two, rat(1, 2)), (inf, rat(1, 2))]).unwrap()
    }

    #[test]
    fn creation_rules() {
        let k = examples::rationals().field().clone();
        let two = first_place_over(&k, 2).unwrap();
        assert_eq!(quaternions().support().len(), 2);
        assert!(matches!(brauer_create(&k, 2, vec![(two.clone(), rat(1, 2))]), Err(Error::InvariantSumNonzero)));
        assert!(matches!(brauer_create(&k, 2, vec![(two, rat(1, 3))]), Err(Error::BadDenominator)));
        assert!(brauer_create(&k, 3, vec![]).unwrap().support().is_empty());
        let j: BrauerClassJson =
            serde_json::from_str(r#"{"m":2,"inv":[{"place":{"kind":"real","index":1},"num":1,"den":2}]}"#).unwrap();
        assert!(matches!(BrauerClass::from_json(&k, &j), Err(Error::ComplexPlaceInvariant)));
    }

    #[test]
    fn json_round_trip() {
        let a = quaternions();
        let j = a.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back = BrauerClass::from_json(a.field(), &serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.invariants(), a.invariants());
    }

    #[test]
    fn tame_symbols_agree_with_hilbert() {
        let k = examples::rationals().field().clone();
        let vals = [-1i64, 1, -2, 2, -3, 3, 5, 7];
        for q in [3u64, 5, 7, 11] {
            let v = first_place_over(&k, q).unwrap();
            for &a in &vals {
                for &b in &vals {
                    let s = SymbolAlgebra::new(
                        NFElement::from_int(&k, a),
                        NFElement::from_int(&k, b),
                        2,
                        NFElement::from_int(&k, -1),
                    )
                    .unwrap();
                    let inv = tame_symbol_invariant(&s, &v).unwrap();
                    let h = hilbert_symbol(&int(a), &int(b), Some(q));
                    assert_eq!(inv.is_zero(), h == 1, "a={a} b={b} q={q}");
                }
            }
        }
    }

    #[test]
    fn tame_symbol_examples() {
        let k = examples::rationals().field().clone();
        let s =
            SymbolAlgebra::new(NFElement::from_int(&k, 3), NFElement::from_int(&k, 5), 2, NFElement::from_int(&k, -1))
                .unwrap();
        assert_eq!(tame_symbol_invariant(&s, &first_place_over(&k, 3).unwrap()).unwrap(), rat(1, 2));
        assert!(matches!(tame_symbol_invariant(&s, &first_place_over(&k, 2).unwrap()), Err(Error::WildPlace { q: 2 })));
    }

    #[test]
    fn symbol_classes() {
        let k = examples::rationals().field().clone();
        let m1 = NFElement::from_int(&k, -1);
        let s = SymbolAlgebra::new(m1.clone(), m1.clone(), 2, m1.clone()).unwrap();
        assert_eq!(symbol_class(&s).unwrap().invariants(), quaternions().invariants());
        let s = SymbolAlgebra::new(NFElement::from_int(&k, 3), NFElement::from_int(&k, 5), 2, m1).unwrap();
        let primes: Vec<_> = symbol_class(&s).unwrap().support().iter().map(|p| p.prime()).collect();
        assert_eq!(primes, vec![Some(3), Some(5)]);
        let z = examples::zeta5();
        let zk = z.field().clone();
        let zeta = NFElement::gen(&zk);
        let s = SymbolAlgebra::new(NFElement::from_int(&zk, 2), NFElement::from_int(&zk, 11), 5, zeta).unwrap();
        assert!(matches!(symbol_class(&s), Err(Error::WildCaseUnsupported(_))));
    }

    #[test]
    fn splitting_examples() {
        let a = quaternions();
        let k = a.field().clone();
        let gauss = KummerSplitting { radicand: NFElement::from_int(&k, -1), exponent: 2 };
        assert!(splits(&gauss, &a).unwrap().splits);
        let real = KummerSplitting { radicand: NFElement::from_int(&k, 3), exponent: 2 };
        assert!(!splits(&real, &a).unwrap().splits);
        let trivial = KummerSplitting { radicand: NFElement::from_int(&k, 4), exponent: 2 };
        assert!(!splits(&trivial, &a).unwrap().splits);
    }

    #[test]
    fn quaternion_maximal_subfield() {
        let c = galois_maximal_subfield_certificate(&quaternions(), &examples::rationals(), &SolveOptions::default())
            .unwrap();
        assert!(c.splitting.splits);
        assert!(c.certificate.all_claims_hold());
        assert_eq!(c.certificate.radicand, vec!["-14/1".to_string()]);
    }

    #[test]
    fn degree_five_class_over_zeta5() {
        let e = examples::zeta5();
        let k = e.field().clone();
        let two = first_place_over(&k, 2).unwrap();
        let eleven = split_prime(&k, 11).unwrap()[0].clone();
        let a = brauer_create(&k, 5, vec![(two, rat(1, 5)), (eleven, rat(4, 5))]).unwrap();
        let c = galois_maximal_subfield_certificate(&a, &e, &SolveOptions::default()).unwrap();
        assert!(c.splitting.entries.iter().all(|x| x.killed && x.local_degree == 5));
        assert!(c.certificate.all_claims_hold());
    }

    #[test]
    fn splitting_is_monotone_in_towers() {
        // over Q(i): K(b^(1/2)) inside K(b^(1/4))
        let k = examples::gaussian().field().clone();
        let p3 = first_place_over(&k, 3).unwrap();
        let p5 = split_prime(&k, 5).unwrap();
        let a = brauer_create(&k, 2, vec![(p3, rat(1, 2)), (p5[0].clone(), rat(1, 2))]).unwrap();
        for b in [3i64, 15, 6, -7, 30] {
            let x = NFElement::from_int(&k, b);
            let small = splits(&KummerSplitting { radicand: x.clone(), exponent: 2 }, &a).unwrap().splits;
            let big = splits(&KummerSplitting { radicand: x, exponent: 4 }, &a).unwrap().splits;
            assert!(!small || big, "b={b}");
        }
    }
}
