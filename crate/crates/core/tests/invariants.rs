use gw_core::arith::{factor_u64, int, primes, rat};
use gw_core::brauer::{brauer_create, splits, KummerSplitting};
use gw_core::cyclic::examples;
use gw_core::factor::factor_integer_poly;
use gw_core::field::{factor_over, KPoly};
use gw_core::kummer::{binomial_irreducible, build_kummer_exponent, power_class_order};
use gw_core::local::{local_binomial_irreducible, power_class_group};
use gw_core::places::{first_place_over, real_places, restrict_place_set, split_prime, Place};
use gw_core::solver::{norm_test, solve, solve_general};
use gw_core::{
    CyclicExtension, Error, Mode, NFElement, NumberField, Outcome, Polynomial, ProblemInstance, Rational, SolveOptions,
};

fn cyclic(f: &[i64], sigma: &[i64]) -> CyclicExtension {
    let k = NumberField::new(Polynomial::from_ints(f)).unwrap();
    CyclicExtension::new(&k, NFElement::new(&k, sigma.iter().map(|c| int(*c)).collect())).unwrap()
}

fn test_fields() -> Vec<CyclicExtension> {
    vec![
        examples::sqrt2(),
        examples::sqrt3(),
        examples::gaussian(),
        examples::zeta5(),
        examples::zeta7(),
        examples::real_cubic7(),
    ]
}

fn ef(p: &Place) -> (usize, usize) {
    match p {
        Place::Finite { e, f, .. } => (*e, *f),
        Place::Real { .. } => panic!("finite place expected"),
    }
}

fn rational_roots(f: &Polynomial) -> bool {
    // monic integral: rational roots are integers dividing the constant term
    let c0 = f.coeff(0);
    if c0 == int(0) {
        return true;
    }
    let c = c0.numer().clone();
    let bound: i64 = c.clone().try_into().map(|x: i64| x.abs()).unwrap_or(i64::MAX).min(10_000);
    (1..=bound).filter(|d| (c.clone() % d) == 0.into()).any(|d| f.eval(&int(d)) == int(0) || f.eval(&int(-d)) == int(0))
}

#[test]
fn sigma_has_exact_order() {
    for e in test_fields() {
        assert!(e.sigma_order_check());
        let theta = NFElement::gen(e.field());
        assert_eq!(e.apply_sigma_pow(&theta, e.order()), theta);
    }
}

#[test]
fn subfields_at_primes_have_the_p_part_degree() {
    let e = examples::zeta7();
    for (p, s) in factor_u64(e.order() as u64) {
        assert_eq!(e.subfield_at_prime(p).unwrap().ext.field().degree() as u64, p.pow(s));
    }
}

#[test]
fn relative_norm_is_multiplicative_over_a_quadratic_base() {
    let z = examples::zeta5();
    let e = CyclicExtension::new(z.field(), z.apply_sigma(z.sigma())).unwrap();
    assert_eq!((e.order(), e.base_degree()), (2, 2));
    let k = e.field();
    let xs = [[1, 2, 0, -1], [3, 0, 1, 1], [-2, 5, 4, 0]];
    for x in &xs {
        for y in &xs {
            let a = NFElement::new(k, x.iter().map(|c| int(*c)).collect());
            let b = NFElement::new(k, y.iter().map(|c| int(*c)).collect());
            let n = e.relative_norm(&(&a * &b)).unwrap();
            assert_eq!(n, &e.relative_norm(&a).unwrap() * &e.relative_norm(&b).unwrap());
            assert!(e.is_fixed(&n));
        }
    }
}

#[test]
fn factorizations_multiply_back() {
    let cases: [&[i64]; 5] = [&[4, 0, 0, 0, 1], &[-1, 0, 0, 0, 0, 0, 1], &[2, -3, 1], &[-8, 0, 0, 1], &[1, 0, 2, 0, 1]];
    for cs in cases {
        let f = Polynomial::from_ints(cs);
        let (unit, factors) = factor_integer_poly(&f).unwrap();
        let mut prod = Polynomial::constant(unit);
        for (g, m) in &factors {
            prod = &prod * &g.pow(*m as u32);
            if g.degree() <= 3 {
                assert!(g.degree() == 1 || !rational_roots(g), "{g:?} has a rational root");
            }
        }
        assert_eq!(prod, f);
        // factoring over the trivial number field agrees
        let q = NumberField::rationals();
        let over_q = factor_over(&KPoly::from_rational_poly(&q, &f)).unwrap();
        let degs: Vec<_> = over_q.iter().map(|(g, m)| (g.degree(), *m)).collect();
        let mut want: Vec<_> = factors.iter().map(|(g, m)| (g.degree(), *m)).collect();
        let mut got = degs.clone();
        want.sort();
        got.sort();
        assert_eq!(got, want, "{cs:?}");
    }
}

#[test]
fn fundamental_identity_and_galois_symmetry() {
    for e in test_fields() {
        let k = e.field();
        for q in primes().take_while(|q| *q < 60) {
            let places = match split_prime(k, q) {
                Ok(p) => p,
                Err(Error::IndexPrimeUnsupported { .. }) => continue,
                Err(err) => panic!("{err}"),
            };
            let total: usize = places.iter().map(|p| ef(p).0 * ef(p).1).sum();
            assert_eq!(total, k.degree(), "q = {q}");
            // every test field is Galois over Q
            assert!(places.iter().all(|p| ef(p) == ef(&places[0])), "q = {q}");
            for class in restrict_place_set(&e, &places).unwrap() {
                assert_eq!(e.order() % class.len(), 0);
            }
        }
    }
}

#[test]
fn local_fields_satisfy_the_existence_hypotheses() {
    for q in primes().take_while(|q| *q <= 50) {
        for p in [2u64, 3, 5, 7] {
            let g = power_class_group(q, p);
            assert!(g.size() > 1, "Q_{q} equals its {p}-th powers");
            let has_mu_p = p == 2 || (q - 1) % p == 0;
            if has_mu_p {
                assert!(!g.is_cyclic(), "Q_{q} mod {p}-th powers is cyclic");
            }
        }
    }
}

#[test]
fn binomial_criterion_over_galois_fields() {
    let fields = [examples::gaussian(), examples::sqrt2(), examples::zeta5()];
    let radicands = [2i64, 3, 5, -2, -8, -18, -4, 4, 9, -1];
    for e in &fields {
        let k = e.field();
        let max_n = if k.degree() > 2 { 4 } else { 8 };
        for a in radicands {
            for n in 2..=max_n {
                let x = NFElement::from_int(k, a);
                let v = binomial_irreducible(&x, n).unwrap();
                let f = factor_over(&KPoly::binomial(n as usize, &x)).unwrap();
                let irreducible = f.len() == 1 && f[0].1 == 1;
                assert_eq!(v.irreducible, irreducible, "a = {a}, n = {n}, K of degree {}", k.degree());
                assert!(v.check(&x));
            }
        }
    }
}

#[test]
fn minus_four_is_the_exceptional_case() {
    // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2) although -4 is not a square in Q
    let q = NumberField::rationals();
    let a = NFElement::from_int(&q, -4);
    assert!(binomial_irreducible(&a, 2).unwrap().irreducible);
    assert!(!binomial_irreducible(&a, 4).unwrap().irreducible);
    let (_, f) = factor_integer_poly(&Polynomial::from_ints(&[4, 0, 0, 0, 1])).unwrap();
    assert_eq!(f.iter().map(|(g, _)| g.degree()).collect::<Vec<_>>(), vec![2, 2]);
}

#[test]
fn kummer_towers_round_trip() {
    for (e, a, n) in [(examples::gaussian(), 3, 4), (examples::sqrt2(), -5, 3), (examples::rationals(), 7, 6)] {
        let x = NFElement::from_int(e.field(), a);
        let t = build_kummer_exponent(&x, n).unwrap();
        assert!(t.verify());
        assert_eq!(t.alpha.pow(n as i64).unwrap(), t.push(&x));
        assert_eq!(t.field.degree(), e.field().degree() * n as usize);
    }
}

#[test]
fn prime_blocks_recompose_for_m_six() {
    // Q(zeta_3) contains mu_6
    let e = cyclic(&[1, 1, 1], &[-1, -1]);
    let w = first_place_over(e.field(), 7).unwrap();
    let inst = ProblemInstance::new(e.clone(), 6, vec![w.clone()], Mode::General).unwrap();
    let c = solve_general(&inst, &SolveOptions::default()).unwrap();
    assert!(c.all_claims_hold(), "{:#?}", c.transcript);
    assert_eq!(c.field.len(), 13);
    let k = e.field();
    for blk in &c.blocks {
        let r = NFElement::from_json(k, &blk.radicand).unwrap();
        assert!(local_binomial_irreducible(k, &w, &r, blk.exponent).unwrap());
    }
    let b = NFElement::from_json(k, &c.radicand).unwrap();
    assert!(local_binomial_irreducible(k, &w, &b, 6).unwrap());
    assert!(binomial_irreducible(&b, 6).unwrap().irreducible);
}

#[test]
fn norm_test_true_means_the_search_succeeds() {
    let fields = [examples::sqrt2(), cyclic(&[-1, 1, 1], &[-1, -1]), cyclic(&[-10, 0, 1], &[0, -1])];
    for e in fields {
        assert!(norm_test(&e, 2).unwrap().holds);
        let inst = ProblemInstance::new(e.clone(), 2, vec![], Mode::Cyclic).unwrap();
        let Outcome::Solved(c) = solve(&inst, &SolveOptions::default()).unwrap() else { panic!("obstructed") };
        let a = NFElement::from_json(e.field(), c.blocks[0].norm_element.as_ref().unwrap()).unwrap();
        assert_eq!(e.relative_norm(&a).unwrap(), NFElement::from_int(e.field(), -1));
        let b = NFElement::from_json(e.field(), c.blocks[0].hilbert90.as_ref().unwrap()).unwrap();
        assert_eq!(power_class_order(&b, 2).unwrap(), 2);
        assert_eq!(c.generators[0].order, 4);
    }
}

#[test]
fn splitting_matches_full_local_degree() {
    let q = NumberField::rationals();
    let two = first_place_over(&q, 2).unwrap();
    let inf = real_places(&q)[0].clone();
    let a = brauer_create(&q, 2, vec![(two.clone(), rat(1, 2)), (inf, rat(1, 2))]).unwrap();
    for b in -40i64..=40 {
        if b == 0 || (b > 0 && ((b as f64).sqrt().round() as i64).pow(2) == b) {
            continue;
        }
        let x = NFElement::from_int(&q, b);
        let full = local_binomial_irreducible(&q, &two, &x, 2).unwrap() && b < 0;
        let s = splits(&KummerSplitting { radicand: x, exponent: 2 }, &a).unwrap();
        assert_eq!(s.splits, full, "b = {b}");
    }
}

#[test]
fn solving_is_deterministic() {
    let e = examples::sqrt2();
    let w = first_place_over(e.field(), 7).unwrap();
    let inst = ProblemInstance::new(e, 2, vec![w], Mode::Cyclic).unwrap();
    let opts = SolveOptions { seed: 11, ..SolveOptions::default() };
    assert_eq!(solve(&inst, &opts).unwrap(), solve(&inst, &opts).unwrap());
}

#[test]
fn invariant_denominators_must_divide_the_degree() {
    let q = NumberField::rationals();
    let places: Vec<_> = [3u64, 5].iter().map(|p| first_place_over(&q, *p).unwrap()).collect();
    let r = |n, d| Rational::new(int(n).to_integer(), int(d).to_integer());
    assert!(brauer_create(&q, 3, vec![(places[0].clone(), r(1, 3)), (places[1].clone(), r(2, 3))]).is_ok());
    assert!(brauer_create(&q, 2, vec![(places[0].clone(), r(1, 3)), (places[1].clone(), r(2, 3))]).is_err());
}
