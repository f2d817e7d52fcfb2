use num_bigint::BigInt;
use proptest::prelude::*;

use gw_core::arith::{crt, fmt_rational, gcd_u64, int, parse_rational, primes, rat, val_u64};
use gw_core::brauer::{symbol_class, SymbolAlgebra};
use gw_core::cyclic::examples;
use gw_core::factor::is_irreducible;
use gw_core::kummer::binomial_irreducible;
use gw_core::local::{exists_cyclic_extension, hilbert_symbol, is_local_nth_power, power_class_group, Ramification};
use gw_core::places::{first_place_over, real_places};
use gw_core::{NFElement, NumberField, Polynomial, Rational};

const SMALL_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

fn poly(cs: &[i64]) -> Polynomial {
    Polynomial::from_ints(cs)
}

fn places_of(a: i64, b: i64) -> Vec<u64> {
    primes()
        .take_while(|q| *q <= 2 * a.unsigned_abs().max(b.unsigned_abs()).max(2))
        .filter(|q| *q == 2 || a % *q as i64 == 0 || b % *q as i64 == 0)
        .collect()
}

/// `Q_q^*/(Q_q^*)^n` has order `n * [Z_q^* : (Z_q^*)^n]`; the unit index is
/// `gcd(n, q - 1) q^(v_q(n))` for odd `q` and `gcd(n, 2) 2^(v_2(n))` for `q = 2`.
fn power_class_size(q: u64, n: u64) -> u64 {
    let tors = if q == 2 { gcd_u64(n, 2) } else { gcd_u64(n, q - 1) };
    n * tors * q.pow(val_u64(n, q))
}

/// Units `u mod q^N` whose `n`-th power class is trivial, with `N = 2 v_q(n) + 1`.
fn is_power_mod(u: u64, q: u64, n: u64) -> bool {
    let modulus = q.pow(2 * val_u64(n, q) + 1);
    let target = u % modulus;
    (1..modulus).filter(|x| x % q != 0).any(|x| {
        let mut p = 1u64;
        for _ in 0..n {
            p = p * x % modulus;
        }
        p == target
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = rat(n, d);
        prop_assert_eq!(parse_rational(&fmt_rational(&x)).unwrap(), x);
    }

    #[test]
    fn polynomial_division(f in prop::collection::vec(-9i64..10, 1..7), g in prop::collection::vec(-9i64..10, 1..5)) {
        let (f, mut g) = (poly(&f), poly(&g));
        if g.is_zero() {
            g = Polynomial::one();
        }
        let (qt, r) = f.div_rem(&g);
        prop_assert_eq!(&(&qt * &g) + &r, f);
        prop_assert!(r.is_zero() || r.degree() < g.degree());
    }

    #[test]
    fn norm_is_multiplicative(x in prop::collection::vec(-20i64..20, 4), y in prop::collection::vec(-20i64..20, 4)) {
        let k = examples::zeta5().field().clone();
        let x = NFElement::new(&k, x.into_iter().map(int).collect());
        let y = NFElement::new(&k, y.into_iter().map(int).collect());
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        if !x.is_zero() {
            prop_assert!((&x.inv().unwrap() * &x).is_one());
        }
    }

    #[test]
    fn hilbert_product_formula(a in -200i64..200, b in -200i64..200) {
        prop_assume!(a != 0 && b != 0);
        let (ra, rb) = (int(a), int(b));
        let mut prod = hilbert_symbol(&ra, &rb, None);
        for q in places_of(a, b) {
            prod *= hilbert_symbol(&ra, &rb, Some(q));
        }
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn hilbert_symbol_is_symmetric_and_bimultiplicative(a in -60i64..60, b in -60i64..60, c in -60i64..60, qi in 0usize..5) {
        prop_assume!(a != 0 && b != 0 && c != 0);
        let q = Some(SMALL_PRIMES[qi]);
        let h = |x: i64, y: i64| hilbert_symbol(&int(x), &int(y), q);
        prop_assert_eq!(h(a, b), h(b, a));
        prop_assert_eq!(h(a * c, b), h(a, b) * h(c, b));
    }

    #[test]
    fn binomial_criterion_matches_factoring(a in -300i64..300, n in 2u64..13) {
        prop_assume!(a != 0);
        let k = NumberField::rationals();
        let verdict = binomial_irreducible(&NFElement::from_int(&k, a), n).unwrap();
        let mut cs = vec![int(-a)];
        cs.resize(n as usize, int(0));
        cs.push(int(1));
        prop_assert_eq!(verdict.irreducible, is_irreducible(&Polynomial::new(cs)).unwrap());
        prop_assert!(verdict.check(&NFElement::from_int(&k, a)));
    }

    #[test]
    fn power_class_group_sizes(qi in 0usize..5, n in 1u64..30) {
        let q = SMALL_PRIMES[qi];
        let g = power_class_group(q, n);
        prop_assert_eq!(g.size(), power_class_size(q, n));
        prop_assert_eq!(g.orders().iter().product::<u64>(), g.size());
        prop_assert_eq!(g.is_cyclic(), g.units_are_powers());
        prop_assert!(exists_cyclic_extension(q, n, Ramification::Unramified).exists);
    }

    #[test]
    fn local_powers_match_enumeration(u in 1u64..500, qi in 0usize..4, n in 2u64..5) {
        let q = SMALL_PRIMES[qi];
        prop_assume!(u % q != 0);
        let k = NumberField::rationals();
        let w = first_place_over(&k, q).unwrap();
        let x = NFElement::from_int(&k, u as i64);
        prop_assert_eq!(is_local_nth_power(&k, &w, &x, n).unwrap(), is_power_mod(u, q, n));
    }

    #[test]
    fn crt_solutions(r1 in 0i64..7, r2 in 0i64..11, r3 in 0i64..9) {
        let residues = [(BigInt::from(r1), BigInt::from(7)), (BigInt::from(r2), BigInt::from(11)), (BigInt::from(r3), BigInt::from(9))];
        let (x, m) = crt(&residues).unwrap();
        prop_assert_eq!(m, BigInt::from(693));
        for (r, q) in &residues {
            prop_assert_eq!(((&x - r) % q + q) % q, BigInt::from(0));
        }
    }

    #[test]
    fn quaternion_invariants_are_hilbert_symbols(a in -40i64..40, b in -40i64..40) {
        prop_assume!(a != 0 && b != 0);
        let k = NumberField::rationals();
        let s = SymbolAlgebra::new(NFElement::from_int(&k, a), NFElement::from_int(&k, b), 2, NFElement::from_int(&k, -1)).unwrap();
        let class = symbol_class(&s).unwrap();
        let half = rat(1, 2);
        let inf = &real_places(&k)[0];
        prop_assert_eq!(class.invariant_at(inf) == half, hilbert_symbol(&int(a), &int(b), None) == -1);
        for q in places_of(a, b) {
            let v = first_place_over(&k, q).unwrap();
            prop_assert_eq!(class.invariant_at(&v) == half, hilbert_symbol(&int(a), &int(b), Some(q)) == -1);
        }
        let total: Rational = class.invariants().iter().map(|i| i.value.clone()).sum();
        prop_assert!(total.is_integer());
    }
}
