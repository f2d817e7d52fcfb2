//! The power-class group `Q_q^* / (Q_q^*)^n` and local class field theory
//! existence of cyclic extensions of `Q_q`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, lcm_u64, pow_mod, primitive_root, val_u64};

/// Which part of `Q_q^*` a cyclic factor comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassSource {
    Uniformizer,
    RootsOfUnity,
    PrincipalUnits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicFactor {
    pub order: u64,
    /// An integer whose class generates this factor.
    #[serde(with = "crate::arith::big_str")]
    pub generator: BigInt,
    pub source: ClassSource,
}

/// Elementary cyclic factors of `Q_q^* / (Q_q^*)^n`; factors of order 1 are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerClassGroup {
    pub q: u64,
    pub n: u64,
    pub factors: Vec<CyclicFactor>,
}

impl PowerClassGroup {
    pub fn size(&self) -> u64 {
        self.factors.iter().map(|f| f.order).product()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Orders of the unit part `Z_q^* / (Z_q^*)^n`.
    pub fn unit_orders(&self) -> Vec<u64> {
        self.factors.iter().filter(|f| f.source != ClassSource::Uniformizer).map(|f| f.order).collect()
    }

    /// Units are all `n`-th powers.
    pub fn units_are_powers(&self) -> bool {
        self.unit_orders().is_empty()
    }
}

/// Teichmuller lift of `g` modulo `q^digits`.
fn teichmuller(g: u64, q: u64, digits: u32) -> BigInt {
    let m = num_traits::pow(BigInt::from(q), digits as usize);
    let mut x = BigInt::from(g);
    for _ in 0..digits {
        x = x.modpow(&BigInt::from(q), &m);
    }
    x
}

pub fn power_class_group(q: u64, n: u64) -> PowerClassGroup {
    assert!(n >= 1, "exponent must be positive");
    let s = val_u64(n, q);
    let mut factors = vec![CyclicFactor { order: n, generator: BigInt::from(q), source: ClassSource::Uniformizer }];
    if q == 2 {
        factors.push(CyclicFactor {
            order: gcd_u64(2, n),
            generator: BigInt::from(-1),
            source: ClassSource::RootsOfUnity,
        });
        factors.push(CyclicFactor { order: 1 << s, generator: BigInt::from(5), source: ClassSource::PrincipalUnits });
    } else {
        let g = primitive_root(q);
        debug_assert_eq!(pow_mod(g, q - 1, q), 1);
        factors.push(CyclicFactor {
            order: gcd_u64(n, q - 1),
            generator: teichmuller(g, q, 8),
            source: ClassSource::RootsOfUnity,
        });
        factors.push(CyclicFactor {
            order: q.pow(s),
            generator: BigInt::from(1 + q),
            source: ClassSource::PrincipalUnits,
        });
    }
    factors.retain(|f| f.order > 1);
    PowerClassGroup { q, n, factors }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ramification {
    Any,
    TotallyRamified,
    Unramified,
}

impl std::str::FromStr for Ramification {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "any" => Ok(Ramification::Any),
            "totally_ramified" | "totally-ramified" => Ok(Ramification::TotallyRamified),
            "unramified" => Ok(Ramification::Unramified),
            _ => Err(crate::error::Error::Malformed(format!("unknown ramification type {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExistenceVerdict {
    pub exists: bool,
    pub group: PowerClassGroup,
    /// Order of the image of the units in the largest cyclic quotient of exponent `d`.
    pub unit_image: u64,
    pub witness: String,
}

/// Does `Q_q` have a cyclic extension of degree `d` with the given ramification?
///
/// Cyclic degree-`d` extensions correspond to surjections `Q_q^* -> Z/d`; they all
/// factor through `Q_q^*/(Q_q^*)^d`. Total ramification needs the units to surject,
/// which happens iff the unit orders have lcm `d`.
pub fn exists_cyclic_extension(q: u64, d: u64, ram: Ramification) -> ExistenceVerdict {
    assert!(d >= 1, "degree must be positive");
    let group = power_class_group(q, d);
    let unit_image = group.unit_orders().into_iter().fold(1, lcm_u64);
    let (exists, witness) = match ram {
        Ramification::Unramified => (true, format!("the unramified extension of degree {d}")),
        Ramification::Any => (true, format!("the unramified extension of degree {d}")),
        Ramification::TotallyRamified if unit_image == d => {
            (true, format!("units of Q_{q} surject onto Z/{d}; kernel of such a map is the norm group"))
        }
        Ramification::TotallyRamified => (
            false,
            format!(
                "units of Q_{q} map onto a subgroup of order at most {unit_image} in any cyclic quotient of order {d}"
            ),
        ),
    };
    ExistenceVerdict { exists, group, unit_image, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// `[Z_q^* : (Z_q^*)^n]` by enumerating `(Z/q^m)^*`; exact once `q^m` exceeds `q^(2 v_q(n) + 2)`.
    fn brute_unit_index(q: u64, n: u64, m: u32) -> u64 {
        let modulus = q.pow(m);
        let units: Vec<u64> = (1..modulus).filter(|x| x % q != 0).collect();
        let image: BTreeSet<u64> = units.iter().map(|&x| pow_mod(x, n, modulus)).collect();
        units.len() as u64 / image.len() as u64
    }

    #[test]
    fn documented_groups() {
        assert_eq!(power_class_group(3, 2).orders(), vec![2, 2]);
        assert_eq!(power_class_group(3, 2).size(), 4);
        assert_eq!(power_class_group(7, 9).orders(), vec![9, 3]);
        assert_eq!(power_class_group(2, 3).orders(), vec![3]);
        assert_eq!(power_class_group(2, 2).orders(), vec![2, 2, 2]);
        assert_eq!(power_class_group(2, 4).size(), 32);
    }

    #[test]
    fn sizes_match_enumeration() {
        for q in [2u64, 3, 5, 7] {
            for n in [2u64, 3, 4, 6, 8, 9] {
                let mut m = 2 * val_u64(n, q) + 3;
                while q.pow(m) > 1_000_000 {
                    m -= 1;
                }
                let g = power_class_group(q, n);
                assert_eq!(g.size(), n * brute_unit_index(q, n, m), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn cyclic_iff_units_are_powers() {
        for q in [2u64, 3, 5, 7] {
            for n in [2u64, 3, 4, 9] {
                let g = power_class_group(q, n);
                assert_eq!(g.is_cyclic(), g.units_are_powers(), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn existence_examples() {
        assert!(!exists_cyclic_extension(7, 9, Ramification::TotallyRamified).exists);
        assert_eq!(exists_cyclic_extension(7, 9, Ramification::TotallyRamified).unit_image, 3);
        assert!(!exists_cyclic_extension(2, 3, Ramification::TotallyRamified).exists);
        assert!(exists_cyclic_extension(3, 2, Ramification::TotallyRamified).exists);
        assert!(exists_cyclic_extension(7, 9, Ramification::Unramified).exists);
        assert!(exists_cyclic_extension(7, 3, Ramification::TotallyRamified).exists);
        assert!(exists_cyclic_extension(3, 9, Ramification::TotallyRamified).exists);
        assert!(exists_cyclic_extension(2, 4, Ramification::TotallyRamified).exists);
    }

    #[test]
    fn teichmuller_has_finite_order() {
        let t = teichmuller(3, 7, 8);
        let m = num_traits::pow(BigInt::from(7), 8);
        assert_eq!(t.modpow(&BigInt::from(6), &m), BigInt::from(1));
    }

    #[test]
    fn generators_are_not_powers() {
        use crate::field::{NFElement, NumberField};
        use crate::places::first_place_over;
        let k = NumberField::rationals();
        for q in [2u64, 3, 5, 7] {
            let w = first_place_over(&k, q).unwrap();
            for n in [2u64, 3, 4, 9] {
                for f in power_class_group(q, n).factors {
                    let x = NFElement::from_rational(&k, f.generator.clone().into());
                    assert!(!super::super::is_local_nth_power(&k, &w, &x, n).unwrap(), "q={q} n={n} {:?}", f);
                }
            }
        }
    }
}
