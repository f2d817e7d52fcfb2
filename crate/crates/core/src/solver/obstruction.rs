//! Nonexistence for `[K:k] = m = p` over `Q`: `Gal(L/k)` has order `p^2`, so it is cyclic or
//! elementary abelian, and each case needs a local extension that may not exist.

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::local::{exists_cyclic_extension, Ramification};
use crate::places::{split_prime, Place};

use super::certificate::{Obstruction, StructureWitness};
use super::instance::ProblemInstance;

fn witness(case: &str, q: u64, degree: u64) -> StructureWitness {
    let v = exists_cyclic_extension(q, degree, Ramification::TotallyRamified);
    StructureWitness {
        case: case.into(),
        q,
        degree,
        ramification: Ramification::TotallyRamified,
        exists: v.exists,
        reason: v.witness,
    }
}

fn ramified_primes(inst: &ProblemInstance) -> Result<Vec<u64>> {
    let k = inst.extension.field();
    let d = crate::arith::big_to_u64(&num_traits::Signed::abs(k.discriminant()))
        .ok_or_else(|| Error::ScopeExceeded("discriminant does not fit in 64 bits".into()))?;
    let mut out = Vec::new();
    for (q, _) in crate::arith::factor_u64(d) {
        if split_prime(k, q)?.iter().any(|w| matches!(w, Place::Finite { e, .. } if *e > 1)) {
            out.push(q);
        }
    }
    Ok(out)
}

/// `Some(obstruction)` when both group structures are ruled out, `None` when undecided.
///
/// Cyclic case: a prime ramified in `K` has inertia mapping onto `Gal(K/Q)`, hence equal to
/// the whole cyclic group, so `Q_q` needs a totally ramified cyclic extension of degree `p^2`.
/// Elementary abelian case: a place of `S` with local degree `p` in `K` has decomposition
/// group `(Z/p)^2`, which needs two independent characters of order `p`, i.e. a totally
/// ramified cyclic extension of degree `p` of `Q_q`.
pub fn no_solution_check_p2(inst: &ProblemInstance) -> Result<Option<Obstruction>> {
    let e = &inst.extension;
    let p = e.order() as u64;
    if !is_prime(p) || inst.m != p {
        return Err(Error::ScopeExceeded(format!("[L:k] = {} * {} is not the square of a prime", p, inst.m)));
    }
    if e.base_degree() != 1 {
        return Err(Error::ScopeExceeded("the base field must be Q".into()));
    }
    let cyclic = ramified_primes(inst)?.into_iter().map(|q| witness("cyclic", q, p * p)).find(|w| !w.exists);
    let elementary = inst
        .places
        .iter()
        .filter(|w| w.local_degree() as u64 == p && !w.is_real())
        .map(|w| witness("elementary_abelian", w.prime().expect("finite"), p))
        .find(|w| !w.exists);
    Ok(match (cyclic, elementary) {
        (Some(a), Some(b)) => Some(Obstruction::LocalStructure { witnesses: vec![a, b] }),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::examples;
    use crate::places::first_place_over;
    use crate::solver::instance::Mode;

    #[test]
    fn real_cubic_has_no_solution() {
        let e = examples::real_cubic7();
        let w = first_place_over(e.field(), 2).unwrap();
        let inst = ProblemInstance::new(e, 3, vec![w], Mode::General).unwrap();
        let Some(Obstruction::LocalStructure { witnesses }) = no_solution_check_p2(&inst).unwrap() else {
            panic!("expected an obstruction")
        };
        let triples: Vec<_> = witnesses.iter().map(|w| (w.q, w.degree, w.exists)).collect();
        assert_eq!(triples, vec![(7, 9, false), (2, 3, false)]);
    }

    #[test]
    fn undecided_and_out_of_scope() {
        let e = examples::sqrt2();
        let w = first_place_over(e.field(), 3).unwrap();
        let inst = ProblemInstance::new(e.clone(), 2, vec![w], Mode::Cyclic).unwrap();
        assert_eq!(no_solution_check_p2(&inst).unwrap(), None);
        let inst = ProblemInstance::new(e, 4, vec![], Mode::Cyclic).unwrap();
        assert!(matches!(no_solution_check_p2(&inst), Err(Error::ScopeExceeded(_))));
    }
}
