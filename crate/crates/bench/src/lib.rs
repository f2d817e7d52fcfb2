//! Benchmark inputs shared by the criterion targets in `benches/`.

use gw_core::cyclic::examples;
use gw_core::places::first_place_over;
use gw_core::{Mode, ProblemInstance};

/// `(K/k, m, {place over q})` on one of the example fields.
pub fn instance(e: gw_core::CyclicExtension, m: u64, q: u64, mode: Mode) -> ProblemInstance {
    let w = first_place_over(e.field(), q).expect("q is not an index prime");
    ProblemInstance::new(e, m, vec![w], mode).expect("valid instance")
}

pub fn sqrt2_at_3() -> ProblemInstance {
    instance(examples::sqrt2(), 2, 3, Mode::Cyclic)
}

pub fn gaussian_at_5() -> ProblemInstance {
    instance(examples::gaussian(), 2, 5, Mode::Abelian)
}

pub fn zeta5_at_2() -> ProblemInstance {
    instance(examples::zeta5(), 5, 2, Mode::General)
}
