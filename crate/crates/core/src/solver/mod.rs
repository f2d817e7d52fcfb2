//! Solving `(K/k, m, S)`: general, abelian and cyclic modes, plus the order-`p^2` obstruction.

pub mod assemble;
pub mod certificate;
pub mod cyclic;
pub mod general;
pub mod instance;
pub mod obstruction;

pub use assemble::SolveOptions;
pub use certificate::{
    BlockRecord, Claim, GeneratorRecord, LocalChoice, Obstruction, Outcome, Restriction, SolutionCertificate,
    StructureWitness,
};
pub use cyclic::{albert_embed, norm_test, solve_cyclic, NormTestEntry, NormTestReport};
pub use general::solve_general;
pub use instance::{ExtensionJson, InstanceJson, Mode, PlaceSpec, ProblemInstance};
pub use obstruction::no_solution_check_p2;

use crate::error::Result;

/// Dispatch on the instance mode.
pub fn solve(inst: &ProblemInstance, opts: &SolveOptions) -> Result<Outcome> {
    match inst.mode {
        Mode::General | Mode::Abelian => Ok(Outcome::Solved(Box::new(solve_general(inst, opts)?))),
        Mode::Cyclic => solve_cyclic(inst, opts),
    }
}
