//! Exact algebra, local fields and certificate-producing solvers for the
//! generalized weak Grunwald-Wang problem over number fields.

pub mod arith;
pub mod brauer;
pub mod cyclic;
pub mod error;
pub mod factor;
pub mod field;
pub mod fp;
pub mod kummer;
pub mod linalg;
pub mod local;
pub mod places;
pub mod poly;
pub mod real;
pub mod solver;

pub use arith::Rational;
pub use brauer::{BrauerClass, SymbolAlgebra};
pub use cyclic::{CyclicExtension, Subfield};
pub use error::{Error, Result};
pub use field::{Field, NFElement, NumberField};
pub use places::Place;
pub use poly::Polynomial;
pub use solver::{Mode, Obstruction, Outcome, ProblemInstance, SolutionCertificate, SolveOptions};
