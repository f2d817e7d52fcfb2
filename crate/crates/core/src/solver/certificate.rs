//! Serializable solver outputs. Every field is exact; rationals are `"p/q"` strings.

use serde::{Deserialize, Serialize};

use crate::local::classes::Ramification;
use crate::places::Place;

use super::instance::{InstanceJson, Mode};

/// One re-checkable statement, as recorded by the solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub claim: String,
    pub checker: String,
    pub result: bool,
}

impl Claim {
    pub fn new(claim: impl Into<String>, checker: &str, result: bool) -> Self {
        Claim { claim: claim.into(), checker: checker.into(), result }
    }
}

/// What an automorphism of `L` does on `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Restriction {
    Sigma,
    Identity,
}

/// An automorphism of `L`, given by the image of the generator of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub image: Vec<String>,
    pub restricts_to: Restriction,
    pub order: u64,
}

/// The local radicand chosen for the places of `S` over one rational prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalChoice {
    /// `None` for the real places.
    pub q: Option<u64>,
    pub value: String,
    /// `a = value (mod q^digits)`.
    pub digits: u32,
    pub places: Vec<Place>,
}

/// Data for the prime-power part `m_p` of `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    /// `0` when one block covers all of `m` inside `K` itself.
    pub p: u64,
    pub exponent: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub local: Vec<LocalChoice>,
    /// Block radicand in the coordinates of `K`.
    pub radicand: Vec<String>,
    /// Cyclic mode: `a` with `N(a)` a primitive root of unity, in `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_element: Option<Vec<String>>,
    /// Cyclic mode: `b` with `sigma(b)/b = a^(m_p)`, before twisting, in `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert90: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionCertificate {
    pub mode: Mode,
    pub instance: InstanceJson,
    pub m: u64,
    pub base_degree: usize,
    /// A primitive `m`-th root of unity in `K`.
    pub zeta: Vec<String>,
    /// `L = K(radicand^(1/m))`, coordinates in `K`.
    pub radicand: Vec<String>,
    /// Defining polynomial of `L` over `Q`.
    pub field: Vec<String>,
    pub shift: i64,
    pub alpha: Vec<String>,
    pub theta_image: Vec<String>,
    /// Cyclic mode: `A` with `sigma~(alpha) = A alpha`, in `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_multiplier: Option<Vec<String>>,
    pub generators: Vec<GeneratorRecord>,
    pub blocks: Vec<BlockRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub auxiliary_place: Option<Place>,
    pub transcript: Vec<Claim>,
}

impl SolutionCertificate {
    pub fn all_claims_hold(&self) -> bool {
        self.transcript.iter().all(|c| c.result)
    }
}

/// One branch of the order-`p^2` dichotomy, refuted by a local existence question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureWitness {
    /// `cyclic` or `elementary_abelian`.
    pub case: String,
    pub q: u64,
    pub degree: u64,
    pub ramification: Ramification,
    pub exists: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// A primitive `p`-power root of unity of `k` is not a local norm from `K_p` at `place`.
    NormFailure {
        p: u64,
        exponent: u64,
        /// Defining polynomial of the base field `k` (as computed from the instance).
        base_field: Vec<String>,
        place: Place,
        zeta: Vec<String>,
        detail: String,
    },
    LocalStructure {
        witnesses: Vec<StructureWitness>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Outcome {
    Solved(Box<SolutionCertificate>),
    Obstructed(Obstruction),
}
