use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial does not have integer coefficients")]
    NonIntegral,
    #[error("polynomial is reducible over the rationals")]
    ReduciblePolynomial,
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("no shift with |s| <= {bound} gives a squarefree norm")]
    ShiftExhausted { bound: i64 },
    #[error("element is zero")]
    ZeroElement,
    #[error("prime {q} divides the index of the power basis")]
    IndexPrimeUnsupported { q: u64 },
    #[error("insufficient p-adic precision ({precision} digits)")]
    InsufficientPrecision { precision: u32 },
    #[error("unsupported completion: {0}")]
    UnsupportedCompletion(String),
    #[error("wild local norm computation unsupported: {0}")]
    WildCaseUnsupported(String),
    #[error("radicand search exhausted: {0}")]
    SearchExhausted(String),
    #[error("irreducibility lost while building an extension")]
    IrreducibilityLost,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("weak approximation failed: {0}")]
    ApproximationFailed(String),
    #[error("scope exceeded: {0}")]
    ScopeExceeded(String),
    #[error("norm precondition failed: {0}")]
    NormPreconditionFailed(String),
    #[error("Hilbert 90 resolvent degenerate after {attempts} attempts")]
    ResolventDegenerate { attempts: usize },
    #[error("twist search exhausted at height {height} (not a nonexistence proof)")]
    TwistSearchExhausted { height: u64 },
    #[error("norm equation search exhausted at height {height}")]
    NormSearchExhausted { height: u64 },
    #[error("Hasse invariants do not sum to 0 mod 1")]
    InvariantSumNonzero,
    #[error("invariant denominator does not divide the degree")]
    BadDenominator,
    #[error("complex places cannot carry invariants")]
    ComplexPlaceInvariant,
    #[error("residue characteristic {q} divides the symbol degree")]
    WildPlace { q: u64 },
}

impl Error {
    /// Stable snake_case identifier, used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed",
            Error::NonMonic => "non_monic",
            Error::NonIntegral => "non_integral",
            Error::ReduciblePolynomial => "reducible_polynomial",
            Error::DegreeCapExceeded { .. } => "degree_cap_exceeded",
            Error::ShiftExhausted { .. } => "shift_exhausted",
            Error::ZeroElement => "zero_element",
            Error::IndexPrimeUnsupported { .. } => "index_prime_unsupported",
            Error::InsufficientPrecision { .. } => "insufficient_precision",
            Error::UnsupportedCompletion(_) => "unsupported_completion",
            Error::WildCaseUnsupported(_) => "wild_case_unsupported",
            Error::SearchExhausted(_) => "search_exhausted",
            Error::IrreducibilityLost => "irreducibility_lost",
            Error::HypothesisViolated(_) => "hypothesis_violated",
            Error::ApproximationFailed(_) => "approximation_failed",
            Error::ScopeExceeded(_) => "scope_exceeded",
            Error::NormPreconditionFailed(_) => "norm_precondition_failed",
            Error::ResolventDegenerate { .. } => "resolvent_degenerate",
            Error::TwistSearchExhausted { .. } => "twist_search_exhausted",
            Error::NormSearchExhausted { .. } => "norm_search_exhausted",
            Error::InvariantSumNonzero => "invariant_sum_nonzero",
            Error::BadDenominator => "bad_denominator",
            Error::ComplexPlaceInvariant => "complex_place_invariant",
            Error::WildPlace { .. } => "wild_place",
        }
    }

    /// Errors caused by the input itself rather than by the scope of the algorithms.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Malformed(_)
                | Error::NonMonic
                | Error::NonIntegral
                | Error::ReduciblePolynomial
                | Error::ZeroElement
                | Error::InvariantSumNonzero
                | Error::BadDenominator
                | Error::ComplexPlaceInvariant
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
