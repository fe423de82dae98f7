use thiserror::Error;

use crate::gamma::RepName;

/// Failure modes of the construction and verification routines.
///
/// The display strings are stable identifiers; the CLI and the JSON report
/// surface them verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown-representation: {0}")]
    UnknownRep(String),
    #[error("intertwiner-invalid: {from} -> {to}")]
    IntertwinerInvalid { from: RepName, to: RepName },
    #[error("representation-invalid: {0}")]
    RepresentationInvalid(RepName),
    #[error("projector-algebra-violation: {0}")]
    ProjectorAlgebraViolation(String),
    #[error("index-out-of-range: {0}")]
    IndexOutOfRange(usize),
    #[error("component-mismatch: expected {expected}, got {got}")]
    ComponentMismatch { expected: usize, got: usize },
    #[error("representation-mismatch: {0} vs {1}")]
    RepMismatch(RepName, RepName),
    #[error("charge-conjugation-needs-bispinor")]
    ChargeConjugationNeedsBispinor,
    #[error("massless-needs-weyl")]
    MasslessNeedsWeyl,
    #[error("off-shell")]
    OffShell,
    #[error("weyl-requires-massless")]
    WeylRequiresMassless,
    #[error("split-requires-mass")]
    SplitRequiresMass,
    #[error("split-requires-spinor-rep")]
    SplitRequiresSpinorRep,
    #[error("not-a-solution")]
    NotASolution,
    #[error("not-majorana")]
    NotMajorana,
    #[error("mass-mismatch")]
    MassMismatch,
    #[error("irrational-transport: {from} -> {to}")]
    IrrationalTransport { from: RepName, to: RepName },
    #[error("exp-diverged")]
    ExpDiverged,
    #[error("exp-crosscheck-failed: {0:e}")]
    ExpCrossCheck(f64),
    #[error("invalid-lorentz-plane: ({0},{1})")]
    InvalidPlane(usize, usize),
    #[error("special-frame-requires-mass")]
    SpecialFrameRequiresMass,
}

pub type Result<T> = std::result::Result<T, Error>;
