//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong across the crate, from malformed quiver
/// presentations to semi-decisions that ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus passed to [`crate::field::Field::new`] is not prime.
    NotPrime(u64),
    /// Linear system `x·a = b` has no solution.
    NoSolution,
    /// Matrix is singular where an inverse was required.
    Singular,
    /// Matrix shapes are incompatible for the requested operation.
    ShapeMismatch(String),

    /// A relation mixes paths with different endpoints, or is otherwise
    /// malformed; carries the relation index.
    RelationEndpointMismatch(usize, String),
    /// The declared nilpotency bound does not make the relation ideal
    /// admissible, or a vertex/arrow class collapsed to zero.
    NonAdmissible(String),
    /// Unknown vertex label.
    UnknownVertex(String),
    /// Corner construction got an empty vertex set.
    EmptyVertexSet,
    /// Bimodule data is inconsistent with the algebras it is declared over.
    BimoduleMismatch(String),
    /// An algebra invariant failed after construction.
    InvariantViolation(String),

    /// Two objects live over different algebras.
    AlgebraMismatch,
    /// A morphism fails the intertwining condition.
    NotAMorphism,
    /// Projective dimension exceeds the requested cap.
    ExceedsCap(usize),
    /// The Monte Carlo idempotent search exhausted its trial budget.
    DecompositionInconclusive,

    /// A chain fed to a splicing construction does not end where it must.
    ChainMismatch(String),
    /// A sequence claimed exact failed a rank check.
    NotExact(String),
    /// A probed functor is not exact.
    FunctorNotExact(String),
    /// A probed functor does not preserve projectives.
    FunctorNotProjectivePreserving(String),

    /// The left adjoint `l` is not exact, which a construction required.
    LNotExact,
    /// The quotient functor `q` is not exact, which a construction required.
    QNotExact,
    /// Module-theoretic exactness criterion and empirical probe disagree;
    /// this signals an implementation bug, never a property of the input.
    ProbeCriterionDisagreement(String),
    /// The recollement was not built from a Morita context ring.
    NotMoritaProvenance,

    /// A certificate transformer's hypothesis bit is false.
    HypothesisFailure(String),
    /// A resolution oracle refused a module outside its certified class.
    OracleRefusal(String),
    /// The witness search for an oracle stayed open at its cap.
    Inconclusive(String),
    /// Relative global dimension exceeded the cap.
    RelativeGldimInfinite(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::NoSolution => write!(f, "linear system has no solution"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::ShapeMismatch(s) => write!(f, "shape mismatch: {s}"),
            Error::RelationEndpointMismatch(i, s) => {
                write!(f, "relation {i} is malformed: {s}")
            }
            Error::NonAdmissible(s) => write!(f, "presentation not admissible: {s}"),
            Error::UnknownVertex(v) => write!(f, "unknown vertex {v}"),
            Error::EmptyVertexSet => write!(f, "vertex set must be nonempty"),
            Error::BimoduleMismatch(s) => write!(f, "bimodule mismatch: {s}"),
            Error::InvariantViolation(s) => write!(f, "algebra invariant violated: {s}"),
            Error::AlgebraMismatch => write!(f, "objects live over different algebras"),
            Error::NotAMorphism => write!(f, "matrix does not intertwine the actions"),
            Error::ExceedsCap(c) => write!(f, "projective dimension exceeds cap {c}"),
            Error::DecompositionInconclusive => {
                write!(f, "decomposition inconclusive within trial budget")
            }
            Error::ChainMismatch(s) => write!(f, "chain mismatch: {s}"),
            Error::NotExact(s) => write!(f, "sequence not exact: {s}"),
            Error::FunctorNotExact(s) => write!(f, "functor not exact: {s}"),
            Error::FunctorNotProjectivePreserving(s) => {
                write!(f, "functor does not preserve projectives: {s}")
            }
            Error::LNotExact => write!(f, "functor l is not exact here"),
            Error::QNotExact => write!(f, "functor q is not exact here"),
            Error::ProbeCriterionDisagreement(s) => {
                write!(f, "exactness criterion and probe disagree (bug): {s}")
            }
            Error::NotMoritaProvenance => {
                write!(f, "algebra was not built as a Morita context ring")
            }
            Error::HypothesisFailure(s) => write!(f, "hypothesis failed: {s}"),
            Error::OracleRefusal(s) => write!(f, "oracle refused module: {s}"),
            Error::Inconclusive(s) => write!(f, "inconclusive: {s}"),
            Error::RelativeGldimInfinite(c) => {
                write!(f, "relative global dimension exceeds cap {c}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
