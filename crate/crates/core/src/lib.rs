//! Exact toolkit for conic bundles over the rationals.
//!
//! Starting from three ternary quadratic forms `Q1, Q2, Q3` with rational
//! coefficients, the crate constructs and verifies, entirely in exact
//! arithmetic:
//!
//! * the discriminant quartic `delta = Q2^2 - Q1*Q3` and its etale double
//!   cover ([`covers`]),
//! * the binary sextic `W = det(t0^2*M1 + 2*t0*t1*M2 + t1^2*M3)` ([`covers`]),
//! * a pencil of two quadrics in `P^5` whose base locus models the associated
//!   threefold, in both normal forms for `Q1` ([`pencil`]),
//! * 2-torsion Brauer classes of the generic fibers, compared exactly through
//!   Hilbert-symbol specialization and tame residues ([`brauer`]),
//! * the real topology of the quartic and the signature data that decide
//!   real rationality ([`real`]).
//!
//! All computation is exact: big-integer rationals, fraction-free
//! determinants, Sturm root isolation with rational brackets.  Nothing is
//! decided by floating point.

pub mod brauer;
pub mod covers;
pub mod instances;
pub mod matrix;
pub mod pencil;
pub mod pipeline;
pub mod poly;
pub mod quadform;
pub mod rat;
pub mod real;
pub mod unipoly;

pub use brauer::{BrauerClass2, FunctionSymbol, Place, ResidueClass};
pub use covers::{CoverSpec, SmoothnessCertificate, SmoothnessVerdict};
pub use matrix::{PolyMatrix, RatMat};
pub use pencil::{FiberForm, PencilCase, QuadricPencil};
pub use pipeline::{
    analyze, apply_parameter_move, normalize_parameter, pgl2_search, AnalysisOptions,
    AnalysisReport, ParameterMove,
};
pub use poly::{MPoly, VarSet};
pub use quadform::{CoordChange, Inertia, TernaryForm};
pub use rat::Rat;
pub use real::{
    IsolatingInterval, OvalConfiguration, RationalityVerdict, RealCurveTopology, RegionReport,
    SignatureProfile,
};
pub use unipoly::UniPoly;

/// Errors shared by every layer of the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Structurally invalid input: wrong variable set, non-symmetric matrix,
    /// inhomogeneous polynomial, unparsable serialization, and so on.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Input is well-formed but outside the hypotheses of the construction
    /// (wrong rank, non-square discriminant, singular quartic, ...).
    #[error("inadmissible input: {0}")]
    Inadmissible(String),
    /// An exact identity that must hold on admissible input failed; carries
    /// the residual or a witness.  Always a bug or an inadmissible input that
    /// slipped past certification.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    /// A randomized normalization ran out of retries without reaching a
    /// certified generic position.
    #[error("no generic position found: {0}")]
    RetriesExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
