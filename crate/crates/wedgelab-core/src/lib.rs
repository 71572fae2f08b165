//! Matrix realizations of modular causal symmetric Lie algebras and
//! numerical verification of their wedge domains.
//!
//! The crate is organised bottom-up:
//!
//! * [`linop`] dense operators, spectra, entire functions of operators and
//!   the kernel formulas for `sinh(A)/A` and `cosh(A)`.
//! * [`liealg`] matrix Lie algebras, involutions, Euler elements, gradings
//!   and the Wick rotation on the complexification.
//! * [`roots`] restricted roots, compact/non-compact classification, the
//!   compact Weyl group, minimal and maximal cones, strongly orthogonal roots.
//! * [`wedge`] positivity domain, polar wedge and KMS wedge membership and
//!   the sampling harness comparing them.
//! * [`polar`] regularity criteria and tangent maps of the polar map.
//! * [`quadric`] quadrics as symmetric spaces, de Sitter space, Minkowski
//!   wedges, complex boosts and tube domains.
//! * [`catalog`] the table of irreducible non-compactly causal symmetric
//!   Lie algebras with the rows that ship a matrix realization.
//! * [`suites`] the invariant suites run by `wedgelab verify`.

pub mod catalog;
pub mod exec;
pub mod liealg;
pub mod linop;
pub mod polar;
pub mod quadric;
pub mod report;
pub mod roots;
pub mod sampling;
pub mod suites;
pub mod wedge;

pub use nalgebra::Complex;

/// Errors shared by every module.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("operator is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("operator has non-finite entries")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("eigenvalue solver did not converge")]
    EigenSolver,
    #[error("power series needed more than {terms} terms")]
    SeriesBudget { terms: usize },
    #[error("ill-conditioned kernel extraction (singular value {residual:e} inside the ambiguity band)")]
    IllConditioned { residual: f64 },
    #[error("operator is not diagonalizable")]
    NotDiagonalizable,
    #[error("ambiguous eigenvalue clustering (gap {gap:e})")]
    ClusterAmbiguity { gap: f64 },
    #[error("element is not an Euler element")]
    NotEuler,
    #[error("map is not a Lie algebra automorphism (residual {residual:e})")]
    NotAutomorphism { residual: f64 },
    #[error("map is not an involution (residual {residual:e})")]
    NotInvolution { residual: f64 },
    #[error("realization failed validation: {0}")]
    InvalidRealization(String),
    #[error("invalid causal symmetric data: {0}")]
    InvalidSpec(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("independent criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Numerical tolerance policy shared by all modules.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    /// Relative tolerance for clustering and rank decisions.
    pub rel: f64,
    /// Absolute floor.
    pub abs: f64,
    /// Largest principal angle (radians) for two subspaces to count as equal.
    pub angle: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-9, abs: 1e-12, angle: 1e-7 }
    }
}

impl Tolerance {
    /// Threshold for a quantity of magnitude `scale`.
    pub fn at(&self, scale: f64) -> f64 {
        (self.rel * scale).max(self.abs)
    }
}
