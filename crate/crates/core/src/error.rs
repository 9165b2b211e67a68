//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix determinant {det} is not 1 within tolerance")]
    NotUnitDeterminant { det: String },

    #[error("representation mismatch: expected ({ej},{ek}), found ({fj},{fk})")]
    RepMismatch { ej: u32, ek: u32, fj: u32, fk: u32 },

    #[error("cannot contract a dotted index of a tensor with k = 0")]
    NoDottedIndex,

    #[error("cannot contract an undotted index of a tensor with j = 0")]
    NoUndottedIndex,

    #[error("expected a bidegree ({ej},{ek}) tensor, found ({fj},{fk})")]
    WrongBidegree { ej: u32, ek: u32, fj: u32, fk: u32 },

    #[error("vector is not on the positive mass-zero shell: p·p = {psq}, p⁰ = {p0}")]
    NotOnCone { psq: f64, p0: f64 },

    #[error("string direction has e·e = {esq} instead of -1")]
    NotUnitSpacelike { esq: String },

    #[error("tuboid tag does not match the imaginary part of the direction")]
    TuboidTagMismatch,

    #[error("momentum sits on the boost-chart singularity: p⁰ + p³ = {value}")]
    ChartSingularity { value: f64 },

    #[error("string-direction chart singularity: e⁰ - e³ = {value}")]
    StringChartSingularity { value: f64 },

    #[error("coefficient function is singular at p·e = 0 for a real string direction")]
    PoleOnRealAxis,

    #[error("an intertwiner specification needs at least one term")]
    EmptySpec,

    #[error("helicity {h} is not admissible for bidegree ({j},{k})")]
    InadmissibleHelicity { j: u32, k: u32, h: String },

    #[error("expected {expected} coefficient functions, found {found}")]
    CoefficientCount { expected: usize, found: usize },

    #[error("matrix is not in the little group of the standard momentum")]
    NotLittleGroup,

    #[error("the two string regions are not space-like separated")]
    NotSpacelike,

    #[error("control configuration is space-like; a time-like control was expected")]
    UnexpectedlySpacelike,

    #[error("quadrature tail bound {achieved:e} misses the target {target:e}")]
    QuadratureTail { achieved: f64, target: f64 },

    #[error("integrand crosses the branch cut: Im(B_p ξ(z)·e) changes sign")]
    BranchCutCrossing,

    #[error("γ = {gamma} is outside the absolutely convergent range (Re γ ≤ {limit})")]
    GammaOutOfRange { gamma: String, limit: f64 },

    #[error("unmixed two-point kernels do not exist for odd j+k (Fermi fields)")]
    FermiUnmixedKernel,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that stem from evaluating outside an operation's
    /// mathematical domain (as opposed to malformed requests).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::ChartSingularity { .. }
                | Error::StringChartSingularity { .. }
                | Error::PoleOnRealAxis
                | Error::NotSpacelike
                | Error::UnexpectedlySpacelike
                | Error::BranchCutCrossing
                | Error::QuadratureTail { .. }
                | Error::NotOnCone { .. }
                | Error::NotUnitSpacelike { .. }
        )
    }
}
