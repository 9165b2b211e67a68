//! Numerical construction and verification of massless, string-localized
//! free quantum fields for any finite or infinite helicity.
//!
//! The crate builds, from first principles, the momentum-space intertwiners
//! that convert the massless Wigner representations of the Poincaré covering
//! group into covariant D^(j/2,k/2) transformation laws for fields
//! φ(x,e) localized on rays x + ℝ⁺e. On top of the intertwiners it provides
//! string-localized potentials for point-localized field strengths, their
//! two-point kernels, a quadrature-based test of string locality, and the
//! continuous-spin (infinite-helicity) intertwiners.
//!
//! Modules:
//! - [`minkowski`]: four-vectors, the vector ↔ 2×2-matrix correspondence,
//!   SL(2,ℂ) and the covering map to Lorentz transformations.
//! - [`rep`]: the finite-dimensional representations on symmetric spinor
//!   tensors, with tensor products, conjugation and index contractions.
//! - [`kinematics`]: standard momentum and boost, the little group Ẽ(2),
//!   Wigner elements and phases, string-direction charts.
//! - [`intertwiner`]: enumeration, construction and verification of all
//!   finite-helicity intertwiners.
//! - [`potential`]: field strengths, string-localized potentials (spinor and
//!   tensor form), gauge properties, photon and graviton checks.
//! - [`twopoint`]: two-point kernels, UV scaling, smeared two-point
//!   functions and the string-locality commutator probe.
//! - [`infinitespin`]: the continuous-spin little-group representations and
//!   string intertwiners (Bose and Fermi classes).
//! - [`suites`]: deterministic, seedable verification suites with
//!   serializable reports.

pub mod error;
pub mod half;
pub mod infinitespin;
pub mod intertwiner;
pub mod kinematics;
pub mod minkowski;
pub mod numeric;
pub mod potential;
pub mod rep;
pub mod suites;
pub mod twopoint;

pub use error::{Error, Result};
pub use half::Half;
pub use minkowski::{FourVector, Matrix2C, SL2CElement};
pub use rep::{RepLabel, SpinorTensor};
