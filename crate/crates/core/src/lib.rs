//! Exact arithmetic for n-complements.
//!
//! Every computation is carried out over exact rationals; there is no
//! floating-point path. The crate is organised by capability:
//!
//! - [`rational`] and [`vector`]: the scalar and vector types plus the
//!   maximum-absolute-value norm.
//! - [`rounding`]: the operator `a^[n] = floor((n + 1) a) / n` and the
//!   coefficientwise n-complement condition.
//! - [`hyperstandard`]: the sets `Φ(ℛ)` and `Γ(𝒩, Φ)`, membership,
//!   enumeration below a cutoff and the largest lower approximation.
//! - [`diophantine`]: complementary indices `n` with their witnesses `v_n`,
//!   the explicit continuity radius, and finite covering sets of indices for
//!   the simultaneous rounding problem.
//! - [`curves`]: connected nodal curve pairs, their classification,
//!   ℝ-complement witnesses and n-complement synthesis.
//! - [`surfaces`]: intersection-matrix models and exact Zariski decomposition.
//! - [`elliptic`]: Kodaira fiber tables.
//! - [`cli`]: the `complements` command line front end.

pub mod cli;
pub mod curves;
pub mod diophantine;
pub mod elliptic;
pub mod error;
pub mod hyperstandard;
pub mod rational;
pub mod rounding;
pub mod surfaces;
pub mod vector;

pub use error::{Error, Result};
pub use rational::{floor_rational, Rational};
pub use rounding::{complement_coeff_ok, round_coeff, round_vector, BoundaryCoefficient};
pub use vector::{linf_norm, RationalVector};
