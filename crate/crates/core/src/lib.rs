//! Interferometric phases of Aharonov-Bohm type in noncommutative quantum
//! mechanics.
//!
//! The library models a charged-particle superposition moving on an open
//! straight path beside a shielded solenoid. It computes the commutative
//! phase of that configuration, the first-order correction induced by a
//! noncommutative coordinate plane (by adaptive quadrature of the defining
//! integrand and by closed form), the experimental limit on the
//! noncommutativity scale implied by a phase resolution, and nullity checks
//! of the matching corrections for dipole configurations in uniform and
//! dual-wire fields.
//!
//! Numeric entry points are generic over [`Scalar`] (`f32` or `f64`), but
//! the SI constants only carry physical meaning in `f64`; see the aliases
//! at the crate root.

pub mod bounds;
pub mod constants;
pub mod diffops;
pub mod dipole;
pub mod error;
pub mod fields;
pub mod nc;
pub mod paths;
pub mod phase;
pub mod quadrature;
pub mod scalar;
pub mod vec3;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use vec3::{Axis, Vec3};

/// Double-precision aliases for the main types. Working precision is f64
/// throughout the physics: several SI combinations (for instance
/// hbar squared) underflow f32.
pub type Vec3d = Vec3<f64>;
pub type Vec3f = Vec3<f32>;
pub type PathSpecD = paths::PathSpec<f64>;
pub type SolenoidFieldD = fields::SolenoidField<f64>;
pub type ThetaMatrixD = nc::ThetaMatrix<f64>;
pub type QuadOptionsD = quadrature::QuadOptions<f64>;
pub type ParticleD = phase::Particle<f64>;
pub type ExperimentParamsD = phase::ExperimentParams<f64>;
pub type PhaseBreakdownD = phase::PhaseBreakdown<f64>;
pub type DipoleConfigD = dipole::DipoleConfig<f64>;
pub type BoundResultD = bounds::BoundResult<f64>;
