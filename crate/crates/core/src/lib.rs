//! Zero-inclusion regions and zero-free balls for polynomials with
//! quaternionic coefficients.
//!
//! Polynomials are monic with coefficients to the right of the powers,
//! `f(q) = qⁿ + Σ_{k<n} q^k a_k`. The [`bounds`] module computes the
//! inclusion regions, [`zerofree`] the max-modulus zero-free ball, and
//! [`oracle`] an independent root finder used to check every region.

pub mod bounds;
pub mod companion;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod quat;
pub mod zerofree;

pub use bounds::{BoundMethod, BoundResult, DeltaWeights};
pub use companion::{Ball, QMatrix, Region};
pub use error::{Error, Result};
pub use oracle::{RootConfig, VerdictReport, ZeroSet};
pub use poly::{ClassQuadratic, QPolynomial, RealPolynomial, ScaledPolynomial};
pub use quat::{Quaternion, SphereSample};
pub use zerofree::{MaxModulusResult, ZeroFreeBall};
