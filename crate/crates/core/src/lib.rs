//! Complete elliptic integrals K(m), E(m) and Π(n, m) over complex
//! arguments, built on Carlson's symmetric forms, together with an engine
//! for the identity
//!
//! ```text
//! Π(n(x), m(x)) − (1+3x)/(6x) · K(m(x)) ∈ { 0, −(π/12)(x−1)^{3/2}√(1+3x)/x }
//! ```
//!
//! and independent quadrature and series oracles used to check both.
//!
//! Throughout, `m` is the parameter (m = k²), not the modulus k.

pub mod carlson;
pub mod elliptic;
pub mod error;
pub mod identity;
pub mod oracle;

pub use carlson::{CarlsonConfig, ComplexScalar};
pub use elliptic::{BranchPolicy, CutSide, EllipticArgs};
pub use error::{Error, Result, Singularity};
pub use identity::{GridSpec, IdentityEval, Klass, RegionGrid, ToleranceConfig};
pub use oracle::{PoleMode, QuadratureSpec};
