//! Lorentz transformations through `SL(2,C)` and `SO(3,C)`, the stabilizer
//! subgroups of a noncommutativity parameter `θ^{μν}`, rotation/boost
//! factorizations, and the first-order nonlinear constitutive relations that
//! `θ` induces in electrodynamics.

pub mod electrodynamics;
pub mod error;
pub mod factorization;
pub mod group;
pub mod linalg;
pub mod maxwell;
pub mod sampling;
pub mod stabilizer;

pub use error::{Error, Result};
pub use linalg::{CMat3, CVec3, RMat4, C64};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
