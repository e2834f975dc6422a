use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("spinor violates k0² − k·k = 1 (residual {residual:e})")]
    DetConstraint { residual: f64 },
    #[error("axis must be a real unit vector (|e·e − 1| = {residual:e}, max |Im| = {imag:e})")]
    NonUnitAxis { residual: f64, imag: f64 },
    #[error("composition is a half-turn; Gibbs vector is infinite")]
    HalfTurnResult,
    #[error("sin(γ/2) vanishes; element is ±I and Δ is undefined")]
    GammaDegenerate,
    #[error("element is neither a pure rotation nor a pure boost")]
    NotPureElement,
    #[error("θ is not antisymmetric (‖θ + θᵀ‖∞ = {residual:e})")]
    NotAntisymmetric { residual: f64 },
    #[error("vector is isotropic (K·K ≈ 0); operation needs a non-isotropic vector")]
    IsotropicInput,
    #[error("Δ·Δ ≠ 1 (|Δ·Δ − 1| = {residual:e})")]
    NotUnitDelta { residual: f64 },
    #[error("vector is not isotropic (|k·k| = {residual:e})")]
    NotIsotropic { residual: f64 },
    #[error("vector is zero")]
    ZeroVector,
    #[error("could not build the reducing transformation: {0}")]
    DegenerateDelta(String),
    #[error("n0² + n² = {value:e} too small to normalise the rotation factor")]
    DegenerateNorm { value: f64 },
    #[error("element is not of the isotropic form ±(1 + k·σ) with k·k = 0")]
    NotIsotropicElement,
    #[error("units must be positive (c = {c}, ε0 = {epsilon0})")]
    InvalidUnits { c: f64, epsilon0: f64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
