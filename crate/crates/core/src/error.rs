use thiserror::Error;

/// Errors produced by the solvers and approximation schemes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{key}`: {reason}")]
    InvalidParams { key: String, reason: String },

    #[error("eigensolver failed to converge for a {dim}x{dim} matrix after {sweeps} sweeps")]
    NoConvergence { dim: usize, sweeps: usize },

    #[error("no sign change in bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("integrand negative inside the interval: f({at}) = {value}")]
    NegativeIntegrand { at: f64, value: f64 },

    #[error("quadrature did not reach relative tolerance {tol:e} (estimate {estimate:e})")]
    QuadratureTolerance { tol: f64, estimate: f64 },

    #[error(
        "energy {energy} K is not below the barrier top {top} K; \
         use the KHW/MG or parabolic estimate instead"
    )]
    AboveBarrier { energy: f64, top: f64 },

    #[error("energy {energy} K lies below the well bottom {bottom} K; no classical turning points")]
    BelowWell { energy: f64, bottom: f64 },

    #[error("inverse mass vanishes at phi = {phi} rad (field beyond saturation {saturation} T)")]
    TunnelingBlocked { phi: f64, saturation: f64 },

    #[error("spin-flip symmetry requires zero longitudinal field, got {field} T")]
    SymmetryBroken { field: f64 },

    #[error("transverse anisotropy E = 0 makes the barrier-top frequency vanish")]
    ZeroTransverse,

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
