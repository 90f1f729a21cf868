use thiserror::Error;

/// Errors raised by expression evaluation, geometry, operators and quadrature.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("angle {angle} lies within {margin} rad of the branch cut at {cut}")]
    CutProximity { angle: f64, cut: f64, margin: f64 },

    #[error("pole of the Schwarz map at {0}")]
    Pole(String),

    #[error("branch point of sqrt(S') on the integration path near {0}")]
    BranchPointOnPath(String),

    #[error("sqrt(S') sign validation failed at {0}: i/sqrt(S') is not the outward unit normal")]
    SignValidation(String),

    #[error("adaptive quadrature did not converge at depth {depth} on [{a}, {b}]")]
    NonConvergence { depth: u32, a: f64, b: f64 },

    #[error("boundary data has nonzero mean {mean}; the disk Neumann problem needs zero-mean data")]
    NonzeroMean { mean: f64 },

    #[error("pair is not conjugate-symmetric: imaginary residue {imag}")]
    NonSymmetric { imag: f64 },

    #[error("near-resonant Robin term z^{power} (log z)^{logpow}: a + b*k = {gap}")]
    UnsupportedResonance { power: i32, logpow: u32, gap: f64 },

    #[error("shadow quadrature disagrees with exact integral by {residual}")]
    ShadowMismatch { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
