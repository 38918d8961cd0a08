use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),

    #[error("length mismatch: expected {expected} samples, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("non-finite value encountered at x = {x}")]
    NonFiniteEvaluation { x: f64 },

    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("grids do not match")]
    GridMismatch,

    #[error("wavefunction is not normalizable on the requested domain")]
    NotNormalizable,

    #[error("input is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("ground state has an interior zero near x = {x}")]
    InteriorNode { x: f64 },

    #[error("inconsistent result: {0}")]
    Inconsistent(&'static str),

    #[error("{entry}: parameter constraint violated ({constraint})")]
    Constraint {
        entry: &'static str,
        constraint: &'static str,
    },

    #[error("unknown parameter or entry: {0}")]
    Unknown(String),

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("expected two turning points, found {found}")]
    TurningPoints { found: usize },

    #[error("energy {energy} is not below the continuum threshold {threshold}")]
    AboveThreshold { energy: f64, threshold: f64 },

    #[error("energy {energy} is below the asymptotic threshold {threshold}")]
    BelowThreshold { energy: f64, threshold: f64 },

    #[error("potential tails are not flat within the matching window")]
    NonFlatTails,

    #[error("singular isospectral family for lambda = {lambda} (need lambda > 0 or lambda < -1)")]
    SingularFamily { lambda: f64 },

    #[error("iteration failed to converge: {0}")]
    NoConvergence(&'static str),
}
