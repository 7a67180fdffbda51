use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Variants split into two families: violated preconditions (bad parameters,
/// points outside a domain) and numerical failures (a solver or integrator
/// that could not meet its tolerance). [`Error::is_numerical`] tells them
/// apart, which is what the command-line front end maps onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate profile: f({s}) = {value} is not positive")]
    DegenerateProfile { s: f64, value: f64 },
    #[error("finite-difference stencil at s = {s} leaves the profile domain")]
    NonFiniteDerivative { s: f64 },
    #[error("invalid scale factor {0}: must be positive and finite")]
    InvalidScale(f64),
    #[error("a = {a}, c = {c}, m = {m} must be nonzero and share one sign")]
    Sign { a: f64, c: f64, m: f64 },
    #[error("energy level {ell} sits on the equilibrium floor {lower}")]
    DegenerateLevel { ell: f64, lower: f64 },
    #[error("energy level {ell} is outside the admissible window ({lower}, {upper})")]
    Window { ell: f64, lower: f64, upper: f64 },
    #[error("quadrature did not converge: estimate {estimate}, error {error} after {intervals} intervals")]
    QuadratureFailure {
        estimate: f64,
        error: f64,
        intervals: usize,
    },
    #[error("trajectory approached x = 0 (x = {x} at s = {s})")]
    BlowUp { s: f64, x: f64 },
    #[error("step-size controller stalled at s = {s} (h = {h})")]
    StepFailure { s: f64, h: f64 },
    #[error("resampling failed: {0}")]
    Resample(String),
    #[error("(m, ell) = ({m}, {ell}) is outside the spherical family for c = {c}")]
    OutsideFamily { c: f64, m: f64, ell: f64 },
    #[error("argument out of range: {0}")]
    Range(String),
    #[error("(m, ell) = ({m}, {ell}) does not admit a rotational immersion into S^3 with c = {c}")]
    NotImmersible { c: f64, m: f64, ell: f64 },
    #[error("no sign change of Theta - {target} found while scanning ell over ({lo}, {hi})")]
    NoBracket { target: f64, lo: f64, hi: f64 },
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("point is at the projection pole (1 + w = {0})")]
    PoleSingularity(f64),
    #[error("closure data does not match the curve: {0}")]
    ClosureMismatch(String),
    #[error("profile does not close: wrap gap {gap} exceeds {limit}")]
    SeamMismatch { gap: f64, limit: f64 },
    #[error("polyline resolution too coarse: smallest feature {feature} vs spacing {spacing}")]
    ResolutionWarning { feature: f64, spacing: f64 },
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFiniteDerivative { .. }
                | Error::QuadratureFailure { .. }
                | Error::BlowUp { .. }
                | Error::StepFailure { .. }
                | Error::Resample(_)
                | Error::NoBracket { .. }
                | Error::RootFinding(_)
                | Error::SeamMismatch { .. }
                | Error::ResolutionWarning { .. }
        )
    }

    /// Short stable identifier, used as an error code in scan tables.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::DegenerateProfile { .. } => "degenerate_profile",
            Error::NonFiniteDerivative { .. } => "non_finite_derivative",
            Error::InvalidScale(_) => "invalid_scale",
            Error::Sign { .. } => "sign",
            Error::DegenerateLevel { .. } => "degenerate_level",
            Error::Window { .. } => "window",
            Error::QuadratureFailure { .. } => "quadrature_failure",
            Error::BlowUp { .. } => "blow_up",
            Error::StepFailure { .. } => "step_failure",
            Error::Resample(_) => "resample",
            Error::OutsideFamily { .. } => "outside_family",
            Error::Range(_) => "range",
            Error::NotImmersible { .. } => "not_immersible",
            Error::NoBracket { .. } => "no_bracket",
            Error::RootFinding(_) => "root_finding",
            Error::PoleSingularity(_) => "pole_singularity",
            Error::ClosureMismatch(_) => "closure_mismatch",
            Error::SeamMismatch { .. } => "seam_mismatch",
            Error::ResolutionWarning { .. } => "resolution_warning",
            Error::InvalidMesh(_) => "invalid_mesh",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
