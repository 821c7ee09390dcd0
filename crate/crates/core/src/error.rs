use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("curvature tag {0} is not one of -1, 0, 1")]
    InvalidCurvatureTag(i64),

    #[error("{what}: argument {value} outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("point does not lie on the model surface (residual {residual:.3e})")]
    NotOnModel { residual: f64 },

    #[error("vector is not tangent at its basepoint (residual {residual:.3e})")]
    NotTangent { residual: f64 },

    #[error("vector is not unit length (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("antipodal points have no unique geodesic")]
    Antipodal,

    #[error("curve is not convex: curvature margin {margin:.6e} below the bound")]
    NotConvex { margin: f64 },

    #[error("curve does not close: defect {defect:.3e} exceeds {tolerance:.3e}")]
    NotClosed { defect: f64, tolerance: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("evolutoid is singular at s = {s}")]
    Singular { s: f64 },

    #[error("no closed involutoid: {0}")]
    NoClosedInvolutoid(String),

    #[error("period map did not contract after {periods} periods (defect {defect:.3e})")]
    NotConverged { periods: usize, defect: f64 },

    #[error("invalid curve spec: {}", .0.join("; "))]
    Spec(Vec<String>),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag used in CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidCurvatureTag(_) => "invalid_curvature_tag",
            Error::Domain { .. } => "domain",
            Error::NotOnModel { .. } => "not_on_model",
            Error::NotTangent { .. } => "not_tangent",
            Error::NotUnit { .. } => "not_unit",
            Error::Antipodal => "antipodal",
            Error::NotConvex { .. } => "not_convex",
            Error::NotClosed { .. } => "not_closed",
            Error::InvalidInput(_) => "invalid_input",
            Error::Singular { .. } => "singular",
            Error::NoClosedInvolutoid(_) => "no_closed_involutoid",
            Error::NotConverged { .. } => "not_converged",
            Error::Spec(_) => "spec",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
