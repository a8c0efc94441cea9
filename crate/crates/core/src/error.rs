use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T> = std::result::Result<T, FemError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FemError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate element: {0}")]
    DegenerateElement(String),

    /// The isoparametric map collapsed at an evaluation point.
    #[error("degenerate geometry: |det J| = {det:e} at point ({xi}, {eta})")]
    DegenerateGeometry { det: f64, xi: f64, eta: f64 },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("ill-conditioned system: condition estimate {estimate:e} >= limit {limit:e}")]
    IllConditioned { estimate: f64, limit: f64 },

    #[error("no buckling mode: no eigenvalue above the positivity floor")]
    NoBucklingMode,

    #[error(
        "numerically complex spectrum: every candidate eigenvalue had a significant imaginary part"
    )]
    ComplexSpectrum,

    #[error("model failed validation: {0}")]
    Validation(ValidationReport),
}

impl FemError {
    /// Stable machine-readable name, used in CLI error objects.
    pub fn name(&self) -> &'static str {
        match self {
            FemError::InvalidArgument(_) => "invalid-argument",
            FemError::DegenerateElement(_) => "degenerate-element",
            FemError::DegenerateGeometry { .. } => "degenerate-geometry",
            FemError::Configuration(_) => "configuration",
            FemError::SingularSystem(_) => "singular-system",
            FemError::IllConditioned { .. } => "ill-conditioned",
            FemError::NoBucklingMode => "no-buckling-mode",
            FemError::ComplexSpectrum => "numerically-complex-spectrum",
            FemError::Validation(_) => "validation",
        }
    }
}
