use gwa_core::catalog::CatalogError;
use gwa_core::field::FieldError;
use gwa_core::gwa::{GwaError, ParseError};
use gwa_core::ideals::IdealError;
use gwa_core::ring::RingError;
use gwa_core::whittaker::WhittakerError;
use thiserror::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Internal = 1,
    Parse = 2,
    Config = 3,
    UnsupportedRing = 4,
    Hypothesis = 5,
    RedClaim = 6,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error("config: {0}")]
    Config(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Parse { .. } => ExitCode::Parse,
            CliError::Config(_) => ExitCode::Config,
            CliError::UnsupportedRing(_) => ExitCode::UnsupportedRing,
            CliError::Hypothesis(_) => ExitCode::Hypothesis,
            CliError::Internal(_) => ExitCode::Internal,
        }
    }

    pub fn parse(context: impl Into<String>, source: ParseError) -> CliError {
        CliError::Parse {
            context: context.into(),
            source,
        }
    }
}

impl From<IdealError> for CliError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::UnsupportedRing(_) | IdealError::NotAffine | IdealError::AlphaIsOne => {
                CliError::UnsupportedRing(e.to_string())
            }
            IdealError::NotPhiStable { .. } => CliError::Config(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<WhittakerError> for CliError {
    fn from(e: WhittakerError) -> Self {
        match e {
            WhittakerError::Ideal(i) => i.into(),
            WhittakerError::Gwa(g) => g.into(),
            WhittakerError::ZetaCount { .. }
            | WhittakerError::ZeroZeta(_)
            | WhittakerError::NotAWhittakerPair
            | WhittakerError::NotMatrixModel => CliError::Config(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<GwaError> for CliError {
    fn from(e: GwaError) -> Self {
        match e {
            GwaError::Parse(p) => CliError::parse("expression", p),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::HypothesisViolated(h) => CliError::Hypothesis(h),
            CatalogError::InvalidParameters(_) | CatalogError::TelescopingUnsolvable { .. } => {
                CliError::Config(e.to_string())
            }
            CatalogError::Field(f) => f.into(),
            CatalogError::Ring(r) => r.into(),
            CatalogError::Gwa(g) => g.into(),
            CatalogError::Ideal(i) => i.into(),
            CatalogError::Whittaker(w) => w.into(),
        }
    }
}
