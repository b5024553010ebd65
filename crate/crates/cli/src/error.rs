use imcf_solitons::SolitonError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const PRECONDITION: i32 = 2;
    pub const DEGENERATE: i32 = 3;
    pub const FLOW_BREAKDOWN: i32 = 4;
    pub const INCONCLUSIVE: i32 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Precondition(String),

    #[error("{0}")]
    Degenerate(String),

    #[error("{0}")]
    FlowBreakdown(String),

    #[error("{0}")]
    Inconclusive(String),

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Precondition(_) | CliError::Config(_) => exit::PRECONDITION,
            CliError::Degenerate(_) => exit::DEGENERATE,
            CliError::FlowBreakdown(_) => exit::FLOW_BREAKDOWN,
            CliError::Inconclusive(_) => exit::INCONCLUSIVE,
            CliError::Io { .. } => exit::IO,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Library errors keyed by what went wrong. `hypothesis` names the
/// assumption a precondition failure violates.
pub fn classify(err: SolitonError, hypothesis: &str) -> CliError {
    use SolitonError as E;
    let msg = err.to_string();
    match err {
        E::InvalidParameter(_)
        | E::BottleHypothesisViolated(_)
        | E::OutsideStatedRegime { .. }
        | E::NotClosed
        | E::MeanCurvatureVanishes { .. } => {
            CliError::Precondition(format!("{hypothesis} violated ({msg})"))
        }
        E::CurvatureDegenerate { .. } => CliError::FlowBreakdown(msg),
        E::SpanTooSmall { .. } => CliError::Inconclusive(msg),
        _ => CliError::Degenerate(msg),
    }
}

/// Same as [`classify`] but every degeneracy is a flow breakdown.
pub fn classify_flow(err: SolitonError) -> CliError {
    match err {
        SolitonError::CuspPoint { .. } | SolitonError::ZeroCurvature { .. } => {
            CliError::FlowBreakdown(format!("flow reached a singular point: {err}"))
        }
        other => classify(other, "flow input"),
    }
}
