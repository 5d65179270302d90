use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the thermodynamic closures, flux kernels, drivers and
/// case plumbing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("covolume saturation: 1 - rho*b <= 0 at rho = {rho} (b = {b})")]
    CovolumeSaturation { rho: f64, b: f64 },

    #[error("inadmissible state: {0}")]
    Inadmissible(String),

    #[error("degenerate wave fan: {0}")]
    DegenerateFan(String),

    #[error(
        "the energy closure of rsir_flux only holds for ideal-gas or stiffened-gas fluids \
         (b = {b}); use rsir_flux_general for covolume equations of state"
    )]
    WrongClosure { b: f64 },

    #[error("positivity failure: {0}")]
    Positivity(String),

    #[error("vacuum is generated by the initial data (u_R - u_L = {du} >= {critical})")]
    Vacuum { du: f64, critical: f64 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("pressure relaxation failed: {reason} (state {state:?})")]
    RelaxationFailure { reason: String, state: [f64; 7] },

    #[error("step rejected at t = {time:e} s, cell {cell}: {reason}")]
    StepRejected { cell: usize, time: f64, reason: String },

    #[error("invalid time step: {0}")]
    TimeStep(String),

    #[error("config error{}: {message}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Config { line: Option<usize>, message: String },

    #[error("unknown case `{name}`; available cases: {}", available.join(", "))]
    UnknownCase { name: String, available: Vec<String> },

    #[error("incompatible runs: {0}")]
    IncompatibleRuns(String),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(message: impl Into<String>) -> Self {
        Error::Config {
            line: None,
            message: message.into(),
        }
    }
}
