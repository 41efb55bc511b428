use meanlab_core::MeanError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] MeanError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
