use std::path::PathBuf;

use thiserror::Error;

/// Problems with the requested run, reported with exit status 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {}: {message}", path.display())]
    Read { path: PathBuf, message: String },

    #[error("cannot parse config {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("missing required setting `{0}`")]
    Missing(&'static str),

    #[error("invalid `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },

    #[error("unknown scenario `{name}` (known: {known})")]
    UnknownScenario { name: String, known: String },

    #[error("scenario `{scenario}` rejected its parameters: {source}")]
    Model {
        scenario: String,
        #[source]
        source: qreality::Error,
    },

    #[error("cannot write report {}: {message}", path.display())]
    Write { path: PathBuf, message: String },
}

impl ConfigError {
    pub(crate) fn invalid(field: &'static str, reason: impl ToString) -> Self {
        ConfigError::Invalid {
            field,
            reason: reason.to_string(),
        }
    }
}
