//! Failure classes mapped to process exit codes: 2 usage/schema, 3 physics
//! domain, 4 I/O. Exit code 0 is success; clap reports its own parse
//! failures with code 2.

use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config schema, or inconsistent parameters.
    Usage(String),
    /// Inputs outside the physical domain of the underlying model.
    Domain(String),
    /// Missing or unreadable files.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }

    /// Writes the error to stderr, as a one-line JSON document when asked.
    pub fn report(&self, json: bool) {
        if json {
            let payload = serde_json::json!({
                "error": {
                    "kind": self.kind(),
                    "exit_code": self.exit_code(),
                    "message": self.message(),
                }
            });
            eprintln!("{payload}");
        } else {
            eprintln!("error: {}", self.message());
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

/// I/O failure tagged with the path it concerns.
pub fn io_error(context: &str, path: &Path, err: std::io::Error) -> CliError {
    CliError::Io(format!("{context} {}: {err}", path.display()))
}

macro_rules! domain_from {
    ($($ty:ty),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(err: $ty) -> Self {
                CliError::Domain(err.to_string())
            }
        })*
    };
}

domain_from!(
    rydmol::doublet::DoubletError,
    rydmol::engine::EngineError,
    rydmol::rotor::RotorError,
    rydmol::rydberg::RydbergError,
    rydmol::scales::ScaleError,
    rydmol::units::UnitError,
);
