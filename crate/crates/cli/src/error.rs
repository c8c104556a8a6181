//! Errors of the command-line tool and their process exit codes.
//!
//! The exit codes are part of the public interface and do not change
//! between versions:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a `verify` check failed |
//! | 2 | bad input: malformed JSON, unknown preset or letter, bad flags |
//! | 3 | generator count above the cap |
//! | 4 | invariant violation in the computed complex |
//! | 5 | the diagram could not be made nice |
//! | 6 | I/O failure |

use openbook_hfk_core::floer::FloerError;
use openbook_hfk_core::heegaard::HeegaardError;
use openbook_hfk_core::openbook::OpenBookError;
use openbook_hfk_core::surface::{BasisError, SurfaceError};
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;
pub const EXIT_NOT_NICE: u8 = 5;
pub const EXIT_IO: u8 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cap exceeded: {count} generators, cap {cap}")]
    CapExceeded { count: u128, cap: u64 },
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("no nice diagram found")]
    NotNice,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed: {0} check(s)")]
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::CapExceeded { .. } => EXIT_CAP,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::NotNice => EXIT_NOT_NICE,
            CliError::Io(_) => EXIT_IO,
            CliError::VerifyFailed(_) => EXIT_VERIFY_FAILED,
        }
    }

    /// Short tag used in the corpus `status` column.
    pub fn status(&self) -> String {
        match self {
            CliError::Parse(_) => "parse_error".into(),
            CliError::CapExceeded { .. } => "cap_exceeded".into(),
            CliError::Invariant(_) => "invariant_violation".into(),
            CliError::NotNice => "not_nice".into(),
            CliError::Io(_) => "io_error".into(),
            CliError::VerifyFailed(_) => "verify_failed".into(),
        }
    }
}

impl From<OpenBookError> for CliError {
    fn from(e: OpenBookError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl From<BasisError> for CliError {
    fn from(e: BasisError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

impl From<HeegaardError> for CliError {
    fn from(e: HeegaardError) -> Self {
        match e {
            HeegaardError::CapExceeded { count, cap } => CliError::CapExceeded { count, cap },
            HeegaardError::NotNice => CliError::NotNice,
            other => CliError::Invariant(other.to_string()),
        }
    }
}

impl From<FloerError> for CliError {
    fn from(e: FloerError) -> Self {
        match e {
            FloerError::Heegaard(h) => h.into(),
            FloerError::OpenBook(o) => o.into(),
            other => CliError::Invariant(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            CliError::Io(e.into())
        } else {
            CliError::Parse(e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_distinct() {
        let all = [EXIT_OK, EXIT_VERIFY_FAILED, EXIT_PARSE, EXIT_CAP, EXIT_INVARIANT, EXIT_NOT_NICE, EXIT_IO];
        for (i, a) in all.iter().enumerate() {
            assert!(all[i + 1..].iter().all(|b| a != b));
        }
    }

    #[test]
    fn core_errors_map_to_their_codes() {
        let cap: CliError = FloerError::Heegaard(HeegaardError::CapExceeded { count: 9, cap: 1 }).into();
        assert_eq!(cap.exit_code(), EXIT_CAP);
        assert_eq!(CliError::from(FloerError::NotSquareZero).exit_code(), EXIT_INVARIANT);
        assert_eq!(CliError::from(FloerError::GradingDrop { drop: 1, n_z: 0 }).exit_code(), EXIT_INVARIANT);
        assert_eq!(CliError::from(FloerError::BottomRank(3)).exit_code(), EXIT_INVARIANT);
        assert_eq!(CliError::from(HeegaardError::NotNice).exit_code(), EXIT_NOT_NICE);
        assert_eq!(CliError::from(OpenBookError::UnknownLetter("q".into())).exit_code(), EXIT_PARSE);
        assert_eq!(CliError::from(FloerError::OpenBook(OpenBookError::UnknownPreset("p".into()))).exit_code(), EXIT_PARSE);
        let bad_json = serde_json::from_str::<serde_json::Value>("{").unwrap_err();
        assert_eq!(CliError::from(bad_json).exit_code(), EXIT_PARSE);
    }
}
