//! Front end for `chernlab`: ring files, command runners, JSON reports and
//! the corpus checker.

pub mod commands;
pub mod corpus;
pub mod expect;
pub mod report;
pub mod ringfile;

use std::fmt;

pub use commands::{run, Command, Config, Flags, Outcome};
pub use report::{Report, Value, ValueEntry};
pub use ringfile::RingFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed ring files, flags or preconditions. Exit code 2.
    Input,
    /// A computation that did not finish, such as a fit that never stabilized. Exit code 1.
    Math,
}

/// An error together with the stage that raised it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub stage: String,
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn input(stage: &str, message: impl Into<String>) -> Self {
        CliError {
            stage: stage.to_string(),
            kind: ErrorKind::Input,
            message: message.into(),
        }
    }

    pub fn math(stage: &str, message: impl Into<String>) -> Self {
        CliError {
            stage: stage.to_string(),
            kind: ErrorKind::Math,
            message: message.into(),
        }
    }

    pub fn lib(stage: &str, e: chernlab::Error) -> Self {
        if e.is_input_error() {
            Self::input(stage, e.to_string())
        } else {
            Self::math(stage, e.to_string())
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Input => 2,
            ErrorKind::Math => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.message)
    }
}

impl std::error::Error for CliError {}
