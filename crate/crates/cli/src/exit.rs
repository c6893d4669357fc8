use std::fmt;

use polygenocchi::Error;

/// A failure together with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const OVERALL_FAIL: u8 = 1;
pub const BAD_ARGS: u8 = 2;
pub const SINGULAR: u8 = 3;
pub const UNWRITABLE: u8 = 4;

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SingularDenominator(_) | Error::DivisionByNonUnit(_) => SINGULAR,
            Error::ConfigError(_) | Error::RangeError(_) | Error::ParseRational(_) => BAD_ARGS,
            _ => OVERALL_FAIL,
        };
        Failure::new(code, e.to_string())
    }
}
