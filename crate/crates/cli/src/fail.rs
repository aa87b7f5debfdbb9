use std::fmt;

use perfect_forge::Error;

/// Bad flags or parameters.
pub const EXIT_USAGE: u8 = 64;
/// A size cap refused the request.
pub const EXIT_CAP: u8 = 3;
/// A verification ran and failed.
pub const EXIT_VERIFY: u8 = 2;
pub const EXIT_OTHER: u8 = 1;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub type Outcome<T> = Result<T, Failure>;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn other(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_OTHER,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::NonPrime(_)
            | Error::UnsupportedOrder { .. }
            | Error::NoDefaultModulus { .. }
            | Error::MalformedModulus { .. }
            | Error::ReducibleModulus { .. }
            | Error::SymbolOutOfRange { .. }
            | Error::NotABijection
            | Error::LengthMismatch { .. }
            | Error::InvalidCoordinate { .. }
            | Error::InvalidPoint { .. }
            | Error::ZeroVector
            | Error::Unsupported(_)
            | Error::Precondition(_)
            | Error::SigmaFixesOne(_) => EXIT_USAGE,
            _ => EXIT_OTHER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
