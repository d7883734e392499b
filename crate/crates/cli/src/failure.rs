use std::fmt::Display;
use std::path::Path;

use bincover::model::Violation;
use bincover::{Error, ValidationReport};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Parse,
    Validation,
    Budget,
    Io,
}

impl Kind {
    pub fn exit_code(self) -> u8 {
        match self {
            Kind::Parse => 2,
            Kind::Validation => 3,
            Kind::Budget => 4,
            Kind::Io => 5,
        }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub kind: Kind,
    pub message: String,
    pub violations: Option<ValidationReport>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: Kind,
    exit_code: u8,
    message: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    violations: Option<&'a [Violation]>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    error: ErrorBody<'a>,
}

impl Failure {
    pub fn new(kind: Kind, message: impl Display) -> Self {
        Failure {
            kind,
            message: message.to_string(),
            violations: None,
        }
    }

    pub fn io(path: &Path, err: impl Display) -> Self {
        Failure::new(Kind::Io, format!("{}: {err}", path.display()))
    }

    pub fn exit_code(&self) -> u8 {
        self.kind.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&Envelope {
            error: ErrorBody {
                kind: self.kind,
                exit_code: self.exit_code(),
                message: &self.message,
                violations: self.violations.as_ref().map(|r| r.violations.as_slice()),
            },
        })
        .expect("serializable")
    }
}

pub fn kind_of(err: &Error) -> Kind {
    match err {
        Error::Parse(_) => Kind::Parse,
        Error::StateBudgetExhausted { .. } | Error::EnumerationBudgetExceeded { .. } => Kind::Budget,
        _ => Kind::Validation,
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let mut failure = Failure::new(kind_of(&err), &err);
        if let Error::InvalidInstance(report) = err {
            failure.violations = Some(report);
        }
        failure
    }
}
