use std::time::Instant;

use ramsey_goodness::Error;
use serde_json::{json, Value};

pub const DECIDED: u8 = 0;
/// A boolean answer came out negative (not good, a witness exists, …).
pub const NEGATIVE: u8 = 1;
pub const PARSE: u8 = 2;
pub const UNDECIDED: u8 = 3;
pub const PRECONDITION: u8 = 4;
/// A certificate failed re-verification; always a bug.
pub const INTERNAL: u8 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Graph6(_) | Error::ColoringFormat { .. } | Error::FamilySpec { .. } | Error::Number(_) => PARSE,
            Error::Precondition(_) => PRECONDITION,
            Error::Internal(_) => INTERNAL,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl Failure {
    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        Failure {
            code: PARSE,
            msg: format!("{}: {e}", path.display()),
        }
    }
}

pub struct Report {
    pub json: Value,
    pub code: u8,
}

/// Collects the fixed report fields.
pub struct Builder {
    command: Vec<String>,
    inputs: serde_json::Map<String, Value>,
    started: Instant,
    limit: u64,
}

impl Builder {
    pub fn new(command: Vec<String>, limit: u64) -> Self {
        Builder {
            command,
            inputs: serde_json::Map::new(),
            started: Instant::now(),
            limit,
        }
    }

    pub fn input(&mut self, key: &str, value: Value) {
        self.inputs.insert(key.to_string(), value);
    }

    pub fn finish(self, verdict: &str, code: u8, used: u64, data: Value) -> Report {
        let json = json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs),
            "verdict": verdict,
            "data": data,
            "budget": { "limit": self.limit, "used": used },
            "timing": { "wall_ms": self.started.elapsed().as_secs_f64() * 1e3 },
        });
        Report { json, code }
    }
}
