//! Versioned JSON-lines records.

use std::io::Write;

use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, Result};

/// Bumped on any breaking change to a payload.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct OutputRecord<'a, P: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub payload: P,
}

impl<'a, P: Serialize> OutputRecord<'a, P> {
    pub fn new(command: &'a str, payload: P) -> Self {
        OutputRecord { schema_version: SCHEMA_VERSION, command, payload }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records contain only serializable data")
    }
}

/// Writes one record followed by a newline.
pub fn emit<P: Serialize>(out: &mut dyn Write, command: &str, payload: P) -> Result<()> {
    writeln!(out, "{}", OutputRecord::new(command, payload).to_line())?;
    Ok(())
}

/// One raw or standard-form inequality from `enum`.
#[derive(Clone, Debug, Serialize)]
pub struct EnumPayload<'a> {
    pub n: u32,
    pub c: u64,
    pub coeffs: &'a [i64],
    pub bound: u64,
    pub terms: usize,
}

/// The error record written to the diagnostic stream.
pub fn error_line(error: &CliError) -> String {
    json!({
        "schema_version": SCHEMA_VERSION,
        "error": { "kind": error.kind(), "message": error.to_string() },
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enum_record_layout() {
        let payload = EnumPayload { n: 2, c: 1, coeffs: &[2, -2, -2, -2], bound: 4, terms: 4 };
        assert_eq!(
            OutputRecord::new("enum", payload).to_line(),
            r#"{"schema_version":1,"command":"enum","payload":{"n":2,"c":1,"coeffs":[2,-2,-2,-2],"bound":4,"terms":4}}"#
        );
    }

    #[test]
    fn error_layout() {
        let line = error_line(&CliError::Invalid("bad".into()));
        assert_eq!(line, r#"{"error":{"kind":"invalid-arguments","message":"bad"},"schema_version":1}"#);
    }
}
