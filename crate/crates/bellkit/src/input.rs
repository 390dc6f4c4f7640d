//! Parsers for command-line values and JSON-lines input.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::error::{CliError, Result};

/// Comma-separated integers, optionally wrapped in parentheses or brackets:
/// `1,1,1,-1`, `(2, -2, -2, -2)`, `[1, 0]`.
pub fn parse_coeffs(text: &str) -> Result<Vec<i64>> {
    let err = || CliError::Parse { what: "coefficient list", input: text.to_string() };
    let inner = text.trim();
    let inner = inner
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| inner.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
        .unwrap_or(inner);
    if inner.trim().is_empty() {
        return Err(err());
    }
    inner.split(',').map(|s| s.trim().parse::<i64>().map_err(|_| err())).collect()
}

/// Unsigned integer in decimal, `0b` binary or `0x` hexadecimal; `_` separators allowed.
pub fn parse_mask(text: &str) -> Result<u128> {
    let cleaned: String = text.trim().chars().filter(|&c| c != '_').collect();
    let lower = cleaned.to_ascii_lowercase();
    let parsed = if let Some(bits) = lower.strip_prefix("0b") {
        u128::from_str_radix(bits, 2)
    } else if let Some(hex) = lower.strip_prefix("0x") {
        u128::from_str_radix(hex, 16)
    } else {
        lower.parse::<u128>()
    };
    parsed.map_err(|_| CliError::Parse { what: "mask", input: text.to_string() })
}

/// Exact rational from `p/q`, an integer, or a finite decimal such as `-0.25`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let err = || CliError::Parse { what: "rational number", input: text.to_string() };
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q == BigInt::from(0) {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| err())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(digits, scale));
    }
    let n: BigInt = t.parse().map_err(|_| err())?;
    Ok(BigRational::from_integer(n))
}

/// Coefficients and optional metadata read from one JSON line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputRecord {
    pub coeffs: Vec<i64>,
    pub bound: Option<u64>,
    pub c: Option<u64>,
}

/// Accepts either an output record (`{"payload": {...}}`) or a bare payload
/// with a `coeffs` array; `bound` and `c` are carried along when present.
pub fn parse_record(line: &str, line_no: usize) -> Result<InputRecord> {
    let fail = |message: String| CliError::Input { line: line_no, message };
    let value: Value = serde_json::from_str(line).map_err(|e| fail(e.to_string()))?;
    let payload = value.get("payload").unwrap_or(&value);
    let coeffs = payload
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| fail("missing \"coeffs\" array".into()))?
        .iter()
        .map(|b| b.as_i64().ok_or_else(|| fail(format!("coefficient {b} is not an integer"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(InputRecord {
        coeffs,
        bound: payload.get("bound").and_then(Value::as_u64),
        c: payload.get("c").and_then(Value::as_u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_coeffs("1,1,1,-1").unwrap(), vec![1, 1, 1, -1]);
        assert_eq!(parse_coeffs("(2, -2, -2, -2)").unwrap(), vec![2, -2, -2, -2]);
        assert_eq!(parse_coeffs("[1, 0]").unwrap(), vec![1, 0]);
        assert!(parse_coeffs("1,x").is_err());
        assert!(parse_coeffs("").is_err());
    }

    #[test]
    fn masks() {
        assert_eq!(parse_mask("0b0001").unwrap(), 1);
        assert_eq!(parse_mask("0B1110").unwrap(), 14);
        assert_eq!(parse_mask("0xff").unwrap(), 255);
        assert_eq!(parse_mask("1_000").unwrap(), 1000);
        assert!(parse_mask("-1").is_err());
        assert!(parse_mask("0b2").is_err());
    }

    #[test]
    fn rationals() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(parse_rational("1/2").unwrap(), half);
        assert_eq!(parse_rational("0.5").unwrap(), half);
        assert_eq!(parse_rational("-3").unwrap(), BigRational::from_integer((-3).into()));
        assert_eq!(parse_rational("-0.25").unwrap(), BigRational::new((-1).into(), 4.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn records() {
        let full = r#"{"schema_version":1,"command":"enum","payload":{"n":2,"c":1,"coeffs":[2,-2,-2,-2],"bound":4,"terms":4}}"#;
        let r = parse_record(full, 1).unwrap();
        assert_eq!(r, InputRecord { coeffs: vec![2, -2, -2, -2], bound: Some(4), c: Some(1) });
        let bare = parse_record(r#"{"coeffs":[1,0]}"#, 2).unwrap();
        assert_eq!(bare.bound, None);
        assert!(matches!(parse_record("{}", 3), Err(CliError::Input { line: 3, .. })));
        assert!(parse_record(r#"{"coeffs":[1.5]}"#, 4).is_err());
    }
}
