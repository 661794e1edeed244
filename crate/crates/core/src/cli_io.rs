//! Point files, result records and the exit-code contract of the CLI.
//!
//! A point file is `{ "points": [[x, y, z], ...] }`. Each coordinate is a JSON
//! integer, a JSON decimal number, or a string holding an integer, a decimal
//! (`"-1.25"`, `"3e-2"`) or a fraction (`"7/3"`). Decimals are read exactly in
//! base 10; nothing passes through binary floating point.

use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::census::{CensusError, CensusReport, Repro};
use crate::geometry::{GeometryError, Point3, Rational};
use crate::oracle::{Direction, KnotClass, OracleError};
use crate::radon::{Labeling, RsMatch};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;
pub const EXIT_SAMPLING: i32 = 4;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("point file must be an object with a \"points\" array")]
    MissingPoints,
    #[error("point {index} must be an array of 3 coordinates")]
    BadPoint { index: usize },
    #[error("point {index}, coordinate {axis}: cannot read {text:?} as an exact number")]
    BadCoordinate {
        index: usize,
        axis: usize,
        text: String,
    },
}

/// Exact value of a decimal literal such as `-12.5e-3`.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let s = text.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all.parse::<BigInt>().ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    let pow = (0..scale.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &ten);
    if scale >= 0 {
        value *= pow;
    } else {
        value /= pow;
    }
    Some(if negative { -value } else { value })
}

/// An integer, a decimal, or a fraction `p/q` with `q != 0`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => parse_decimal(text),
    }
}

fn coordinate_value(r: &Rational) -> Value {
    if r.is_integer() {
        // Arbitrary-precision numbers keep their digits verbatim.
        serde_json::from_str(&r.numer().to_string()).expect("integer literal")
    } else {
        Value::String(r.to_string())
    }
}

pub fn points_to_json(points: &[Point3]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|p| Value::Array(p.coords().iter().map(|c| coordinate_value(c)).collect()))
            .collect(),
    )
}

pub fn points_from_json(value: &Value) -> Result<Vec<Point3>, InputError> {
    let arr = value.as_array().ok_or(InputError::MissingPoints)?;
    arr.iter()
        .enumerate()
        .map(|(index, p)| {
            let coords = p.as_array().filter(|c| c.len() == 3).ok_or(InputError::BadPoint { index })?;
            let mut out = Vec::with_capacity(3);
            for (axis, c) in coords.iter().enumerate() {
                let text = match c {
                    Value::Number(n) => n.to_string(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let r = parse_rational(&text).ok_or_else(|| InputError::BadCoordinate {
                    index,
                    axis,
                    text: text.clone(),
                })?;
                out.push(r);
            }
            let z = out.pop().unwrap();
            let y = out.pop().unwrap();
            let x = out.pop().unwrap();
            Ok(Point3::new(x, y, z))
        })
        .collect()
}

pub fn parse_point_file(text: &str) -> Result<Vec<Point3>, InputError> {
    let doc: Value = serde_json::from_str(text)?;
    points_from_json(doc.get("points").ok_or(InputError::MissingPoints)?)
}

pub fn read_point_file(path: &Path) -> Result<Vec<Point3>, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_point_file(&text)
}

pub fn point_file_string(points: &[Point3]) -> String {
    let mut s = serde_json::to_string_pretty(&json!({ "points": points_to_json(points) }))
        .expect("serializable");
    s.push('\n');
    s
}

/// Output of `classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub points: usize,
    pub input_fingerprint: String,
    pub seed: u64,
    pub knot_class: Option<KnotClass>,
    pub determinant: Option<u64>,
    pub alexander: Option<String>,
    pub direction: Option<Direction>,
    pub rs_match: Option<RsMatch>,
    /// Labeling used for `penetration_table`: the witness if any, else identity.
    pub table_labeling: Option<Labeling>,
    pub penetration_table: Option<Vec<String>>,
}

/// One JSONL line of a census log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub command: String,
    pub n: usize,
    /// Run seed and index within the run, when the embedding was sampled.
    pub seed: Option<u64>,
    pub index: Option<u64>,
    pub embedding_seed: Option<u64>,
    pub input_fingerprint: String,
    pub points: Value,
    pub report: CensusReport,
    pub elapsed_ms: u64,
}

impl CensusRecord {
    pub fn to_line(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Appends records to a JSONL file, one line each.
pub fn append_records(path: &Path, records: &[CensusRecord]) -> std::io::Result<()> {
    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    for r in records {
        f.write_all(r.to_line().as_bytes())?;
    }
    f.flush()
}

pub fn repro_json(repro: &Repro) -> String {
    let mut s = serde_json::to_string_pretty(repro).expect("serializable");
    s.push('\n');
    s
}

/// Machine-readable error for standard error, with its exit code.
pub fn error_report(kind: &str, message: &str) -> String {
    json!({ "error": kind, "message": message }).to_string()
}

pub fn exit_code_for_census(e: &CensusError) -> i32 {
    match e {
        CensusError::AgreementFailure(_) => EXIT_DISAGREEMENT,
        CensusError::SamplingFailure(_) => EXIT_SAMPLING,
        CensusError::Oracle(OracleError::UnexpectedDeterminant(_)) => EXIT_DISAGREEMENT,
        _ => EXIT_VALIDATION,
    }
}

pub fn describe_geometry_error(e: &GeometryError) -> String {
    match e {
        GeometryError::NotInGeneralPosition(q) => format!(
            "points are not in general position: points {}, {}, {}, {} are coplanar",
            q[0], q[1], q[2], q[3]
        ),
        other => other.to_string(),
    }
}
