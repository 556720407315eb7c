//! Reading and writing distributions, and the fixed numeric rendering used by
//! every output.
//!
//! JSON files hold either `{"points": [...], "probs": [...]}` or
//! `{"lo": .., "hi": .., "n": .., "values": [...]}`; CSV files have the header
//! `x,value`. JSON numbers are written with 17 significant digits, CSV numbers
//! with 12.

use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use serde_json::{Map, Number, Value};

use crate::dist::{Density, DiscreteDist, Distribution, GriddedDensity};
use crate::error::{Error, Result};

pub const JSON_DIGITS: usize = 17;
pub const CSV_DIGITS: usize = 12;

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `%g`-style rendering with `digits` significant digits and trailing zeros
/// removed. Non-finite values render as `inf`, `-inf` and `nan`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mant), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

/// A JSON number with 17 significant digits, or `null` when not finite.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&fmt_sig(x, JSON_DIGITS)).expect("valid JSON number"))
    } else {
        Value::Null
    }
}

/// Re-renders every floating-point number of a serialized value with
/// [`num`]; integers are left alone.
pub fn normalize_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => Value::Array(items.into_iter().map(normalize_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, normalize_numbers(v))).collect()),
        other => other,
    }
}

/// Serializes any report with the fixed numeric rendering.
pub fn to_json<T: serde::Serialize>(value: &T) -> Result<Value> {
    let v = serde_json::to_value(value).map_err(|e| Error::Input(e.to_string()))?;
    Ok(normalize_numbers(v))
}

/// Pretty JSON text with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

/// `{"value": .., "finite": ..}`, with `null` for infinite values.
pub fn scalar_json(value: f64) -> Value {
    let mut map = Map::new();
    map.insert("value".into(), num(value));
    map.insert("finite".into(), Value::Bool(value.is_finite()));
    Value::Object(map)
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

pub fn num_array(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn dist_to_json(d: &Distribution) -> Value {
    match d {
        Distribution::Discrete(d) => object(vec![("points", num_array(d.atoms())), ("probs", num_array(d.probs()))]),
        Distribution::Gridded(g) => object(vec![
            ("lo", num(g.lo())),
            ("hi", num(g.hi())),
            ("n", Value::from(g.n())),
            ("values", num_array(g.values())),
        ]),
    }
}

/// CSV text with a header row; numbers use 12 significant digits.
pub fn render_csv(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_sig(x, CSV_DIGITS)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn dist_to_csv(d: &Distribution) -> String {
    let rows: Vec<Vec<f64>> = (0..d.len()).map(|i| vec![d.point(i), d.values()[i]]).collect();
    render_csv(&["x", "value"], &rows)
}

#[derive(Deserialize)]
struct DiscreteFile {
    points: Vec<f64>,
    probs: Vec<f64>,
}

#[derive(Deserialize)]
struct GriddedFile {
    lo: f64,
    hi: f64,
    n: usize,
    values: Vec<f64>,
}

fn gridded(lo: f64, hi: f64, values: Vec<f64>) -> Result<Distribution> {
    // Sampled densities are accepted unnormalized and rescaled by quadrature.
    Ok(GriddedDensity::raw(lo, hi, values)?.normalize()?.into())
}

/// Parses a JSON distribution. Discrete inputs must already satisfy every
/// invariant; gridded inputs are normalized.
pub fn parse_json(text: &str) -> Result<Distribution> {
    let bad = |e: serde_json::Error| Error::Input(format!("expected {{points, probs}} or {{lo, hi, n, values}}: {e}"));
    let value: Value = serde_json::from_str(text).map_err(bad)?;
    if value.get("points").is_some() {
        let DiscreteFile { points, probs } = serde_json::from_value(value).map_err(bad)?;
        return Ok(DiscreteDist::new(points, probs)?.into());
    }
    let GriddedFile { lo, hi, n, values } = serde_json::from_value(value).map_err(bad)?;
    if n != values.len() {
        return Err(Error::LengthMismatch {
            points: n,
            values: values.len(),
        });
    }
    gridded(lo, hi, values)
}

/// Parses `x,value` CSV. With `grid`, the `x` column must be uniformly spaced
/// and the values are read as a gridded density; otherwise as a discrete
/// distribution.
pub fn parse_csv(text: &str, grid: bool) -> Result<Distribution> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Input(e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "value" {
        return Err(Error::Input("CSV header must be x,value".into()));
    }
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Input(e.to_string()))?;
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::Input(format!("row {}: cannot parse {s:?}", line + 1)))
        };
        xs.push(parse(&record[0])?);
        vs.push(parse(&record[1])?);
    }
    if !grid {
        return Ok(DiscreteDist::new(xs, vs)?.into());
    }
    if xs.len() < 3 {
        return Err(Error::InvalidGrid(format!("need at least 3 grid points, got {}", xs.len())));
    }
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    let h = (hi - lo) / (xs.len() - 1) as f64;
    let scale = lo.abs().max(hi.abs()).max(1.0);
    for (i, &x) in xs.iter().enumerate() {
        if (x - (lo + i as f64 * h)).abs() > 1e-9 * scale {
            return Err(Error::InvalidGrid(format!("x column not uniformly spaced at row {}", i + 1)));
        }
    }
    gridded(lo, hi, vs)
}

/// Reads a distribution, choosing the format from the extension (`.csv` is
/// CSV, anything else JSON).
pub fn read_distribution(path: &Path, grid: bool) -> Result<Distribution> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let is_csv = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        parse_csv(&text, grid)
    } else {
        parse_json(&text)
    }
}
