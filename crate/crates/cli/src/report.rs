//! Deterministic report output: JSON with floats rounded to 12 significant
//! digits, object keys in a stable order, and a trailing newline, so that
//! two runs over the same spec produce byte-identical files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;

const SIGNIFICANT_DIGITS: i32 = 12;

/// Rounds to 12 significant digits; leaves zero and non-finite values alone.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let magnitude = v.abs().log10().floor() as i32;
    let factor = 10f64.powi(SIGNIFICANT_DIGITS - 1 - magnitude);
    (v * factor).round() / factor
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    if let Some(rounded) = serde_json::Number::from_f64(round_sig(f)) {
                        *n = rounded;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Serializes with rounded floats and stable key order.
pub fn to_json_bytes<T: Serialize>(value: &T) -> anyhow::Result<Vec<u8>> {
    let mut tree = serde_json::to_value(value)?;
    round_value(&mut tree);
    let mut bytes = serde_json::to_vec_pretty(&tree)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes a report into `out` under `name`, or to stdout when `out` is none.
pub fn emit<T: Serialize>(value: &T, out: Option<&Path>, name: &str) -> anyhow::Result<PathBuf> {
    let bytes = to_json_bytes(value)?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .with_context(|| format!("cannot create output directory {}", dir.display()))?;
            let path = dir.join(name);
            fs::write(&path, &bytes)
                .with_context(|| format!("cannot write {}", path.display()))?;
            Ok(path)
        }
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
            Ok(PathBuf::from("-"))
        }
    }
}

/// Writes a CSV table of rows with a fixed header; floats use the same
/// 12-digit rounding as the JSON output.
pub fn emit_csv(
    header: &[&str],
    rows: &[Vec<f64>],
    out: &Path,
    name: &str,
) -> anyhow::Result<PathBuf> {
    fs::create_dir_all(out)?;
    let path = out.join(name);
    let mut text = String::new();
    text.push_str(&header.join(","));
    text.push('\n');
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|v| {
                if v.is_finite() {
                    format!("{}", round_sig(*v))
                } else {
                    "inf".to_string()
                }
            })
            .collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_examples() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(1.0), 1.0);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(1.23456789012349e-7), 1.23456789012e-7);
    }

    #[test]
    fn json_bytes_are_stable() {
        #[derive(Serialize)]
        struct Demo {
            value: f64,
            items: Vec<f64>,
        }
        let d = Demo {
            value: 0.1 + 0.2,
            items: vec![1.0 / 3.0],
        };
        let a = to_json_bytes(&d).unwrap();
        let b = to_json_bytes(&d).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.contains("0.3"));
        assert!(text.ends_with('\n'));
    }
}
