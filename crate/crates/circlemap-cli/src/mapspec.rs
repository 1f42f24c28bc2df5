//! Map-spec JSON parsing and curve CSV loading.
//!
//! Accepted documents:
//!   {"kind":"power","n":3}
//!   {"kind":"rotation","theta":1.5707963267948966}
//!   {"kind":"lift_expr","poly":[0.0,1.0],"sin":[0.1],"cos":[]}
//!   {"kind":"sampled","path":"curve.csv"}
//!
//! Curve CSV rows are "t,x,y" with strictly increasing t from 0 to 1 on a
//! uniform grid; an optional literal "t,x,y" header line is skipped.

use std::fs;
use std::path::Path;

use circlemap::{CircleMap, CirclePoint, LiftExpr, SampledGrid};
use serde_json::Value;

use crate::CliError;

fn schema_err(path: &str, message: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn require_f64(value: &Value, path: &str) -> Result<f64, CliError> {
    value
        .as_f64()
        .ok_or_else(|| schema_err(path, format!("expected a number, got {value}")))
}

fn require_f64_array(obj: &serde_json::Map<String, Value>, key: &str) -> Result<Vec<f64>, CliError> {
    match obj.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, v)| require_f64(v, &format!(".{key}[{i}]")))
            .collect(),
        Some(other) => Err(schema_err(
            &format!(".{key}"),
            format!("expected an array of numbers, got {other}"),
        )),
    }
}

fn check_keys(obj: &serde_json::Map<String, Value>, allowed: &[&str]) -> Result<(), CliError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(schema_err(
                &format!(".{key}"),
                format!("unknown field (allowed: {})", allowed.join(", ")),
            ));
        }
    }
    Ok(())
}

/// Parses a map-spec JSON document into a validated circle map. Sampled
/// specs load their CSV relative to the process working directory.
pub fn parse_map_spec(text: &str) -> Result<CircleMap, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| schema_err(".", format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema_err(".", "expected a JSON object"))?;
    let kind = obj
        .get("kind")
        .ok_or_else(|| schema_err(".kind", "missing field"))?
        .as_str()
        .ok_or_else(|| schema_err(".kind", "expected a string"))?;
    match kind {
        "power" => {
            check_keys(obj, &["kind", "n"])?;
            let n = obj
                .get("n")
                .ok_or_else(|| schema_err(".n", "missing field"))?
                .as_i64()
                .ok_or_else(|| {
                    schema_err(".n", format!("expected an integer, got {}", obj["n"]))
                })?;
            Ok(CircleMap::power(n))
        }
        "rotation" => {
            check_keys(obj, &["kind", "theta"])?;
            let theta = require_f64(
                obj.get("theta")
                    .ok_or_else(|| schema_err(".theta", "missing field"))?,
                ".theta",
            )?;
            Ok(CircleMap::rotation(theta)?)
        }
        "lift_expr" => {
            check_keys(obj, &["kind", "poly", "sin", "cos"])?;
            if !obj.contains_key("poly") {
                return Err(schema_err(".poly", "missing field"));
            }
            let poly = require_f64_array(obj, "poly")?;
            let sin = require_f64_array(obj, "sin")?;
            let cos = require_f64_array(obj, "cos")?;
            Ok(CircleMap::lift_expr(LiftExpr::new(poly, sin, cos)?))
        }
        "sampled" => {
            check_keys(obj, &["kind", "path"])?;
            let path = obj
                .get("path")
                .ok_or_else(|| schema_err(".path", "missing field"))?
                .as_str()
                .ok_or_else(|| schema_err(".path", "expected a string"))?;
            load_curve_csv(Path::new(path))
        }
        other => Err(schema_err(
            ".kind",
            format!("unknown kind {other:?} (expected power, rotation, lift_expr, or sampled)"),
        )),
    }
}

/// Reads a map-spec JSON file.
pub fn load_map_spec(path: &Path) -> Result<CircleMap, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_map_spec(&text)
}

/// Loads a closed curve from CSV rows "t,x,y" on a uniform grid over [0, 1].
pub fn load_curve_csv(path: &Path) -> Result<CircleMap, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line == "t,x,y") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(CliError::Schema {
                path: format!("{}:{}", path.display(), lineno + 1),
                message: format!("expected 3 comma-separated fields, got {}", fields.len()),
            });
        }
        let parse = |s: &str, what: &str| -> Result<f64, CliError> {
            s.trim().parse::<f64>().map_err(|e| CliError::Schema {
                path: format!("{}:{}", path.display(), lineno + 1),
                message: format!("invalid {what} value {s:?}: {e}"),
            })
        };
        rows.push((
            parse(fields[0], "t")?,
            parse(fields[1], "x")?,
            parse(fields[2], "y")?,
        ));
    }
    if rows.len() < 2 {
        return Err(CliError::Schema {
            path: path.display().to_string(),
            message: format!("need at least 2 data rows, got {}", rows.len()),
        });
    }
    let n = rows.len() - 1;
    let mut points = Vec::with_capacity(rows.len());
    for (j, (t, x, y)) in rows.iter().enumerate() {
        let want = j as f64 / n as f64;
        if (t - want).abs() > 1e-9 {
            return Err(CliError::Schema {
                path: path.display().to_string(),
                message: format!(
                    "row {} has t = {t}, expected the uniform node {want} (strictly increasing t from 0 to 1)",
                    j + 1
                ),
            });
        }
        points.push(CirclePoint::new(*x, *y)?);
    }
    Ok(CircleMap::sampled(SampledGrid::new(points)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_four_kinds() {
        assert!(matches!(
            parse_map_spec(r#"{"kind":"power","n":3}"#).unwrap(),
            CircleMap::Power(3)
        ));
        assert!(matches!(
            parse_map_spec(r#"{"kind":"rotation","theta":0}"#).unwrap(),
            CircleMap::Rotation(t) if t == 0.0
        ));
        assert!(matches!(
            parse_map_spec(r#"{"kind":"lift_expr","poly":[0.0,1.0],"sin":[0.1],"cos":[]}"#)
                .unwrap(),
            CircleMap::LiftExpr(_)
        ));
    }

    #[test]
    fn schema_error_paths() {
        let err = parse_map_spec(r#"{"kind":"power","n":"three"}"#).unwrap_err();
        match err {
            CliError::Schema { path, .. } => assert_eq!(path, ".n"),
            other => panic!("unexpected error: {other:?}"),
        }
        let err = parse_map_spec(r#"{"kind":"spiral"}"#).unwrap_err();
        match err {
            CliError::Schema { path, .. } => assert_eq!(path, ".kind"),
            other => panic!("unexpected error: {other:?}"),
        }
        let err = parse_map_spec(r#"{"kind":"power","n":1,"extra":true}"#).unwrap_err();
        match err {
            CliError::Schema { path, .. } => assert_eq!(path, ".extra"),
            other => panic!("unexpected error: {other:?}"),
        }
    }

    #[test]
    fn lift_expr_validation_propagates() {
        let err = parse_map_spec(r#"{"kind":"lift_expr","poly":[0.0,1.5]}"#).unwrap_err();
        assert!(matches!(err, CliError::Lib(_)));
    }

    #[test]
    fn curve_csv_validation() {
        let dir = std::env::temp_dir().join("circlemap-csv-tests");
        fs::create_dir_all(&dir).unwrap();

        // Non-uniform t grid.
        let bad_t = dir.join("bad_t.csv");
        fs::write(&bad_t, "t,x,y\n0,1,0\n0.3,0,1\n1,1,0\n").unwrap();
        assert!(matches!(
            load_curve_csv(&bad_t),
            Err(CliError::Schema { .. })
        ));

        // Quarter-turn steps exceed the continuity witness.
        let coarse = dir.join("coarse.csv");
        fs::write(&coarse, "t,x,y\n0,1,0\n0.25,0,1\n0.5,-1,0\n0.75,0,-1\n1,1,0\n").unwrap();
        assert!(matches!(
            load_curve_csv(&coarse),
            Err(CliError::Lib(circlemap::Error::Continuity { .. }))
        ));

        // A dense valid circle loads.
        let good = dir.join("good.csv");
        let mut text = String::from("t,x,y\n");
        for j in 0..=16 {
            let t = j as f64 / 16.0;
            let a = std::f64::consts::TAU * t;
            text.push_str(&format!("{t},{},{}\n", a.cos(), a.sin()));
        }
        fs::write(&good, text).unwrap();
        assert!(matches!(
            load_curve_csv(&good).unwrap(),
            CircleMap::Sampled(_)
        ));
    }
}
