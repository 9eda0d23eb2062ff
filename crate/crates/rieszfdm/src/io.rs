//! CSV reading and writing for solutions, observed profiles, and weight
//! tables.
//!
//! Floats are printed with 17 significant digits so every file round-trips:
//! parsing an emitted file and emitting it again reproduces the bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::kernel::WeightTable;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {reason}")]
    Malformed { path: String, line: usize, reason: String },
}

impl FileError {
    fn malformed(path: &Path, line: usize, reason: impl Into<String>) -> Self {
        Self::Malformed { path: path.display().to_string(), line, reason: reason.into() }
    }
}

/// 17 significant digits: enough to reproduce any f64 exactly on re-parse.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_float(path: &Path, line: usize, field: &str) -> Result<f64, FileError> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|e| FileError::malformed(path, line, format!("bad float {field:?}: {e}")))
}

fn read_to_string(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path)
        .map_err(|source| FileError::Io { path: path.display().to_string(), source })
}

fn write_string(path: &Path, contents: &str) -> Result<(), FileError> {
    fs::write(path, contents)
        .map_err(|source| FileError::Io { path: path.display().to_string(), source })
}

/// Render a solved profile as `x,T` rows.
pub fn solution_csv(nodes: &[f64], values: &[f64]) -> String {
    let mut out = String::from("x,T\n");
    for (x, v) in nodes.iter().zip(values) {
        let _ = writeln!(out, "{},{}", format_float(*x), format_float(*v));
    }
    out
}

pub fn write_solution_csv(
    path: impl AsRef<Path>,
    nodes: &[f64],
    values: &[f64],
) -> Result<(), FileError> {
    write_string(path.as_ref(), &solution_csv(nodes, values))
}

pub fn read_solution_csv(path: impl AsRef<Path>) -> Result<(Vec<f64>, Vec<f64>), FileError> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    parse_two_column(path, &text, "x,T")
}

/// Render observations as `x,T_obs` rows.
pub fn profile_csv(points: &[(f64, f64)]) -> String {
    let mut out = String::from("x,T_obs\n");
    for (x, t) in points {
        let _ = writeln!(out, "{},{}", format_float(*x), format_float(*t));
    }
    out
}

pub fn write_profile_csv(path: impl AsRef<Path>, points: &[(f64, f64)]) -> Result<(), FileError> {
    write_string(path.as_ref(), &profile_csv(points))
}

pub fn read_profile_csv(path: impl AsRef<Path>) -> Result<Vec<(f64, f64)>, FileError> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    let (xs, ts) = parse_two_column(path, &text, "x,T_obs")?;
    Ok(xs.into_iter().zip(ts).collect())
}

fn parse_two_column(
    path: &Path,
    text: &str,
    header: &str,
) -> Result<(Vec<f64>, Vec<f64>), FileError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first == header => {}
        Some((_, first)) => {
            return Err(FileError::malformed(
                path,
                1,
                format!("expected header {header:?}, got {first:?}"),
            ));
        }
        None => return Err(FileError::malformed(path, 1, "empty file")),
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let (a, b) = line
            .split_once(',')
            .ok_or_else(|| FileError::malformed(path, lineno, "expected two comma-separated fields"))?;
        xs.push(parse_float(path, lineno, a)?);
        ys.push(parse_float(path, lineno, b)?);
    }
    if xs.is_empty() {
        return Err(FileError::malformed(path, 2, "no data rows"));
    }
    Ok((xs, ys))
}

/// Render a weight table: a `k,w` section for all tabulated offsets followed
/// by a `j,sL,sR` section with the tail sums.
pub fn weights_csv(table: &WeightTable) -> String {
    let kmax = table.kmax() as i64;
    let mut out = String::from("k,w\n");
    for k in -kmax..=kmax {
        let _ = writeln!(out, "{k},{}", format_float(table.weight(k)));
    }
    out.push('\n');
    out.push_str("j,sL,sR\n");
    for j in 1..=table.kmax() {
        let _ = writeln!(
            out,
            "{j},{},{}",
            format_float(table.tail_left(j)),
            format_float(table.tail_right(j))
        );
    }
    out
}

pub fn write_weights_csv(path: impl AsRef<Path>, table: &WeightTable) -> Result<(), FileError> {
    write_string(path.as_ref(), &weights_csv(table))
}

/// Parsed form of a weights file: (offset, weight) rows and (j, sL, sR) rows.
type WeightsFile = (Vec<(i64, f64)>, Vec<(usize, f64, f64)>);

pub fn read_weights_csv(path: impl AsRef<Path>) -> Result<WeightsFile, FileError> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    let mut weights = Vec::new();
    let mut tails = Vec::new();
    let mut section = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        match (section, line) {
            (0, "k,w") => section = 1,
            (0, _) => {
                return Err(FileError::malformed(path, lineno, "expected header \"k,w\""))
            }
            (1, "") => section = 2,
            (1, row) => {
                let (k, w) = row.split_once(',').ok_or_else(|| {
                    FileError::malformed(path, lineno, "expected two comma-separated fields")
                })?;
                let k = k.trim().parse::<i64>().map_err(|e| {
                    FileError::malformed(path, lineno, format!("bad offset {k:?}: {e}"))
                })?;
                weights.push((k, parse_float(path, lineno, w)?));
            }
            (2, "j,sL,sR") => section = 3,
            (2, _) => {
                return Err(FileError::malformed(path, lineno, "expected header \"j,sL,sR\""))
            }
            (3, "") => {}
            (3, row) => {
                let mut fields = row.splitn(3, ',');
                let j = fields
                    .next()
                    .unwrap()
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| FileError::malformed(path, lineno, format!("bad offset: {e}")))?;
                let sl = fields.next().ok_or_else(|| {
                    FileError::malformed(path, lineno, "expected three comma-separated fields")
                })?;
                let sr = fields.next().ok_or_else(|| {
                    FileError::malformed(path, lineno, "expected three comma-separated fields")
                })?;
                tails.push((j, parse_float(path, lineno, sl)?, parse_float(path, lineno, sr)?));
            }
            _ => unreachable!(),
        }
    }
    if weights.is_empty() || tails.is_empty() {
        return Err(FileError::malformed(path, 1, "missing weights or tails section"));
    }
    Ok((weights, tails))
}

/// Re-render a parsed weights file; used for round-trip checks.
pub fn weights_csv_from_rows(rows: &WeightsFile) -> String {
    let mut out = String::from("k,w\n");
    for (k, w) in &rows.0 {
        let _ = writeln!(out, "{k},{}", format_float(*w));
    }
    out.push('\n');
    out.push_str("j,sL,sR\n");
    for (j, sl, sr) in &rows.1 {
        let _ = writeln!(out, "{j},{},{}", format_float(*sl), format_float(*sr));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{FractionalParams, SchemeWeights};

    #[test]
    fn float_format_round_trips() {
        for x in [
            0.0,
            -0.0,
            1.0,
            0.1,
            2.0 / 3.0,
            -0.055,
            1e-300,
            f64::MAX,
            std::f64::consts::PI,
        ] {
            let s = format_float(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s} -> {back}");
            assert_eq!(format_float(back), s);
        }
    }

    #[test]
    fn solution_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("solution.csv");
        let nodes = vec![0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0];
        let values = vec![2.0, 1.7, 1.3, 1.0];
        write_solution_csv(&path, &nodes, &values).unwrap();
        let first = fs::read_to_string(&path).unwrap();
        let (xs, vs) = read_solution_csv(&path).unwrap();
        assert_eq!(xs, nodes);
        assert_eq!(vs, values);
        assert_eq!(solution_csv(&xs, &vs), first);
    }

    #[test]
    fn profile_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("profile.csv");
        let points = vec![(0.0, 2.0), (0.5, 1.234567890123456), (1.0, 1.0)];
        write_profile_csv(&path, &points).unwrap();
        let first = fs::read_to_string(&path).unwrap();
        let parsed = read_profile_csv(&path).unwrap();
        assert_eq!(parsed, points);
        assert_eq!(profile_csv(&parsed), first);
    }

    #[test]
    fn weights_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("weights.csv");
        let params = FractionalParams::new(1.5, 0.3).unwrap();
        let table = WeightTable::build(&params, &SchemeWeights::default(), 6).unwrap();
        write_weights_csv(&path, &table).unwrap();
        let first = fs::read_to_string(&path).unwrap();
        let rows = read_weights_csv(&path).unwrap();
        assert_eq!(rows.0.len(), 13);
        assert_eq!(rows.1.len(), 6);
        assert_eq!(weights_csv_from_rows(&rows), first);
    }

    #[test]
    fn malformed_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");

        fs::write(&path, "wrong,header\n1,2\n").unwrap();
        assert!(matches!(
            read_solution_csv(&path),
            Err(FileError::Malformed { line: 1, .. })
        ));

        fs::write(&path, "x,T\n0.0,not_a_number\n").unwrap();
        assert!(matches!(
            read_solution_csv(&path),
            Err(FileError::Malformed { line: 2, .. })
        ));

        fs::write(&path, "x,T\n").unwrap();
        assert!(matches!(read_solution_csv(&path), Err(FileError::Malformed { .. })));

        assert!(matches!(
            read_solution_csv(dir.path().join("missing.csv")),
            Err(FileError::Io { .. })
        ));
    }
}
