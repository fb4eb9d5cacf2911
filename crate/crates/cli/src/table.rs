//! CSV input and output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use hazard_core::{HazardCurve, MarkerSeries};

use crate::error::{CliError, CliResult};

/// Shortest representation that parses back to the same `f64`; scientific
/// notation for very small or very large magnitudes.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// Header plus rows, rendered with [`fmt_num`].
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| fmt_num(v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Parses a CSV with a header row into numeric columns. Blank lines are
/// skipped; LF and CRLF endings are accepted.
pub fn parse_numeric_csv(
    text: &str,
    expected_header: &[&str],
    what: &str,
) -> CliResult<Vec<Vec<f64>>> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| CliError::Data(format!("{what} is empty")))?;
    let names: Vec<&str> = header
        .trim_start_matches('\u{feff}')
        .split(',')
        .map(str::trim)
        .collect();
    if names != expected_header {
        return Err(CliError::Data(format!(
            "{what}: expected header `{}`, found `{}`",
            expected_header.join(","),
            header.trim()
        )));
    }
    let mut rows = Vec::new();
    for (n, line) in lines {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != expected_header.len() {
            return Err(CliError::Data(format!(
                "{what}, line {}: expected {} fields, found {}",
                n + 1,
                expected_header.len(),
                cells.len()
            )));
        }
        let row = cells
            .iter()
            .map(|c| {
                c.parse::<f64>().map_err(|_| {
                    CliError::Data(format!("{what}, line {}: `{c}` is not a number", n + 1))
                })
            })
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::Data(format!("{what} has a header but no rows")));
    }
    Ok(rows)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}", path.display()), e))
}

/// Marker CSV: header `time,value`, one observation per row, `Z(0) = 0`
/// implicit.
pub fn parse_markers(text: &str, what: &str) -> CliResult<MarkerSeries> {
    let rows = parse_numeric_csv(text, &["time", "value"], what)?;
    let (times, values) = rows.into_iter().map(|r| (r[0], r[1])).unzip();
    MarkerSeries::new(times, values).map_err(|e| CliError::Data(format!("{what}: {e}")))
}

pub fn read_markers(path: &Path) -> CliResult<MarkerSeries> {
    parse_markers(&read(path)?, &path.display().to_string())
}

/// Hazard table CSV: header `t,H`, first row `0,0`.
pub fn read_hazard_table(path: &Path) -> CliResult<HazardCurve> {
    let what = path.display().to_string();
    let rows = parse_numeric_csv(&read(path)?, &["t", "H"], &what)?;
    let (times, values) = rows.into_iter().map(|r| (r[0], r[1])).unzip();
    HazardCurve::table(times, values).map_err(|e| CliError::Data(format!("{what}: {e}")))
}

/// Time grid from `start:stop:step` (inclusive of `stop` up to rounding) or a
/// comma-separated list. Must be finite and strictly increasing.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let bad = |msg: &str| CliError::Usage(format!("grid `{spec}`: {msg}"));
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| bad(&format!("`{s}` is not a number")))
    };
    let values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:stop:step"));
        }
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
            return Err(bad("need start <= stop and step > 0"));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        if n > 10_000_000 {
            return Err(bad("too many grid points"));
        }
        (0..=n).map(|i| start + step * i as f64).collect()
    } else {
        spec.split(',').map(num).collect::<CliResult<Vec<f64>>>()?
    };
    if values.is_empty() {
        return Err(bad("empty grid"));
    }
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(bad("grid values must be finite and nonnegative"));
    }
    if values.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(bad("grid must be strictly increasing"));
    }
    Ok(values)
}
