//! Traffic matrix parsing and serialization.
//!
//! CSV: n data rows of n comma-separated numbers, decimal point, no
//! thousands separators; an optional first row of device labels. JSON: a
//! plain array of rows.

use std::path::Path;

use lancut_core::traffic::{TrafficMatrix, Unit};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Json,
}

pub struct ParsedMatrix {
    pub matrix: TrafficMatrix,
    pub labels: Option<Vec<String>>,
}

pub fn parse_matrix(
    text: &str,
    format: MatrixFormat,
    unit: Unit,
    origin: &Path,
) -> Result<ParsedMatrix, CliError> {
    match format {
        MatrixFormat::Csv => parse_csv(text, unit, origin),
        MatrixFormat::Json => parse_json(text, unit, origin),
    }
}

fn parse_csv(text: &str, unit: Unit, origin: &Path) -> Result<ParsedMatrix, CliError> {
    let mut lines = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.trim().is_empty())
        .peekable();

    let labels = match lines.peek() {
        Some(first) if !all_numeric(first) => {
            let header = lines.next().expect("peeked");
            Some(header.split(',').map(|s| s.trim().to_string()).collect())
        }
        _ => None,
    };

    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let mut row = Vec::new();
        for field in line.split(',') {
            let value: f64 = field.trim().parse().map_err(|_| {
                CliError::invalid(
                    origin,
                    format!("data row {}: '{}' is not a number", lineno + 1, field.trim()),
                )
            })?;
            row.push(value);
        }
        rows.push(row);
    }
    if let Some(labels) = &labels {
        if labels.len() != rows.len() {
            return Err(CliError::invalid(
                origin,
                format!("{} header labels but {} data rows", labels.len(), rows.len()),
            ));
        }
    }
    let matrix = TrafficMatrix::from_rows(rows, unit)?;
    Ok(ParsedMatrix { matrix, labels })
}

fn all_numeric(line: &str) -> bool {
    line.split(',').all(|f| f.trim().parse::<f64>().is_ok())
}

fn parse_json(text: &str, unit: Unit, origin: &Path) -> Result<ParsedMatrix, CliError> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(text)
        .map_err(|e| CliError::invalid(origin, format!("matrix json: {e}")))?;
    Ok(ParsedMatrix { matrix: TrafficMatrix::from_rows(rows, unit)?, labels: None })
}

/// CSV form with an optional label header; uses the shortest decimal
/// representation that round-trips each value.
pub fn matrix_to_csv(m: &TrafficMatrix, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    if let Some(labels) = labels {
        out.push_str(&labels.join(","));
        out.push('\n');
    }
    for i in 0..m.n() {
        let row: Vec<String> = m.row(i).iter().map(|w| format!("{w}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lancut_core::Error as CoreError;
    use std::path::PathBuf;

    fn origin() -> PathBuf {
        PathBuf::from("test.csv")
    }

    #[test]
    fn parses_small_csv() {
        let p = parse_matrix("0,1\n2,0", MatrixFormat::Csv, Unit::Mbps, &origin()).unwrap();
        assert_eq!(p.matrix.get(0, 1), 1.0);
        assert_eq!(p.matrix.get(1, 0), 2.0);
        assert!(p.labels.is_none());
    }

    #[test]
    fn detects_header_labels() {
        let p = parse_matrix("a,b\n0,1\n2,0", MatrixFormat::Csv, Unit::Mbps, &origin()).unwrap();
        assert_eq!(p.labels, Some(vec!["a".into(), "b".into()]));
    }

    #[test]
    fn nonzero_diagonal_is_rejected_with_position() {
        let err =
            parse_matrix("0,1\n2,3", MatrixFormat::Csv, Unit::Mbps, &origin()).unwrap_err();
        match err {
            CliError::Core(CoreError::NonzeroDiagonal { index: 2, .. }) => {}
            other => panic!("unexpected: {other}"),
        }
    }

    #[test]
    fn non_square_and_negative_are_rejected() {
        assert!(parse_matrix("0,1,2\n1,0,3", MatrixFormat::Csv, Unit::Mbps, &origin()).is_err());
        assert!(parse_matrix("0,-1\n1,0", MatrixFormat::Csv, Unit::Mbps, &origin()).is_err());
    }

    #[test]
    fn json_matrix_roundtrip() {
        let p = parse_matrix("[[0,1.5],[2,0]]", MatrixFormat::Json, Unit::Mbps, &origin())
            .unwrap();
        assert_eq!(p.matrix.get(0, 1), 1.5);
    }

    #[test]
    fn csv_roundtrip_preserves_values() {
        let text = "0,1.25,160\n0.5,0,16\n240,90,0\n";
        let p = parse_matrix(text, MatrixFormat::Csv, Unit::Mbps, &origin()).unwrap();
        let back = matrix_to_csv(&p.matrix, None);
        assert_eq!(back, text);
        let again = parse_matrix(&back, MatrixFormat::Csv, Unit::Mbps, &origin()).unwrap();
        assert_eq!(again.matrix, p.matrix);
    }
}
