//! On-disk formats: matrix JSON, code-set JSON, ±1 text and profile CSV.

use serde::{Deserialize, Serialize};

use seqforge_core::constructions::CodeSet;
use seqforge_core::corrcore::{CorrelationValue, SequenceMatrix};
use seqforge_core::profile::ProfileRow;

/// One matrix of phase exponents in `Z_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub q: u32,
    pub rows: usize,
    pub cols: usize,
    pub exponents: Vec<Vec<u32>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &SequenceMatrix) -> Self {
        MatrixFile {
            q: m.q(),
            rows: m.n_rows(),
            cols: m.n_cols(),
            exponents: m.exponents(),
        }
    }

    /// Checks the header against the payload and builds the matrix.
    pub fn to_matrix(&self) -> Result<SequenceMatrix, String> {
        if self.exponents.len() != self.rows {
            return Err(format!(
                "header says {} rows, payload has {}",
                self.rows,
                self.exponents.len()
            ));
        }
        if let Some((i, r)) = self
            .exponents
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != self.cols)
        {
            return Err(format!(
                "header says {} columns, row {i} has {}",
                self.cols,
                r.len()
            ));
        }
        if let Some(&e) = self.exponents.iter().flatten().find(|&&e| e >= self.q) {
            return Err(format!("exponent {e} is not reduced mod q = {}", self.q));
        }
        SequenceMatrix::from_exponents(self.q, self.exponents.clone()).map_err(|e| e.to_string())
    }
}

/// `{"q": …, "codes": [MatrixFile, …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSetFile {
    pub q: u32,
    pub codes: Vec<MatrixFile>,
}

impl CodeSetFile {
    pub fn from_codes(codes: &CodeSet) -> Self {
        CodeSetFile {
            q: codes.q(),
            codes: codes.codes().iter().map(MatrixFile::from_matrix).collect(),
        }
    }

    pub fn from_matrices(q: u32, ms: &[SequenceMatrix]) -> Self {
        CodeSetFile {
            q,
            codes: ms.iter().map(MatrixFile::from_matrix).collect(),
        }
    }

    pub fn to_codes(&self) -> Result<Vec<SequenceMatrix>, String> {
        let codes = self
            .codes
            .iter()
            .enumerate()
            .map(|(p, c)| c.to_matrix().map_err(|e| format!("code {p}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some((p, c)) = codes.iter().enumerate().find(|(_, c)| c.q() != self.q) {
            return Err(format!(
                "code {p} has q = {}, the set says {}",
                c.q(),
                self.q
            ));
        }
        Ok(codes)
    }
}

/// A parsed input file.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Matrix(SequenceMatrix),
    Codes(Vec<SequenceMatrix>),
}

impl Document {
    /// JSON (matrix or code set, told apart by the `codes` key) or ±1 text.
    pub fn parse(text: &str) -> Result<Document, String> {
        if !text.trim_start().starts_with('{') {
            return parse_text(text).map(Document::Matrix);
        }
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
        if value.get("codes").is_some() {
            let f: CodeSetFile =
                serde_json::from_value(value).map_err(|e| format!("invalid code-set file: {e}"))?;
            f.to_codes().map(Document::Codes)
        } else {
            let f: MatrixFile =
                serde_json::from_value(value).map_err(|e| format!("invalid matrix file: {e}"))?;
            f.to_matrix().map(Document::Matrix)
        }
    }

    pub fn into_matrix(self) -> Result<SequenceMatrix, String> {
        match self {
            Document::Matrix(m) => Ok(m),
            Document::Codes(_) => Err("expected a single matrix, got a code set".into()),
        }
    }

    pub fn into_codes(self) -> Result<Vec<SequenceMatrix>, String> {
        match self {
            Document::Codes(c) => Ok(c),
            Document::Matrix(_) => Err("expected a code set, got a single matrix".into()),
        }
    }
}

/// Rows of space-separated `1` / `-1`. Binary matrices only.
pub fn to_text(m: &SequenceMatrix) -> Result<String, String> {
    let rows = m
        .to_bipolar()
        .ok_or_else(|| format!("text export needs q = 2, got q = {}", m.q()))?;
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(i64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_text(text: &str) -> Result<SequenceMatrix, String> {
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| match t {
                "1" | "+1" | "+" => Ok(1),
                "-1" | "-" => Ok(-1),
                other => Err(format!("line {}: expected 1 or -1, got {other:?}", ln + 1)),
            })
            .collect::<Result<Vec<i64>, _>>()?;
        rows.push(row);
    }
    SequenceMatrix::from_bipolar(&rows).map_err(|e| e.to_string())
}

/// Integers print as integers; anything else with 12 significant digits.
pub fn format_number(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        return format!("{}", x as i64);
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

fn value_fields(v: &CorrelationValue) -> (String, String) {
    match v.as_exact() {
        Some(g) => (g.re.to_string(), g.im.to_string()),
        None => (format_number(v.re()), format_number(v.im())),
    }
}

pub const CSV_HEADER: &str = "p,p_prime,lambda,re,im";

pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let (re, im) = value_fields(&r.value);
        out.push_str(&format!("{},{},{},{re},{im}\n", r.p, r.p_prime, r.lambda));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_rendering() {
        assert_eq!(format_number(400.0), "400");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(-2.5), "-2.5");
    }

    #[test]
    fn matrix_file_validation() {
        let good = r#"{"q":2,"rows":1,"cols":2,"exponents":[[0,1]]}"#;
        assert!(matches!(Document::parse(good), Ok(Document::Matrix(_))));
        for bad in [
            r#"{"q":2,"rows":2,"cols":2,"exponents":[[0,1]]}"#,
            r#"{"q":2,"rows":1,"cols":3,"exponents":[[0,1]]}"#,
            r#"{"q":2,"rows":1,"cols":2,"exponents":[[0,2]]}"#,
            r#"{"q":3,"rows":1,"cols":2,"exponents":[[0,1]]}"#,
            r#"{"q":2,"rows":1,"cols":2}"#,
            r#"{"q":2"#,
        ] {
            assert!(Document::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn text_round_trip() {
        let m = SequenceMatrix::from_bipolar(&[vec![1, -1, 1], vec![-1, -1, 1]]).unwrap();
        let t = to_text(&m).unwrap();
        assert_eq!(t, "1 -1 1\n-1 -1 1\n");
        assert_eq!(parse_text(&t).unwrap(), m);
        assert!(parse_text("1 2\n").is_err());
        assert!(parse_text("1 1\n1\n").is_err());
        let q4 = SequenceMatrix::from_exponents(4, vec![vec![0, 1]]).unwrap();
        assert!(to_text(&q4).is_err());
    }

    #[test]
    fn csv_rows() {
        let rows = vec![ProfileRow {
            p: 0,
            p_prime: 0,
            lambda: -1,
            value: CorrelationValue::exact(3, 0),
        }];
        assert_eq!(profile_csv(&rows), "p,p_prime,lambda,re,im\n0,0,-1,3,0\n");
    }
}
