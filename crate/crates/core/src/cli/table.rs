//! Tabular output: Markdown for people, CSV for machines.

use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberStyle {
    /// Three significant digits, two-digit exponent: `6.09e-07`.
    Sci3,
    /// Two decimals, used for observed orders.
    Fixed2,
    /// Shortest representation that parses back to the same value.
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(usize),
    Number { value: f64, style: NumberStyle },
    Empty,
}

impl Cell {
    pub fn sci(value: f64) -> Cell {
        Cell::Number {
            value,
            style: NumberStyle::Sci3,
        }
    }

    pub fn fixed(value: f64) -> Cell {
        Cell::Number {
            value,
            style: NumberStyle::Fixed2,
        }
    }

    pub fn full(value: f64) -> Cell {
        Cell::Number {
            value,
            style: NumberStyle::Full,
        }
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn display(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Number { value, style } => match style {
                NumberStyle::Sci3 => sci3(*value),
                NumberStyle::Fixed2 => format!("{value:.2}"),
                NumberStyle::Full => full_precision(*value),
            },
            Cell::Empty => String::new(),
        }
    }

    fn machine(&self) -> String {
        match self {
            Cell::Number { value, .. } => full_precision(*value),
            other => other.display(),
        }
    }
}

/// `6.09e-07` style: three significant digits, signed two-digit exponent.
pub fn sci3(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.2e}");
    let (mantissa, exp) = s.split_once('e').expect("LowerExp output has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

/// Shortest rendering that parses back to exactly `v`: positional for
/// moderate magnitudes, scientific otherwise.
pub fn full_precision(v: f64) -> String {
    let mag = v.abs();
    if v == 0.0 || (1e-4..1e15).contains(&mag) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub caption: String,
    headers: Vec<String>,
    rows: Vec<Vec<Cell>>,
    pub footnotes: Vec<String>,
}

impl OutputTable {
    pub fn new(caption: impl Into<String>, headers: Vec<String>) -> Self {
        OutputTable {
            caption: caption.into(),
            headers,
            rows: Vec::new(),
            footnotes: Vec::new(),
        }
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// Panics if the row width differs from the header count.
    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.headers.len(), "row width must match headers");
        self.rows.push(row);
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        if !self.caption.is_empty() {
            let _ = writeln!(out, "**{}**\n", self.caption);
        }
        let _ = writeln!(out, "| {} |", self.headers.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(self.headers.len()));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.display().replace('|', "\\|")).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        if !self.footnotes.is_empty() {
            out.push('\n');
            for note in &self.footnotes {
                let _ = writeln!(out, "{note}");
            }
        }
        out
    }

    /// RFC 4180 CSV, numbers at full precision. Caption and footnotes are
    /// not part of the machine format.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::machine)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci3_matches_table_style() {
        assert_eq!(sci3(6.09e-7), "6.09e-07");
        assert_eq!(sci3(0.78e-15), "7.80e-16");
        assert_eq!(sci3(9.996e-8), "1.00e-07");
        assert_eq!(sci3(123.0), "1.23e+02");
        assert_eq!(sci3(0.0), "0.00e+00");
        assert_eq!(sci3(-2.5e-300), "-2.50e-300");
    }

    #[test]
    fn full_precision_round_trips() {
        for v in [
            0.1,
            1.0 / 3.0,
            7.771561172376096e-16,
            16.0,
            1e-4,
            9.99e14,
            1e15,
            f64::MIN_POSITIVE,
            -2.5,
        ] {
            assert_eq!(full_precision(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn markdown_and_csv() {
        let mut t = OutputTable::new("Errors", vec!["eps".into(), "N=16".into()]);
        t.push_row(vec![Cell::text("1/16"), Cell::sci(6.0912345e-7)]);
        t.footnotes.push("note".into());
        let md = t.to_markdown();
        assert!(md.contains("| 1/16 | 6.09e-07 |"));
        assert!(md.contains("**Errors**"));
        assert!(md.ends_with("note\n"));
        let csv = t.to_csv();
        assert_eq!(csv, "eps,N=16\n1/16,6.0912345e-7\n");
        assert_eq!(full_precision(0.0625), "0.0625");
        assert_eq!(full_precision(0.0), "0");
    }

    #[test]
    fn csv_quotes_fields() {
        let mut t = OutputTable::new("", vec!["a".into()]);
        t.push_row(vec![Cell::text("x, \"y\"")]);
        assert_eq!(t.to_csv(), "a\n\"x, \"\"y\"\"\"\n");
    }

    #[test]
    #[should_panic]
    fn ragged_rows_rejected() {
        let mut t = OutputTable::new("", vec!["a".into(), "b".into()]);
        t.push_row(vec![Cell::Empty]);
    }
}
