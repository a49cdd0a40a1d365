//! Tabular report writer. CSV renders reals with 15 significant digits;
//! markdown uses a compact 6-digit form. Column order is whatever the table
//! declares — always deterministic, never locale-dependent.

use std::fmt::Write as _;

/// One table value.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Real(f64),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }
}

/// Homogeneous rows under a fixed header.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl ReportFormat {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "csv" => Some(ReportFormat::Csv),
            "markdown" => Some(ReportFormat::Markdown),
            _ => None,
        }
    }
}

/// Render the table. Text cells must not contain the separators (`,` for
/// CSV, `|` for markdown) or newlines; the toolkit's identifiers never do.
pub fn write_report(table: &Table, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut out = table.columns.join(",");
            out.push('\n');
            for row in &table.rows {
                let line: Vec<String> = row
                    .iter()
                    .map(|c| match c {
                        Cell::Text(s) => s.clone(),
                        Cell::Int(i) => i.to_string(),
                        Cell::Real(x) => format_real_csv(*x),
                    })
                    .collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
        ReportFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "| {} |", table.columns.join(" | "));
            let rule: Vec<&str> = table.columns.iter().map(|_| "---").collect();
            let _ = writeln!(out, "| {} |", rule.join(" | "));
            for row in &table.rows {
                let line: Vec<String> = row
                    .iter()
                    .map(|c| match c {
                        Cell::Text(s) => s.clone(),
                        Cell::Int(i) => i.to_string(),
                        Cell::Real(x) => format_significant(*x, 6),
                    })
                    .collect();
                let _ = writeln!(out, "| {} |", line.join(" | "));
            }
            out
        }
    }
}

/// 15 significant digits, scientific; parses back to within one rounding of
/// the original.
pub(crate) fn format_real_csv(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.14e}")
    } else {
        x.to_string()
    }
}

/// Compact form with the given number of significant digits, positional for
/// moderate magnitudes and scientific otherwise.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..7).contains(&magnitude) {
        let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.*e}", digits - 1, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_table() -> Table {
        let mut t = Table::new(["metric", "value", "n"]);
        t.push(vec![Cell::text("density"), Cell::Real(0.25), Cell::Int(10)]);
        t
    }

    #[test]
    fn csv_has_header_and_rows() {
        let out = write_report(&sample_table(), ReportFormat::Csv);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("metric,value,n"));
        assert_eq!(lines.next(), Some("density,2.50000000000000e-1,10"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(["a", "b"]);
        assert_eq!(write_report(&t, ReportFormat::Csv), "a,b\n");
    }

    #[test]
    fn markdown_has_header_rule() {
        let out = write_report(&sample_table(), ReportFormat::Markdown);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("| metric | value | n |"));
        assert_eq!(lines.next(), Some("| --- | --- | --- |"));
        assert_eq!(lines.next(), Some("| density | 0.25 | 10 |"));
    }

    #[test]
    fn csv_reals_round_trip_closely() {
        for &x in &[3.321928094887362f64, 0.05, 1.0 / 3.0, 1e-9, 123456.789] {
            let parsed: f64 = format_real_csv(x).parse().unwrap();
            assert!((parsed - x).abs() <= x.abs() * 1e-14);
        }
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(0.0, 6), "0");
        assert_eq!(format_significant(0.25, 6), "0.25");
        assert_eq!(format_significant(3.321928094887362, 6), "3.32193");
        assert_eq!(format_significant(-42.5, 6), "-42.5");
        assert_eq!(format_significant(1.5e-9, 6), "1.50000e-9");
    }
}
