//! Text formats: grid snapshots, changesets, block catalogs, recipe graphs,
//! judge scores, metric samples, summaries and reports.
//!
//! All formats are UTF-8 text. Parsing is bit-exact and every error message
//! names the byte offset or line number of the fault. Serialization is
//! canonical: parsing a serialized document and serializing it again yields
//! identical bytes.

mod catalog;
mod changeset;
mod grid_doc;
mod reader;
mod report;
mod samples;
mod scores;

pub use catalog::{parse_catalog, parse_recipes, CATALOG_HEADER, RECIPES_HEADER};
pub use changeset::{parse_changeset, serialize_changeset};
pub use grid_doc::{parse_grid, serialize_grid};
pub use report::{format_significant, write_report, Cell, ReportFormat, Table};
pub use samples::{
    parse_samples_csv, parse_summary_csv, write_row_csv, write_samples_csv, write_summary_csv,
    MetricRow, SummaryRow, GLOBAL_GENERATOR, SAMPLES_HEADER, SUMMARY_HEADER,
};
pub use scores::{parse_scores, ScoreRecord, SCORES_HEADER};

use std::fmt;

use thiserror::Error;

/// A location in an input document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TextPos {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for TextPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {} (byte {})", self.line, self.column, self.offset)
    }
}

/// Parse and validation failures for the file formats.
///
/// `is_validation` distinguishes semantically invalid content (out-of-range
/// scores, unknown blocks, cycles, bounds) from malformed input; the CLI
/// maps the former to exit 3 and the latter to exit 2.
#[derive(Debug, Error)]
pub enum ParseError {
    /// Malformed document: syntax, bad tag or version, wrong header.
    #[error("{pos}: {msg}")]
    Format { pos: TextPos, msg: String },
    /// Run-length stream disagrees with the declared grid size.
    #[error("{pos}: {msg}")]
    Length { pos: TextPos, msg: String },
    /// Palette violates the bijection (duplicate name or id, gap).
    #[error("{pos}: {msg}")]
    Palette { pos: TextPos, msg: String },
    /// Malformed record in a line-oriented format.
    #[error("line {line}: {msg}")]
    LineFormat { line: usize, msg: String },
    /// Coordinate outside the owning grid.
    #[error("line {line}: {msg}")]
    Bounds { line: usize, msg: String },
    /// Name or id that does not resolve.
    #[error("line {line}: unknown block {name}")]
    UnknownBlock { line: usize, name: String },
    /// Recipe dependencies loop.
    #[error("line {line}: recipe cycle: {}", cycle.join(" -> "))]
    Cycle { line: usize, cycle: Vec<String> },
    /// Value outside its documented range.
    #[error("line {line}: {msg}")]
    Range { line: usize, msg: String },
}

impl ParseError {
    /// True for semantic failures on well-formed input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            ParseError::Bounds { .. }
                | ParseError::UnknownBlock { .. }
                | ParseError::Cycle { .. }
                | ParseError::Range { .. }
        )
    }
}

/// Iterate non-empty lines with 1-based line numbers, tolerating `\r\n`.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.strip_suffix('\r').unwrap_or(raw)))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// Decode input as UTF-8, reporting the offending byte offset.
fn decode_utf8(bytes: &[u8]) -> Result<&str, ParseError> {
    std::str::from_utf8(bytes).map_err(|e| {
        let offset = e.valid_up_to();
        let prefix = &bytes[..offset];
        let line = prefix.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = offset - prefix.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1) + 1;
        ParseError::Format {
            pos: TextPos { offset, line, column },
            msg: "invalid UTF-8".to_string(),
        }
    })
}
