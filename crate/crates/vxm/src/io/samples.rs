//! Metric sample and summary tables.
//!
//! Samples: `generator,sample,<14 metric columns>,warnings` — one row per
//! evaluated settlement, warnings semicolon-joined. Summaries:
//! `generator,metric,mean,median,variance,std_dev,samples` — one row per
//! (generator, metric), with the pooled rows under the reserved generator
//! name `Global`.

use std::sync::LazyLock;

use crate::metrics::{Metric, MetricVector};

use super::report::format_real_csv;
use super::{decode_utf8, lines, ParseError};

/// Reserved generator name for pooled rows in summary tables.
pub const GLOBAL_GENERATOR: &str = "Global";

pub static SAMPLES_HEADER: LazyLock<String> = LazyLock::new(|| {
    let mut cols = vec!["generator".to_string(), "sample".to_string()];
    cols.extend(Metric::ALL.iter().map(|m| m.name().to_string()));
    cols.push("warnings".to_string());
    cols.join(",")
});

pub const SUMMARY_HEADER: &str = "generator,metric,mean,median,variance,std_dev,samples";

/// One evaluated settlement sample.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricRow {
    pub generator: String,
    pub sample: u32,
    pub vector: MetricVector,
    pub warnings: Vec<String>,
}

/// One statistic row of a per-generator summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub generator: String,
    pub metric: Metric,
    pub mean: f64,
    pub median: f64,
    pub variance: f64,
    pub std_dev: f64,
    pub samples: usize,
}

fn metric_cell(metric: Metric, value: f64) -> String {
    match metric {
        Metric::BlockTypeCount | Metric::RelationToEnvironment => {
            format!("{}", value as u64)
        }
        _ => format_real_csv(value),
    }
}

/// Full samples table with generator and sample columns.
pub fn write_samples_csv(rows: &[MetricRow]) -> String {
    let mut out = SAMPLES_HEADER.clone();
    out.push('\n');
    for row in rows {
        out.push_str(&row.generator);
        out.push(',');
        out.push_str(&row.sample.to_string());
        for metric in Metric::ALL {
            out.push(',');
            out.push_str(&metric_cell(metric, row.vector.value(metric)));
        }
        out.push(',');
        out.push_str(&row.warnings.join(";"));
        out.push('\n');
    }
    out
}

/// Single-settlement row: the 14 metrics plus the warnings column.
pub fn write_row_csv(vector: &MetricVector, warnings: &[String]) -> String {
    let mut cols: Vec<String> = Metric::ALL.iter().map(|m| m.name().to_string()).collect();
    cols.push("warnings".to_string());
    let mut out = cols.join(",");
    out.push('\n');
    let mut values: Vec<String> = Metric::ALL
        .iter()
        .map(|&m| metric_cell(m, vector.value(m)))
        .collect();
    values.push(warnings.join(";"));
    out.push_str(&values.join(","));
    out.push('\n');
    out
}

pub fn parse_samples_csv(bytes: &[u8]) -> Result<Vec<MetricRow>, ParseError> {
    let text = decode_utf8(bytes)?;
    let mut rows = lines(text);
    match rows.next() {
        Some((_, line)) if line.trim() == SAMPLES_HEADER.as_str() => {}
        Some((line_no, line)) => {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("expected samples header, found {line:?}"),
            })
        }
        None => {
            return Err(ParseError::LineFormat { line: 1, msg: "missing samples header".into() })
        }
    }
    let mut out = Vec::new();
    for (line_no, line) in rows {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 17 {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("expected 17 fields, found {}", fields.len()),
            });
        }
        let generator = fields[0].trim().to_string();
        if generator.is_empty() {
            return Err(ParseError::LineFormat { line: line_no, msg: "empty generator".into() });
        }
        let sample: u32 = fields[1].trim().parse().map_err(|_| ParseError::LineFormat {
            line: line_no,
            msg: format!("invalid sample index {:?}", fields[1]),
        })?;
        let mut values = [0.0f64; 14];
        for (i, v) in values.iter_mut().enumerate() {
            *v = parse_real(fields[2 + i], line_no)?;
        }
        let warnings = fields[16]
            .split(';')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(str::to_string)
            .collect();
        out.push(MetricRow {
            generator,
            sample,
            vector: MetricVector::from_values(values),
            warnings,
        });
    }
    Ok(out)
}

pub fn write_summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = SUMMARY_HEADER.to_string();
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.generator,
            row.metric.name(),
            format_real_csv(row.mean),
            format_real_csv(row.median),
            format_real_csv(row.variance),
            format_real_csv(row.std_dev),
            row.samples
        ));
    }
    out
}

pub fn parse_summary_csv(bytes: &[u8]) -> Result<Vec<SummaryRow>, ParseError> {
    let text = decode_utf8(bytes)?;
    let mut rows = lines(text);
    match rows.next() {
        Some((_, line)) if line.trim() == SUMMARY_HEADER => {}
        Some((line_no, line)) => {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("expected header {SUMMARY_HEADER:?}, found {line:?}"),
            })
        }
        None => {
            return Err(ParseError::LineFormat { line: 1, msg: "missing summary header".into() })
        }
    }
    let mut out = Vec::new();
    for (line_no, line) in rows {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(ParseError::LineFormat {
                line: line_no,
                msg: format!("expected 7 fields, found {}", fields.len()),
            });
        }
        let metric = Metric::from_name(fields[1].trim()).ok_or_else(|| ParseError::LineFormat {
            line: line_no,
            msg: format!("unknown metric {:?}", fields[1]),
        })?;
        out.push(SummaryRow {
            generator: fields[0].trim().to_string(),
            metric,
            mean: parse_real(fields[2], line_no)?,
            median: parse_real(fields[3], line_no)?,
            variance: parse_real(fields[4], line_no)?,
            std_dev: parse_real(fields[5], line_no)?,
            samples: fields[6].trim().parse().map_err(|_| ParseError::LineFormat {
                line: line_no,
                msg: format!("invalid sample count {:?}", fields[6]),
            })?,
        });
    }
    Ok(out)
}

fn parse_real(s: &str, line: usize) -> Result<f64, ParseError> {
    let v: f64 = s.trim().parse().map_err(|_| ParseError::LineFormat {
        line,
        msg: format!("invalid number {s:?}"),
    })?;
    if !v.is_finite() {
        return Err(ParseError::LineFormat { line, msg: format!("non-finite number {s:?}") });
    }
    Ok(v)
}
