//! Per-generator aggregation, information-gain ranking of metrics, Spearman
//! rank correlation with permutation p-values, and the correlation tables.

mod aggregate;
mod correlate;
mod infogain;
mod scores;
mod spearman;

pub use aggregate::{aggregate, AggregateReport, GeneratorSummary, SummaryStats};
pub use correlate::{correlation_table, CorrelationTable, TableMode};
pub use infogain::{default_bins, information_gain, InfoGain};
pub use scores::{overall_score, overall_score_for, HumanScores, ScoreCategory, ScoreMeans};
pub use spearman::{spearman, spearman_with, CorrelationCell, SpearmanOptions};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::metrics::{Metric, MetricVector};

/// Per-generator mean metric values, in [`Metric::ALL`] order.
pub type MetricMeans = [f64; 14];

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("no records for generator {0:?}")]
    MissingGenerator(String),
    #[error("generator sets differ: missing {missing:?}, unexpected {extra:?}")]
    GeneratorMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },
    #[error("duplicate sample index {sample} for generator {generator:?}")]
    DuplicateSample { generator: String, sample: u32 },
    #[error("empty sample set")]
    Empty,
}

/// One settlement evaluation keyed by (generator, sample).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub generator: String,
    pub sample: u32,
    pub vector: MetricVector,
}

/// All evaluated samples of an experiment, grouped by generator.
#[derive(Debug, Clone)]
pub struct SampleSet {
    rows: Vec<SampleRow>,
}

impl SampleSet {
    /// Rows must be non-empty and (generator, sample) pairs unique.
    pub fn new(rows: Vec<SampleRow>) -> Result<Self, StatsError> {
        if rows.is_empty() {
            return Err(StatsError::Empty);
        }
        let mut seen: BTreeMap<(&str, u32), ()> = BTreeMap::new();
        for row in &rows {
            if seen.insert((row.generator.as_str(), row.sample), ()).is_some() {
                return Err(StatsError::DuplicateSample {
                    generator: row.generator.clone(),
                    sample: row.sample,
                });
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[SampleRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Distinct generator ids, sorted.
    pub fn generators(&self) -> Vec<&str> {
        let mut gens: Vec<&str> = self.rows.iter().map(|r| r.generator.as_str()).collect();
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    /// Pooled metric values in row order.
    pub fn values(&self, metric: Metric) -> Vec<f64> {
        self.rows.iter().map(|r| r.vector.value(metric)).collect()
    }

    /// Rows grouped by generator, generators sorted, row order preserved
    /// within each group.
    pub fn by_generator(&self) -> BTreeMap<&str, Vec<&SampleRow>> {
        let mut map: BTreeMap<&str, Vec<&SampleRow>> = BTreeMap::new();
        for row in &self.rows {
            map.entry(row.generator.as_str()).or_default().push(row);
        }
        map
    }

    /// Per-generator mean vectors, e.g. as correlation input.
    pub fn generator_means(&self) -> BTreeMap<String, MetricMeans> {
        self.by_generator()
            .into_iter()
            .map(|(gen, rows)| {
                let mut means = [0.0f64; 14];
                for (i, metric) in Metric::ALL.into_iter().enumerate() {
                    means[i] = rows.iter().map(|r| r.vector.value(metric)).sum::<f64>()
                        / rows.len() as f64;
                }
                (gen.to_string(), means)
            })
            .collect()
    }
}
