use std::collections::BTreeMap;
use std::fmt;

use crate::metrics::Metric;

use super::scores::{HumanScores, ScoreCategory};
use super::spearman::{spearman_with, CorrelationCell, SpearmanOptions};
use super::{MetricMeans, StatsError};

/// Which pair of variable families to correlate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMode {
    MetricsVsScores,
    MetricsVsMetrics,
    ScoresVsScores,
}

impl TableMode {
    pub fn name(self) -> &'static str {
        match self {
            TableMode::MetricsVsScores => "metrics_vs_scores",
            TableMode::MetricsVsMetrics => "metrics_vs_metrics",
            TableMode::ScoresVsScores => "scores_vs_scores",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            TableMode::MetricsVsScores,
            TableMode::MetricsVsMetrics,
            TableMode::ScoresVsScores,
        ]
        .into_iter()
        .find(|m| m.name() == name)
    }
}

impl fmt::Display for TableMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Full grid of Spearman cells. Cells are `None` where one variable is
/// degenerate (constant across generators). `n` per cell is the number of
/// generators.
#[derive(Debug, Clone)]
pub struct CorrelationTable {
    pub mode: TableMode,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub cells: Vec<Vec<Option<CorrelationCell>>>,
}

impl CorrelationTable {
    /// (row, column, cell) triples in deterministic order. In the symmetric
    /// modes, only the strict upper triangle is yielded.
    pub fn entries(&self) -> Vec<(&str, &str, &Option<CorrelationCell>)> {
        let symmetric = matches!(
            self.mode,
            TableMode::MetricsVsMetrics | TableMode::ScoresVsScores
        );
        let mut out = Vec::new();
        for (i, row) in self.cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if symmetric && j <= i {
                    continue;
                }
                out.push((self.row_labels[i].as_str(), self.col_labels[j].as_str(), cell));
            }
        }
        out
    }
}

/// Correlate per-generator metric means against human score means (or
/// either family against itself). The generator sets must match exactly
/// when scores are involved.
pub fn correlation_table(
    means: &BTreeMap<String, MetricMeans>,
    scores: Option<&HumanScores>,
    mode: TableMode,
    opts: &SpearmanOptions,
) -> Result<CorrelationTable, StatsError> {
    let needs_scores = matches!(mode, TableMode::MetricsVsScores | TableMode::ScoresVsScores);
    let scores = match (needs_scores, scores) {
        (true, Some(s)) => Some(s),
        (true, None) => {
            return Err(StatsError::InvalidArgument(format!(
                "{mode} requires judge scores"
            )))
        }
        (false, _) => None,
    };

    // The generator axis: metric means where present, otherwise scores.
    let generators: Vec<String> = if matches!(mode, TableMode::ScoresVsScores) {
        scores.unwrap().generators().iter().map(|s| s.to_string()).collect()
    } else {
        means.keys().cloned().collect()
    };
    if let Some(scores) = scores {
        if !matches!(mode, TableMode::ScoresVsScores) {
            check_same_generators(&generators, scores)?;
        }
    }

    let metric_series = |metric: Metric| -> Vec<f64> {
        let idx = Metric::ALL.iter().position(|m| *m == metric).unwrap();
        generators.iter().map(|g| means[g][idx]).collect()
    };
    let score_series = |category: ScoreCategory| -> Vec<f64> {
        generators
            .iter()
            .map(|g| scores.unwrap().get(g).unwrap().value(category))
            .collect()
    };

    let (row_labels, col_labels, row_series, col_series): (
        Vec<String>,
        Vec<String>,
        Vec<Vec<f64>>,
        Vec<Vec<f64>>,
    ) = match mode {
        TableMode::MetricsVsScores => (
            Metric::ALL.iter().map(|m| m.name().to_string()).collect(),
            ScoreCategory::ALL.iter().map(|c| c.name().to_string()).collect(),
            Metric::ALL.iter().map(|&m| metric_series(m)).collect(),
            ScoreCategory::ALL.iter().map(|&c| score_series(c)).collect(),
        ),
        TableMode::MetricsVsMetrics => {
            let labels: Vec<String> = Metric::ALL.iter().map(|m| m.name().to_string()).collect();
            let series: Vec<Vec<f64>> = Metric::ALL.iter().map(|&m| metric_series(m)).collect();
            (labels.clone(), labels, series.clone(), series)
        }
        TableMode::ScoresVsScores => {
            let labels: Vec<String> =
                ScoreCategory::ALL.iter().map(|c| c.name().to_string()).collect();
            let series: Vec<Vec<f64>> =
                ScoreCategory::ALL.iter().map(|&c| score_series(c)).collect();
            (labels.clone(), labels, series.clone(), series)
        }
    };

    let mut cells = Vec::with_capacity(row_series.len());
    for row in &row_series {
        let mut line = Vec::with_capacity(col_series.len());
        for col in &col_series {
            match spearman_with(row, col, opts) {
                Ok(cell) => line.push(Some(cell)),
                Err(StatsError::Degenerate(_)) => line.push(None),
                Err(other) => return Err(other),
            }
        }
        cells.push(line);
    }
    Ok(CorrelationTable { mode, row_labels, col_labels, cells })
}

fn check_same_generators(generators: &[String], scores: &HumanScores) -> Result<(), StatsError> {
    let metric_side: Vec<&str> = generators.iter().map(|s| s.as_str()).collect();
    let score_side = scores.generators();
    if metric_side == score_side {
        return Ok(());
    }
    let missing: Vec<String> = metric_side
        .iter()
        .filter(|g| !score_side.contains(g))
        .map(|g| g.to_string())
        .collect();
    let extra: Vec<String> = score_side
        .iter()
        .filter(|g| !metric_side.contains(g))
        .map(|g| g.to_string())
        .collect();
    Err(StatsError::GeneratorMismatch { missing, extra })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::ScoreRecord;
    use crate::stats::overall_score;

    fn means_for(values: &[(&str, f64)]) -> BTreeMap<String, MetricMeans> {
        // Density column carries the payload; block type count gets a second
        // independent series so metric-vs-metric tables are interesting.
        values
            .iter()
            .enumerate()
            .map(|(i, (gen, v))| {
                let mut m = [0.0f64; 14];
                m[7] = *v;
                m[5] = ((i * 7) % 5) as f64;
                m[6] = 10.0 - *v;
                (gen.to_string(), m)
            })
            .collect()
    }

    fn scores_for(values: &[(&str, f64)]) -> HumanScores {
        let records: Vec<ScoreRecord> = values
            .iter()
            .map(|(gen, v)| ScoreRecord {
                generator: gen.to_string(),
                judge: "j".to_string(),
                year: 2020,
                adaptability: *v,
                functionality: 10.0 - *v,
                narrative: v / 2.0,
                aesthetic: 5.0,
            })
            .collect();
        overall_score(&records).unwrap()
    }

    fn ten_generators() -> Vec<(&'static str, f64)> {
        vec![
            ("g0", 1.0),
            ("g1", 4.0),
            ("g2", 2.5),
            ("g3", 8.0),
            ("g4", 3.3),
            ("g5", 9.1),
            ("g6", 0.5),
            ("g7", 6.6),
            ("g8", 7.2),
            ("g9", 5.0),
        ]
    }

    #[test]
    fn metric_identical_to_score_column_correlates_perfectly() {
        let data = ten_generators();
        let means = means_for(&data);
        let scores = scores_for(&data); // adaptability == density payload
        let table = correlation_table(
            &means,
            Some(&scores),
            TableMode::MetricsVsScores,
            &SpearmanOptions::default(),
        )
        .unwrap();
        let density_row = Metric::ALL
            .iter()
            .position(|m| *m == Metric::Density)
            .unwrap();
        let adaptability_col = 1;
        let cell = table.cells[density_row][adaptability_col].unwrap();
        assert_eq!(cell.rho, 1.0);
        assert_eq!(cell.n, 10);
        // Functionality is the reverse ordering.
        let functionality_col = 2;
        let cell = table.cells[density_row][functionality_col].unwrap();
        assert_eq!(cell.rho, -1.0);
    }

    #[test]
    fn constant_series_yields_empty_cell() {
        let data = ten_generators();
        let means = means_for(&data);
        let scores = scores_for(&data); // aesthetic is constant 5.0
        let table = correlation_table(
            &means,
            Some(&scores),
            TableMode::MetricsVsScores,
            &SpearmanOptions::default(),
        )
        .unwrap();
        let aesthetic_col = 4;
        assert!(table.cells.iter().all(|row| row[aesthetic_col].is_none()));
    }

    #[test]
    fn metrics_vs_metrics_is_symmetric() {
        let means = means_for(&ten_generators());
        let table = correlation_table(
            &means,
            None,
            TableMode::MetricsVsMetrics,
            &SpearmanOptions::default(),
        )
        .unwrap();
        for i in 0..table.cells.len() {
            for j in 0..table.cells.len() {
                match (&table.cells[i][j], &table.cells[j][i]) {
                    (Some(a), Some(b)) => {
                        assert_eq!(a.rho, b.rho);
                        assert_eq!(a.p, b.p);
                    }
                    (None, None) => {}
                    _ => panic!("asymmetric degeneracy at ({i}, {j})"),
                }
            }
        }
        // Upper-triangle iteration skips the diagonal.
        let entries = table.entries();
        assert_eq!(entries.len(), 14 * 13 / 2);
    }

    #[test]
    fn overall_correlates_positively_with_categories() {
        let data = ten_generators();
        let scores = scores_for(&data);
        let table = correlation_table(
            &BTreeMap::new(),
            Some(&scores),
            TableMode::ScoresVsScores,
            &SpearmanOptions::default(),
        )
        .unwrap();
        // overall vs adaptability and vs narrative: adaptability dominates
        // the overall for this construction.
        let overall_row = 0;
        let cell = table.cells[overall_row][1].unwrap();
        assert!(cell.rho > 0.0);
    }

    #[test]
    fn mismatched_generator_sets_rejected() {
        let means = means_for(&ten_generators());
        let mut short = ten_generators();
        short.pop();
        let scores = scores_for(&short);
        let err = correlation_table(
            &means,
            Some(&scores),
            TableMode::MetricsVsScores,
            &SpearmanOptions::default(),
        )
        .unwrap_err();
        match err {
            StatsError::GeneratorMismatch { missing, extra } => {
                assert_eq!(missing, vec!["g9".to_string()]);
                assert!(extra.is_empty());
            }
            other => panic!("unexpected error {other}"),
        }
    }
}
