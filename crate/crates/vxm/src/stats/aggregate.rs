use crate::metrics::Metric;

use super::SampleSet;

/// Mean, median, sample variance (n−1) and standard deviation of one metric
/// for one generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    pub median: f64,
    pub variance: f64,
    pub std_dev: f64,
    pub n: usize,
}

fn summarize(values: &[f64]) -> SummaryStats {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    // Single sample: variance 0 by convention, flagged by the caller.
    let variance = if n < 2 {
        0.0
    } else {
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64
    };
    SummaryStats {
        mean,
        median,
        variance,
        std_dev: variance.sqrt(),
        n,
    }
}

/// Summary of all 14 metrics, in [`Metric::ALL`] order.
#[derive(Debug, Clone)]
pub struct GeneratorSummary {
    pub generator: String,
    pub stats: [SummaryStats; 14],
}

impl GeneratorSummary {
    pub fn get(&self, metric: Metric) -> &SummaryStats {
        let idx = Metric::ALL.iter().position(|m| *m == metric).unwrap();
        &self.stats[idx]
    }
}

/// Per-generator summaries plus the pooled "Global" summary computed over
/// all rows (not the mean of per-generator means — with unequal sample
/// counts those differ).
#[derive(Debug, Clone)]
pub struct AggregateReport {
    pub per_generator: Vec<GeneratorSummary>,
    pub global: GeneratorSummary,
    pub warnings: Vec<String>,
}

pub fn aggregate(samples: &SampleSet) -> AggregateReport {
    let mut warnings = Vec::new();
    let mut per_generator = Vec::new();
    for (generator, rows) in samples.by_generator() {
        if rows.len() == 1 {
            warnings.push(format!(
                "generator {generator:?} has a single sample; variance reported as 0"
            ));
        }
        let stats = Metric::ALL.map(|metric| {
            let values: Vec<f64> = rows.iter().map(|r| r.vector.value(metric)).collect();
            summarize(&values)
        });
        per_generator.push(GeneratorSummary { generator: generator.to_string(), stats });
    }
    let global_stats = Metric::ALL.map(|metric| summarize(&samples.values(metric)));
    AggregateReport {
        per_generator,
        global: GeneratorSummary {
            generator: crate::io::GLOBAL_GENERATOR.to_string(),
            stats: global_stats,
        },
        warnings,
    }
}
