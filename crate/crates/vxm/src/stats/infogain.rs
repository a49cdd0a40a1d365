use std::collections::BTreeMap;

use crate::metrics::Metric;

use super::{SampleSet, StatsError};

/// Mutual information between generator identity and the discretized metric
/// value, in bits. Ceiling is log2(number of generators).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoGain {
    pub bits: f64,
    pub bins: usize,
    /// All pooled values were identical; the gain is 0 by convention.
    pub degenerate: bool,
}

/// Default bin count: ⌊√N⌋ over the pooled sample count, at least 2.
pub fn default_bins(samples: usize) -> usize {
    ((samples as f64).sqrt().floor() as usize).max(2)
}

/// Discretize the pooled metric values into `bins` equal-frequency bins and
/// return I(G;B) = H(G) − H(G|B) over the joint (generator, bin) counts.
///
/// Equal values always land in the same bin, so the binning is invariant to
/// the order of rows and a constant-per-generator metric separates exactly.
pub fn information_gain(
    samples: &SampleSet,
    metric: Metric,
    bins: usize,
) -> Result<InfoGain, StatsError> {
    let generators = samples.generators();
    if generators.len() < 2 {
        return Err(StatsError::InvalidArgument(
            "information gain needs at least 2 generators".to_string(),
        ));
    }
    if bins < 2 {
        return Err(StatsError::InvalidArgument(
            "information gain needs at least 2 bins".to_string(),
        ));
    }
    let gen_index: BTreeMap<&str, usize> =
        generators.iter().enumerate().map(|(i, g)| (*g, i)).collect();

    let mut pairs: Vec<(f64, usize)> = samples
        .rows()
        .iter()
        .map(|r| (r.vector.value(metric), gen_index[r.generator.as_str()]))
        .collect();
    let total = pairs.len();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    if pairs.first().map(|p| p.0) == pairs.last().map(|p| p.0) {
        return Ok(InfoGain { bits: 0.0, bins, degenerate: true });
    }

    // Tie-aware equal-frequency binning: walk groups of equal value, closing
    // a bin once the cumulative count passes the next k·N/bins boundary.
    let mut joint: BTreeMap<(usize, usize), u64> = BTreeMap::new(); // (gen, bin)
    let mut bin = 0usize;
    let mut cum = 0usize;
    let mut i = 0usize;
    while i < total {
        let mut j = i;
        while j < total && pairs[j].0 == pairs[i].0 {
            j += 1;
        }
        for pair in &pairs[i..j] {
            *joint.entry((pair.1, bin)).or_insert(0) += 1;
        }
        cum += j - i;
        while bin + 1 < bins && (bin + 1) * total <= cum * bins {
            bin += 1;
        }
        i = j;
    }

    let n = total as f64;
    let mut gen_counts = vec![0u64; generators.len()];
    let mut bin_counts = vec![0u64; bins];
    for (&(g, b), &c) in &joint {
        gen_counts[g] += c;
        bin_counts[b] += c;
    }
    let entropy_of = |counts: &[u64]| -> f64 {
        counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.log2()
            })
            .sum()
    };
    let h_gen = entropy_of(&gen_counts);
    // H(G|B) = Σ_b P(b) · H(G | B = b).
    let mut h_cond = 0.0f64;
    for (b, &n_b) in bin_counts.iter().enumerate() {
        if n_b == 0 {
            continue;
        }
        let mut h_b = 0.0f64;
        for g in 0..generators.len() {
            if let Some(&c) = joint.get(&(g, b)) {
                let p = c as f64 / n_b as f64;
                h_b -= p * p.log2();
            }
        }
        h_cond += (n_b as f64 / n) * h_b;
    }
    Ok(InfoGain {
        bits: (h_gen - h_cond).max(0.0),
        bins,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::MetricVector;
    use crate::stats::SampleRow;

    fn row(generator: &str, sample: u32, value: f64) -> SampleRow {
        let mut values = [0.0f64; 14];
        values[7] = value; // density column carries the payload
        SampleRow {
            generator: generator.to_string(),
            sample,
            vector: MetricVector::from_values(values),
        }
    }

    #[test]
    fn perfectly_separated_generators_hit_the_ceiling() {
        let mut rows = Vec::new();
        for g in 0..10 {
            for s in 0..20 {
                rows.push(row(&format!("gen{g:02}"), s, g as f64));
            }
        }
        let set = SampleSet::new(rows).unwrap();
        let gain = information_gain(&set, Metric::Density, default_bins(set.len())).unwrap();
        assert_eq!(gain.bins, 14);
        assert!(
            (gain.bits - 3.321928094887362).abs() < 1e-12,
            "gain {}",
            gain.bits
        );
    }

    #[test]
    fn identical_values_have_zero_gain() {
        let mut rows = Vec::new();
        for g in 0..4 {
            for s in 0..5 {
                rows.push(row(&format!("g{g}"), s, 7.5));
            }
        }
        let set = SampleSet::new(rows).unwrap();
        let gain = information_gain(&set, Metric::Density, 4).unwrap();
        assert_eq!(gain.bits, 0.0);
        assert!(gain.degenerate);
    }

    #[test]
    fn two_disjoint_generators_give_one_bit() {
        let mut rows = Vec::new();
        for s in 0..10 {
            rows.push(row("low", s, s as f64));
            rows.push(row("high", s, 100.0 + s as f64));
        }
        let set = SampleSet::new(rows).unwrap();
        let gain = information_gain(&set, Metric::Density, 2).unwrap();
        assert_eq!(gain.bits, 1.0);
    }

    #[test]
    fn bounded_by_log2_generator_count() {
        let mut rows = Vec::new();
        for g in 0..3 {
            for s in 0..7 {
                rows.push(row(&format!("g{g}"), s, ((s * 13 + g * 7) % 5) as f64));
            }
        }
        let set = SampleSet::new(rows).unwrap();
        for bins in 2..8 {
            let gain = information_gain(&set, Metric::Density, bins).unwrap();
            assert!(gain.bits >= 0.0);
            assert!(gain.bits <= (3.0f64).log2() + 1e-12);
        }
    }

    #[test]
    fn preconditions_enforced() {
        let set = SampleSet::new((0..5).map(|s| row("only", s, s as f64)).collect()).unwrap();
        assert!(information_gain(&set, Metric::Density, 4).is_err());
        let set = SampleSet::new(vec![row("a", 0, 1.0), row("b", 0, 2.0)]).unwrap();
        assert!(information_gain(&set, Metric::Density, 1).is_err());
    }

    #[test]
    fn default_bin_rule() {
        assert_eq!(default_bins(200), 14);
        assert_eq!(default_bins(1), 2);
        assert_eq!(default_bins(100), 10);
    }
}
