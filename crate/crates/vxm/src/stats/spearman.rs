use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::StatsError;

/// Spearman rank correlation with its two-sided p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationCell {
    pub rho: f64,
    pub p: f64,
    pub n: usize,
}

impl CorrelationCell {
    /// The significance cut-off used throughout the correlation tables.
    pub fn significant(&self) -> bool {
        self.p < 0.01
    }
}

/// Controls the permutation test. The seed makes Monte-Carlo p-values
/// reproducible; identical inputs always produce identical output.
#[derive(Debug, Clone, Copy)]
pub struct SpearmanOptions {
    pub seed: u64,
    pub mc_samples: u32,
}

impl Default for SpearmanOptions {
    fn default() -> Self {
        Self { seed: 0, mc_samples: 1_000_000 }
    }
}

/// Spearman rho with average-rank tie handling.
///
/// The two-sided p-value is computed by full enumeration of rank
/// permutations for n ≤ 8, by seeded Monte-Carlo permutation for n ≤ 10,
/// and by the t-approximation with n−2 degrees of freedom beyond.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<CorrelationCell, StatsError> {
    spearman_with(x, y, &SpearmanOptions::default())
}

pub fn spearman_with(
    x: &[f64],
    y: &[f64],
    opts: &SpearmanOptions,
) -> Result<CorrelationCell, StatsError> {
    let n = x.len();
    if y.len() != n {
        return Err(StatsError::InvalidArgument(format!(
            "length mismatch: {} vs {}",
            n,
            y.len()
        )));
    }
    if n < 3 {
        return Err(StatsError::InvalidArgument(
            "spearman needs at least 3 observations".to_string(),
        ));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(StatsError::InvalidArgument("non-finite observation".to_string()));
    }
    let constant = |v: &[f64]| v.iter().all(|&e| e == v[0]);
    if constant(x) || constant(y) {
        return Err(StatsError::Degenerate("constant input vector".to_string()));
    }

    let rank_x = average_ranks(x);
    let rank_y = average_ranks(y);

    // Always permute the lexicographically larger rank vector, so
    // spearman(x, y) and spearman(y, x) run the identical computation.
    let swap = rank_x
        .iter()
        .zip(&rank_y)
        .find_map(|(a, b)| (a != b).then(|| a > b))
        .unwrap_or(false);
    let (fixed, permuted) = if swap { (&rank_y, &rank_x) } else { (&rank_x, &rank_y) };

    let mean = (n as f64 + 1.0) / 2.0; // both rank vectors sum to n(n+1)/2
    let da: Vec<f64> = fixed.iter().map(|r| r - mean).collect();
    let db: Vec<f64> = permuted.iter().map(|r| r - mean).collect();
    let ssa: f64 = da.iter().map(|d| d * d).sum();
    let ssb: f64 = db.iter().map(|d| d * d).sum();
    let denom = (ssa * ssb).sqrt();
    let numerator: f64 = da.iter().zip(&db).map(|(a, b)| a * b).sum();
    let rho = numerator / denom;

    let p = if n <= 8 {
        exact_permutation_p(&da, &db, numerator)
    } else if n <= 10 {
        monte_carlo_p(&da, &db, numerator, opts)
    } else {
        t_approximation_p(rho, n)
    };

    Ok(CorrelationCell { rho, p, n: x.len() })
}

/// Average ranks, 1-based; ties share the mean of their positions.
pub(crate) fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // Positions i+1 ..= j share the average rank.
        let rank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = rank;
        }
        i = j;
    }
    ranks
}

/// Comparisons run on the permutation numerator; the denominator is
/// invariant under permutation. The slack absorbs summation-order noise,
/// far below the 0.25 quantum of rank products.
const NUMERATOR_SLACK: f64 = 1e-9;

fn exact_permutation_p(da: &[f64], db: &[f64], observed: f64) -> f64 {
    let threshold = observed.abs() - NUMERATOR_SLACK;
    let mut perm: Vec<f64> = db.to_vec();
    let mut hits = 0u64;
    let mut total = 0u64;
    // Heap's algorithm, iterative.
    let n = perm.len();
    let mut counters = vec![0usize; n];
    let mut tally = |p: &[f64]| {
        let num: f64 = da.iter().zip(p).map(|(a, b)| a * b).sum();
        total += 1;
        if num.abs() >= threshold {
            hits += 1;
        }
    };
    tally(&perm);
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            tally(&perm);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    hits as f64 / total as f64
}

fn monte_carlo_p(da: &[f64], db: &[f64], observed: f64, opts: &SpearmanOptions) -> f64 {
    let threshold = observed.abs() - NUMERATOR_SLACK;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut perm: Vec<f64> = db.to_vec();
    let mut hits = 0u64;
    for _ in 0..opts.mc_samples {
        perm.shuffle(&mut rng);
        let num: f64 = da.iter().zip(&perm).map(|(a, b)| a * b).sum();
        if num.abs() >= threshold {
            hits += 1;
        }
    }
    // Add-one correction keeps p in (0, 1].
    (hits + 1) as f64 / (opts.mc_samples as f64 + 1.0)
}

fn t_approximation_p(rho: f64, n: usize) -> f64 {
    let df = (n - 2) as f64;
    let denom = 1.0 - rho * rho;
    if denom <= 0.0 {
        return f64::MIN_POSITIVE;
    }
    let t = rho.abs() * (df / denom).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("valid degrees of freedom");
    (2.0 * dist.cdf(-t)).clamp(f64::MIN_POSITIVE, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_monotone_is_exactly_one() {
        let x: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| v * v).collect();
        let cell = spearman(&x, &y).unwrap();
        assert_eq!(cell.rho, 1.0);
        assert!(cell.p < 0.01, "p = {}", cell.p);
    }

    #[test]
    fn reversed_is_exactly_minus_one() {
        let x: Vec<f64> = (1..=7).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().rev().copied().collect();
        let cell = spearman(&x, &y).unwrap();
        assert_eq!(cell.rho, -1.0);
    }

    #[test]
    fn tied_data_matches_hand_ranked_oracle() {
        // x = {1,2,2,3} → ranks {1, 2.5, 2.5, 4}; y = {1,3,2,4}.
        // Pearson of the rank vectors is sqrt(0.9).
        let cell = spearman(&[1.0, 2.0, 2.0, 3.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((cell.rho - 0.9f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn symmetric_in_arguments() {
        let x = [3.0, 1.0, 4.0, 1.5, 9.0, 2.6, 5.3, 5.8, 9.7, 9.3];
        let y = [2.0, 7.0, 1.0, 8.0, 2.8, 1.8, 2.8, 4.5, 9.0, 4.0];
        let a = spearman(&x, &y).unwrap();
        let b = spearman(&y, &x).unwrap();
        assert_eq!(a.rho, b.rho);
        assert_eq!(a.p, b.p);
    }

    #[test]
    fn monotone_transform_invariance() {
        let x = [0.3, -1.0, 4.0, 1.5, 0.9, 2.6, -5.3, 5.8];
        let y = [2.0, 7.0, 1.0, 8.0, 2.8, 1.8, 2.8, 4.5];
        let base = spearman(&x, &y).unwrap();
        let exp_x: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        let transformed = spearman(&exp_x, &y).unwrap();
        assert_eq!(base.rho, transformed.rho);
        assert_eq!(base.p, transformed.p);
    }

    #[test]
    fn constant_vector_is_degenerate() {
        let err = spearman(&[1.0, 1.0, 1.0, 1.0], &[1.0, 2.0, 3.0, 4.0]).unwrap_err();
        assert!(matches!(err, StatsError::Degenerate(_)));
    }

    #[test]
    fn exact_p_for_small_n_counts_permutations() {
        // n = 3, perfect monotone: permutations of ranks {1,2,3} give
        // numerators with |num| = |obs| for identity and reversal: p = 1/3.
        let cell = spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]).unwrap();
        assert!((cell.p - 2.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn t_approximation_used_beyond_ten() {
        let x: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let y: Vec<f64> = (0..20).map(|i| (i as f64) + ((i % 3) as f64) * 4.0).collect();
        let cell = spearman(&x, &y).unwrap();
        assert!(cell.p > 0.0 && cell.p <= 1.0);
        assert!(cell.rho > 0.5);
    }

    #[test]
    fn p_monotone_in_rho_magnitude_at_fixed_n() {
        // Stronger monotone association → smaller p, same n.
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let strong: Vec<f64> = x.clone();
        let weak: Vec<f64> = vec![3.0, 1.0, 4.0, 1.5, 9.0, 2.6, 5.3, 5.8, 9.7, 0.3];
        let p_strong = spearman(&x, &strong).unwrap();
        let p_weak = spearman(&x, &weak).unwrap();
        assert!(p_strong.rho.abs() > p_weak.rho.abs());
        assert!(p_strong.p <= p_weak.p);
    }
}
