//! Log-domain arithmetic helpers and streaming accumulators.

/// `ln(exp(a) + exp(b))` without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a > b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

/// `ln(sum(exp(values)))` via a max-subtract transform.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let mut acc = LogSumExp::new();
    for &v in values {
        acc.add(v);
    }
    acc.value()
}

/// `ln(1 + exp(x))`, stable for large positive and negative `x`.
pub(crate) fn ln_one_plus_exp(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// `ln(2 cosh j)`, stable for large `|j|`.
pub(crate) fn ln_two_cosh(j: f64) -> f64 {
    j.abs() + (-2.0 * j.abs()).exp().ln_1p()
}

/// `ln(2 sinh j)` for `j >= 0`; negative infinity at `j = 0`.
///
/// `2 sinh j = exp(j) (1 - exp(-2j))` with the second factor computed by
/// `expm1`, which keeps full relative precision for small `j`.
pub(crate) fn ln_two_sinh(j: f64) -> f64 {
    debug_assert!(j >= 0.0);
    j + (-(-2.0 * j).exp_m1()).ln()
}

/// `ln(tanh j)` for `j >= 0`; negative infinity at `j = 0`.
pub(crate) fn ln_tanh(j: f64) -> f64 {
    debug_assert!(j >= 0.0);
    if j < 1.0 {
        // tanh j = (1 - exp(-2j)) / (1 + exp(-2j)), expm1 form for small j
        (-(-2.0 * j).exp_m1()).ln() - (-2.0 * j).exp().ln_1p()
    } else {
        // tanh j = 1 - 2 / (exp(2j) + 1), ln_1p form for large j
        (-2.0 / ((2.0 * j).exp() + 1.0)).ln_1p()
    }
}

/// Streaming log-sum-exp with a running maximum.
#[derive(Debug, Clone)]
pub struct LogSumExp {
    max: f64,
    /// Sum of `exp(v - max)` over everything added so far.
    sum: f64,
}

impl LogSumExp {
    pub fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }

    pub fn add(&mut self, value: f64) {
        debug_assert!(!value.is_nan());
        if value == f64::NEG_INFINITY {
            return;
        }
        if value <= self.max {
            self.sum += (value - self.max).exp();
        } else {
            let rescale = if self.max == f64::NEG_INFINITY {
                0.0
            } else {
                (self.max - value).exp()
            };
            self.sum = self.sum * rescale + 1.0;
            self.max = value;
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

impl Default for LogSumExp {
    fn default() -> Self {
        Self::new()
    }
}

/// Accumulates log-weights together with the second moment needed for the
/// empirical chi-square and the delta-method standard error.
///
/// Weights are kept max-normalized: `sum` and `sum_sq` hold the first and
/// second moments of `exp(lw - max_log)`. Merging two accumulators is exact
/// in the same sense as inserting, so per-chunk partials combined in a fixed
/// order give bit-identical results for any worker count.
#[derive(Debug, Clone)]
pub(crate) struct WeightAccumulator {
    pub(crate) count: u64,
    max_log: f64,
    sum: f64,
    sum_sq: f64,
}

impl WeightAccumulator {
    pub(crate) fn new() -> Self {
        Self {
            count: 0,
            max_log: f64::NEG_INFINITY,
            sum: 0.0,
            sum_sq: 0.0,
        }
    }

    pub(crate) fn insert(&mut self, log_weight: f64) {
        debug_assert!(!log_weight.is_nan());
        self.count += 1;
        if log_weight == f64::NEG_INFINITY {
            return;
        }
        if log_weight <= self.max_log {
            let v = (log_weight - self.max_log).exp();
            self.sum += v;
            self.sum_sq += v * v;
        } else {
            let rescale = if self.max_log == f64::NEG_INFINITY {
                0.0
            } else {
                (self.max_log - log_weight).exp()
            };
            self.sum = self.sum * rescale + 1.0;
            self.sum_sq = self.sum_sq * rescale * rescale + 1.0;
            self.max_log = log_weight;
        }
    }

    /// Combines `other` into `self`; insertion order within each side is
    /// already fixed, so the merge only has to pick the common scale.
    pub(crate) fn merge(&mut self, other: &WeightAccumulator) {
        self.count += other.count;
        if other.max_log == f64::NEG_INFINITY {
            return;
        }
        if other.max_log <= self.max_log {
            let rescale = (other.max_log - self.max_log).exp();
            self.sum += other.sum * rescale;
            self.sum_sq += other.sum_sq * rescale * rescale;
        } else {
            let rescale = if self.max_log == f64::NEG_INFINITY {
                0.0
            } else {
                (self.max_log - other.max_log).exp()
            };
            self.sum = self.sum * rescale + other.sum;
            self.sum_sq = self.sum_sq * rescale * rescale + other.sum_sq;
            self.max_log = other.max_log;
        }
    }

    /// `ln(mean(w))` over all inserted weights.
    pub(crate) fn log_mean(&self) -> f64 {
        if self.count == 0 || self.max_log == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        self.max_log + (self.sum / self.count as f64).ln()
    }

    /// Squared coefficient of variation of the weights with the unbiased
    /// variance estimate; identical for max-normalized and raw weights.
    pub(crate) fn chi_square(&self) -> f64 {
        if self.count < 2 || self.sum == 0.0 {
            return 0.0;
        }
        let n = self.count as f64;
        let mean = self.sum / n;
        let variance = ((self.sum_sq - self.sum * mean) / (n - 1.0)).max(0.0);
        variance / (mean * mean)
    }

    /// Delta-method standard error of `ln(mean(w))`.
    pub(crate) fn std_error_log(&self) -> f64 {
        (self.chi_square() / self.count as f64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn log_add_exp_matches_naive_in_range() {
        let naive = (0.5f64.exp() + 2.0f64.exp()).ln();
        assert_abs_diff_eq!(log_add_exp(0.5, 2.0), naive, epsilon = 1e-14);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 3.0), 3.0);
        assert_eq!(
            log_add_exp(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn log_add_exp_survives_overflow_range() {
        // ln(exp(1234) + exp(1232)) = 1234 + ln(1 + exp(-2))
        let expected = 1234.0 + (-2.0f64).exp().ln_1p();
        assert_abs_diff_eq!(log_add_exp(1234.0, 1232.0), expected, epsilon = 1e-12);
    }

    #[test]
    fn streaming_lse_matches_pairwise_fold() {
        let values = [-3.0, 0.2, 5.5, -700.0, 5.5, 1.0];
        let folded = values
            .iter()
            .fold(f64::NEG_INFINITY, |a, &b| log_add_exp(a, b));
        assert_abs_diff_eq!(log_sum_exp(&values), folded, epsilon = 1e-13);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(
            log_sum_exp(&[f64::NEG_INFINITY, f64::NEG_INFINITY]),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn stable_helpers_match_direct_formulas() {
        for &j in &[1e-3, 0.1, 1.0, 5.0, 20.0] {
            assert_abs_diff_eq!(
                ln_two_cosh(j),
                (2.0 * j.cosh()).ln(),
                epsilon = 1e-12 * ln_two_cosh(j).abs().max(1.0)
            );
            assert_abs_diff_eq!(
                ln_two_sinh(j),
                (2.0 * j.sinh()).ln(),
                epsilon = 1e-11 * ln_two_sinh(j).abs().max(1.0)
            );
            assert_abs_diff_eq!(ln_tanh(j), j.tanh().ln(), epsilon = 1e-12);
        }
        // far beyond cosh overflow
        assert_abs_diff_eq!(ln_two_cosh(800.0), 800.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ln_two_cosh(-800.0), 800.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ln_one_plus_exp(800.0), 800.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ln_one_plus_exp(-800.0), 0.0, epsilon = 1e-12);
        assert_eq!(ln_two_sinh(0.0), f64::NEG_INFINITY);
        assert_eq!(ln_tanh(0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn accumulator_identical_weights_have_exactly_zero_chi_square() {
        let mut acc = WeightAccumulator::new();
        for _ in 0..1000 {
            acc.insert(-3.25);
        }
        assert_eq!(acc.chi_square(), 0.0);
        assert_eq!(acc.std_error_log(), 0.0);
        assert_abs_diff_eq!(acc.log_mean(), -3.25, epsilon = 1e-13);
    }

    #[test]
    fn accumulator_matches_direct_moments() {
        let lw = [-0.3, -1.7, 0.0, -0.2, -2.4, -0.9, 0.0];
        let mut acc = WeightAccumulator::new();
        for &v in &lw {
            acc.insert(v);
        }
        let w: Vec<f64> = lw.iter().map(|v| v.exp()).collect();
        let n = w.len() as f64;
        let mean = w.iter().sum::<f64>() / n;
        let var = w.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert_abs_diff_eq!(acc.log_mean(), mean.ln(), epsilon = 1e-13);
        assert_abs_diff_eq!(acc.chi_square(), var / (mean * mean), epsilon = 1e-12);
    }

    #[test]
    fn accumulator_chunked_merge_agrees_with_sequential_insert() {
        let lw: Vec<f64> = (0..257).map(|i| -((i % 13) as f64) * 0.37).collect();
        let mut whole = WeightAccumulator::new();
        for &v in &lw {
            whole.insert(v);
        }
        let chunk_merge = |chunk_size: usize| {
            let mut merged = WeightAccumulator::new();
            for chunk in lw.chunks(chunk_size) {
                let mut part = WeightAccumulator::new();
                for &v in chunk {
                    part.insert(v);
                }
                merged.merge(&part);
            }
            merged
        };
        for chunk_size in [1, 10, 64, 100, 257] {
            let merged = chunk_merge(chunk_size);
            assert_eq!(merged.count, whole.count);
            assert_abs_diff_eq!(merged.log_mean(), whole.log_mean(), epsilon = 1e-13);
            assert_abs_diff_eq!(merged.chi_square(), whole.chi_square(), epsilon = 1e-12);
        }
        // identical chunking twice is bit-identical
        let a = chunk_merge(64);
        let b = chunk_merge(64);
        assert_eq!(a.log_mean().to_bits(), b.log_mean().to_bits());
        assert_eq!(a.chi_square().to_bits(), b.chi_square().to_bits());
    }

    #[test]
    fn accumulator_handles_all_zero_weights() {
        let mut acc = WeightAccumulator::new();
        acc.insert(f64::NEG_INFINITY);
        acc.insert(f64::NEG_INFINITY);
        assert_eq!(acc.log_mean(), f64::NEG_INFINITY);
        assert_eq!(acc.chi_square(), 0.0);
    }
}
