//! Monte-Carlo checks of the variation operators' output distributions.

use super::report::LemmaReport;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rng::RandomSource;
use crate::variation::{one_point_crossover, uniform_crossover, BitMutation};

/// Upper tail `P(X >= x)` of a chi-square variable with an even number of
/// degrees of freedom: `exp(-x/2) · sum_{i < df/2} (x/2)^i / i!`.
pub fn chi_square_sf(x: f64, df: usize) -> Result<f64> {
    if df == 0 || !df.is_multiple_of(2) {
        return Err(Error::Precondition(format!("closed-form tail needs even df, got {df}")));
    }
    let h = x / 2.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for i in 1..df / 2 {
        term *= h / i as f64;
        sum += term;
    }
    Ok((-h).exp() * sum)
}

/// Mean number of flipped bits over `samples` mutations of `0^n`.
pub fn mutation_mean_flips(n: usize, samples: u64, seed: u64) -> f64 {
    let mut rng = RandomSource::new(seed);
    let op = BitMutation::new(n);
    let x = BitString::zeros(n);
    let total: u64 = (0..samples).map(|_| op.mutate(&x, &mut rng).count_ones() as u64).sum();
    total as f64 / samples as f64
}

/// Chi-square statistic and p-value of the ones count of one-point crossover
/// of `1^n` with `0^n` against the uniform distribution on `0..=n`.
pub fn one_point_uniformity(n: usize, samples: u64, seed: u64) -> Result<(f64, f64)> {
    let mut rng = RandomSource::new(seed);
    let (y1, y2) = (BitString::ones(n), BitString::zeros(n));
    let mut counts = vec![0u64; n + 1];
    for _ in 0..samples {
        counts[one_point_crossover(&y1, &y2, &mut rng)?.count_ones()] += 1;
    }
    let expected = samples as f64 / (n + 1) as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    Ok((stat, chi_square_sf(stat, n)?))
}

/// Mean ones count of uniform crossover of `1^n` with `0^n`.
pub fn uniform_crossover_mean(n: usize, samples: u64, seed: u64) -> Result<f64> {
    let mut rng = RandomSource::new(seed);
    let (y1, y2) = (BitString::ones(n), BitString::zeros(n));
    let mut total = 0u64;
    for _ in 0..samples {
        total += uniform_crossover(&y1, &y2, &mut rng)?.count_ones() as u64;
    }
    Ok(total as f64 / samples as f64)
}

/// The three operator checks at their standard sizes and tolerances:
/// mean flips on `0^100` within `1 ± 0.05`, one-point cut uniform at
/// `n = 10` with p-value above `1e-3`, uniform-crossover mean at `n = 16`
/// within `8 ± 0.1`; `10^5` samples each.
pub fn verify_operators(seed: u64) -> Result<Vec<LemmaReport>> {
    const SAMPLES: u64 = 100_000;
    let mut out = Vec::new();

    let mean = mutation_mean_flips(100, SAMPLES, seed);
    let mut r = LemmaReport::new("mutation-mean-flips", format!("n=100 mean={mean:.4}"));
    r.expect((mean - 1.0).abs() <= 0.05, || format!("mean flips {mean:.4} outside 1 ± 0.05"));
    out.push(r);

    let (stat, p) = one_point_uniformity(10, SAMPLES, seed.wrapping_add(1))?;
    let mut r = LemmaReport::new("one-point-cut-uniform", format!("n=10 chi2={stat:.2} p={p:.3}"));
    r.expect(p > 1e-3, || format!("chi-square {stat:.3} with p-value {p:.2e} <= 1e-3"));
    out.push(r);

    let mean = uniform_crossover_mean(16, SAMPLES, seed.wrapping_add(2))?;
    let mut r = LemmaReport::new("uniform-crossover-mean", format!("n=16 mean={mean:.4}"));
    r.expect((mean - 8.0).abs() <= 0.1, || format!("mean ones {mean:.4} outside 8 ± 0.1"));
    out.push(r);
    Ok(out)
}
