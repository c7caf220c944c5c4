//! Discrete power-law fitting by maximum likelihood.
//!
//! For every candidate lower cutoff, the exponent is fit by maximizing the
//! discrete log-likelihood (normalized by the Hurwitz zeta function); the
//! cutoff minimizing the Kolmogorov-Smirnov distance between the empirical
//! and fitted tail wins, smaller cutoff on ties. The p-value comes from a
//! semi-parametric bootstrap: each replicate resamples the body empirically
//! and the tail from the fitted law, refits from scratch, and counts whether
//! its KS distance reaches the observed one.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::stream_rng;

/// Central moments of the full sample, computed as the reference fitting
/// tool does: unbiased variance, standardized third and fourth moments
/// (kurtosis as excess).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit {
    /// Scaling exponent, > 1.
    pub alpha: f64,
    /// Lower bound of the power-law regime.
    pub xmin: u64,
    /// Log-likelihood of the tail at (alpha, xmin).
    pub loglik: f64,
    /// KS distance between empirical and fitted tail CDFs.
    pub ks_statistic: f64,
    /// Bootstrap p-value; NaN when `bootstrap_n` is zero.
    pub p_value: f64,
    pub bootstrap_n: usize,
    pub moments: Moments,
}

/// Natural log of the Hurwitz zeta, sum of (a + k)^-s for k >= 0. Requires
/// s > 1 and a >= 1. Working in log space keeps huge exponents from
/// underflowing the normalization to zero.
pub fn ln_hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a >= 1.0);
    // Everything is computed relative to the leading term a^-s, so the
    // bracketed sum starts at 1 and stays representable. The burn-in is
    // extended until the expansion point dominates s, which keeps the
    // Bernoulli corrections convergent for any exponent the search visits.
    let burn_in = 16.0f64.max(4.0 * s - a).ceil();
    let mut bracket = 0.0f64;
    let mut k = 0.0f64;
    while k < burn_in {
        bracket += (s * (a / (a + k)).ln()).exp();
        k += 1.0;
    }
    let n = a + burn_in;
    let scale = (s * (a / n).ln()).exp(); // (a/n)^s
    bracket += scale * (n / (s - 1.0) + 0.5);
    // Bernoulli correction terms B2, B4, ..., B12.
    const BERNOULLI: [f64; 6] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
    ];
    let mut factor = s / n; // s (s+1) ... (s+order-2) * n^(-order+1)
    let mut factorial = 1.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let order = 2 * (j + 1);
        if j > 0 {
            factor *= (s + order as f64 - 3.0) * (s + order as f64 - 2.0) / (n * n);
            factorial *= (order - 1) as f64 * order as f64;
        } else {
            factorial = 2.0;
        }
        bracket += b * scale * factor / factorial;
    }
    -s * a.ln() + bracket.ln()
}

/// Hurwitz zeta itself; may overflow to infinity for s close to 1.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    ln_hurwitz_zeta(s, a).exp()
}

struct TailView<'a> {
    /// Distinct values >= xmin, ascending, with multiplicities.
    values: &'a [(u64, u64)],
    n: u64,
    sum_ln: f64,
    xmin: u64,
}

/// Tail log-likelihood at alpha.
fn loglik(tail: &TailView, alpha: f64) -> f64 {
    -(tail.n as f64) * ln_hurwitz_zeta(alpha, tail.xmin as f64) - alpha * tail.sum_ln
}

/// Maximizes the concave tail log-likelihood by golden-section search,
/// bracketing around the standard closed-form approximation.
fn mle_alpha(tail: &TailView) -> (f64, f64) {
    let n = tail.n as f64;
    let seed = 1.0 + n / (tail.sum_ln - n * (tail.xmin as f64 - 0.5).ln());
    const ALPHA_CAP: f64 = 1024.0;
    let mut lo: f64 = 1.0 + 1e-9;
    let mut hi: f64 = if seed.is_finite() && seed > 1.0 {
        (seed * 4.0).clamp(8.0, ALPHA_CAP)
    } else {
        64.0
    };
    // Grow the bracket until the maximum is interior. Near-degenerate tails
    // can push the maximizer arbitrarily high; the cap keeps those cheap,
    // and their KS distance rules them out of the cutoff scan regardless.
    while hi < ALPHA_CAP && loglik(tail, hi) > loglik(tail, hi - 1e-3) {
        hi = (hi * 2.0).min(ALPHA_CAP);
    }
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (loglik(tail, c), loglik(tail, d));
    while hi - lo > 1e-8 * hi.max(1.0) {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = loglik(tail, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = loglik(tail, d);
        }
    }
    let alpha = 0.5 * (lo + hi);
    (alpha, loglik(tail, alpha))
}

/// KS distance between the empirical tail CDF and the fitted CDF, evaluated
/// at the distinct tail values.
fn ks_distance(tail: &TailView, alpha: f64) -> f64 {
    let ln_z = ln_hurwitz_zeta(alpha, tail.xmin as f64);
    let mut cum = 0u64;
    let mut d = 0.0f64;
    for &(x, count) in tail.values {
        cum += count;
        let emp = cum as f64 / tail.n as f64;
        let fit = 1.0 - (ln_hurwitz_zeta(alpha, x as f64 + 1.0) - ln_z).exp();
        d = d.max((emp - fit).abs());
    }
    d
}

struct ScanResult {
    alpha: f64,
    xmin: u64,
    loglik: f64,
    ks: f64,
}

/// Scans every viable cutoff and keeps the one with minimal KS distance.
fn scan_xmin(distinct: &[(u64, u64)]) -> Result<ScanResult> {
    if distinct.len() < 2 {
        return Err(Error::Undefined(
            "degenerate sample: fewer than two distinct values".into(),
        ));
    }
    // Suffix counts and ln-sums per candidate start.
    let k = distinct.len();
    let mut suffix_n = vec![0u64; k + 1];
    let mut suffix_ln = vec![0.0f64; k + 1];
    for i in (0..k).rev() {
        let (x, c) = distinct[i];
        suffix_n[i] = suffix_n[i + 1] + c;
        suffix_ln[i] = suffix_ln[i + 1] + c as f64 * (x as f64).ln();
    }

    // A candidate needs at least two distinct tail values.
    let candidates: Vec<ScanResult> = (0..k - 1)
        .into_par_iter()
        .filter(|&i| suffix_n[i] >= 2)
        .map(|i| {
            let tail = TailView {
                values: &distinct[i..],
                n: suffix_n[i],
                sum_ln: suffix_ln[i],
                xmin: distinct[i].0,
            };
            let (alpha, ll) = mle_alpha(&tail);
            ScanResult {
                alpha,
                xmin: tail.xmin,
                loglik: ll,
                ks: ks_distance(&tail, alpha),
            }
        })
        .collect();

    candidates
        .into_iter()
        .min_by(|a, b| {
            a.ks.partial_cmp(&b.ks)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.xmin.cmp(&b.xmin))
        })
        .ok_or_else(|| Error::Undefined("no viable power-law cutoff".into()))
}

fn distinct_counts(sorted: &[u64]) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = Vec::new();
    for &x in sorted {
        match out.last_mut() {
            Some((v, c)) if *v == x => *c += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

fn moments(samples: &[u64]) -> Moments {
    let n = samples.len() as f64;
    let mean = samples.iter().map(|&x| x as f64).sum::<f64>() / n;
    let m2: f64 = samples.iter().map(|&x| (x as f64 - mean).powi(2)).sum();
    let variance = if samples.len() > 1 { m2 / (n - 1.0) } else { 0.0 };
    let std_dev = variance.sqrt();
    let (skewness, kurtosis) = if std_dev > 0.0 {
        let s3: f64 = samples.iter().map(|&x| ((x as f64 - mean) / std_dev).powi(3)).sum();
        let s4: f64 = samples.iter().map(|&x| ((x as f64 - mean) / std_dev).powi(4)).sum();
        (s3 / n, s4 / n - 3.0)
    } else {
        (0.0, 0.0)
    };
    Moments { mean, variance, std_dev, skewness, kurtosis }
}

/// Inversion sampler for the discrete power law P(X = x) prop. to x^-alpha,
/// x >= xmin. Exact within the cumulative table; the far tail falls back to
/// inverting the continuous approximation.
pub struct DiscreteSampler {
    alpha: f64,
    xmin: u64,
    cdf: Vec<f64>,
}

impl DiscreteSampler {
    pub fn new(alpha: f64, xmin: u64) -> DiscreteSampler {
        const TABLE_CAP: usize = 1 << 20;
        let ln_z = ln_hurwitz_zeta(alpha, xmin as f64);
        let mut cdf = Vec::with_capacity(1024);
        let mut cum = 0.0f64;
        let mut x = xmin;
        while cdf.len() < TABLE_CAP {
            cum += (-alpha * (x as f64).ln() - ln_z).exp();
            cdf.push(cum);
            if 1.0 - cum < 1e-12 {
                break;
            }
            x += 1;
        }
        DiscreteSampler { alpha, xmin, cdf }
    }

    pub fn draw(&self, rng: &mut impl Rng) -> u64 {
        let u: f64 = rng.random();
        match self.cdf.binary_search_by(|p| p.partial_cmp(&u).unwrap()) {
            Ok(i) | Err(i) if i < self.cdf.len() => self.xmin + i as u64,
            _ => {
                let t = (self.xmin as f64 - 0.5) * (1.0 - u).powf(-1.0 / (self.alpha - 1.0)) + 0.5;
                t.max(self.xmin as f64) as u64
            }
        }
    }
}

/// Draws `n` values from the discrete power law.
pub fn sample_discrete_power_law(
    alpha: f64,
    xmin: u64,
    n: usize,
    rng: &mut impl Rng,
) -> Vec<u64> {
    let sampler = DiscreteSampler::new(alpha, xmin);
    (0..n).map(|_| sampler.draw(rng)).collect()
}

fn bootstrap_p_value(
    samples: &[u64],
    observed: &ScanResult,
    bootstrap_n: usize,
    seed: u64,
) -> f64 {
    if bootstrap_n == 0 {
        return f64::NAN;
    }
    let body: Vec<u64> = samples.iter().copied().filter(|&x| x < observed.xmin).collect();
    let n = samples.len();
    let p_tail = 1.0 - body.len() as f64 / n as f64;
    let sampler = DiscreteSampler::new(observed.alpha, observed.xmin);
    let exceed: usize = (0..bootstrap_n as u64)
        .into_par_iter()
        .map(|replicate| {
            let mut rng = stream_rng(seed, replicate + 1);
            let mut synthetic = Vec::with_capacity(n);
            for _ in 0..n {
                if body.is_empty() || rng.random::<f64>() < p_tail {
                    synthetic.push(sampler.draw(&mut rng));
                } else {
                    synthetic.push(body[rng.random_range(0..body.len())]);
                }
            }
            synthetic.sort_unstable();
            let distinct = distinct_counts(&synthetic);
            match scan_xmin(&distinct) {
                Ok(r) if r.ks >= observed.ks => 1usize,
                _ => 0,
            }
        })
        .sum();
    exceed as f64 / bootstrap_n as f64
}

/// Fits a discrete power law to positive integer samples (isolated vertices
/// must already be excluded).
pub fn powerlaw_fit(samples: &[u64], bootstrap_n: usize, seed: u64) -> Result<PowerLawFit> {
    if samples.is_empty() {
        return Err(Error::Parameter("power-law fit needs samples".into()));
    }
    if samples.contains(&0) {
        return Err(Error::Parameter(
            "power-law samples must be positive; drop zero-degree vertices first".into(),
        ));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    let distinct = distinct_counts(&sorted);
    let best = scan_xmin(&distinct)?;
    let p_value = bootstrap_p_value(&sorted, &best, bootstrap_n, seed);
    Ok(PowerLawFit {
        alpha: best.alpha,
        xmin: best.xmin,
        loglik: best.loglik,
        ks_statistic: best.ks,
        p_value,
        bootstrap_n,
        moments: moments(samples),
    })
}
