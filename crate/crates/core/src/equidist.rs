//! Exponential sums, discrepancies and the Erdős–Turán type bound.
//!
//! All counts are in absolute units: a discrepancy is
//! `|#{n : xₙ ∈ I} − Ṽ·μ(I)|`, not divided by the sample size.

use std::f64::consts::PI;

use num::{BigInt, BigRational, Complex, Zero};
use serde::Serialize;

use crate::families::{AngleSample, FamilyKind, TraceSample};
use crate::identities::chebyshev_t_all;
use crate::measures::{FourierMeasure, Interval};
use crate::{Error, Execution, Prime, Result};

const CHUNK: usize = 4096;

/// `Σₙ e(m xₙ)` for `m = 1..=M`, split into real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpSums {
    pub tilde_v: usize,
    pub cos_sums: Vec<f64>,
    pub sin_sums: Vec<f64>,
    /// Exact `Σ cos(2πm xₙ)` when computed from the traces.
    pub exact_cos: Option<Vec<BigRational>>,
}

impl ExpSums {
    pub fn max_harmonic(&self) -> usize {
        self.cos_sums.len()
    }

    /// `Σₙ e(m xₙ)` for `1 ≤ m ≤ M`.
    pub fn sum(&self, m: usize) -> Complex<f64> {
        Complex::new(self.cos_sums[m - 1], self.sin_sums[m - 1])
    }

    /// Attaches exact cosine sums computed from the source traces. A doubled
    /// sample contributes each trace twice since `cos 2πm(1−x) = cos 2πmx`.
    pub fn with_exact(mut self, traces: &TraceSample, doubled: bool) -> Self {
        let mut exact = exact_cos_sums(traces, self.max_harmonic());
        if doubled {
            let two = BigRational::from_integer(BigInt::from(2));
            for v in exact.iter_mut() {
                *v *= &two;
            }
        }
        self.exact_cos = Some(exact);
        self
    }
}

pub fn exp_sums(sample: &AngleSample, max_m: usize) -> Result<ExpSums> {
    exp_sums_with(sample, max_m, Execution::default())
}

/// Float exponential sums. Chunks of the sample are summed independently and
/// the partials are added in chunk order, so the result does not depend on
/// the execution mode.
pub fn exp_sums_with(sample: &AngleSample, max_m: usize, exec: Execution) -> Result<ExpSums> {
    if max_m == 0 {
        return Err(Error::OutOfRange { name: "M", value: 0, expected: "M >= 1" });
    }
    let partials = exec.map_chunks(&sample.x, CHUNK, |chunk| {
        let mut c = vec![0.0; max_m];
        let mut s = vec![0.0; max_m];
        for &x in chunk {
            let w = 2.0 * PI * x;
            for m in 0..max_m {
                let (sn, cs) = ((m + 1) as f64 * w).sin_cos();
                c[m] += cs;
                s[m] += sn;
            }
        }
        (c, s)
    });
    let mut cos_sums = vec![0.0; max_m];
    let mut sin_sums = vec![0.0; max_m];
    for (c, s) in partials {
        for m in 0..max_m {
            cos_sums[m] += c[m];
            sin_sums[m] += s[m];
        }
    }
    Ok(ExpSums { tilde_v: sample.tilde_v(), cos_sums, sin_sums, exact_cos: None })
}

/// Exact `Σₙ cos(2mθₙ)` for `m = 1..=M` over the traces of `sample`.
///
/// With `a = 2√p cos θ`, `cos 2θ = a²/(2p) − 1` is rational and
/// `cos 2mθ = T_m(cos 2θ)`, so each term is evaluated by the Chebyshev
/// recurrence over ℚ. Equal traces are grouped first.
pub fn exact_cos_sums(sample: &TraceSample, max_m: usize) -> Vec<BigRational> {
    let two_p = BigInt::from(2 * sample.p.get());
    let mut sums = vec![BigRational::zero(); max_m];
    for (a, count) in sample.histogram() {
        let y = BigRational::new(BigInt::from(a * a) - &two_p, two_p.clone());
        let t = chebyshev_t_all(max_m as u32, &y);
        let count = BigRational::from_integer(count.into());
        for m in 1..=max_m {
            sums[m - 1] += &t[m] * &count;
        }
    }
    sums
}

/// Discrepancy of a sample on one interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub expected: f64,
    pub discrepancy: f64,
    pub relative: f64,
}

pub fn interval_discrepancy(sample: &AngleSample, interval: &Interval, mu: &FourierMeasure) -> DiscrepancyReport {
    let count = sample.x.iter().filter(|&&x| interval.contains(x)).count();
    let n = sample.tilde_v() as f64;
    let expected = n * mu.mass(interval);
    let discrepancy = (count as f64 - expected).abs();
    DiscrepancyReport {
        lo: interval.lo,
        hi: interval.hi,
        count,
        expected,
        discrepancy,
        relative: if n > 0.0 { discrepancy / n } else { 0.0 },
    }
}

/// Suprema of the discrepancy over all prefixes `[0, u)` (star) and over all
/// subintervals (extreme), in count units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupDiscrepancy {
    pub star: f64,
    pub extreme: f64,
}

/// Star and extreme discrepancy from the sorted probability-transformed
/// sample `y_(i) = F(x_(i))`:
/// `D⁺ = max(i/N − y_(i))`, `D⁻ = max(y_(i) − (i−1)/N)`,
/// `star = N·max(D⁺, D⁻)`, `extreme = N·(D⁺ + D⁻)`.
pub fn star_and_extreme_discrepancy(sample: &AngleSample, mu: &FourierMeasure) -> Result<SupDiscrepancy> {
    if sample.x.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut y: Vec<f64> = sample.x.iter().map(|&x| mu.cdf(x)).collect();
    y.sort_by(f64::total_cmp);
    Ok(sorted_discrepancy(&y))
}

pub(crate) fn sorted_discrepancy(sorted_cdf: &[f64]) -> SupDiscrepancy {
    let n = sorted_cdf.len() as f64;
    let (mut d_plus, mut d_minus) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (i, &y) in sorted_cdf.iter().enumerate() {
        d_plus = d_plus.max((i + 1) as f64 / n - y);
        d_minus = d_minus.max(y - i as f64 / n);
    }
    SupDiscrepancy { star: n * d_plus.max(d_minus), extreme: n * (d_plus + d_minus) }
}

/// Erdős–Turán type bound
/// `Ṽ‖μ‖/(M+1) + Σ_{m≤M} (1/(M+1) + min(|I|, 1/(πm))) · |Σₙ e(mxₙ) − Ṽc_m|`
/// compared with a measured discrepancy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ETBoundReport {
    #[serde(rename = "M")]
    pub m: usize,
    pub interval_len: f64,
    pub bound: f64,
    pub term_main: f64,
    pub term_sum: f64,
    pub measured: f64,
    pub satisfied: bool,
}

pub fn et_bound(sums: &ExpSums, mu: &FourierMeasure, interval_len: f64, measured: f64) -> ETBoundReport {
    let big_m = sums.max_harmonic();
    let v = sums.tilde_v as f64;
    let inv = 1.0 / (big_m + 1) as f64;
    let term_main = v * mu.sup_norm() * inv;
    let term_sum = (1..=big_m)
        .map(|m| {
            let weight = inv + interval_len.min(1.0 / (PI * m as f64));
            let dev = sums.sum(m) - mu.fourier(m as i64) * v;
            weight * dev.norm()
        })
        .sum::<f64>();
    let bound = term_main + term_sum;
    ETBoundReport { m: big_m, interval_len, bound, term_main, term_sum, measured, satisfied: measured <= bound }
}

/// Truncation point for the bound: `⌊(3 − 3/4)/6 · ln Ṽ⌋` for the family of
/// all curves and `⌊p^{1/4}⌋` for one-parameter families, at least 1.
pub fn optimal_m(kind: &FamilyKind, tilde_v: usize, p: Prime) -> Result<usize> {
    if tilde_v < 2 {
        return Err(Error::OutOfRange { name: "tilde_v", value: tilde_v as i64, expected: ">= 2" });
    }
    let m = match kind {
        FamilyKind::AllCurves => ((3.0 - 0.75) / 6.0 * (tilde_v as f64).ln()).floor() as usize,
        FamilyKind::OneParam(_) => fourth_root_floor(p.get()) as usize,
    };
    Ok(m.max(1))
}

fn fourth_root_floor(n: u64) -> u64 {
    let mut r = (n as f64).powf(0.25) as u64;
    while (r + 1).checked_pow(4).is_some_and(|v| v <= n) {
        r += 1;
    }
    while r.checked_pow(4).is_none_or(|v| v > n) {
        r -= 1;
    }
    r
}

/// Fixed probe set: `[0, k/10)` and `[k/20, 1)` for `k = 1..=10`.
pub fn probe_intervals() -> Vec<Interval> {
    let prefixes = (1..=10).map(|k| Interval { lo: 0.0, hi: k as f64 / 10.0 });
    let suffixes = (1..=10).map(|k| Interval { lo: k as f64 / 20.0, hi: 1.0 });
    prefixes.chain(suffixes).collect()
}
