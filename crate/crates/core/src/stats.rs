//! Distribution comparison against the standard Gaussian.
//!
//! Characteristic functions use the `e^{2πiuX}` convention throughout.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// `Φ(x) = ½ erfc(-x/√2)`.
///
/// `libm::erfc` is the fdlibm rational approximation (error below 1 ulp in
/// the relevant range), identical on every platform.
pub fn gaussian_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

pub fn gaussian_pdf(x: f64) -> f64 {
    libm::exp(-0.5 * x * x) / libm::sqrt(2.0 * PI)
}

/// `Φ(β) - Φ(α)`, computed from the tail nearer to the interval so mass far
/// out is not lost to cancellation.
pub fn gaussian_mass(alpha: f64, beta: f64) -> f64 {
    if alpha > 0.0 {
        gaussian_cdf(-alpha) - gaussian_cdf(-beta)
    } else {
        gaussian_cdf(beta) - gaussian_cdf(alpha)
    }
}

/// A non-empty, sorted sample without NaNs.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    sorted: Vec<f64>,
}

impl Sample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::NanInSample);
        }
        values.sort_by(f64::total_cmp);
        Ok(Self { sorted: values })
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec())
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// `F(x) = #{v <= x}/N`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.len() as f64
    }

    /// Left limit `F(x-) = #{v < x}/N`.
    pub fn cdf_left(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v < x) as f64 / self.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.len() - 1]
    }

    /// `N^(-1) Σ v^k`, compensated.
    pub fn moment(&self, k: u32) -> f64 {
        let acc: CompensatedSum = self.sorted.iter().map(|&v| libm::pow(v, k as f64)).collect();
        acc.value() / self.len() as f64
    }
}

/// `sup_x |F(x) - Φ(x)|`, evaluated on both sides of every jump.
pub fn ks_statistic(sample: &Sample) -> f64 {
    let n = sample.len() as f64;
    let s = sample.sorted();
    let mut sup = 0.0f64;
    let mut i = 0;
    while i < s.len() {
        let x = s[i];
        let mut j = i;
        while j < s.len() && s[j] == x {
            j += 1;
        }
        let phi = gaussian_cdf(x);
        sup = sup.max(phi - i as f64 / n).max(j as f64 / n - phi);
        i = j;
    }
    sup
}

fn check_interval(alpha: f64, beta: f64) -> Result<()> {
    if alpha.is_nan() || beta.is_nan() || alpha > beta {
        return Err(Error::BadInterval { alpha, beta });
    }
    Ok(())
}

/// Fraction of the sample in the closed interval `[α, β]`. Degenerate
/// intervals `α = β` are allowed.
pub fn interval_probability(sample: &Sample, alpha: f64, beta: f64) -> Result<f64> {
    check_interval(alpha, beta)?;
    Ok(sample.cdf(beta) - sample.cdf_left(alpha))
}

/// `N^(-1) Σ e^{2πiuv}`.
pub fn empirical_char_fn(sample: &Sample, u: f64) -> Complex64 {
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for &v in sample.sorted() {
        let (s, c) = libm::sincos(2.0 * PI * u * v);
        re.add(c);
        im.add(s);
    }
    let n = sample.len() as f64;
    Complex64::new(re.value() / n, im.value() / n)
}

/// Density-normalized histogram with uniform bins.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.bins() as f64
    }

    pub fn edges(&self, i: usize) -> (f64, f64) {
        let w = self.width();
        let left = self.lo + w * i as f64;
        let right = if i + 1 == self.bins() { self.hi } else { self.lo + w * (i + 1) as f64 };
        (left, right)
    }

    pub fn density(&self, i: usize) -> f64 {
        self.counts[i] as f64 / (self.total as f64 * self.width())
    }

    /// Standard Gaussian density at the centre of bin `i`, for overlays.
    pub fn gaussian_density(&self, i: usize) -> f64 {
        let (l, r) = self.edges(i);
        gaussian_pdf(0.5 * (l + r))
    }
}

/// Histogram over `[min, max]` of the sample (widened by ½ on each side
/// when the sample is constant).
pub fn make_histogram(sample: &Sample, bins: usize) -> Result<Histogram> {
    let (mut lo, mut hi) = (sample.min(), sample.max());
    if lo == hi {
        lo -= 0.5;
        hi += 0.5;
    }
    make_histogram_in(sample, bins, lo, hi)
}

/// Histogram over `[lo, hi]`; the last bin is closed on the right and
/// values outside the range are dropped from the counts but kept in `total`.
pub fn make_histogram_in(sample: &Sample, bins: usize, lo: f64, hi: f64) -> Result<Histogram> {
    if bins < 2 {
        return Err(Error::InvalidArgument(alloc::format!("need at least 2 bins, got {bins}")));
    }
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::BadInterval { alpha: lo, beta: hi });
    }
    let mut counts = alloc::vec![0u64; bins];
    let width = (hi - lo) / bins as f64;
    for &v in sample.sorted() {
        if v < lo || v > hi {
            continue;
        }
        let i = (((v - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    Ok(Histogram { lo, hi, counts, total: sample.len() as u64 })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IntervalEntry {
    pub alpha: f64,
    pub beta: f64,
    pub empirical: f64,
    pub gaussian: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CharFnEntry {
    pub u: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DistributionReport {
    pub sample_size: usize,
    pub ks: f64,
    pub intervals: Vec<IntervalEntry>,
    /// `M_k` for `k = 0..=k_max`.
    pub moments: Vec<f64>,
    pub char_fn: Vec<CharFnEntry>,
}

pub fn distribution_report(
    sample: &Sample,
    intervals: &[(f64, f64)],
    k_max: u32,
    u_grid: &[f64],
) -> Result<DistributionReport> {
    let intervals = intervals
        .iter()
        .map(|&(alpha, beta)| {
            Ok(IntervalEntry {
                alpha,
                beta,
                empirical: interval_probability(sample, alpha, beta)?,
                gaussian: gaussian_mass(alpha, beta),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let char_fn = u_grid
        .iter()
        .map(|&u| {
            let z = empirical_char_fn(sample, u);
            CharFnEntry { u, re: z.re, im: z.im }
        })
        .collect();
    Ok(DistributionReport {
        sample_size: sample.len(),
        ks: ks_statistic(sample),
        intervals,
        moments: (0..=k_max).map(|k| sample.moment(k)).collect(),
        char_fn,
    })
}
