//! The arcsine-Dirac model.
//!
//! `U` has law `½δ₀ + μ₁`, where `μ₁` is half the arcsine law on `[-2, 2]`
//! (density `1/(2π√(4-x²))`). `S_H = (U_1 + ... + U_H)/√H` for i.i.d. copies.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::{integrate, CompensatedSum};

/// Generator used for every Monte Carlo run. Seeded, with independent
/// streams selected by [`stream_rng`].
pub type ModelRng = ChaCha8Rng;

/// Samples per Monte Carlo block. Block `b` always uses stream `b`, so the
/// merged result does not depend on how blocks are spread over workers.
pub const MC_BLOCK_LEN: u64 = 1 << 16;

/// Absolute tolerance of the characteristic-function quadrature.
pub const CHAR_FN_TOLERANCE: f64 = 1e-10;

pub fn stream_rng(seed: u64, stream: u64) -> ModelRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One draw of `U`: zero with probability ½, else `2cos(πV)` with `V`
/// uniform on `(0, 1)`, which has the arcsine density on `(-2, 2)`.
pub fn sample_u<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.random::<bool>() {
        0.0
    } else {
        let v: f64 = rng.sample(Open01);
        2.0 * libm::cos(PI * v)
    }
}

pub fn sample_sh<R: Rng + ?Sized>(h: u64, rng: &mut R) -> f64 {
    assert!(h >= 1, "H must be positive");
    let total: f64 = (0..h).map(|_| sample_u(rng)).sum();
    total / libm::sqrt(h as f64)
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn binomial(n: u32, k: u32) -> BigUint {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `E(U^m)`: `1` for `m = 0`, else `δ_{2|m} C(m, m/2) / 2`.
pub fn exact_moment_u(m: u32) -> BigRational {
    if m == 0 {
        BigRational::one()
    } else if m % 2 == 1 {
        BigRational::zero()
    } else {
        ratio(binomial(m, m / 2), BigUint::from(2u32))
    }
}

/// `(k - 1)!!` for even `k`, `0` for odd `k`.
pub fn gaussian_moment(k: u32) -> BigUint {
    if k % 2 == 1 {
        return BigUint::zero();
    }
    (1..k).step_by(2).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// The moment bound `k!/(k/2)!` for even `k`.
pub fn moment_bound(k: u32) -> BigRational {
    assert!(k.is_multiple_of(2), "bound is stated for even k");
    ratio(factorial(k), factorial(k / 2))
}

/// Partitions of `total` into parts `<= max_part`, non-increasing.
fn for_each_partition(total: u32, max_part: u32, parts: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if total == 0 {
        f(parts);
        return;
    }
    for part in (1..=max_part.min(total)).rev() {
        parts.push(part);
        for_each_partition(total - part, part, parts, f);
        parts.pop();
    }
}

/// Exact `E(S_H^k)`.
///
/// The sum over compositions `(k_1, ..., k_H)` only sees all-even
/// compositions, so it is regrouped by the partition `λ` of `k/2` formed by
/// the non-zero halves `k_i/2`. A partition with `r` parts and part
/// multiplicities `m_j` is placed in `H!/((H-r)! Π m_j!)` ways, each
/// contributing `k! / Π (λ_i!)² / 2^r`.
pub fn exact_moment_sh(h: u64, k: u32) -> Result<BigRational> {
    if h == 0 {
        return Err(Error::InvalidArgument("H must be positive".into()));
    }
    if k % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let k_fact = factorial(k);
    let mut total = BigRational::zero();
    for_each_partition(k / 2, k / 2, &mut Vec::new(), &mut |parts| {
        let r = parts.len() as u64;
        if r > h {
            return;
        }
        let placements = (0..r).fold(BigUint::one(), |acc, i| acc * BigUint::from(h - i));
        let mut multiplicities = BigUint::one();
        let mut run = 1u32;
        for w in parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
                multiplicities *= BigUint::from(run);
            } else {
                run = 1;
            }
        }
        let halves = parts.iter().fold(BigUint::one(), |acc, &l| acc * factorial(l) * factorial(l));
        let num = placements * &k_fact;
        let den = multiplicities * halves * (BigUint::one() << r as usize);
        total += ratio(num, den);
    });
    let scale = num_traits::pow(BigUint::from(h), (k / 2) as usize);
    Ok(total / ratio(scale, BigUint::one()))
}

/// `E(e^{itU}) = ½ + ½ ∫_0^1 cos(2t cos(πv)) dv`; real-valued.
pub fn char_fn_u1(t: f64) -> Result<f64> {
    let pieces = libm::ceil(libm::fabs(t)).max(1.0) as usize;
    let integral = integrate(|v| libm::cos(2.0 * t * libm::cos(PI * v)), 0.0, 1.0, CHAR_FN_TOLERANCE, pieces)
        .ok_or(Error::QuadratureNotConverged { t })?;
    Ok(0.5 + 0.5 * integral)
}

/// `Φ_H(2πu) = E(e^{2πiu S_H}) = char_fn_u1(2πu/√H)^H`; real-valued.
pub fn char_fn_sh(u: f64, h: u64) -> Result<f64> {
    if h == 0 {
        return Err(Error::InvalidArgument("H must be positive".into()));
    }
    let single = char_fn_u1(2.0 * PI * u / libm::sqrt(h as f64))?;
    Ok(libm::pow(single, h as f64))
}

/// Largest `c` with `|Φ_H(2πu)| <= exp(-c u²)` on a uniform grid of
/// `points` values in `(0, √H/4]`.
pub fn fit_subgaussian_constant(h: u64, points: usize) -> Result<f64> {
    let top = libm::sqrt(h as f64) / 4.0;
    let mut best = f64::INFINITY;
    for i in 1..=points {
        let u = top * i as f64 / points as f64;
        let phi = libm::fabs(char_fn_sh(u, h)?);
        best = best.min(-libm::log(phi) / (u * u));
    }
    Ok(best)
}

/// Running power sums of a sample, for moments `1..=k_max` and their
/// standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTally {
    count: u64,
    powers: Vec<CompensatedSum>,
}

impl MomentTally {
    pub fn new(k_max: u32) -> Self {
        Self { count: 0, powers: vec![CompensatedSum::new(); 2 * k_max as usize] }
    }

    pub fn k_max(&self) -> u32 {
        (self.powers.len() / 2) as u32
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn record(&mut self, x: f64) {
        self.count += 1;
        let mut pow = 1.0;
        for acc in &mut self.powers {
            pow *= x;
            acc.add(pow);
        }
    }

    pub fn merge(&mut self, other: &MomentTally) {
        assert_eq!(self.powers.len(), other.powers.len());
        self.count += other.count;
        for (a, b) in self.powers.iter_mut().zip(&other.powers) {
            a.merge(b);
        }
    }

    fn raw(&self, j: u32) -> f64 {
        if j == 0 {
            1.0
        } else {
            self.powers[j as usize - 1].value() / self.count as f64
        }
    }

    /// Sample mean of `x^k`.
    pub fn moment(&self, k: u32) -> f64 {
        assert!(k <= self.k_max());
        self.raw(k)
    }

    /// Standard error of [`moment`](Self::moment), `√(Var(x^k)/N)`.
    pub fn stderr(&self, k: u32) -> f64 {
        assert!(k <= self.k_max());
        let m = self.raw(k);
        let var = (self.raw(2 * k) - m * m).max(0.0);
        libm::sqrt(var / self.count as f64)
    }
}

/// `(block index, length)` pairs covering `samples` draws.
pub fn mc_blocks(samples: u64) -> impl Iterator<Item = (u64, u64)> {
    let full = samples / MC_BLOCK_LEN;
    let rest = samples % MC_BLOCK_LEN;
    (0..full).map(|b| (b, MC_BLOCK_LEN)).chain((rest > 0).then_some((full, rest)))
}

pub fn mc_moment_block(h: u64, k_max: u32, seed: u64, block: u64, len: u64) -> MomentTally {
    let mut rng = stream_rng(seed, block);
    let mut tally = MomentTally::new(k_max);
    for _ in 0..len {
        tally.record(sample_sh(h, &mut rng));
    }
    tally
}

/// Sequential Monte Carlo moments of `S_H`.
pub fn monte_carlo_moments(h: u64, k_max: u32, samples: u64, seed: u64) -> MomentTally {
    let mut total = MomentTally::new(k_max);
    for (block, len) in mc_blocks(samples) {
        total.merge(&mc_moment_block(h, k_max, seed, block, len));
    }
    total
}

/// Hit counts of `S_H` in closed intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalTally {
    pub total: u64,
    pub hits: Vec<u64>,
}

impl IntervalTally {
    pub fn new(intervals: usize) -> Self {
        Self { total: 0, hits: vec![0; intervals] }
    }

    pub fn merge(&mut self, other: &IntervalTally) {
        self.total += other.total;
        for (a, b) in self.hits.iter_mut().zip(&other.hits) {
            *a += b;
        }
    }

    pub fn probability(&self, i: usize) -> f64 {
        self.hits[i] as f64 / self.total as f64
    }

    /// Binomial standard error of [`probability`](Self::probability).
    pub fn stderr(&self, i: usize) -> f64 {
        let p = self.probability(i);
        libm::sqrt(p * (1.0 - p) / self.total as f64)
    }
}

pub fn mc_interval_block(h: u64, intervals: &[(f64, f64)], seed: u64, block: u64, len: u64) -> IntervalTally {
    let mut rng = stream_rng(seed, block);
    let mut tally = IntervalTally::new(intervals.len());
    for _ in 0..len {
        let s = sample_sh(h, &mut rng);
        tally.total += 1;
        for (hit, &(lo, hi)) in tally.hits.iter_mut().zip(intervals) {
            if lo <= s && s <= hi {
                *hit += 1;
            }
        }
    }
    tally
}

pub fn monte_carlo_intervals(h: u64, intervals: &[(f64, f64)], samples: u64, seed: u64) -> IntervalTally {
    let mut total = IntervalTally::new(intervals.len());
    for (block, len) in mc_blocks(samples) {
        total.merge(&mc_interval_block(h, intervals, seed, block, len));
    }
    total
}

/// Exact law of `U` on `[lo, hi]`: atom plus arcsine mass.
pub fn u_interval_probability(lo: f64, hi: f64) -> f64 {
    let cdf = |x: f64| {
        let x = x.clamp(-2.0, 2.0);
        0.25 + libm::asin(x / 2.0) / (2.0 * PI)
    };
    let atom = if lo <= 0.0 && 0.0 <= hi { 0.5 } else { 0.0 };
    atom + (cdf(hi) - cdf(lo)).max(0.0)
}
