//! Convergence drivers: moment expansion, the short-sum CLT, interval
//! probabilities with an explicit error shape, and the model's Berry-Esseen
//! behaviour.
//!
//! Each driver records raw numbers first and derives its verdicts from them
//! with a pure function, so a saved report can be re-judged bit-exactly.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;

use crate::constants::FrozenConstants;
use crate::error::{Error, Result};
use crate::exec::{self, Executor};
use crate::kloosterman::{Evaluator, TableBuilder, TableScope};
use crate::model::exact_moment_sh;
use crate::modmath::PrimePowerModulus;
use crate::shortsum::{empirical_moment, make_shift_set, EnsembleResult, ShiftSet, ShiftSpec};
use crate::stats::{gaussian_mass, interval_probability, ks_statistic, Sample};

/// The exponent pair `(α_n, β_n)` of the quantitative CLT.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaN {
    pub n: u32,
    pub beta: Ratio<u64>,
    pub alpha: u32,
}

impl BetaN {
    pub fn new(n: u32) -> Result<Self> {
        if !(2..=63).contains(&n) {
            return Err(Error::InvalidArgument(format!("β_n needs 2 <= n <= 63, got {n}")));
        }
        let (beta, alpha) = if n <= 5 { (Ratio::new(1, 2), 1) } else { (Self::case_value(n), 0) };
        Ok(Self { n, beta, alpha })
    }

    /// `4(n-1)/2^n`, the second branch of the definition.
    pub fn case_value(n: u32) -> Ratio<u64> {
        Ratio::new(4 * (n as u64 - 1), 1u64 << n)
    }

    pub fn beta_f64(&self) -> f64 {
        *self.beta.numer() as f64 / *self.beta.denom() as f64
    }
}

/// One `(p, n, I)` grid point.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GridPoint {
    pub p: u64,
    pub n: u32,
    #[cfg_attr(feature = "serde", serde(serialize_with = "display_spec"))]
    pub spec: ShiftSpec,
}

#[cfg(feature = "serde")]
fn display_spec<S: serde::Serializer>(spec: &ShiftSpec, s: S) -> core::result::Result<S::Ok, S::Error> {
    s.collect_str(spec)
}

impl GridPoint {
    pub fn interval(p: u64, n: u32, h: u64) -> Self {
        Self { p, n, spec: ShiftSpec::Interval(h) }
    }

    /// Builds the shift set, rejecting points that break separation,
    /// `H < p`, or `p > max(k_max, 2n-5)`.
    pub fn validate(&self, k_max: u32) -> Result<(PrimePowerModulus, ShiftSet)> {
        let m = PrimePowerModulus::new(self.p, self.n)?;
        let floor = (k_max as u64).max((2 * self.n as u64).saturating_sub(5));
        if self.p <= floor {
            return Err(Error::HypothesisViolated(format!("p = {} must exceed max(k_max, 2n-5) = {floor}", self.p)));
        }
        let shifts = make_shift_set(&m, &self.spec).map_err(|e| match e {
            Error::SeparationViolated { .. } | Error::CardinalityTooLarge { .. } => {
                Error::HypothesisViolated(format!("shift set {}: {e}", self.spec))
            }
            other => other,
        })?;
        Ok((m, shifts))
    }
}

/// `H <= p^exponent`.
pub fn in_regime(p: u64, h: u64, exponent: f64) -> bool {
    h as f64 <= libm::pow(p as f64, exponent)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MomentRow {
    pub k: u32,
    pub empirical: f64,
    pub model: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IntervalRow {
    pub alpha: f64,
    pub beta: f64,
    pub empirical: f64,
    pub gaussian: f64,
    pub deviation: f64,
}

/// Everything measured at one grid point.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PointMetrics {
    pub point: GridPoint,
    pub h: u64,
    pub centers: u64,
    pub in_regime: bool,
    pub moments: Vec<MomentRow>,
    pub ks: f64,
    pub intervals: Vec<IntervalRow>,
}

impl PointMetrics {
    pub fn moment(&self, k: u32) -> Option<&MomentRow> {
        self.moments.iter().find(|r| r.k == k)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    fn new(name: impl Into<String>, passed: bool, detail: String) -> Self {
        Self { name: name.into(), passed, detail }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConvergenceReport {
    pub points: Vec<PointMetrics>,
    pub constants: FrozenConstants,
    pub verdicts: Vec<Verdict>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// The ensemble at a validated grid point, from a closed-form table.
pub fn point_ensemble<E: Executor>(exec: &E, m: PrimePowerModulus, shifts: &ShiftSet) -> Result<EnsembleResult> {
    let builder = TableBuilder::new(m, Evaluator::SalieFast, TableScope::AllResidues)?;
    let table = exec::build_table(exec, builder)?;
    exec::ensemble(exec, &table, shifts)
}

/// Measures moments `0..=k_max`, KS distance and interval probabilities at
/// one grid point.
pub fn measure_point<E: Executor>(
    exec: &E,
    point: &GridPoint,
    k_max: u32,
    intervals: &[(f64, f64)],
    constants: &FrozenConstants,
) -> Result<PointMetrics> {
    let (m, shifts) = point.validate(k_max)?;
    for &(alpha, beta) in intervals {
        if alpha.is_nan() || beta.is_nan() || alpha > beta {
            return Err(Error::BadInterval { alpha, beta });
        }
    }
    let h = shifts.h();
    let ens = point_ensemble(exec, m, &shifts)?;
    let moments = (0..=k_max)
        .map(|k| {
            let empirical = empirical_moment(&ens, k);
            let model = to_f64(&exact_moment_sh(h, k)?);
            Ok(MomentRow { k, empirical, model, deviation: (empirical - model).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    let sample = Sample::from_slice(ens.values())?;
    let intervals = intervals
        .iter()
        .map(|&(alpha, beta)| {
            let empirical = interval_probability(&sample, alpha, beta)?;
            let gaussian = gaussian_mass(alpha, beta);
            Ok(IntervalRow { alpha, beta, empirical, gaussian, deviation: (empirical - gaussian).abs() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PointMetrics {
        point: point.clone(),
        h,
        centers: m.phi(),
        in_regime: in_regime(point.p, h, constants.regime_exponent),
        moments,
        ks: ks_statistic(&sample),
        intervals,
    })
}

fn measure_grid<E: Executor>(
    exec: &E,
    grid: &[GridPoint],
    k_max: u32,
    intervals: &[(f64, f64)],
    constants: &FrozenConstants,
) -> Result<Vec<PointMetrics>> {
    // reject the whole grid before spending time on any point
    for point in grid {
        point.validate(k_max)?;
    }
    grid.iter().map(|pt| measure_point(exec, pt, k_max, intervals, constants)).collect()
}

fn strictly_decreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

fn join(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.4e}")).collect::<Vec<_>>().join(", ")
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// points or a non-positive value.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 || xs.len() != ys.len() || xs.iter().chain(ys).any(|&v| v.is_nan() || v <= 0.0) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|&v| libm::log(v)).collect();
    let ly: Vec<f64> = ys.iter().map(|&v| libm::log(v)).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    (var > 0.0).then(|| cov / var)
}

/// Deviations trend down along `xs`: negative log-log slope and the last
/// value below the first.
pub fn trends_down(xs: &[f64], devs: &[f64]) -> bool {
    let ends = matches!((devs.first(), devs.last()), (Some(a), Some(b)) if b < a);
    ends && log_log_slope(xs, devs).is_some_and(|s| s < 0.0)
}

/// For each even `2 <= k <= min(k_max, 6)`: deviations trend down in `p`
/// (see [`trends_down`]), or the last one is below the floor. Strict
/// monotonicity is reported in the detail but not required.
pub fn moment_expansion_verdicts(points: &[PointMetrics], constants: &FrozenConstants) -> Vec<Verdict> {
    let k_max = points.iter().map(|p| p.moments.len() as u32).min().unwrap_or(1) - 1;
    let ps: Vec<f64> = points.iter().map(|p| p.point.p as f64).collect();
    (2..=k_max.min(6))
        .step_by(2)
        .map(|k| {
            let devs: Vec<f64> = points.iter().filter_map(|p| p.moment(k)).map(|r| r.deviation).collect();
            let last = devs.last().copied().unwrap_or(f64::NAN);
            let passed = trends_down(&ps, &devs) || last <= constants.moment_floor;
            let slope = log_log_slope(&ps, &devs).unwrap_or(f64::NAN);
            let detail =
                format!("{} (slope {slope:.3}, strictly monotone: {})", join(&devs), strictly_decreasing(&devs));
            Verdict::new(format!("moment_k{k}_trend"), passed, detail)
        })
        .collect()
}

pub fn check_moment_expansion<E: Executor>(
    exec: &E,
    grid: &[GridPoint],
    k_max: u32,
    constants: &FrozenConstants,
) -> Result<ConvergenceReport> {
    let points = measure_grid(exec, grid, k_max, &[], constants)?;
    let verdicts = moment_expansion_verdicts(&points, constants);
    Ok(ConvergenceReport { points, constants: *constants, verdicts })
}

/// KS decreases along the points with `H >= 2` and the last one is within
/// the frozen ceiling. `H = 1` points sit outside the CLT and are skipped.
pub fn theorem_a_verdicts(points: &[PointMetrics], constants: &FrozenConstants) -> Vec<Verdict> {
    let ks: Vec<f64> = points.iter().filter(|p| p.h >= 2).map(|p| p.ks).collect();
    let last = ks.last().copied().unwrap_or(f64::NAN);
    alloc::vec![
        Verdict::new("ks_trend", strictly_decreasing(&ks), join(&ks)),
        Verdict::new("ks_final", last <= constants.ks_final, format!("{last:.4e} <= {}", constants.ks_final),),
    ]
}

pub fn check_theorem_a<E: Executor>(
    exec: &E,
    grid: &[GridPoint],
    intervals: &[(f64, f64)],
    constants: &FrozenConstants,
) -> Result<ConvergenceReport> {
    let points = measure_grid(exec, grid, 2, intervals, constants)?;
    let verdicts = theorem_a_verdicts(&points, constants);
    Ok(ConvergenceReport { points, constants: *constants, verdicts })
}

/// `max(1/H, (ln H / ln p)^{3/4}) + p^{-β_n} + (β-α)/√H`.
pub fn theorem_b_error_shape(p: u64, n: u32, h: u64, alpha: f64, beta: f64) -> Result<f64> {
    let b = BetaN::new(n)?;
    let (hf, pf) = (h as f64, p as f64);
    let ratio = libm::log(hf) / libm::log(pf);
    let first = (1.0 / hf).max(libm::pow(ratio.max(0.0), 0.75));
    Ok(first + libm::pow(pf, -b.beta_f64()) + (beta - alpha) / libm::sqrt(hf))
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TheoremBRow {
    pub interval: IntervalRow,
    pub error_shape: f64,
    pub ratio: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TheoremBReport {
    pub metrics: PointMetrics,
    pub beta_n: f64,
    pub rows: Vec<TheoremBRow>,
    pub constants: FrozenConstants,
    pub verdicts: Vec<Verdict>,
}

impl TheoremBReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

pub fn theorem_b_verdicts(rows: &[TheoremBRow]) -> Vec<Verdict> {
    rows.iter()
        .map(|r| {
            let i = &r.interval;
            Verdict::new(
                format!("interval[{},{}]", i.alpha, i.beta),
                r.within_bound,
                format!("{:.4e} vs shape {:.4e}", i.deviation, r.error_shape),
            )
        })
        .collect()
}

pub fn check_theorem_b<E: Executor>(
    exec: &E,
    point: &GridPoint,
    intervals: &[(f64, f64)],
    constants: &FrozenConstants,
) -> Result<TheoremBReport> {
    for &(alpha, beta) in intervals {
        if alpha.is_nan() || beta.is_nan() || alpha >= beta {
            return Err(Error::BadInterval { alpha, beta });
        }
    }
    let metrics = measure_point(exec, point, 2, intervals, constants)?;
    let rows = metrics
        .intervals
        .iter()
        .map(|i| {
            let shape = theorem_b_error_shape(point.p, point.n, metrics.h, i.alpha, i.beta)?;
            Ok(TheoremBRow {
                interval: i.clone(),
                error_shape: shape,
                ratio: i.deviation / shape,
                within_bound: i.deviation <= constants.c_b * shape,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdicts = theorem_b_verdicts(&rows);
    Ok(TheoremBReport { beta_n: BetaN::new(point.n)?.beta_f64(), metrics, rows, constants: *constants, verdicts })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BerryEsseenRow {
    pub h: u64,
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
    pub model: f64,
    pub stderr: f64,
    pub gaussian: f64,
    pub deviation: f64,
    /// `C_BE (β-α)/√H + 3 stderr`.
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BerryEsseenReport {
    pub samples: u64,
    pub rows: Vec<BerryEsseenRow>,
    pub constants: FrozenConstants,
    pub verdicts: Vec<Verdict>,
}

impl BerryEsseenReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

/// Seed used for the Monte Carlo run at a given `H`.
pub fn berry_esseen_seed(seed: u64, h: u64) -> u64 {
    seed.wrapping_add(h)
}

/// Every row with `H >= 2` within its bound, and the mean deviation at the
/// largest `H` no worse than at the smallest (up to three pooled standard
/// errors). Rows with `H = 1` are recorded only.
pub fn berry_esseen_verdicts(rows: &[BerryEsseenRow]) -> Vec<Verdict> {
    let checked: Vec<&BerryEsseenRow> = rows.iter().filter(|r| r.h >= 2).collect();
    let failures: Vec<String> =
        checked.iter().filter(|r| !r.within_bound).map(|r| format!("H={} [{},{}]", r.h, r.alpha, r.beta)).collect();
    let mut out = alloc::vec![Verdict::new(
        "bound",
        failures.is_empty(),
        if failures.is_empty() { "all rows within bound".to_string() } else { failures.join("; ") },
    )];
    let hs: Vec<u64> = {
        let mut v: Vec<u64> = checked.iter().map(|r| r.h).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    if let (Some(&lo), Some(&hi)) = (hs.first(), hs.last()) {
        let stats = |h: u64| {
            let sel: Vec<&&BerryEsseenRow> = checked.iter().filter(|r| r.h == h).collect();
            let n = sel.len() as f64;
            let mean = sel.iter().map(|r| r.deviation).sum::<f64>() / n;
            let se = libm::sqrt(sel.iter().map(|r| r.stderr * r.stderr).sum::<f64>()) / n;
            (mean, se)
        };
        let (d_lo, se_lo) = stats(lo);
        let (d_hi, se_hi) = stats(hi);
        out.push(Verdict::new(
            "shrink",
            d_hi <= d_lo + 3.0 * (se_lo + se_hi),
            format!("mean deviation {d_lo:.4e} at H={lo}, {d_hi:.4e} at H={hi}"),
        ));
    }
    out
}

pub fn check_berry_esseen<E: Executor>(
    exec: &E,
    hs: &[u64],
    intervals: &[(f64, f64)],
    samples: u64,
    seed: u64,
    constants: &FrozenConstants,
) -> Result<BerryEsseenReport> {
    if hs.is_empty() || hs.contains(&0) {
        return Err(Error::InvalidArgument("H values must be positive".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one Monte Carlo sample".into()));
    }
    for &(alpha, beta) in intervals {
        if alpha.is_nan() || beta.is_nan() || alpha > beta {
            return Err(Error::BadInterval { alpha, beta });
        }
    }
    let mut rows = Vec::new();
    for &h in hs {
        let s = berry_esseen_seed(seed, h);
        let tally = exec::mc_intervals(exec, h, intervals, samples, s);
        for (i, &(alpha, beta)) in intervals.iter().enumerate() {
            let model = tally.probability(i);
            let stderr = tally.stderr(i);
            let gaussian = gaussian_mass(alpha, beta);
            let deviation = (model - gaussian).abs();
            let bound = constants.c_be * (beta - alpha) / libm::sqrt(h as f64) + 3.0 * stderr;
            rows.push(BerryEsseenRow {
                h,
                alpha,
                beta,
                seed: s,
                model,
                stderr,
                gaussian,
                deviation,
                bound,
                within_bound: deviation <= bound,
            });
        }
    }
    let verdicts = berry_esseen_verdicts(&rows);
    Ok(BerryEsseenReport { samples, rows, constants: *constants, verdicts })
}

/// `β_n` as an exact big rational, for reports that want exact values.
pub fn beta_n_exact(n: u32) -> Result<BigRational> {
    let b = BetaN::new(n)?;
    Ok(BigRational::new(BigInt::from(*b.beta.numer()), BigInt::from(*b.beta.denom())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;
    use crate::model::u_interval_probability;

    #[test]
    fn beta_table() {
        assert_eq!(BetaN::new(5).unwrap().beta, Ratio::new(1, 2));
        assert_eq!(BetaN::new(6).unwrap().beta, Ratio::new(5, 16));
        assert_eq!(BetaN::new(6).unwrap().beta_f64(), 0.3125);
        assert_eq!(BetaN::case_value(5), Ratio::new(1, 2));
        for n in 2..=40u32 {
            // crossover: the case formula reaches ½ exactly for n <= 5
            let case = BetaN::case_value(n);
            assert_eq!(case >= Ratio::new(1, 2), n <= 5, "n={n}");
            let b = BetaN::new(n).unwrap();
            assert_eq!(b.alpha, u32::from(n <= 5));
            assert!(b.beta <= Ratio::new(1, 2));
        }
        assert!(BetaN::new(1).is_err());
        assert_eq!(beta_n_exact(7).unwrap(), BigRational::new(3.into(), 16.into()));
    }

    #[test]
    fn grid_point_guards() {
        assert!(GridPoint::interval(101, 2, 10).validate(6).is_ok());
        assert!(matches!(GridPoint::interval(5, 2, 3).validate(6), Err(Error::HypothesisViolated(_))));
        assert!(matches!(GridPoint::interval(11, 2, 11).validate(2), Err(Error::HypothesisViolated(_))));
        let explicit = GridPoint { p: 11, n: 2, spec: ShiftSpec::Explicit(alloc::vec![0, 11]) };
        assert!(matches!(explicit.validate(2), Err(Error::HypothesisViolated(_))));
        assert!(matches!(GridPoint::interval(4, 2, 2).validate(2), Err(Error::NotPrime(4))));
        assert!(!in_regime(101, 10, 1.0 / 3.0));
        assert!(in_regime(1000, 10, 1.0 / 3.0 + 1e-12));
    }

    #[test]
    fn measure_small_point() {
        let c = FrozenConstants::default();
        let m = measure_point(&Sequential, &GridPoint::interval(41, 2, 29), 4, &[(-8.0, 8.0)], &c).unwrap();
        assert_eq!(m.centers, 1640);
        assert_eq!(m.moment(0).unwrap().deviation, 0.0);
        assert!(m.intervals[0].deviation < 1e-9);
        assert!((0.0..=1.0).contains(&m.ks));
    }

    #[test]
    fn single_shift_is_outside_clt() {
        let c = FrozenConstants::default();
        let m = measure_point(&Sequential, &GridPoint::interval(101, 2, 1), 2, &[], &c).unwrap();
        // the atom of mass ½ straddles Φ(0) = ½, so the gap is about ¼
        assert!((m.ks - 0.25).abs() < 0.03, "ks={}", m.ks);
        let verdicts = theorem_a_verdicts(core::slice::from_ref(&m), &c);
        assert_eq!(verdicts[0].detail, "");
    }

    #[test]
    fn verdicts_are_pure() {
        let c = FrozenConstants::default();
        let grid = [GridPoint::interval(101, 2, 4), GridPoint::interval(211, 2, 4)];
        let report = check_moment_expansion(&Sequential, &grid, 4, &c).unwrap();
        assert_eq!(moment_expansion_verdicts(&report.points, &c), report.verdicts);
        assert_eq!(report.verdicts.len(), 2);
    }

    #[test]
    fn slope_and_trend() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 / x).collect();
        assert!((log_log_slope(&xs, &ys).unwrap() + 1.0).abs() < 1e-12);
        assert!(trends_down(&xs, &[0.1, 0.01, 0.025, 0.02]));
        assert!(!trends_down(&xs, &[0.1, 0.01, 0.025, 0.2]));
        assert!(!trends_down(&xs, &[0.1, 0.2, 0.3, 0.4]));
        assert_eq!(log_log_slope(&xs[..1], &ys[..1]), None);
        assert_eq!(log_log_slope(&xs, &[0.0, 1.0, 1.0, 1.0]), None);
    }

    #[test]
    fn error_shape_uses_beta() {
        let five = theorem_b_error_shape(499, 5, 40, -1.0, 1.0).unwrap();
        let six = theorem_b_error_shape(499, 6, 40, -1.0, 1.0).unwrap();
        let d = six - five;
        assert!((d - (libm::pow(499.0, -0.3125) - libm::pow(499.0, -0.5))).abs() < 1e-15);
    }

    #[test]
    fn berry_esseen_single_draw_law() {
        let c = FrozenConstants::default();
        let r = check_berry_esseen(&Sequential, &[1], &[(-0.5, 0.5)], 200_000, 3, &c).unwrap();
        let exact = u_interval_probability(-0.5, 0.5);
        assert!((r.rows[0].model - exact).abs() < 4.0 * r.rows[0].stderr);
        assert!((r.rows[0].gaussian - 0.382_924_922_548).abs() < 1e-9);
        // H = 1 is informational only
        assert!(r.passed());
        assert!(check_berry_esseen(&Sequential, &[4], &[(1.0, 0.0)], 10, 3, &c).is_err());
    }
}
