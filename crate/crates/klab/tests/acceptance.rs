//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use klab::oracle::dft_table;
use klab::RayonExecutor;
use klab_core::constants::FrozenConstants;
use klab_core::exec::{build_table, mc_moments};
use klab_core::kloosterman::{eval_direct, eval_salie, TableBuilder};
use klab_core::model::{exact_moment_sh, exact_moment_u, moment_bound};
use klab_core::modmath::{is_prime, jacobi_symbol};
use klab_core::theorems::{self, BetaN, GridPoint};
use klab_core::verify::{brute_count_a, cardinality_check, ell_map, NCounter, ShiftMultiplicity};
use klab_core::{Evaluator, PrimePowerModulus, Sequential, TableScope};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

type Outcome = Result<String, String>;

const INTERVALS: [(f64, f64); 3] = [(-1.0, 1.0), (0.0, 2.0), (-2.0, -0.5)];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn odd_primes_upto(n: u64) -> impl Iterator<Item = u64> {
    (3..=n).filter(|&p| is_prime(p))
}

fn small_moduli(ceiling: u64) -> Vec<PrimePowerModulus> {
    let mut out = Vec::new();
    for p in odd_primes_upto(ceiling) {
        let mut n = 2;
        while p.checked_pow(n).is_some_and(|q| q <= ceiling) {
            out.push(PrimePowerModulus::new(p, n).unwrap());
            n += 1;
        }
    }
    out
}

fn rayon() -> RayonExecutor {
    RayonExecutor::new(None).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut units = 0u64;
    let mut worst = 0.0f64;
    let moduli = small_moduli(100_000);
    for m in &moduli {
        let oracle = dft_table(m).ok_or("modulus above oracle ceiling")?;
        let fast =
            build_table(&Sequential, TableBuilder::new(*m, Evaluator::SalieFast, TableScope::AllResidues).unwrap())
                .map_err(|e| e.to_string())?;
        for a in m.units() {
            let d = (fast.get(a).unwrap() - oracle[a as usize]).abs();
            worst = worst.max(d);
            units += 1;
            ensure(d < 1e-9, || format!("p={} n={} a={a}: |diff| = {d:e}", m.p(), m.n()))?;
        }
    }
    let mut direct = 0u64;
    for (p, n) in [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (7, 4), (11, 2), (13, 2), (41, 2)] {
        let m = PrimePowerModulus::new(p, n).unwrap();
        for a in m.units() {
            let s = eval_salie(&m, a).unwrap().value;
            let d = eval_direct(&m, a).map_err(|e| e.to_string())?.value;
            ensure((s - d).abs() < 1e-9, || format!("p={p} n={n} a={a}: salie {s} direct {d}"))?;
            direct += 1;
        }
    }
    let secs = started.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{} moduli, {units} units vs transform oracle, {direct} vs direct sums, max diff {worst:.1e}, {secs:.1} s single-threaded",
        moduli.len()
    ))
}

fn vanishing_law() -> Outcome {
    let mut zeros = 0u64;
    let mut max_abs = 0.0f64;
    let moduli = small_moduli(100_000);
    for m in &moduli {
        let fast =
            build_table(&Sequential, TableBuilder::new(*m, Evaluator::SalieFast, TableScope::AllResidues).unwrap())
                .map_err(|e| e.to_string())?;
        let oracle = dft_table(m).unwrap();
        for a in m.units() {
            let v = fast.get(a).unwrap();
            let nonresidue = jacobi_symbol(a as i64, m.p()) == -1;
            ensure((v == 0.0) == nonresidue, || format!("p={} n={} a={a}: value {v}", m.p(), m.n()))?;
            ensure((oracle[a as usize].abs() < 1e-9) == nonresidue, || {
                format!("oracle p={} n={} a={a}: value {}", m.p(), m.n(), oracle[a as usize])
            })?;
            zeros += nonresidue as u64;
            max_abs = max_abs.max(v.abs()).max(oracle[a as usize].abs());
        }
    }
    ensure(max_abs <= 2.0, || format!("|Kl| reached {max_abs}"))?;
    Ok(format!("{zeros} zeros, all at non-residues; max |Kl| = {max_abs:.12}"))
}

fn exact_identities() -> Outcome {
    let started = Instant::now();
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    ensure(exact_moment_u(2) == int(1), || format!("E(U^2) = {}", exact_moment_u(2)))?;
    ensure(exact_moment_u(4) == int(3), || format!("E(U^4) = {}", exact_moment_u(4)))?;
    for h in 1..=64u64 {
        let m2 = exact_moment_sh(h, 2).map_err(|e| e.to_string())?;
        ensure(m2 == int(1), || format!("H={h}: second moment {m2}"))?;
        for k in 1..=16u32 {
            let v = exact_moment_sh(h, k).map_err(|e| e.to_string())?;
            if k % 2 == 1 {
                ensure(v.is_zero(), || format!("H={h} k={k}: odd moment {v}"))?;
            } else {
                ensure(v <= moment_bound(k), || format!("H={h} k={k}: {v} above {}", moment_bound(k)))?;
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1} s"))?;
    Ok(format!("H <= 64, k <= 16 exact, {secs:.2} s"))
}

fn model_clt() -> Outcome {
    let hs = [2u64, 4, 8, 16, 32, 64];
    for k in [4u32, 6, 8] {
        let target = int_double_factorial(k - 1);
        let gaps: Vec<BigRational> = hs
            .iter()
            .map(|&h| {
                let v = exact_moment_sh(h, k).unwrap() - &target;
                if v < BigRational::zero() {
                    -v
                } else {
                    v
                }
            })
            .collect();
        for w in gaps.windows(2) {
            ensure(w[1] <= w[0], || format!("k={k}: gap rose from {} to {}", w[0], w[1]))?;
        }
    }
    let exec = rayon();
    let mut worst = 0.0f64;
    for &h in &hs {
        let tally = mc_moments(&exec, h, 8, 1_000_000, 2024);
        for k in 1..=8u32 {
            let exact = exact_moment_sh(h, k).unwrap().to_f64().unwrap();
            let z = (tally.moment(k) - exact).abs() / tally.stderr(k);
            worst = worst.max(z);
            ensure(z <= 4.0, || format!("H={h} k={k}: MC {} vs {exact}, {z:.2} se", tally.moment(k)))?;
        }
    }
    Ok(format!("exact gaps non-increasing for k=4,6,8; MC worst {worst:.2} se over k <= 8"))
}

fn int_double_factorial(k: u32) -> BigRational {
    let v: BigInt = (1..=k).rev().step_by(2).map(BigInt::from).product();
    BigRational::from_integer(v)
}

fn moment_expansion() -> Outcome {
    let started = Instant::now();
    let grid: Vec<GridPoint> = [101, 211, 401, 809].iter().map(|&p| GridPoint::interval(p, 2, 10)).collect();
    let c = FrozenConstants::default();
    let report = theorems::check_moment_expansion(&rayon(), &grid, 4, &c).map_err(|e| e.to_string())?;
    let devs = |k: u32| -> Vec<f64> { report.points.iter().map(|pt| pt.moment(k).unwrap().deviation).collect() };
    let (d2, d4) = (devs(2), devs(4));
    let strict = |d: &[f64]| d.windows(2).all(|w| w[1] < w[0]);
    let failed: Vec<&str> = report.verdicts.iter().filter(|v| !v.passed).map(|v| v.name.as_str()).collect();
    ensure(failed.is_empty(), || format!("verdicts failed: {}", failed.join(", ")))?;
    ensure(d2[3] <= 0.05 && d4[3] <= 0.5, || format!("final deviations {:.4} (k=2), {:.4} (k=4)", d2[3], d4[3]))?;
    let secs = started.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.1} s"))?;
    let ps: Vec<f64> = report.points.iter().map(|pt| pt.point.p as f64).collect();
    let slope = |d: &[f64]| theorems::log_log_slope(&ps, d).unwrap_or(f64::NAN);
    let pointwise = |d: &[f64]| if strict(d) { "pointwise" } else { "in trend only, not pointwise" };
    Ok(format!(
        "k=2 {d2:.4?} slope {:.2} ({}), k=4 {d4:.4?} slope {:.2} ({}), {secs:.1} s",
        slope(&d2),
        pointwise(&d2),
        slope(&d4),
        pointwise(&d4)
    ))
}

fn cardinality() -> Outcome {
    let c = FrozenConstants::default();
    let mut worst = 0.0f64;
    let mut exact = 0;
    for p in [101u64, 211, 401] {
        let m = PrimePowerModulus::new(p, 2).unwrap();
        let phi = m.phi();
        let pi = p as i64;
        for single in [vec![(0, 2)], vec![(pi, 1)], vec![(0, 1), (pi, 1)], vec![(0, 2), (2 * pi, 2), (5 * pi, 1)]] {
            let mu = ShiftMultiplicity::new(m, &single).unwrap();
            let count = brute_count_a(&mu).map_err(|e| e.to_string())?;
            ensure(count * 2 == phi, || format!("p={p} mu={mu}: {count} vs φ/2 = {}", phi / 2))?;
            exact += 1;
        }
        for shifts in [&[0i64, 1][..], &[0, 2], &[0, 7], &[0, 1, 2], &[0, 1, 3], &[0, 5, 17]] {
            let entries: Vec<(i64, u32)> = shifts.iter().map(|&t| (t, 2)).collect();
            let mu = ShiftMultiplicity::new(m, &entries).unwrap();
            let r = cardinality_check(&mu, c.c_card).map_err(|e| e.to_string())?;
            worst = worst.max(r.deviation);
            ensure(r.within_bound, || format!("p={p} mu={mu}: d = {}", r.deviation))?;
        }
    }
    Ok(format!("{exact} single-class counts exact; worst d = {worst:.3} (ceiling {})", c.c_card))
}

fn all_ells(size: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..size {
        out = out.into_iter().flat_map(|v| (-2..=2).map(move |l| [v.clone(), vec![l]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&l| l != 0));
    out
}

fn counting_bound() -> Outcome {
    let c = FrozenConstants::default();
    let supports: [&[i64]; 6] = [&[0], &[0, 1], &[0, 2], &[0, 1, 2], &[0, 1, 3], &[0, 2, 7]];
    let mut cases = 0u64;
    let mut skipped = 0u64;
    let mut worst = 0.0f64;
    for p in odd_primes_upto(211) {
        for n in [2u32, 3] {
            let m = PrimePowerModulus::new(p, n).unwrap();
            for support in supports {
                for mult in [1u32, 2] {
                    let entries: Vec<(i64, u32)> = support.iter().map(|&t| (t, mult)).collect();
                    let mu = ShiftMultiplicity::new(m, &entries).unwrap();
                    if !mu.hypothesis_holds() || mu.support_mod_p().len() != support.len() {
                        skipped += 1;
                        continue;
                    }
                    let counter = NCounter::new(&mu).map_err(|e| e.to_string())?;
                    for ell in all_ells(support.len()) {
                        let pairs: Vec<(i64, i64)> = support.iter().copied().zip(ell).collect();
                        let map = ell_map(&m, &pairs);
                        let counts = counter.counts(&map).map_err(|e| e.to_string())?;
                        let total: u64 = counts.iter().sum();
                        let higher = counter.higher_congruences(&map).unwrap();
                        ensure(total == higher, || format!("p={p} n={n} mu={mu}: Σ_w N = {total}, expected {higher}"))?;
                        let r = counter.bound_report(&map, c.c_n).unwrap();
                        worst = worst.max(r.n_max as f64 / (r.bound / c.c_n));
                        ensure(r.within_bound, || format!("p={p} n={n} mu={mu} ell={}: N = {}", r.ell, r.n_max))?;
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} cases, worst N/(|T|2^|T|) = {worst:.3}, partition identity exact; {skipped} tuples outside hypotheses skipped"))
}

fn theorem_a() -> Outcome {
    let started = Instant::now();
    let grid: Vec<GridPoint> =
        [(101, 10), (211, 16), (401, 25), (499, 40)].iter().map(|&(p, h)| GridPoint::interval(p, 2, h)).collect();
    let c = FrozenConstants::default();
    let report = theorems::check_theorem_a(&rayon(), &grid, &INTERVALS, &c).map_err(|e| e.to_string())?;
    let ks: Vec<f64> = report.points.iter().map(|p| p.ks).collect();
    let failed: Vec<String> =
        report.verdicts.iter().filter(|v| !v.passed).map(|v| format!("{}: {}", v.name, v.detail)).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    let secs = started.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1} s"))?;
    Ok(format!("KS {ks:.4?}, ceiling {}, {secs:.1} s", c.ks_final))
}

fn theorem_b() -> Outcome {
    let c = FrozenConstants::default();
    let report = theorems::check_theorem_b(&rayon(), &GridPoint::interval(499, 2, 40), &INTERVALS, &c)
        .map_err(|e| e.to_string())?;
    let failed: Vec<String> =
        report.verdicts.iter().filter(|v| !v.passed).map(|v| format!("{}: {}", v.name, v.detail)).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    ensure(BetaN::new(5).unwrap().beta == Ratio::new(1, 2), || "β_5 != 1/2".into())?;
    ensure(BetaN::new(6).unwrap().beta == Ratio::new(5, 16), || "β_6 != 5/16".into())?;
    for n in 2..=5 {
        ensure(BetaN::new(n).unwrap().beta == Ratio::new(1, 2), || format!("β_{n} != 1/2"))?;
    }
    ensure(BetaN::new(7).unwrap().beta == Ratio::new(3, 16), || "β_7 != 3/16".into())?;
    let worst = report.rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(format!("worst deviation/shape {worst:.4} (C_B = {}); β_2..β_5 = 1/2, β_6 = 5/16", c.c_b))
}

fn run_figure1(out: &Path, threads: &str) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_klab"))
        .args(["--out", out.to_str().unwrap(), "--threads", threads, "figure1"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), || String::from_utf8_lossy(&status.stderr).into_owned())
}

fn figure1() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: Vec<_> = ["1", "2", "4"].iter().map(|t| dir.path().join(format!("t{t}"))).collect();
    for (path, t) in runs.iter().zip(["1", "2", "4"]) {
        run_figure1(path, t)?;
    }
    for f in ["figure1_histogram.csv", "figure1_ensemble.csv", "figure1.json"] {
        let first = std::fs::read(runs[0].join(f)).map_err(|e| e.to_string())?;
        for r in &runs[1..] {
            ensure(std::fs::read(r.join(f)).unwrap() == first, || format!("{f} differs across thread counts"))?;
        }
    }
    let values = std::fs::read_to_string(runs[0].join("figure1_ensemble.csv")).unwrap().lines().count() - 1;
    ensure(values == 1640, || format!("{values} ensemble values"))?;
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(runs[0].join("figure1.json")).unwrap()).unwrap();
    let ks = doc["result"]["ks"].as_f64().ok_or("no ks in report")?;
    ensure(ks <= 0.15, || format!("KS = {ks}"))?;
    Ok(format!("1640 values, KS = {ks:.4}, identical output for 1, 2, 4 threads"))
}

fn berry_esseen() -> Outcome {
    let c = FrozenConstants::default();
    let report = theorems::check_berry_esseen(&rayon(), &[4, 16, 64, 256], &INTERVALS, 100_000, 0, &c)
        .map_err(|e| e.to_string())?;
    let bound = report.verdicts.iter().find(|v| v.name == "bound").unwrap();
    ensure(bound.passed, || bound.detail.clone())?;
    let shrink = report.verdicts.iter().find(|v| v.name == "shrink").map(|v| v.passed).unwrap_or(false);
    let worst = report
        .rows
        .iter()
        .map(|r| (r.deviation - 3.0 * r.stderr).max(0.0) / ((r.beta - r.alpha) / (r.h as f64).sqrt()))
        .fold(0.0, f64::max);
    Ok(format!("12 rows within bound, worst excess ratio {worst:.4} (C_BE = {}), shrink {shrink}", c.c_be))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence", oracle_equivalence),
        ("vanishing and boundedness", vanishing_law),
        ("exact model identities", exact_identities),
        ("model CLT", model_clt),
        ("moment expansion", moment_expansion),
        ("cardinality asymptotic", cardinality),
        ("counting bound", counting_bound),
        ("short-sum CLT", theorem_a),
        ("interval probabilities", theorem_b),
        ("figure reproduction", figure1),
        ("Berry-Esseen", berry_esseen),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} [{secs:.1} s]: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name} [{secs:.1} s]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
