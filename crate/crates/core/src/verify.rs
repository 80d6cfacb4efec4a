//! Complete moments of products of shifted Kloosterman sums, and the counting
//! problems behind their main terms.
//!
//! For a multiplicity tuple `μ` supported on shifts `T ⊂ Z/p^nZ`,
//! `S(μ) = φ⁻¹ Σ_a ∏_τ Kl(a+τ)^{μ(τ)}` is compared against
//! `∏ δ_{2|μ(τ)} C(μ(τ), μ(τ)/2) · |A(μ)|/φ` where `A(μ)` collects the units
//! `a` with every `a+τ` a unit square.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::kloosterman::{KloostermanTable, ORACLE_CEILING};
use crate::modmath::{inv_mod, jacobi_symbol, mod_pow, sqrt_mod_prime, PrimePowerModulus, Roots};
use crate::numeric::CompensatedSum;

/// Largest prime accepted by [`enumerate_b`] and [`count_n`].
pub const B_PRIME_CEILING: u64 = 500;
/// Largest support accepted by [`enumerate_b`] and [`count_n`].
pub const B_SUPPORT_CEILING: usize = 4;

/// Sparse multiplicities `τ ↦ μ(τ) >= 1`, shifts reduced mod `p^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftMultiplicity {
    modulus: PrimePowerModulus,
    mu: BTreeMap<u64, u32>,
}

impl ShiftMultiplicity {
    pub fn new(modulus: PrimePowerModulus, entries: &[(i64, u32)]) -> Result<Self> {
        let mut mu = BTreeMap::new();
        for &(tau, m) in entries {
            if m == 0 {
                return Err(Error::InvalidArgument(format!("multiplicity of shift {tau} is zero")));
            }
            let t = modulus.reduce(tau);
            if mu.insert(t, m).is_some() {
                return Err(Error::DuplicateShift(t));
            }
        }
        if mu.is_empty() {
            return Err(Error::EmptyMultiplicity);
        }
        Ok(Self { modulus, mu })
    }

    /// Parses `"τ:μ,τ:μ,..."`, e.g. `"0:2,1:2"` or `"0:2,-3:1"`.
    pub fn parse(modulus: PrimePowerModulus, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (t, m) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected shift:multiplicity, got {part:?}")))?;
            let t = t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("shift {t:?}: {e}")))?;
            let m = m.trim().parse::<u32>().map_err(|e| Error::Parse(format!("multiplicity {m:?}: {e}")))?;
            entries.push((t, m));
        }
        Self::new(modulus, &entries)
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.mu.iter().map(|(&t, &m)| (t, m))
    }

    /// The support `T(μ)`.
    pub fn support(&self) -> Vec<u64> {
        self.mu.keys().copied().collect()
    }

    /// Reductions of the support mod `p`, `T̄(μ)`.
    pub fn support_mod_p(&self) -> BTreeSet<u64> {
        let p = self.modulus.p();
        self.mu.keys().map(|t| t % p).collect()
    }

    pub fn total(&self) -> u64 {
        self.mu.values().map(|&m| m as u64).sum()
    }

    pub fn all_even(&self) -> bool {
        self.mu.values().all(|m| m % 2 == 0)
    }

    /// Whether `p > max(M, 2n-5)` holds for `M = Σ μ(τ)`.
    pub fn hypothesis_holds(&self) -> bool {
        let bound = self.total().max((2 * self.modulus.n() as u64).saturating_sub(5));
        self.modulus.p() > bound
    }

    pub fn require_hypothesis(&self) -> Result<()> {
        if self.hypothesis_holds() {
            Ok(())
        } else {
            Err(Error::HypothesisViolated(format!(
                "p = {} must exceed max(M, 2n-5) with M = {}, n = {}",
                self.modulus.p(),
                self.total(),
                self.modulus.n()
            )))
        }
    }
}

impl fmt::Display for ShiftMultiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, m)) in self.entries().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}:{m}")?;
        }
        Ok(())
    }
}

/// `φ⁻¹ Σ_{a unit} ∏_τ Kl(a+τ)^{μ(τ)}`.
pub fn complete_sum_moment(table: &KloostermanTable, mu: &ShiftMultiplicity) -> Result<f64> {
    let m = table.modulus();
    if m != mu.modulus() {
        return Err(Error::ModulusMismatch { left: m.q(), right: mu.modulus().q() });
    }
    let q = m.q();
    let entries: Vec<(u64, i32)> = mu.entries().map(|(t, k)| (t, k as i32)).collect();
    let mut acc = CompensatedSum::new();
    for a in m.units() {
        let mut prod = 1.0;
        for &(t, k) in &entries {
            let b = (a + t) % q;
            let v = table.get(b).ok_or(Error::IncompleteTable(b))?;
            prod *= libm::pow(v, k as f64);
        }
        acc.add(prod);
    }
    Ok(acc.value() / m.phi() as f64)
}

/// Rejects moduli too large for exhaustive enumeration.
pub fn check_oracle_scale(m: &PrimePowerModulus) -> Result<()> {
    if m.q() > ORACLE_CEILING {
        return Err(Error::OracleScaleExceeded { q: m.q(), ceiling: ORACLE_CEILING });
    }
    Ok(())
}

/// `|A(μ)|` by exhaustive enumeration over the units mod `p^n`.
pub fn brute_count_a(mu: &ShiftMultiplicity) -> Result<u64> {
    let m = mu.modulus();
    check_oracle_scale(m)?;
    let (p, q) = (m.p(), m.q());
    let support = mu.support();
    // square-unit test only depends on the residue mod p
    let qr: Vec<bool> = (0..p).map(|r| jacobi_symbol(r as i64, p) == 1).collect();
    let count = m.units().filter(|&a| support.iter().all(|&t| qr[(((a + t) % q) % p) as usize])).count();
    Ok(count as u64)
}

/// `φ(p^n) / 2^{|T̄|}`, the predicted size of `A(μ)`.
pub fn predicted_count_a(mu: &ShiftMultiplicity) -> f64 {
    mu.modulus().phi() as f64 / libm::ldexp(1.0, mu.support_mod_p().len() as i32)
}

/// Where the `|A(μ)|` in a main term came from.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum CountA {
    Exact(u64),
    Predicted(f64),
}

impl CountA {
    pub fn value(&self) -> f64 {
        match *self {
            CountA::Exact(c) => c as f64,
            CountA::Predicted(c) => c,
        }
    }
}

fn central_binomial(m: u32) -> f64 {
    let k = m / 2;
    (1..=k).fold(1.0, |acc, i| acc * (k + i) as f64 / i as f64)
}

/// `∏ δ_{2|μ(τ)} C(μ(τ), μ(τ)/2) · |A|/φ`.
pub fn main_term(mu: &ShiftMultiplicity, count_a: CountA) -> f64 {
    if !mu.all_even() {
        return 0.0;
    }
    let coeff: f64 = mu.entries().map(|(_, m)| central_binomial(m)).product();
    coeff * count_a.value() / mu.modulus().phi() as f64
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CardinalityReport {
    pub count: u64,
    pub predicted: f64,
    pub support_size: usize,
    pub reduced_support_size: usize,
    /// `|T̄| < |T|`: some shifts collapse mod `p`.
    pub collapsed: bool,
    /// `|count·2^{|T̄|}/φ - 1| · √p / (2^{|T̄|}|T̄|)`.
    pub deviation: f64,
    pub constant: f64,
    pub within_bound: bool,
}

pub fn cardinality_check(mu: &ShiftMultiplicity, c_card: f64) -> Result<CardinalityReport> {
    let count = brute_count_a(mu)?;
    let m = mu.modulus();
    let tbar = mu.support_mod_p().len();
    let scale = libm::ldexp(1.0, tbar as i32);
    let ratio = count as f64 * scale / m.phi() as f64;
    let deviation = (ratio - 1.0).abs() * libm::sqrt(m.p() as f64) / (scale * tbar as f64);
    Ok(CardinalityReport {
        count,
        predicted: predicted_count_a(mu),
        support_size: mu.mu.len(),
        reduced_support_size: tbar,
        collapsed: tbar < mu.mu.len(),
        deviation,
        constant: c_card,
        within_bound: deviation <= c_card,
    })
}

/// One admissible assignment `τ ↦ b_τ ∈ {1..(p-1)/2}`, in support order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BTuple {
    pub shifts: Vec<u64>,
    pub b: Vec<u64>,
}

impl BTuple {
    /// Independent re-check: `b_τ² - τ` agrees for all `τ` mod `p` and is
    /// not divisible by `p`.
    pub fn is_admissible(&self, p: u64) -> bool {
        let half = (p - 1) / 2;
        if self.b.iter().any(|&b| b == 0 || b > half) {
            return false;
        }
        let vals: Vec<u64> = self.shifts.iter().zip(&self.b).map(|(&t, &b)| (b * b % p + p - t % p) % p).collect();
        vals.iter().all(|&v| v != 0 && v == vals[0])
    }
}

fn check_b_scale(mu: &ShiftMultiplicity) -> Result<()> {
    let p = mu.modulus().p();
    let t = mu.mu.len();
    if p > B_PRIME_CEILING || t > B_SUPPORT_CEILING {
        return Err(Error::ScaleExceeded(format!(
            "B-tuple enumeration needs p <= {B_PRIME_CEILING} and |T| <= {B_SUPPORT_CEILING} (p = {p}, |T| = {t})"
        )));
    }
    Ok(())
}

/// All admissible tuples. A tuple is determined by the common value
/// `c = b_τ² - τ mod p`, so this walks `c` and takes the root of `c+τ` in
/// the lower half.
pub fn enumerate_b(mu: &ShiftMultiplicity) -> Result<Vec<BTuple>> {
    check_b_scale(mu)?;
    let p = mu.modulus().p();
    let shifts = mu.support();
    let mut out = Vec::new();
    'c: for c in 1..p {
        let mut b = Vec::with_capacity(shifts.len());
        for &t in &shifts {
            match sqrt_mod_prime((c + t % p) % p, p) {
                Roots::Pair(r, _) => b.push(r.min(p - r)),
                _ => continue 'c,
            }
        }
        out.push(BTuple { shifts: shifts.clone(), b });
    }
    Ok(out)
}

/// Coefficients `ℓ_τ`, one per support element of a [`ShiftMultiplicity`].
fn check_ell(mu: &ShiftMultiplicity, ell: &BTreeMap<u64, i64>) -> Result<Vec<i64>> {
    let p = mu.modulus().p();
    if mu.support_mod_p().len() != mu.mu.len() {
        return Err(Error::HypothesisViolated("shifts in the support must be distinct mod p".into()));
    }
    for t in ell.keys() {
        if !mu.mu.contains_key(t) {
            return Err(Error::InvalidArgument(format!("coefficient given for shift {t} outside the support")));
        }
    }
    let coeffs: Vec<i64> = mu.mu.keys().map(|t| ell.get(t).copied().unwrap_or(0)).collect();
    if coeffs.iter().all(|&l| l == 0) {
        return Err(Error::ZeroTuple);
    }
    if let Some(&l) = coeffs.iter().find(|l| l.unsigned_abs() >= p) {
        return Err(Error::HypothesisViolated(format!("|ℓ| = {} must be below p = {p}", l.unsigned_abs())));
    }
    Ok(coeffs)
}

/// Build a coefficient map from `(τ, ℓ_τ)` pairs, reducing `τ` mod `p^n`.
pub fn ell_map(m: &PrimePowerModulus, pairs: &[(i64, i64)]) -> BTreeMap<u64, i64> {
    pairs.iter().map(|&(t, l)| (m.reduce(t), l)).collect()
}

/// Admissible tuples of one `μ` with the inverse powers `b̄_τ^{2j-1} mod p`
/// precomputed, so many coefficient tuples `ℓ` can be counted cheaply.
#[derive(Debug, Clone)]
pub struct NCounter {
    mu: ShiftMultiplicity,
    tuples: Vec<BTuple>,
    /// `powers[i][τ][j-1] = b̄_τ^{2j-1}` for tuple `i`, `1 <= j <= n-1`.
    powers: Vec<Vec<Vec<u64>>>,
}

impl NCounter {
    pub fn new(mu: &ShiftMultiplicity) -> Result<Self> {
        let tuples = enumerate_b(mu)?;
        let p = mu.modulus().p();
        let jmax = (mu.modulus().n() - 1).max(1) as u64;
        let powers = tuples
            .iter()
            .map(|t| {
                t.b.iter()
                    .map(|&b| {
                        let bi = inv_mod(b, p).expect("b is a unit mod p");
                        (1..=jmax).map(|j| mod_pow(bi, 2 * j - 1, p)).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { mu: mu.clone(), tuples, powers })
    }

    pub fn tuples(&self) -> &[BTuple] {
        &self.tuples
    }

    /// `m(j)` for tuple `i`.
    fn m_value(&self, coeffs: &[i64], i: usize, j: u32) -> u64 {
        let p = self.mu.modulus().p() as i64;
        let mut s = 0i64;
        for (&l, pw) in coeffs.iter().zip(&self.powers[i]) {
            s = (s + l.rem_euclid(p) * pw[j as usize - 1] as i64) % p;
        }
        s as u64
    }

    fn higher_vanish(&self, coeffs: &[i64], i: usize) -> bool {
        (2..self.mu.modulus().n()).all(|j| self.m_value(coeffs, i, j) == 0)
    }

    /// Per-`w` counts `N(μ, ℓ; w)` for `w = 0..p`.
    pub fn counts(&self, ell: &BTreeMap<u64, i64>) -> Result<Vec<u64>> {
        let coeffs = check_ell(&self.mu, ell)?;
        let mut counts = alloc::vec![0u64; self.mu.modulus().p() as usize];
        for i in 0..self.tuples.len() {
            if self.higher_vanish(&coeffs, i) {
                counts[self.m_value(&coeffs, i, 1) as usize] += 1;
            }
        }
        Ok(counts)
    }

    /// Tuples satisfying only the `j >= 2` congruences.
    pub fn higher_congruences(&self, ell: &BTreeMap<u64, i64>) -> Result<u64> {
        let coeffs = check_ell(&self.mu, ell)?;
        Ok((0..self.tuples.len()).filter(|&i| self.higher_vanish(&coeffs, i)).count() as u64)
    }

    pub fn bound_report(&self, ell: &BTreeMap<u64, i64>, c_n: f64) -> Result<CountingBoundReport> {
        let counts = self.counts(ell)?;
        let (argmax_w, n_max) =
            counts.iter().enumerate().fold((0u64, 0u64), |best, (w, &c)| if c > best.1 { (w as u64, c) } else { best });
        let t = self.mu.mu.len();
        let bound = c_n * t as f64 * libm::ldexp(1.0, t as i32);
        let ell_text = ell.iter().map(|(t, l)| format!("{t}:{l}")).collect::<Vec<_>>().join(",");
        Ok(CountingBoundReport { ell: ell_text, n_max, argmax_w, bound, within_bound: n_max as f64 <= bound })
    }
}

/// Per-`w` counts `N(μ, ℓ; w)` for `w = 0..p`.
pub fn count_n_all(mu: &ShiftMultiplicity, ell: &BTreeMap<u64, i64>) -> Result<Vec<u64>> {
    check_ell(mu, ell)?;
    NCounter::new(mu)?.counts(ell)
}

/// `N(μ, ℓ; w)`: admissible tuples with `m(1) ≡ w` and `m(j) ≡ 0` for
/// `2 <= j <= n-1`, where `m(j) = Σ ℓ_τ b̄_τ^{2j-1} mod p`.
pub fn count_n(mu: &ShiftMultiplicity, ell: &BTreeMap<u64, i64>, w: u64) -> Result<u64> {
    let p = mu.modulus().p();
    Ok(count_n_all(mu, ell)?[(w % p) as usize])
}

/// Admissible tuples satisfying only the `j >= 2` congruences.
pub fn count_higher_congruences(mu: &ShiftMultiplicity, ell: &BTreeMap<u64, i64>) -> Result<u64> {
    check_ell(mu, ell)?;
    NCounter::new(mu)?.higher_congruences(ell)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CountingBoundReport {
    pub ell: String,
    pub n_max: u64,
    pub argmax_w: u64,
    /// `C_N · |T| · 2^{|T|}`.
    pub bound: f64,
    pub within_bound: bool,
}

pub fn check_counting_bound(mu: &ShiftMultiplicity, ell: &BTreeMap<u64, i64>, c_n: f64) -> Result<CountingBoundReport> {
    check_ell(mu, ell)?;
    NCounter::new(mu)?.bound_report(ell, c_n)
}

/// One grid point of a verification sweep.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerifyReport {
    pub p: u64,
    pub n: u32,
    pub mu: String,
    #[cfg_attr(feature = "serde", serde(rename = "S_value"))]
    pub s_value: f64,
    pub main_term: f64,
    pub deviation: f64,
    #[cfg_attr(feature = "serde", serde(rename = "countA"))]
    pub count_a: u64,
    #[cfg_attr(feature = "serde", serde(rename = "predictedA"))]
    pub predicted_a: f64,
    /// `max_w N(μ, 1; w)` with `ℓ_τ = 1` on the support, when enumerable.
    #[cfg_attr(feature = "serde", serde(rename = "N_max"))]
    pub n_max: Option<u64>,
    pub bound: Option<f64>,
    pub hypothesis_holds: bool,
}

/// Complete moment, exact main term and (when small enough) the counting
/// bound with unit coefficients.
pub fn verify_point(table: &KloostermanTable, mu: &ShiftMultiplicity, c_n: f64) -> Result<VerifyReport> {
    let s_value = complete_sum_moment(table, mu)?;
    let count_a = brute_count_a(mu)?;
    let main = main_term(mu, CountA::Exact(count_a));
    let m = mu.modulus();
    let enumerable =
        m.p() <= B_PRIME_CEILING && mu.mu.len() <= B_SUPPORT_CEILING && mu.support_mod_p().len() == mu.mu.len();
    let counting = if enumerable {
        let ell: BTreeMap<u64, i64> = mu.mu.keys().map(|&t| (t, 1)).collect();
        Some(check_counting_bound(mu, &ell, c_n)?)
    } else {
        None
    };
    Ok(VerifyReport {
        p: m.p(),
        n: m.n(),
        mu: format!("{mu}"),
        s_value,
        main_term: main,
        deviation: (s_value - main).abs(),
        count_a,
        predicted_a: predicted_count_a(mu),
        n_max: counting.as_ref().map(|c| c.n_max),
        bound: counting.as_ref().map(|c| c.bound),
        hypothesis_holds: mu.hypothesis_holds(),
    })
}
