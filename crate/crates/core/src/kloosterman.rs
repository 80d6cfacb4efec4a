//! Normalized Kloosterman sums `Kl_{p^n}(a) = p^(-n/2) Σ_{x unit} e((a x + x̄)/p^n)`.
//!
//! Two evaluators are provided and kept independent of each other:
//!
//! * the direct oracle sums the defining exponential sum term by term;
//! * the closed-form evaluator takes a square root `s` of `a` modulo `p^n`
//!   and returns `2 (s/p^n) cos(4πs/p^n + θ)`, or `0` when `a` is not a
//!   square modulo `p`.
//!
//! The phase `θ` is pinned by [`salie_phase`] and validated against the
//! oracle, not taken on faith.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::modmath::{inv_mod, jacobi_symbol, mul_mod, sqrt_mod_prime_power, PrimePowerModulus};
use crate::numeric::{unit_root, CompensatedSum};

/// Default largest modulus the direct oracle accepts.
pub const ORACLE_CEILING: u64 = 10_000_000;

/// Oracle sums with magnitude below this are reported as exact zeros.
pub const DIRECT_ZERO_TOLERANCE: f64 = 1e-9;

/// Imaginary residue tolerated in the (real) direct sum.
pub const DIRECT_IMAG_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct KloostermanValue {
    pub value: f64,
    /// The sum vanishes identically (exactly `0.0` in `value`).
    pub is_zero_class: bool,
}

impl KloostermanValue {
    fn new(value: f64, is_zero_class: bool) -> Self {
        debug_assert!(!is_zero_class || value == 0.0);
        assert!(value.abs() <= 2.0 + 1e-9, "Kloosterman value {value} out of [-2, 2]");
        Self { value, is_zero_class }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Evaluator {
    DirectOracle,
    SalieFast,
}

/// Which residues a table populates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TableScope {
    Units,
    AllResidues,
}

/// The phase `θ_{p^n}` of the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaliePhase {
    /// `θ = 0`, used when `p^n ≡ 1 (mod 4)`.
    Zero,
    /// `θ = π/2`, used when `p^n ≡ 3 (mod 4)`.
    QuarterTurn,
}

impl SaliePhase {
    pub fn theta(&self) -> f64 {
        match self {
            SaliePhase::Zero => 0.0,
            SaliePhase::QuarterTurn => core::f64::consts::FRAC_PI_2,
        }
    }
}

/// The only place the sign/phase convention of the closed form lives.
pub fn salie_phase(m: &PrimePowerModulus) -> SaliePhase {
    if m.q() % 4 == 1 {
        SaliePhase::Zero
    } else {
        SaliePhase::QuarterTurn
    }
}

/// `2 (s/p^n) cos(4πs/p^n + θ)` for a unit `s`.
///
/// Callers pass the smaller of the two roots so that every code path lands on
/// bit-identical values.
pub fn salie_from_root(m: &PrimePowerModulus, s: u64) -> f64 {
    let q = m.q();
    let sign = jacobi_symbol(s as i64, q) as f64;
    let (c, sn) = unit_root(mul_mod(2, s, q), q);
    let trig = match salie_phase(m) {
        SaliePhase::Zero => c,
        SaliePhase::QuarterTurn => -sn,
    };
    2.0 * sign * trig
}

/// Closed-form evaluation at a unit `a`.
pub fn eval_salie(m: &PrimePowerModulus, a: u64) -> Result<KloostermanValue> {
    let a = a % m.q();
    let roots = sqrt_mod_prime_power(a, m)?;
    Ok(match roots.smaller() {
        Some(s) => KloostermanValue::new(salie_from_root(m, s), false),
        None => KloostermanValue::new(0.0, true),
    })
}

fn check_oracle_scale(m: &PrimePowerModulus, ceiling: u64) -> Result<()> {
    if m.q() > ceiling {
        return Err(Error::OracleScaleExceeded { q: m.q(), ceiling });
    }
    Ok(())
}

fn direct_value(re: f64, im: f64) -> KloostermanValue {
    assert!(im.abs() < DIRECT_IMAG_TOLERANCE, "direct Kloosterman sum has imaginary part {im}");
    if re.abs() < DIRECT_ZERO_TOLERANCE {
        KloostermanValue::new(0.0, true)
    } else {
        KloostermanValue::new(re, false)
    }
}

/// The defining sum divided by `p^(n/2)`, as `(re, im)`, with no rounding
/// to zero. Accepts any residue `a`.
pub fn direct_sum(m: &PrimePowerModulus, a: u64, ceiling: u64) -> Result<(f64, f64)> {
    check_oracle_scale(m, ceiling)?;
    let q = m.q();
    let a = a % q;
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for x in m.units() {
        let xinv = inv_mod(x, q).expect("unit");
        let (c, s) = unit_root((mul_mod(a, x, q) + xinv) % q, q);
        re.add(c);
        im.add(s);
    }
    let scale = libm::sqrt(q as f64);
    Ok((re.value() / scale, im.value() / scale))
}

/// Direct-oracle evaluation using the default ceiling.
pub fn eval_direct(m: &PrimePowerModulus, a: u64) -> Result<KloostermanValue> {
    eval_direct_with_ceiling(m, a, ORACLE_CEILING)
}

pub fn eval_direct_with_ceiling(m: &PrimePowerModulus, a: u64, ceiling: u64) -> Result<KloostermanValue> {
    let (re, im) = direct_sum(m, a, ceiling)?;
    Ok(direct_value(re, im))
}

/// Precomputed inverses and roots of unity for batch oracle evaluation.
#[derive(Debug, Clone)]
struct DirectContext {
    units: Vec<(u64, u64)>,
    roots: Vec<(f64, f64)>,
}

impl DirectContext {
    fn new(m: &PrimePowerModulus) -> Result<Self> {
        let q = m.q();
        let mut units = try_vec(m.phi())?;
        units.extend(m.units().map(|x| (x, inv_mod(x, q).expect("unit"))));
        let mut roots = try_vec(q)?;
        roots.extend((0..q).map(|k| unit_root(k, q)));
        Ok(Self { units, roots })
    }

    fn value(&self, m: &PrimePowerModulus, a: u64) -> KloostermanValue {
        let q = m.q();
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for &(x, xinv) in &self.units {
            let (c, s) = self.roots[((mul_mod(a, x, q) + xinv) % q) as usize];
            re.add(c);
            im.add(s);
        }
        let scale = libm::sqrt(q as f64);
        direct_value(re.value() / scale, im.value() / scale)
    }
}

fn try_vec<T>(len: u64) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len as usize).map_err(|_| Error::AllocationFailure(len))?;
    Ok(v)
}

/// Per-entry evaluation shared by the sequential and parallel table builds.
#[derive(Debug, Clone)]
pub struct TableBuilder {
    modulus: PrimePowerModulus,
    source: Evaluator,
    scope: TableScope,
    direct: Option<DirectContext>,
}

impl TableBuilder {
    pub fn new(m: PrimePowerModulus, source: Evaluator, scope: TableScope) -> Result<Self> {
        Self::with_ceiling(m, source, scope, ORACLE_CEILING)
    }

    pub fn with_ceiling(m: PrimePowerModulus, source: Evaluator, scope: TableScope, ceiling: u64) -> Result<Self> {
        let direct = match source {
            Evaluator::DirectOracle => {
                check_oracle_scale(&m, ceiling)?;
                Some(DirectContext::new(&m)?)
            }
            Evaluator::SalieFast => None,
        };
        Ok(Self { modulus: m, source, scope, direct })
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    pub fn source(&self) -> Evaluator {
        self.source
    }

    /// Table value at residue `a`; `NaN` marks an entry outside the scope.
    pub fn entry(&self, a: u64) -> f64 {
        let m = &self.modulus;
        let unit = m.is_unit(a);
        if !unit && self.scope == TableScope::Units {
            return f64::NAN;
        }
        match &self.direct {
            Some(ctx) => ctx.value(m, a).value,
            // For n >= 2 the sum vanishes at every multiple of p: substituting
            // x -> x(1 + p^(n-1) t) factors out a full character sum mod p.
            None if !unit => 0.0,
            None => eval_salie(m, a).expect("unit").value,
        }
    }

    /// Allocates the dense value array, unpopulated entries set to `NaN`.
    pub fn allocate(&self) -> Result<Vec<f64>> {
        let q = self.modulus.q();
        let mut values = try_vec(q)?;
        values.resize(q as usize, f64::NAN);
        Ok(values)
    }

    pub fn finish(self, values: Vec<f64>) -> KloostermanTable {
        assert_eq!(values.len() as u64, self.modulus.q());
        KloostermanTable { modulus: self.modulus, values, source: self.source, scope: self.scope }
    }

    /// Single-threaded build. The closed-form path enumerates each root pair
    /// once instead of extracting a square root per residue.
    pub fn build(self) -> Result<KloostermanTable> {
        let mut values = self.allocate()?;
        match self.source {
            Evaluator::DirectOracle => {
                for (a, v) in values.iter_mut().enumerate() {
                    *v = self.entry(a as u64);
                }
            }
            Evaluator::SalieFast => {
                let m = self.modulus;
                let q = m.q();
                for (a, v) in values.iter_mut().enumerate() {
                    if m.is_unit(a as u64) || self.scope == TableScope::AllResidues {
                        *v = 0.0;
                    }
                }
                // s < q - s, so s is the smaller root of s^2.
                for s in (1..=q / 2).filter(|&s| m.is_unit(s)) {
                    values[mul_mod(s, s, q) as usize] = salie_from_root(&m, s);
                }
            }
        }
        Ok(self.finish(values))
    }
}

/// Dense table of `Kl_{p^n}(a)` indexed by residue.
#[derive(Debug, Clone, PartialEq)]
pub struct KloostermanTable {
    modulus: PrimePowerModulus,
    values: Vec<f64>,
    source: Evaluator,
    scope: TableScope,
}

impl KloostermanTable {
    pub fn build(m: PrimePowerModulus, source: Evaluator, scope: TableScope) -> Result<Self> {
        TableBuilder::new(m, source, scope)?.build()
    }

    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    pub fn source(&self) -> Evaluator {
        self.source
    }

    pub fn scope(&self) -> TableScope {
        self.scope
    }

    /// Raw values; entries outside the scope are `NaN`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, a: u64) -> Option<f64> {
        let v = *self.values.get(a as usize)?;
        (!v.is_nan()).then_some(v)
    }

    pub fn entry(&self, a: u64) -> Option<KloostermanValue> {
        self.get(a).map(|v| KloostermanValue::new(v, v == 0.0))
    }

    pub fn defined_count(&self) -> u64 {
        self.values.iter().filter(|v| !v.is_nan()).count() as u64
    }

    /// `(a, value)` for every populated residue, increasing in `a`.
    pub fn defined(&self) -> impl Iterator<Item = (u64, KloostermanValue)> + '_ {
        (0..self.values.len() as u64).filter_map(move |a| self.entry(a).map(|e| (a, e)))
    }
}
