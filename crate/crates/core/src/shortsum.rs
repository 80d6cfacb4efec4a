//! Shift sets, translated short sums and their empirical moments.
//!
//! For a shift set `I` of size `H` and a unit center `x`, the short sum is
//! `S(x) = H^(-1/2) Σ_{τ∈I} Kl(x + τ)`. An ensemble evaluates it at every unit
//! center, in increasing order of `x`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kloosterman::{KloostermanTable, TableScope};
use crate::modmath::PrimePowerModulus;
use crate::numeric::CompensatedSum;

/// How a shift set is produced.
///
/// Text form: `interval:H`, `random:H:seed=S` or `explicit:t1,t2,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftSpec {
    Interval(u64),
    Random { h: u64, seed: u64 },
    Explicit(Vec<i64>),
}

impl fmt::Display for ShiftSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftSpec::Interval(h) => write!(f, "interval:{h}"),
            ShiftSpec::Random { h, seed } => write!(f, "random:{h}:seed={seed}"),
            ShiftSpec::Explicit(list) => {
                f.write_str("explicit:")?;
                for (i, t) in list.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad {what} `{s}`")))
}

impl FromStr for ShiftSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        match kind.trim() {
            "interval" => Ok(ShiftSpec::Interval(parse_num(rest, "interval size")?)),
            "random" => {
                let (h, seed) = rest.split_once(':').unwrap_or((rest, "seed=0"));
                let seed = seed.trim();
                let seed = seed.strip_prefix("seed=").unwrap_or(seed);
                Ok(ShiftSpec::Random { h: parse_num(h, "random size")?, seed: parse_num(seed, "seed")? })
            }
            "explicit" => {
                let list = rest
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_num(t, "shift"))
                    .collect::<Result<Vec<i64>>>()?;
                Ok(ShiftSpec::Explicit(list))
            }
            other => Err(Error::Parse(format!("unknown shift spec `{other}` (expected interval, random or explicit)"))),
        }
    }
}

/// A validated set of shifts, pairwise incongruent modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSet {
    modulus: PrimePowerModulus,
    elements: Vec<u64>,
    spec: ShiftSpec,
}

impl ShiftSet {
    pub fn modulus(&self) -> &PrimePowerModulus {
        &self.modulus
    }

    /// Shifts reduced modulo `p^n`, strictly increasing.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn h(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn spec(&self) -> &ShiftSpec {
        &self.spec
    }

    /// The set `I + c`, validated afresh.
    pub fn translate(&self, c: i64) -> Result<ShiftSet> {
        let shifted = self.elements.iter().map(|&t| t as i64 + c).collect();
        make_shift_set(&self.modulus, &ShiftSpec::Explicit(shifted))
    }
}

fn validate(m: &PrimePowerModulus, mut elements: Vec<u64>, spec: ShiftSpec) -> Result<ShiftSet> {
    let p = m.p();
    if elements.is_empty() {
        return Err(Error::EmptyShiftSet);
    }
    elements.sort_unstable();
    if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateShift(w[0]));
    }
    if elements.len() as u64 >= p {
        return Err(Error::CardinalityTooLarge { h: elements.len() as u64, p });
    }
    let mut by_residue: Vec<(u64, u64)> = elements.iter().map(|&x| (x % p, x)).collect();
    by_residue.sort_unstable();
    if let Some(w) = by_residue.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::SeparationViolated { x: w[0].1, y: w[1].1, p });
    }
    Ok(ShiftSet { modulus: *m, elements, spec })
}

pub fn make_shift_set(m: &PrimePowerModulus, spec: &ShiftSpec) -> Result<ShiftSet> {
    let p = m.p();
    let elements = match *spec {
        ShiftSpec::Interval(h) | ShiftSpec::Random { h, .. } if h >= p => {
            return Err(Error::CardinalityTooLarge { h, p })
        }
        ShiftSpec::Interval(h) => (0..h).collect(),
        ShiftSpec::Random { h, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let lifts = m.q() / p;
            let mut residues: Vec<u64> =
                index::sample(&mut rng, p as usize, h as usize).into_iter().map(|r| r as u64).collect();
            residues.sort_unstable();
            residues.into_iter().map(|r| r + p * rng.random_range(0..lifts)).collect()
        }
        ShiftSpec::Explicit(ref list) => list.iter().map(|&t| m.reduce(t)).collect(),
    };
    validate(m, elements, spec.clone())
}

/// Short sums at every unit center.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    shift_set: ShiftSet,
    values: Vec<f64>,
}

impl EnsembleResult {
    pub fn from_values(shift_set: ShiftSet, values: Vec<f64>) -> Self {
        assert_eq!(values.len() as u64, shift_set.modulus().phi());
        Self { shift_set, values }
    }

    pub fn shift_set(&self) -> &ShiftSet {
        &self.shift_set
    }

    /// One value per unit center, centers increasing.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `(x, S(x))` pairs.
    pub fn centers(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        let m = *self.shift_set.modulus();
        self.values.iter().enumerate().map(move |(j, &v)| (m.unit_at(j as u64), v))
    }
}

/// Checks that `table` can serve the ensemble over `shifts`.
pub fn check_ensemble_inputs(table: &KloostermanTable, shifts: &ShiftSet) -> Result<()> {
    let (left, right) = (table.modulus().q(), shifts.modulus().q());
    if table.modulus() != shifts.modulus() {
        return Err(Error::ModulusMismatch { left, right });
    }
    if table.scope() != TableScope::AllResidues {
        // centers are units but x + τ need not be
        let needed = shifts
            .elements()
            .iter()
            .flat_map(|&t| table.modulus().units().map(move |x| (x + t) % left))
            .find(|&y| table.get(y).is_none());
        if let Some(y) = needed {
            return Err(Error::IncompleteTable(y));
        }
    }
    Ok(())
}

/// Short sum at a single center. No validation; see [`check_ensemble_inputs`].
#[inline]
pub fn short_sum_at(table: &KloostermanTable, shifts: &ShiftSet, x: u64) -> f64 {
    let q = table.modulus().q();
    let values = table.values();
    let total: f64 = shifts.elements().iter().map(|&t| values[((x + t) % q) as usize]).sum();
    total / libm::sqrt(shifts.h() as f64)
}

pub fn ensemble(table: &KloostermanTable, shifts: &ShiftSet) -> Result<EnsembleResult> {
    check_ensemble_inputs(table, shifts)?;
    let values = table.modulus().units().map(|x| short_sum_at(table, shifts, x)).collect();
    Ok(EnsembleResult::from_values(shifts.clone(), values))
}

/// `M_k = φ^(-1) Σ_x S(x)^k`, compensated. Meant for `k <= 64`.
pub fn empirical_moment(e: &EnsembleResult, k: u32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let acc: CompensatedSum = e.values().iter().map(|&v| libm::pow(v, k as f64)).collect();
    acc.value() / e.values().len() as f64
}
