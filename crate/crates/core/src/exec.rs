//! Pluggable execution for the heavy loops.
//!
//! Work is always split into index-addressed pieces whose boundaries do not
//! depend on the executor, and pieces are merged in index order. Any
//! executor that returns `map_range` results in index order therefore gives
//! bit-identical output.

use alloc::vec::Vec;

use crate::error::Result;
use crate::kloosterman::{Evaluator, KloostermanTable, TableBuilder};
use crate::model::{mc_blocks, mc_interval_block, mc_moment_block, IntervalTally, MomentTally};
use crate::shortsum::{check_ensemble_inputs, short_sum_at, EnsembleResult, ShiftSet};

/// Residues (or centers) per piece in table and ensemble builds.
pub const CHUNK_LEN: u64 = 1 << 12;

pub trait Executor: Sync {
    /// `[f(0), ..., f(n-1)]`, in index order.
    fn map_range<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_range<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}

fn chunks(len: u64) -> usize {
    len.div_ceil(CHUNK_LEN) as usize
}

pub fn build_table<E: Executor>(exec: &E, builder: TableBuilder) -> Result<KloostermanTable> {
    if builder.source() == Evaluator::SalieFast {
        // the root-pair scatter is already linear and memory bound
        return builder.build();
    }
    let mut values = builder.allocate()?;
    let q = builder.modulus().q();
    let pieces = exec.map_range(chunks(q), |c| {
        let lo = c as u64 * CHUNK_LEN;
        let hi = (lo + CHUNK_LEN).min(q);
        (lo..hi).map(|a| builder.entry(a)).collect::<Vec<f64>>()
    });
    for (c, piece) in pieces.into_iter().enumerate() {
        let lo = c * CHUNK_LEN as usize;
        values[lo..lo + piece.len()].copy_from_slice(&piece);
    }
    Ok(builder.finish(values))
}

pub fn ensemble<E: Executor>(exec: &E, table: &KloostermanTable, shifts: &ShiftSet) -> Result<EnsembleResult> {
    check_ensemble_inputs(table, shifts)?;
    let m = *table.modulus();
    let phi = m.phi();
    let pieces = exec.map_range(chunks(phi), |c| {
        let lo = c as u64 * CHUNK_LEN;
        let hi = (lo + CHUNK_LEN).min(phi);
        (lo..hi).map(|j| short_sum_at(table, shifts, m.unit_at(j))).collect::<Vec<f64>>()
    });
    Ok(EnsembleResult::from_values(shifts.clone(), pieces.concat()))
}

pub fn mc_moments<E: Executor>(exec: &E, h: u64, k_max: u32, samples: u64, seed: u64) -> MomentTally {
    let blocks: Vec<(u64, u64)> = mc_blocks(samples).collect();
    let parts = exec.map_range(blocks.len(), |i| {
        let (b, len) = blocks[i];
        mc_moment_block(h, k_max, seed, b, len)
    });
    parts.iter().fold(MomentTally::new(k_max), |mut acc, t| {
        acc.merge(t);
        acc
    })
}

pub fn mc_intervals<E: Executor>(exec: &E, h: u64, intervals: &[(f64, f64)], samples: u64, seed: u64) -> IntervalTally {
    let blocks: Vec<(u64, u64)> = mc_blocks(samples).collect();
    let parts = exec.map_range(blocks.len(), |i| {
        let (b, len) = blocks[i];
        mc_interval_block(h, intervals, seed, b, len)
    });
    parts.iter().fold(IntervalTally::new(intervals.len()), |mut acc, t| {
        acc.merge(t);
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kloosterman::TableScope;
    use crate::model::monte_carlo_moments;
    use crate::modmath::PrimePowerModulus;
    use crate::shortsum::{ensemble as seq_ensemble, make_shift_set, ShiftSpec};

    /// Runs pieces in reverse to show results only depend on the index.
    struct Reversed;

    impl Executor for Reversed {
        fn map_range<T, F>(&self, n: usize, f: F) -> Vec<T>
        where
            T: Send,
            F: Fn(usize) -> T + Sync + Send,
        {
            let mut out: Vec<T> = (0..n).rev().map(f).collect();
            out.reverse();
            out
        }
    }

    #[test]
    fn table_matches_sequential_build() {
        let m = PrimePowerModulus::new(23, 3).unwrap();
        for source in [Evaluator::DirectOracle, Evaluator::SalieFast] {
            let b = TableBuilder::new(m, source, TableScope::AllResidues).unwrap();
            let par = build_table(&Reversed, b.clone()).unwrap();
            assert_eq!(par, b.build().unwrap());
        }
    }

    #[test]
    fn ensemble_and_mc_match_sequential() {
        let m = PrimePowerModulus::new(101, 2).unwrap();
        let t = KloostermanTable::build(m, Evaluator::SalieFast, TableScope::AllResidues).unwrap();
        let s = make_shift_set(&m, &ShiftSpec::Interval(10)).unwrap();
        assert_eq!(ensemble(&Reversed, &t, &s).unwrap(), seq_ensemble(&t, &s).unwrap());
        let samples = 3 * crate::model::MC_BLOCK_LEN + 17;
        assert_eq!(mc_moments(&Reversed, 5, 4, samples, 9), monte_carlo_moments(5, 4, samples, 9));
        assert_eq!(
            mc_intervals(&Reversed, 5, &[(-1.0, 1.0)], samples, 9),
            crate::model::monte_carlo_intervals(5, &[(-1.0, 1.0)], samples, 9)
        );
    }
}
