//! Exact-arithmetic toolkit for classical Kloosterman sums of odd prime-power
//! moduli `p^n` (`n >= 2`), their translated short sums, and the
//! arcsine-Dirac probabilistic model that describes their limiting law.
//!
//! The crate is `no_std` and only needs `alloc`. Floating-point special
//! functions come from [`libm`], so results do not depend on the platform
//! math library. Everything that touches files, threads or the command line
//! lives in the companion `klab` crate.
//!
//! Module map:
//!
//! * [`modmath`]: modular arithmetic over `p^n` (inverses, Jacobi symbols,
//!   square roots with Hensel lifting, primality).
//! * [`kloosterman`]: the defining-sum oracle, the closed-form cosine
//!   evaluator and dense tables.
//! * [`shortsum`]: shift sets, ensembles of short sums over all unit centers,
//!   empirical moments.
//! * [`model`]: the law `½δ₀ + μ₁`, exact moments of `S_H`, Monte Carlo and
//!   characteristic functions.
//! * [`verify`]: complete shifted-product moments and the associated counting
//!   problems.
//! * [`stats`]: empirical CDF, Kolmogorov-Smirnov distance, histograms.
//! * [`theorems`]: convergence drivers producing reports with verdicts.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constants;
pub mod error;
pub mod exec;
pub mod kloosterman;
pub mod model;
pub mod modmath;
pub mod numeric;
pub mod shortsum;
pub mod stats;
pub mod theorems;
pub mod verify;

pub use error::{Error, Result};
pub use exec::{Executor, Sequential};

pub use kloosterman::{Evaluator, KloostermanTable, KloostermanValue, TableScope};
pub use modmath::PrimePowerModulus;

pub use shortsum::{EnsembleResult, ShiftSet, ShiftSpec};
