//! Defining-sum oracle for every residue at once.
//!
//! With `f(x) = e(x̄/q)` on units and 0 elsewhere,
//! `Kl(a) = q^{-1/2} Σ_x f(x) e(ax/q)` is an inverse DFT of `f`, so one FFT
//! of length `q` replaces `q` separate sums. The closed form is never used.

use klab_core::modmath::{inv_mod, PrimePowerModulus};
use klab_core::numeric::unit_root;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

/// Largest modulus accepted; one complex buffer of this length is allocated.
pub const DFT_CEILING: u64 = 1 << 24;

/// `(re, im)` of `Kl(a)` for `a = 0..q`.
pub fn dft_sums(m: &PrimePowerModulus) -> Option<Vec<(f64, f64)>> {
    let q = m.q();
    if q > DFT_CEILING {
        return None;
    }
    let mut buf: Vec<Complex64> = (0..q)
        .map(|x| match inv_mod(x, q) {
            Some(xi) if m.is_unit(x) => {
                let (c, s) = unit_root(xi, q);
                Complex64::new(c, s)
            }
            _ => Complex64::new(0.0, 0.0),
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(q as usize).process(&mut buf);
    let scale = 1.0 / (q as f64).sqrt();
    Some(buf.into_iter().map(|z| (z.re * scale, z.im * scale)).collect())
}

/// Real parts of [`dft_sums`].
pub fn dft_table(m: &PrimePowerModulus) -> Option<Vec<f64>> {
    dft_sums(m).map(|v| v.into_iter().map(|(re, _)| re).collect())
}
