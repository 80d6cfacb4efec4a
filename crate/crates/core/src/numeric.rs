//! Floating-point helpers shared by the evaluators and statistics.

use core::f64::consts::PI;

/// Neumaier compensated accumulator.
///
/// The result depends on the order in which terms are added, so every caller
/// that needs reproducible output adds in a fixed order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        Self { sum: 0.0, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator into this one.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `(cos, sin)` of `2πk/q` for `0 <= k < q`.
///
/// The residue is first centred in `(-q/2, q/2]` so the angle handed to
/// `libm` lies in `[-π, π]`, which keeps the result accurate for moduli up
/// to `2^62`.
#[inline]
pub fn unit_root(k: u64, q: u64) -> (f64, f64) {
    debug_assert!(k < q);
    let centred = if k > q / 2 { -((q - k) as f64) } else { k as f64 };
    let angle = 2.0 * PI * (centred / q as f64);
    let (s, c) = libm::sincos(angle);
    (c, s)
}

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
const GAUSS_WEIGHTS: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * KRONROD_WEIGHTS[7];
    let mut gauss = fc * GAUSS_WEIGHTS[3];
    for i in 0..7 {
        let dx = half * KRONROD_NODES[i];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += KRONROD_WEIGHTS[i] * pair;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    (kronrod * half, libm::fabs((kronrod - gauss) * half))
}

const MAX_DEPTH: u32 = 48;

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Option<f64> {
    let (value, err) = gauss_kronrod_15(f, a, b);
    if err <= tol {
        return Some(value);
    }
    if depth >= MAX_DEPTH {
        return None;
    }
    let mid = 0.5 * (a + b);
    let left = adapt(f, a, mid, 0.5 * tol, depth + 1)?;
    let right = adapt(f, mid, b, 0.5 * tol, depth + 1)?;
    Some(left + right)
}

/// Adaptive Gauss-Kronrod (7/15) integral of `f` over `[a, b]`, with the
/// interval pre-split into `pieces` equal parts. The absolute tolerance is
/// shared evenly between the pieces. Returns `None` when bisection runs out
/// of depth.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, pieces: usize) -> Option<f64> {
    let pieces = pieces.max(1);
    let width = (b - a) / pieces as f64;
    let piece_tol = tol / pieces as f64;
    let mut total = CompensatedSum::new();
    for i in 0..pieces {
        let lo = a + width * i as f64;
        let hi = if i + 1 == pieces { b } else { lo + width };
        total.add(adapt(&f, lo, hi, piece_tol, 0)?);
    }
    Some(total.value())
}
