//! Modular arithmetic over odd prime-power moduli.
//!
//! Residues are `u64` values in `[0, m)`. Products go through `u128`, which
//! is exact for every modulus up to [`MODULUS_CEILING`].

use crate::error::{Error, Result};

/// Largest admissible modulus `p^n`.
pub const MODULUS_CEILING: u64 = 1 << 62;

/// An odd prime power `q = p^n` with `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PrimePowerModulus {
    p: u64,
    n: u32,
    q: u64,
    phi: u64,
}

impl PrimePowerModulus {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenPrime(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n < 2 {
            return Err(Error::ExponentTooSmall(n));
        }
        let q = p.checked_pow(n).filter(|&q| q <= MODULUS_CEILING).ok_or(Error::ModulusTooLarge { p, n })?;
        Ok(Self { p, n, q, phi: q - q / p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The modulus `p^n`.
    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Euler's totient `p^n - p^(n-1)`.
    #[inline]
    pub fn phi(&self) -> u64 {
        self.phi
    }

    #[inline]
    pub fn is_unit(&self, x: u64) -> bool {
        !x.is_multiple_of(self.p)
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    /// The `j`-th unit in increasing order, `0 <= j < phi`.
    #[inline]
    pub fn unit_at(&self, j: u64) -> u64 {
        let per_block = self.p - 1;
        (j / per_block) * self.p + j % per_block + 1
    }

    /// Units of `Z/p^nZ` in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.phi).map(move |j| self.unit_at(j))
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m`.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Inverse of `x` modulo an arbitrary `m >= 1`, if `gcd(x, m) = 1`.
pub fn inv_mod(x: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((x % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Inverse of `x` modulo `p^n`.
pub fn mod_inv(x: u64, m: &PrimePowerModulus) -> Result<u64> {
    let x = x % m.q();
    if !m.is_unit(x) {
        return Err(Error::NotAUnit { x, q: m.q() });
    }
    Ok(inv_mod(x, m.q()).expect("units are invertible"))
}

/// Jacobi symbol `(a/m)` for odd `m >= 1`.
pub fn jacobi_symbol(a: i64, m: u64) -> i8 {
    assert!(m % 2 == 1, "Jacobi symbol needs an odd modulus, got {m}");
    let mut a = (a as i128).rem_euclid(m as i128) as u64;
    let mut m = m;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && (m % 8 == 3 || m % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        core::mem::swap(&mut a, &mut m);
        a %= m;
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

/// Square roots of a residue. Pairs are ordered, smaller root first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Roots {
    None,
    Zero,
    Pair(u64, u64),
}

impl Roots {
    pub fn smaller(&self) -> Option<u64> {
        match *self {
            Roots::None => None,
            Roots::Zero => Some(0),
            Roots::Pair(s, _) => Some(s),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Roots::None)
    }
}

fn ordered_pair(s: u64, m: u64) -> Roots {
    let t = m - s;
    if s <= t {
        Roots::Pair(s, t)
    } else {
        Roots::Pair(t, s)
    }
}

/// Smallest quadratic non-residue modulo the odd prime `p`.
pub fn smallest_non_residue(p: u64) -> u64 {
    (2..p).find(|&z| jacobi_symbol(z as i64, p) == -1).expect("odd primes have non-residues")
}

/// Tonelli-Shanks square root modulo an odd prime, using the smallest
/// non-residue as auxiliary.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Roots {
    let a = a % p;
    if a == 0 {
        return Roots::Zero;
    }
    if jacobi_symbol(a as i64, p) != 1 {
        return Roots::None;
    }
    if p % 4 == 3 {
        return ordered_pair(mod_pow(a, (p + 1) / 4, p), p);
    }
    let twos = (p - 1).trailing_zeros();
    let odd = (p - 1) >> twos;
    let z = smallest_non_residue(p);

    let mut m = twos;
    let mut c = mod_pow(z, odd, p);
    let mut t = mod_pow(a, odd, p);
    let mut r = mod_pow(a, odd.div_ceil(2), p);
    while t != 1 {
        // least i with t^(2^i) = 1
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = mod_pow(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    ordered_pair(r, p)
}

/// Square roots of a unit modulo `p^n`, lifted from the root modulo `p` by
/// Newton (Hensel) iteration.
pub fn sqrt_mod_prime_power(a: u64, m: &PrimePowerModulus) -> Result<Roots> {
    let q = m.q();
    let a = a % q;
    if !m.is_unit(a) {
        return Err(Error::NotAUnit { x: a, q });
    }
    let mut s = match sqrt_mod_prime(a % m.p(), m.p()) {
        Roots::Pair(s, _) => s,
        _ => return Ok(Roots::None),
    };
    // Each step doubles the p-adic precision of s.
    while mul_mod(s, s, q) != a {
        let residual = (mul_mod(s, s, q) + q - a) % q;
        let inv_2s = inv_mod(mul_mod(2, s, q), q).expect("2s is a unit");
        s = (s + q - mul_mod(residual, inv_2s, q)) % q;
    }
    Ok(ordered_pair(s, q))
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if m.is_multiple_of(b) {
            return m == b;
        }
    }
    let twos = (m - 1).trailing_zeros();
    let d = (m - 1) >> twos;
    'witness: for &b in &MR_BASES {
        let mut x = mod_pow(b, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
