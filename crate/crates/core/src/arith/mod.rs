//! Exact arithmetic: primes, Legendre symbols, residue tables and integer
//! polynomials.

mod poly;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::{Error, Result};

pub use num::{BigInt, BigRational};
pub use poly::{cubic_discriminant, distinct_root_count, poly_eval_mod, IntPoly, ModPoly};

/// A validated prime `p >= 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::PrimeTooSmall(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `a mod p` in `[0, p)`.
    #[inline]
    pub fn reduce(self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }

    pub fn sqrt(self) -> f64 {
        (self.0 as f64).sqrt()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Prime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.0)
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &BASES {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(a | p)` by Euler's criterion.
pub fn legendre(a: i64, p: Prime) -> i8 {
    let r = p.reduce(a);
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p.get() - 1) / 2, p.get()) == 1 {
        1
    } else {
        -1
    }
}

/// Precomputed quadratic character modulo `p`.
///
/// The table is stored twice over (`chi[u] == chi[u + p]`) so that inner
/// loops can index `g + (p - b)` for `g, b < p` without a branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRTable {
    p: Prime,
    chi: Vec<i8>,
}

impl QRTable {
    pub fn new(p: Prime) -> Self {
        let n = p.get() as usize;
        let mut chi = vec![-1i8; 2 * n];
        chi[0] = 0;
        chi[n] = 0;
        // squares of 1..=(p-1)/2 hit every nonzero residue exactly once
        for x in 1..=((n - 1) / 2) as u64 {
            let s = mul_mod(x, x, n as u64) as usize;
            chi[s] = 1;
            chi[s + n] = 1;
        }
        QRTable { p, chi }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Character values for residues `0..p`.
    #[inline]
    pub fn values(&self) -> &[i8] {
        &self.chi[..self.p.get() as usize]
    }

    /// Character values for `0..2p`, periodic with period `p`.
    #[inline]
    pub(crate) fn doubled(&self) -> &[i8] {
        &self.chi
    }

    #[inline]
    pub fn get(&self, u: u64) -> i8 {
        self.chi[(u % self.p.get()) as usize]
    }
}

pub fn build_qr_table(p: Prime) -> QRTable {
    QRTable::new(p)
}

/// `#{x mod p : x³ ≡ c}`.
pub fn count_cube_roots(c: i64, p: Prime) -> u32 {
    let m = p.get();
    let target = p.reduce(c);
    (0..m)
        .filter(|&x| mul_mod(mul_mod(x, x, m), x, m) == target)
        .count() as u32
}
