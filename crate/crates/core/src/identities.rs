//! Exact combinatorial identities behind the moment method, plus Chebyshev
//! polynomial evaluation.
//!
//! Everything that can be exact is: binomials, Catalan numbers and the
//! `cos(2mθ)` expansion coefficients are big integers or big rationals, and
//! identity checks return both sides for exact comparison. Floating point
//! appears only where an angle is involved.

use std::ops::{Add, Mul, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::{Error, Result};

/// Binomial coefficient extended to any integer upper index:
/// `n(n−1)⋯(n−k+1)/k!` for `k > 0`, `1` for `k = 0`, `0` for `k < 0`.
pub fn binom_ext(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    // exact at every step: the running product of j consecutive integers is divisible by j!
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
        acc /= BigInt::from(j + 1);
    }
    acc
}

pub fn catalan(r: u64) -> BigInt {
    binom_ext(2 * r as i64, r as i64) / BigInt::from(r + 1)
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `c_{2m,2r}` in `2cos(2mθ) = Σ_{r=0}^{m} c_{2m,2r} (2cosθ)^{2r}`.
///
/// `c_{0,0} = 0`, `c_{2m,0} = 2(−1)^m` for `m ≥ 1`, and otherwise
/// `(−1)^{m+r} · m·(m+r−1)! / ((m−r)! · (2r)!/2)`.
pub fn expansion_coeff(m: i64, r: i64) -> Result<BigRational> {
    if m < 0 {
        return Err(Error::OutOfRange { name: "m", value: m, expected: "m >= 0" });
    }
    if r < 0 || r > m {
        return Err(Error::OutOfRange { name: "r", value: r, expected: "0 <= r <= m" });
    }
    let sign = if (m + r) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    if m == 0 {
        return Ok(BigRational::zero());
    }
    if r == 0 {
        return Ok(BigRational::from_integer(sign * 2));
    }
    let (m, r) = (m as u64, r as u64);
    let num = sign * BigInt::from(m) * factorial(m + r - 1) * 2;
    let den = factorial(m - r) * factorial(2 * r);
    Ok(BigRational::new(num, den))
}

/// `|2cos(2mθ) − Σ_r c_{2m,2r}(2cosθ)^{2r}|`.
///
/// The right side is evaluated exactly at the f64 value of `2cosθ`; in
/// floating point the alternating coefficients would cancel catastrophically
/// once `m` is in the twenties.
pub fn cos2m_expansion_check(m: i64, theta: f64) -> Result<f64> {
    if !(1..=30).contains(&m) {
        return Err(Error::OutOfRange { name: "m", value: m, expected: "1 <= m <= 30" });
    }
    let x = BigRational::from_float(2.0 * theta.cos()).expect("finite cosine");
    let x2 = &x * &x;
    let mut acc = BigRational::zero();
    for r in (0..=m).rev() {
        acc = acc * &x2 + expansion_coeff(m, r)?;
    }
    let rhs = to_f64(&acc);
    Ok((2.0 * (2.0 * m as f64 * theta).cos() - rhs).abs())
}

pub fn to_f64(q: &BigRational) -> f64 {
    // split off the integer part so huge numerators/denominators do not overflow
    let int = q.trunc();
    let frac = q - &int;
    let i = num::ToPrimitive::to_f64(int.numer()).unwrap_or(f64::NAN);
    let scale = frac.denom().bits().saturating_sub(60);
    let (n, d) = if scale > 0 {
        (frac.numer() >> scale as usize, frac.denom() >> scale as usize)
    } else {
        (frac.numer().clone(), frac.denom().clone())
    };
    let f = match (num::ToPrimitive::to_f64(&n), num::ToPrimitive::to_f64(&d)) {
        (Some(n), Some(d)) if d != 0.0 => n / d,
        _ => 0.0,
    };
    i + f
}

/// `Σ_{r=0}^{m} (−1)^r C(m,r) C(m+r,r) / ((r+1)(m+r))`.
pub fn lemma_sum(m: i64) -> Result<BigRational> {
    if m < 1 {
        return Err(Error::OutOfRange { name: "m", value: m, expected: "m >= 1" });
    }
    let mut acc = BigRational::zero();
    for r in 0..=m {
        let term = BigRational::new(
            binom_ext(m, r) * binom_ext(m + r, r),
            BigInt::from((r + 1) * (m + r)),
        );
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Both sides of `Σ_k C(r, m+k) C(s, n−k) = C(r+s, m+n)`.
///
/// Terms vanish unless `m+k ≥ 0` and `n−k ≥ 0`, so `k` runs over `[−m, n]`.
pub fn vandermonde_check(r: i64, s: i64, m: i64, n: i64) -> (BigInt, BigInt) {
    let lhs = (-m..=n)
        .map(|k| binom_ext(r, m + k) * binom_ext(s, n - k))
        .sum();
    (lhs, binom_ext(r + s, m + n))
}

/// Both sides of `Σ_k (−1)^k C(l, m+k) C(s+k, n) = (−1)^{l+m} C(s−m, n−l)`
/// for nonnegative `l, m, s, n`.
///
/// `C(l, m+k)` vanishes outside `0 ≤ m+k ≤ l`, so `k` runs over `[−m, l−m]`.
pub fn lemma_a2_check(l: i64, m: i64, s: i64, n: i64) -> (BigInt, BigInt) {
    let lhs = (-m..=l - m)
        .map(|k| {
            let t = binom_ext(l, m + k) * binom_ext(s + k, n);
            if k.rem_euclid(2) == 0 {
                t
            } else {
                -t
            }
        })
        .sum();
    let rhs = binom_ext(s - m, n - l);
    let rhs = if (l + m) % 2 == 0 { rhs } else { -rhs };
    (lhs, rhs)
}

/// `Σ_{r=0}^{m} c_{2m,2r} · Catalan(r)`: the Sato–Tate average of `2cos(2mθ)`
/// reconstructed from the semicircle moments. Equals `(−1)^m·2m·lemma_sum(m)`.
pub fn catalan_orthogonality(m: i64) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for r in 0..=m {
        acc += expansion_coeff(m, r)? * BigRational::from_integer(catalan(r as u64));
    }
    Ok(acc)
}

/// Chebyshev polynomial of the first kind by the three-term recurrence.
pub fn chebyshev_t<T>(l: u32, y: &T) -> T
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    chebyshev_t_all(l, y).pop().unwrap()
}

/// `[T_0(y), …, T_l(y)]`.
pub fn chebyshev_t_all<T>(l: u32, y: &T) -> Vec<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    recurrence(l, T::one(), y.clone(), y)
}

/// Chebyshev polynomial of the second kind by the three-term recurrence.
pub fn chebyshev_u<T>(l: u32, y: &T) -> T
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    chebyshev_u_all(l, y).pop().unwrap()
}

/// `[U_0(y), …, U_l(y)]`.
pub fn chebyshev_u_all<T>(l: u32, y: &T) -> Vec<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    recurrence(l, T::one(), y + y, y)
}

fn recurrence<T>(l: u32, first: T, second: T, y: &T) -> Vec<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    let two_y = y + y;
    let mut out = Vec::with_capacity(l as usize + 1);
    out.push(first);
    if l >= 1 {
        out.push(second);
    }
    for i in 2..=l as usize {
        let next = &(&two_y * &out[i - 1]) - &out[i - 2];
        out.push(next);
    }
    out
}
