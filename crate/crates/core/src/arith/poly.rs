use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use super::Prime;
use crate::{Error, Result};

/// Dense polynomial over ℤ, coefficients in ascending degree order.
///
/// The coefficient list never has a trailing zero; the zero polynomial is the
/// empty list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The indeterminate `T`.
    pub fn t() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by `d`: the remainder of `lc(d)^k · self`
    /// with `k = deg(self) - deg(d) + 1`, computed without leaving ℤ.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-remainder by zero polynomial");
        let lc = d.leading().unwrap();
        let Some(ad) = self.degree() else {
            return Self::zero();
        };
        if ad < dd {
            return self.clone();
        }
        let mut left = ad - dd + 1;
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let rd = r.len() - 1;
            let lead = r[rd].clone();
            for c in r.iter_mut() {
                *c *= lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[rd - dd + i] -= &lead * dc;
            }
            left -= 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        let fix = num::pow(lc.clone(), left);
        Self::new(r.into_iter().map(|c| c * &fix).collect())
    }

    /// Primitive gcd over ℤ[T] by the primitive polynomial remainder sequence.
    ///
    /// The result is primitive with a positive leading coefficient; the gcd
    /// of two zero polynomials is zero.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// True when `self = λ·other` for some nonzero rational λ.
    pub fn is_proportional(&self, other: &IntPoly) -> bool {
        match (self.leading(), other.leading()) {
            (Some(la), Some(lb)) => {
                self.degree() == other.degree() && self.scale(lb) == other.scale(la)
            }
            _ => false,
        }
    }

    pub fn to_mod(&self, p: Prime) -> ModPoly {
        let m = BigInt::from(p.get());
        ModPoly {
            p,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.mod_floor(&m).to_u64().unwrap())
                .collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => f.write_str("T")?,
                _ => write!(f, "T^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

/// An integer polynomial with coefficients reduced modulo `p`, for fast
/// repeated evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    p: Prime,
    coeffs: Vec<u64>,
}

impl ModPoly {
    #[inline]
    pub fn eval(&self, t: u64) -> u64 {
        let m = self.p.get();
        let t = t % m;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (super::mul_mod(acc, t, m) + c) % m)
    }

    /// Zero as a polynomial over `ℤ/pℤ`.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// `f(t) mod p` by Horner's rule, reducing at every step.
pub fn poly_eval_mod(f: &IntPoly, t: i64, p: Prime) -> u64 {
    f.to_mod(p).eval(p.reduce(t))
}

/// `16 · disc(x³ + a2·x² + a4·x + a6)` as a polynomial in `T`.
///
/// With `a2 = 0` this is the familiar `−16(4a4³ + 27a6²)`.
pub fn cubic_discriminant(a2: &IntPoly, a4: &IntPoly, a6: &IntPoly) -> IntPoly {
    let k = |n: i64| IntPoly::constant(n);
    let terms = [
        &(&k(-4) * &a2.pow(3)) * a6,
        &a2.pow(2) * &a4.pow(2),
        &(&(&k(18) * a2) * a4) * a6,
        &k(-4) * &a4.pow(3),
        &k(-27) * &a6.pow(2),
    ];
    let disc = terms.iter().fold(IntPoly::zero(), |acc, t| &acc + t);
    disc.scale(&BigInt::from(16))
}

/// Number of distinct complex roots: `deg f − deg gcd(f, f′)`.
pub fn distinct_root_count(f: &IntPoly) -> Result<usize> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    let g = f.gcd(&f.derivative());
    Ok(d - g.degree().unwrap_or(0))
}
