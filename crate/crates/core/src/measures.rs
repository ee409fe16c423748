//! Probability measures on `[0, 1]` described by their Fourier coefficients.
//!
//! A measure `μ = f(x)dx` carries coefficients `c_m = ∫ f(x) e(mx) dx`, so
//! that an equidistributed sample has `(1/N) Σ e(m xₙ) → c_m`. Both measures
//! here are symmetric under `x ↦ 1 − x`, so their coefficients are real.

use std::f64::consts::PI;

use num::Complex;

use crate::{Error, Prime, Result};

/// Half-open interval `[lo, hi) ⊆ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi && hi <= 1.0) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval { lo: 0.0, hi: 1.0 }
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x < self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    SatoTate,
    /// Serre's measure at `p`, stored as `p` and `(√p + 1/√p)²`.
    Serre { p: f64, shift: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierMeasure {
    name: String,
    shape: Shape,
    sup_norm: f64,
}

/// Sato–Tate measure `2 sin²(πx) dx`.
pub fn sato_tate() -> FourierMeasure {
    FourierMeasure { name: "sato-tate".into(), shape: Shape::SatoTate, sup_norm: 2.0 }
}

/// Serre's `p`-adic Plancherel measure transported to `[0, 1]`:
/// `2(p+1) sin²(πx) / ((√p + 1/√p)² − 4cos²(πx)) dx`.
pub fn serre_measure(p: Prime) -> FourierMeasure {
    let pf = p.get() as f64;
    let r = pf.sqrt();
    let shape = Shape::Serre { p: pf, shift: (r + 1.0 / r).powi(2) };
    let mut mu = FourierMeasure { name: format!("serre-{p}"), shape, sup_norm: 0.0 };
    mu.sup_norm = sup_search(|x| mu.density(x), 10_000, 1e-8);
    mu
}

impl FourierMeasure {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn density(&self, x: f64) -> f64 {
        let s = (PI * x).sin();
        match self.shape {
            Shape::SatoTate => 2.0 * s * s,
            Shape::Serre { p, shift } => {
                let c = (PI * x).cos();
                2.0 * (p + 1.0) * s * s / (shift - 4.0 * c * c)
            }
        }
    }

    /// `μ([0, u))`.
    pub fn cdf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return 1.0;
        }
        match self.shape {
            Shape::SatoTate => u - (2.0 * PI * u).sin() / (2.0 * PI),
            Shape::Serre { .. } => {
                // ∫₀ᵘ (1 + 2Σ c_m cos 2πmx) dx
                let mut acc = u;
                for (m, c) in self.serre_terms() {
                    acc += c * (2.0 * PI * m as f64 * u).sin() / (PI * m as f64);
                }
                acc
            }
        }
    }

    /// `c_m = ∫ f(x) e(mx) dx`; `c_{−m}` is the conjugate of `c_m`.
    pub fn fourier(&self, m: i64) -> Complex<f64> {
        let m = m.unsigned_abs();
        let re = match (self.shape, m) {
            (_, 0) => 1.0,
            (Shape::SatoTate, 1) => -0.5,
            (Shape::SatoTate, _) => 0.0,
            (Shape::Serre { p, .. }, m) => -0.5 * (1.0 - 1.0 / p) * p.powi(1 - m as i32),
        };
        Complex::new(re, 0.0)
    }

    /// `c_m` by adaptive quadrature of the density, independent of [`Self::fourier`].
    pub fn fourier_by_quadrature(&self, m: i64) -> Complex<f64> {
        let w = 2.0 * PI * m as f64;
        let re = adaptive_simpson(&|x| self.density(x) * (w * x).cos(), 0.0, 1.0, 1e-10);
        let im = adaptive_simpson(&|x| self.density(x) * (w * x).sin(), 0.0, 1.0, 1e-10);
        Complex::new(re, im)
    }

    /// `sup |f|` on `[0, 1]`.
    pub fn sup_norm(&self) -> f64 {
        self.sup_norm
    }

    /// Indices of nonzero coefficients up to `max_m` (Sato–Tate has only `|m| ≤ 1`).
    pub fn support_bound(&self) -> Option<u64> {
        match self.shape {
            Shape::SatoTate => Some(1),
            Shape::Serre { .. } => None,
        }
    }

    pub fn mass(&self, interval: &Interval) -> f64 {
        self.cdf(interval.hi) - self.cdf(interval.lo)
    }

    /// Nonzero Serre coefficients with `m ≥ 1`, until they drop below f64 resolution.
    fn serre_terms(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        (1u64..)
            .map(move |m| (m, self.fourier(m as i64).re))
            .take_while(|&(m, c)| m == 1 || c.abs() > 1e-18)
    }
}

pub fn mass(measure: &FourierMeasure, lo: f64, hi: f64) -> Result<f64> {
    Ok(measure.mass(&Interval::new(lo, hi)?))
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    // start from 8 panels so symmetric integrands cannot fool the first estimate
    let panels = 8;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let (flo, fhi) = (f(lo), f(hi));
            let (m, fm, whole) = simpson(f, lo, flo, hi, fhi);
            recurse(f, lo, flo, hi, fhi, m, fm, whole, tol / panels as f64, 48)
        })
        .sum()
}

/// Maximum of `f` on `[0, 1]`: uniform grid, then golden-section refinement
/// around the best grid point.
pub fn sup_search<F: Fn(f64) -> f64>(f: F, grid: usize, tol: f64) -> f64 {
    let h = 1.0 / grid as f64;
    let (best_i, mut best) = (0..=grid)
        .map(|i| (i, f(i as f64 * h)))
        .fold((0, f64::NEG_INFINITY), |acc, v| if v.1 > acc.1 { v } else { acc });
    let (mut a, mut b) = (((best_i as f64) - 1.0).max(0.0) * h, ((best_i as f64) + 1.0).min(grid as f64) * h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    best = best.max(fc).max(fd);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn sato_tate_masses() {
        let st = sato_tate();
        assert_abs_diff_eq!(mass(&st, 0.0, 0.5).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mass(&st, 0.0, 0.25).unwrap(), 0.25 - 1.0 / (2.0 * PI), epsilon = 1e-15);
        assert_abs_diff_eq!(mass(&st, 0.0, 0.25).unwrap(), 0.0908451, epsilon = 1e-7);
        assert_eq!(mass(&st, 0.0, 1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(mass(&st, 0.25, 0.75).unwrap(), 0.5 + 1.0 / PI, epsilon = 1e-15);
        assert_eq!(mass(&st, 0.3, 0.3).unwrap(), 0.0);
        assert_eq!(st.fourier(2), Complex::new(0.0, 0.0));
        assert_eq!(st.fourier(-1), Complex::new(-0.5, 0.0));
        assert_eq!(st.fourier(0).re, 1.0);
        assert_eq!(st.sup_norm(), 2.0);
    }

    #[test]
    fn malformed_intervals() {
        let st = sato_tate();
        assert!(mass(&st, 0.6, 0.5).is_err());
        assert!(mass(&st, -0.1, 0.5).is_err());
        assert!(mass(&st, 0.1, 1.5).is_err());
        assert!(mass(&st, f64::NAN, 0.5).is_err());
    }

    #[test]
    fn sato_tate_cdf_derivative_is_density() {
        let st = sato_tate();
        let h = 1e-5;
        for i in 1..1000 {
            let x = i as f64 / 1000.0;
            let fd = (st.cdf(x + h) - st.cdf(x - h)) / (2.0 * h);
            assert_abs_diff_eq!(fd, st.density(x), epsilon = 1e-6);
        }
    }

    #[test]
    fn cdf_is_monotone_and_normalized() {
        for mu in [sato_tate(), serre_measure(p(5)), serre_measure(p(101))] {
            assert_eq!(mu.cdf(0.0), 0.0);
            assert_eq!(mu.cdf(1.0), 1.0);
            let mut last = 0.0;
            for i in 0..=2000 {
                let v = mu.cdf(i as f64 / 2000.0);
                assert!(v >= last - 1e-15);
                last = v;
            }
        }
    }

    #[test]
    fn serre_density_and_mass() {
        let mu = serre_measure(p(5));
        assert_abs_diff_eq!(mu.density(0.5), 12.0 / 7.2, epsilon = 1e-13);
        for q in [5, 101, 1009] {
            let mu = serre_measure(p(q));
            let total = adaptive_simpson(&|x| mu.density(x), 0.0, 1.0, 1e-10);
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn serre_coefficients_match_quadrature() {
        for q in [5u64, 7, 101, 1009] {
            let mu = serre_measure(p(q));
            for m in 0..=8 {
                let c = mu.fourier_by_quadrature(m);
                assert_abs_diff_eq!(c.re, mu.fourier(m).re, epsilon = 1e-9);
                assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn serre_cdf_matches_quadrature() {
        let mu = serre_measure(p(7));
        for i in 1..20 {
            let u = i as f64 / 20.0;
            let q = adaptive_simpson(&|x| mu.density(x), 0.0, u, 1e-11);
            assert_abs_diff_eq!(mu.cdf(u), q, epsilon = 1e-9);
        }
    }

    #[test]
    fn serre_sup_norm() {
        for q in [5u64, 11, 101, 1009] {
            let mu = serre_measure(p(q));
            let closed = 2.0 * q as f64 / (q as f64 + 1.0);
            assert_abs_diff_eq!(mu.sup_norm(), closed, epsilon = 1e-8);
        }
    }

    #[test]
    fn serre_approaches_sato_tate() {
        let st = sato_tate();
        let mut last = f64::INFINITY;
        for q in [5u64, 11, 101, 1009, 10007] {
            let mu = serre_measure(p(q));
            let gap = sup_search(|x| (mu.density(x) - st.density(x)).abs(), 10_000, 1e-10);
            let k = gap * q as f64;
            // K = 2 from summing the coefficient differences
            assert!(k <= 2.0 + 1e-9, "p = {q}: K = {k}");
            assert!(gap < last);
            last = gap;
            for m in 2..=6 {
                assert!(mu.fourier(m).re.abs() * q as f64 <= 0.5 + 1e-12);
            }
        }
    }

    #[test]
    fn mass_is_additive() {
        for mu in [sato_tate(), serre_measure(p(13))] {
            for (a, b, c) in [(0.0, 0.3, 0.7), (0.1, 0.1, 0.9), (0.25, 0.5, 1.0)] {
                let lhs = mass(&mu, a, b).unwrap() + mass(&mu, b, c).unwrap();
                assert_abs_diff_eq!(lhs, mass(&mu, a, c).unwrap(), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn quadrature_and_sup_search_basics() {
        assert_abs_diff_eq!(adaptive_simpson(&|x| x.exp(), 0.0, 1.0, 1e-12), 1f64.exp() - 1.0, epsilon = 1e-11);
        assert_abs_diff_eq!(sup_search(|x| -(x - 0.3141).powi(2), 100, 1e-10), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sup_search(|x| x, 100, 1e-10), 1.0, epsilon = 1e-12);
    }
}
