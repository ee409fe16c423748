//! Curve families modulo `p`, their Frobenius traces and normalized angles.
//!
//! Traces use `a = −Σₓ χ(x³ + a2·x² + a4·x + a6)`, i.e. `p` minus the number of
//! affine points. The family of all curves is `y² = x³ − ax − b` over all
//! `(a, b)` with `4a³ ≠ 27b²`, enumerated in lexicographic `(a, b)` order.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::arith::{self, cubic_discriminant, distinct_root_count, legendre, IntPoly, ModPoly, Prime, QRTable};
use crate::{Error, Execution, Result};

/// `y² = x³ + a2(T)x² + a4(T)x + a6(T)` over ℚ(T) with non-constant `j(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneParamFamily {
    a2: IntPoly,
    a4: IntPoly,
    a6: IntPoly,
    delta: IntPoly,
    c_delta: usize,
}

impl OneParamFamily {
    pub fn new(a2: IntPoly, a4: IntPoly, a6: IntPoly) -> Result<Self> {
        let delta = cubic_discriminant(&a2, &a4, &a6);
        if delta.is_zero() {
            return Err(Error::SingularFamily);
        }
        // j = 1728·c4³/Δ with c4 = 16(a2² − 3a4); constant iff c4³ ∝ Δ or c4 = 0
        let c4 = &a2.pow(2) - &a4.scale(&3.into());
        let c4_cubed = c4.pow(3);
        if c4_cubed.is_zero() || c4_cubed.is_proportional(&delta) {
            return Err(Error::ConstantJInvariant);
        }
        let c_delta = distinct_root_count(&delta)?;
        Ok(OneParamFamily { a2, a4, a6, delta, c_delta })
    }

    /// `y² = x³ + A(T)x + B(T)`.
    pub fn short(a4: IntPoly, a6: IntPoly) -> Result<Self> {
        Self::new(IntPoly::zero(), a4, a6)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        FamilySpec::from_json(text)?.build()
    }

    pub fn a2(&self) -> &IntPoly {
        &self.a2
    }

    pub fn a4(&self) -> &IntPoly {
        &self.a4
    }

    pub fn a6(&self) -> &IntPoly {
        &self.a6
    }

    pub fn delta(&self) -> &IntPoly {
        &self.delta
    }

    /// Number of distinct complex zeros of the discriminant.
    pub fn c_delta(&self) -> usize {
        self.c_delta
    }

    pub fn describe(&self) -> String {
        let mut s = String::from("y^2 = x^3");
        for (poly, mono) in [(&self.a2, "x^2"), (&self.a4, "x"), (&self.a6, "")] {
            if poly.is_zero() {
                continue;
            }
            let terms = poly.coeffs().iter().filter(|c| !num::Zero::is_zero(*c)).count();
            let body = if terms > 1 && !mono.is_empty() {
                format!("({poly})")
            } else {
                poly.to_string()
            };
            s.push_str(" + ");
            s.push_str(&body);
            if !mono.is_empty() {
                s.push('*');
                s.push_str(mono);
            }
        }
        s
    }
}

/// On-disk family description: ascending integer coefficients, absent key = 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    #[serde(default)]
    pub a2: Vec<i64>,
    #[serde(default)]
    pub a4: Vec<i64>,
    #[serde(default)]
    pub a6: Vec<i64>,
}

impl FamilySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::FamilyFile(e.to_string()))
    }

    pub fn build(&self) -> Result<OneParamFamily> {
        OneParamFamily::new(
            IntPoly::from_i64(&self.a2),
            IntPoly::from_i64(&self.a4),
            IntPoly::from_i64(&self.a6),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyKind {
    AllCurves,
    OneParam(OneParamFamily),
}

impl FamilyKind {
    pub fn is_all_curves(&self) -> bool {
        matches!(self, FamilyKind::AllCurves)
    }
}

/// Integer traces of every good member of a family at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceSample {
    pub p: Prime,
    pub kind: FamilyKind,
    pub traces: Vec<i64>,
    /// Parameters excluded because the reduced curve is singular.
    pub skipped: usize,
}

impl TraceSample {
    pub fn v_p(&self) -> usize {
        self.traces.len()
    }

    /// Trace values with multiplicities, ascending.
    pub fn histogram(&self) -> Vec<(i64, u64)> {
        histogram(&self.traces)
    }
}

pub(crate) fn histogram(values: &[i64]) -> Vec<(i64, u64)> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<(i64, u64)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((w, n)) if *w == v => *n += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Normalized angles `θ/π ∈ (0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSample {
    pub p: Prime,
    pub x: Vec<f64>,
    /// Every angle `x` is accompanied by `1 − x`.
    pub doubled: bool,
}

impl AngleSample {
    pub fn tilde_v(&self) -> usize {
        self.x.len()
    }
}

/// Frobenius trace of `y² = x³ + a2·x² + a4·x + a6` from residues mod `p`.
///
/// For a singular cubic this is still the raw Legendre sum.
pub fn trace(a2: u64, a4: u64, a6: u64, p: Prime, table: &QRTable) -> i64 {
    debug_assert_eq!(table.prime(), p);
    let m = p.get();
    let add = |u: u64, v: u64| {
        let w = u + v;
        if w >= m {
            w - m
        } else {
            w
        }
    };
    let (a2, a4, a6) = (a2 % m, a4 % m, a6 % m);
    // f(x) = x³ + a2x² + a4x + a6 stepped by its forward differences:
    // Δf(0) = 1 + a2 + a4, Δ²f(0) = 6 + 2a2, Δ³f = 6
    let (mut f, mut d1, mut d2, d3) = (a6, add(add(1 % m, a2), a4), add(6 % m, add(a2, a2)), 6 % m);
    let chi = table.values();
    let mut s = 0i64;
    for _ in 0..m {
        s += chi[f as usize] as i64;
        f = add(f, d1);
        d1 = add(d1, d2);
        d2 = add(d2, d3);
    }
    -s
}

/// `4a³ ≡ 27b² (mod p)` for the curve `y² = x³ − ax − b`.
#[inline]
fn all_curves_singular(a: u64, b: u64, m: u64) -> bool {
    let lhs = arith::mul_mod(4, arith::pow_mod(a, 3, m), m);
    let rhs = arith::mul_mod(27, arith::mul_mod(b, b, m), m);
    lhs == rhs
}

/// Legendre sums `Σₓ χ(x³ − ax − b)` for every `b` at fixed `a`.
fn legendre_row(a: u64, cubes: &[u32], table: &QRTable) -> Vec<i64> {
    let m = cubes.len() as u64;
    let chi = table.doubled();
    // g[x] = x³ − a·x mod p
    let g: Vec<u32> = (0..m)
        .map(|x| ((cubes[x as usize] as u64 + m - arith::mul_mod(a, x, m)) % m) as u32)
        .collect();
    (0..m)
        .map(|b| {
            let shift = (m - b) as u32;
            g.iter()
                .map(|&v| chi[(v + shift) as usize] as i64)
                .sum::<i64>()
        })
        .collect()
}

/// Every `(a, b)` pair of the all-curves family, singular ones included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllPairs {
    pub p: Prime,
    /// Legendre sums `Σₓ χ(x³ − ax − b)`, row-major in `(a, b)`; the trace is the negative.
    pub sums: Vec<i64>,
    pub singular: Vec<bool>,
}

impl AllPairs {
    pub fn compute(p: Prime, table: &QRTable, exec: Execution) -> Self {
        let m = p.get();
        let cubes: Vec<u32> = (0..m).map(|x| arith::pow_mod(x, 3, m) as u32).collect();
        let rows = exec.map_shards(m as usize, |a| legendre_row(a as u64, &cubes, table));
        let sums = rows.into_iter().flatten().collect();
        let singular = (0..m)
            .flat_map(|a| (0..m).map(move |b| all_curves_singular(a, b, m)))
            .collect();
        AllPairs { p, sums, singular }
    }

    pub fn into_sample(self) -> TraceSample {
        let skipped = self.singular.iter().filter(|&&s| s).count();
        let traces = self
            .sums
            .iter()
            .zip(&self.singular)
            .filter(|(_, &s)| !s)
            .map(|(&l, _)| -l)
            .collect();
        TraceSample { p: self.p, kind: FamilyKind::AllCurves, traces, skipped }
    }
}

pub fn enumerate_all(p: Prime, table: &QRTable) -> TraceSample {
    enumerate_all_with(p, table, Execution::default())
}

pub fn enumerate_all_with(p: Prime, table: &QRTable, exec: Execution) -> TraceSample {
    AllPairs::compute(p, table, exec).into_sample()
}

/// Raw traces of a one-parameter family at every `t mod p`, with the
/// singularity flag `Δ(t) ≡ 0`.
pub(crate) fn one_param_rows(
    fam: &OneParamFamily,
    p: Prime,
    table: &QRTable,
    exec: Execution,
) -> Result<Vec<(i64, bool)>> {
    let delta = fam.delta.to_mod(p);
    if delta.is_zero() {
        return Err(Error::DegenerateModP(p.get()));
    }
    let (a2, a4, a6): (ModPoly, ModPoly, ModPoly) = (fam.a2.to_mod(p), fam.a4.to_mod(p), fam.a6.to_mod(p));
    Ok(exec.map_shards(p.get() as usize, |t| {
        let t = t as u64;
        let a = trace(a2.eval(t), a4.eval(t), a6.eval(t), p, table);
        (a, delta.eval(t) == 0)
    }))
}

pub fn specialize(fam: &OneParamFamily, p: Prime, table: &QRTable) -> Result<TraceSample> {
    specialize_with(fam, p, table, Execution::default())
}

pub fn specialize_with(
    fam: &OneParamFamily,
    p: Prime,
    table: &QRTable,
    exec: Execution,
) -> Result<TraceSample> {
    let rows = one_param_rows(fam, p, table, exec)?;
    let skipped = rows.iter().filter(|(_, s)| *s).count();
    let traces = rows.into_iter().filter(|(_, s)| !s).map(|(a, _)| a).collect();
    Ok(TraceSample { p, kind: FamilyKind::OneParam(fam.clone()), traces, skipped })
}

/// `θ/π` for trace `a`, with the cosine clamped to `[−1, 1]`.
#[inline]
pub fn angle(a: i64, p: Prime) -> f64 {
    let c = (a as f64 / (2.0 * p.sqrt())).clamp(-1.0, 1.0);
    c.acos() / PI
}

pub fn angles(sample: &TraceSample, doubled: bool) -> AngleSample {
    let mut x: Vec<f64> = sample.traces.iter().map(|&a| angle(a, sample.p)).collect();
    if doubled {
        let reflected: Vec<f64> = x.iter().map(|v| 1.0 - v).collect();
        x.extend(reflected);
    }
    AngleSample { p: sample.p, x, doubled }
}

/// The twist of `y² = x³ + a4·x + a6` by `c`: `(a4c², a6c³)` and the factor
/// `(c | p)` relating the two traces.
pub fn twist_partner(a4: u64, a6: u64, c: u64, p: Prime) -> Result<((u64, u64), i8)> {
    let m = p.get();
    let c = c % m;
    if c == 0 {
        return Err(Error::ZeroTwist(m));
    }
    let c2 = arith::mul_mod(c, c, m);
    let c3 = arith::mul_mod(c2, c, m);
    Ok((
        (arith::mul_mod(a4 % m, c2, m), arith::mul_mod(a6 % m, c3, m)),
        legendre(c as i64, p),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    /// Affine point count by enumerating all (x, y).
    fn brute_points(a2: u64, a4: u64, a6: u64, m: u64) -> i64 {
        let mut n = 0;
        for x in 0..m {
            let rhs = (x * x % m * x + a2 * x % m * x + a4 * x + a6) % m;
            for y in 0..m {
                if y * y % m == rhs {
                    n += 1;
                }
            }
        }
        n
    }

    fn family_tx1() -> OneParamFamily {
        OneParamFamily::short(IntPoly::t(), IntPoly::constant(1)).unwrap()
    }

    #[test]
    fn trace_examples() {
        let q = p(5);
        let t = QRTable::new(q);
        assert_eq!(trace(0, 4, 0, q, &t), -2);
        assert_eq!(5 - brute_points(0, 4, 0, 5), -2);
        assert_eq!(trace(0, 0, 1, q, &t), 0);
        assert_eq!(trace(0, 0, 0, p(7), &QRTable::new(p(7))), 0);
    }

    #[test]
    fn trace_matches_point_count() {
        for m in [5u64, 7, 11, 13] {
            let q = p(m);
            let t = QRTable::new(q);
            for a2 in 0..m {
                for a4 in 0..m {
                    for a6 in (0..m).step_by(2) {
                        assert_eq!(trace(a2, a4, a6, q, &t), m as i64 - brute_points(a2, a4, a6, m));
                    }
                }
            }
        }
    }

    #[test]
    fn all_curves_p5() {
        let q = p(5);
        let table = QRTable::new(q);
        let s = enumerate_all(q, &table);
        assert_eq!(s.v_p(), 20);
        assert_eq!(s.skipped, 5);
        let pairs = AllPairs::compute(q, &table, Execution::Sequential);
        let sum_sq: i64 = pairs.sums.iter().map(|l| l * l).sum();
        assert_eq!(sum_sq, 100);
    }

    #[test]
    fn all_curves_sizes_symmetry_and_hasse() {
        for m in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101] {
            let q = p(m);
            let s = enumerate_all(q, &QRTable::new(q));
            assert_eq!(s.v_p() as u64, m * (m - 1));
            assert_eq!(s.skipped as u64, m);
            let counts: BTreeMap<i64, u64> = s.histogram().into_iter().collect();
            for (a, n) in &counts {
                assert_eq!(counts.get(&-a), Some(n), "p = {m}, a = {a}");
            }
            assert!(s.traces.iter().all(|&a| (a * a) as u64 <= 4 * m));
        }
    }

    #[test]
    fn singular_pair_count() {
        // b² = 4a³/27 = 3a·(2a/9)²: a = 0 loses one b, 3a a square loses two
        let q = p(7);
        let pairs = AllPairs::compute(q, &QRTable::new(q), Execution::Sequential);
        for a in 0..7u64 {
            let n = (0..7).filter(|&b| pairs.singular[(a * 7 + b) as usize]).count();
            let expected = match a {
                0 => 1,
                _ if legendre(3 * a as i64, q) == 1 => 2,
                _ => 0,
            };
            assert_eq!(n, expected, "a = {a}");
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let q = p(61);
        let table = QRTable::new(q);
        let a = enumerate_all_with(q, &table, Execution::Sequential);
        let b = enumerate_all_with(q, &table, Execution::Parallel);
        assert_eq!(a, b);
        let fam = family_tx1();
        assert_eq!(
            specialize_with(&fam, q, &table, Execution::Sequential).unwrap(),
            specialize_with(&fam, q, &table, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn specialize_examples() {
        let fam = family_tx1();
        assert_eq!(fam.c_delta(), 3);
        let q7 = p(7);
        let s = specialize(&fam, q7, &QRTable::new(q7)).unwrap();
        let roots = (0..7i64).filter(|t| (4 * t * t * t + 27).rem_euclid(7) == 0).count();
        assert_eq!(roots, 0);
        assert_eq!(s.skipped, roots);
        assert_eq!(s.v_p(), 7);

        let q5 = p(5);
        let s = specialize(&fam, q5, &QRTable::new(q5)).unwrap();
        assert_eq!(s.v_p() + s.skipped, 5);
        // 4t³ + 27 ≡ 4t³ + 2 ≡ 0 mod 5 ⇔ t³ ≡ 2 ⇔ t = 3
        assert_eq!(s.skipped, 1);

        for m in [101u64, 211, 1009] {
            let q = p(m);
            let s = specialize(&fam, q, &QRTable::new(q)).unwrap();
            assert_eq!(s.v_p() + s.skipped, m as usize);
            assert!(s.traces.iter().all(|&a| (a * a) as u64 <= 4 * m));
        }
    }

    #[test]
    fn degenerate_family_mod_p() {
        // a4 = 5T, a6 = 5 makes every coefficient of Δ divisible by 5
        let fam = OneParamFamily::short(IntPoly::from_i64(&[0, 5]), IntPoly::constant(5)).unwrap();
        let q = p(5);
        assert_eq!(specialize(&fam, q, &QRTable::new(q)), Err(Error::DegenerateModP(5)));
        assert!(specialize(&fam, p(7), &QRTable::new(p(7))).is_ok());
    }

    #[test]
    fn family_validation() {
        assert_eq!(
            OneParamFamily::short(IntPoly::constant(1), IntPoly::constant(2)),
            Err(Error::ConstantJInvariant)
        );
        // j ≡ 0
        assert_eq!(
            OneParamFamily::short(IntPoly::zero(), IntPoly::t()),
            Err(Error::ConstantJInvariant)
        );
        // quadratic twist of a fixed curve: a4 = T², a6 = T³ keeps j constant
        assert_eq!(
            OneParamFamily::short(IntPoly::from_i64(&[0, 0, 1]), IntPoly::from_i64(&[0, 0, 0, 1])),
            Err(Error::ConstantJInvariant)
        );
        assert_eq!(
            OneParamFamily::short(IntPoly::zero(), IntPoly::zero()),
            Err(Error::SingularFamily)
        );
        let f = OneParamFamily::new(IntPoly::t(), IntPoly::zero(), IntPoly::constant(1)).unwrap();
        assert_eq!(f.delta(), &IntPoly::from_i64(&[-432, 0, 0, -64]));
        assert_eq!(f.describe(), "y^2 = x^3 + T*x^2 + 1");
    }

    #[test]
    fn family_file() {
        let f = OneParamFamily::from_json(r#"{"a4": [0, 1], "a6": [1]}"#).unwrap();
        assert_eq!(f, family_tx1());
        assert!(matches!(OneParamFamily::from_json(r#"{"a4": [1], "b": []}"#), Err(Error::FamilyFile(_))));
        assert!(matches!(OneParamFamily::from_json("not json"), Err(Error::FamilyFile(_))));
        assert_eq!(OneParamFamily::from_json(r#"{"a4": [1], "a6": [2]}"#), Err(Error::ConstantJInvariant));
    }

    #[test]
    fn angle_examples() {
        let q = p(5);
        assert_eq!(angle(0, q), 0.5);
        let expected = (-1.0f64 / 5f64.sqrt()).acos() / PI;
        assert!((angle(-2, q) - expected).abs() < 1e-15);
        assert!((angle(-2, q) - 0.6476).abs() < 1e-4);

        let s = TraceSample { p: q, kind: FamilyKind::AllCurves, traces: vec![1, -3], skipped: 0 };
        let a = angles(&s, true);
        assert_eq!(a.tilde_v(), 4);
        assert_eq!(a.x[2], 1.0 - a.x[0]);
        assert_eq!(angles(&s, false).tilde_v(), 2);
        assert!(a.x.iter().all(|&x| x > 0.0 && x < 1.0));
    }

    #[test]
    fn twist_examples() {
        let q = p(5);
        let t = QRTable::new(q);
        assert_eq!(twist_partner(3, 2, 1, q).unwrap(), ((3, 2), 1));
        let ((a4, a6), s) = twist_partner(4, 0, 2, q).unwrap();
        assert_eq!(((a4, a6), s), ((1, 0), -1));
        assert_eq!(trace(0, a4, a6, q, &t), -trace(0, 4, 0, q, &t));
        let ((a4, a6), s) = twist_partner(4, 1, 4, q).unwrap();
        assert_eq!(s, 1);
        assert_eq!(trace(0, a4, a6, q, &t), trace(0, 4, 1, q, &t));
        assert_eq!(twist_partner(1, 1, 10, q), Err(Error::ZeroTwist(5)));
    }

    proptest! {
        #[test]
        fn twist_scales_trace(a4 in 0u64..1000, a6 in 0u64..1000, c in 1u64..1000, idx in 0usize..23) {
            let primes: Vec<u64> = (5..=97).filter(|&n| arith::is_prime(n)).collect();
            let q = p(primes[idx % primes.len()]);
            prop_assume!(c % q.get() != 0);
            let t = QRTable::new(q);
            let ((b4, b6), s) = twist_partner(a4, a6, c, q).unwrap();
            prop_assert_eq!(trace(0, b4, b6, q, &t), s as i64 * trace(0, a4, a6, q, &t));
        }
    }
}
