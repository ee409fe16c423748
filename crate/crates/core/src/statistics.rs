//! Family-level statistics: moment sums over all curves, power moments of
//! one-parameter families, and sums of `sym_k(θ)`.

use num::{BigInt, BigRational, One, Signed};

use crate::arith::{count_cube_roots, QRTable};
use crate::equidist::exact_cos_sums;
use crate::families::{histogram, one_param_rows, AllPairs, FamilyKind, OneParamFamily, TraceSample};
use crate::identities::chebyshev_u;
use crate::{Error, Execution, Prime, Result};

/// Histograms of the Legendre sums `Σₓ χ(x³ − ax − b)` over every pair
/// `(a, b)` and over the nonsingular pairs only. Every `S_R` for one prime
/// comes from these two tables.
#[derive(Debug, Clone)]
pub struct BirchSums {
    p: Prime,
    all: Vec<(i64, u64)>,
    nonsingular: Vec<(i64, u64)>,
}

impl BirchSums {
    pub fn new(p: Prime, exec: Execution) -> Self {
        Self::from_pairs(&AllPairs::compute(p, &QRTable::new(p), exec))
    }

    pub fn from_pairs(pairs: &AllPairs) -> Self {
        let good: Vec<i64> = pairs
            .sums
            .iter()
            .zip(&pairs.singular)
            .filter(|(_, &s)| !s)
            .map(|(&l, _)| l)
            .collect();
        BirchSums { p: pairs.p, all: histogram(&pairs.sums), nonsingular: histogram(&good) }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `Σ_{(a,b)} (Σₓ χ(x³ − ax − b))^{2R}`, over nonsingular pairs when
    /// `restricted`.
    pub fn empirical(&self, r: u32, restricted: bool) -> Result<BigInt> {
        check_r(r)?;
        let hist = if restricted { &self.nonsingular } else { &self.all };
        Ok(hist
            .iter()
            .map(|&(l, n)| num::pow(BigInt::from(l), 2 * r as usize) * BigInt::from(n))
            .sum())
    }

    pub fn report(&self, r: u32, restricted: bool) -> Result<MomentReport> {
        let empirical = self.empirical(r, restricted)?;
        let formula = birch_formula(r, self.p, restricted)?;
        Ok(MomentReport { p: self.p, r, matches: empirical == formula, empirical, formula, restricted })
    }
}

fn check_r(r: u32) -> Result<()> {
    if (1..=6).contains(&r) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name: "R", value: r as i64, expected: "1 <= R <= 6" })
    }
}

pub fn empirical_s(p: Prime, r: u32, restricted: bool) -> Result<BigInt> {
    check_r(r)?;
    BirchSums::new(p, Execution::default()).empirical(r, restricted)
}

/// Closed forms of the moment sums:
/// `S₁ = p³ − p²`, `S₂ = 2p⁴ − 2p³ − 3p² + 3p`,
/// `S₃ = 5p⁵ − 5p⁴ − 9p³ + 4p² + 5p`.
///
/// The `p` singular pairs are `(0, 0)`, whose sum `Σχ(x³)` vanishes, and
/// `p − 1` nodal curves whose sum is `±1`; removing them subtracts `p − 1`
/// for every `R`.
pub fn birch_formula(r: u32, p: Prime, restricted: bool) -> Result<BigInt> {
    let q = BigInt::from(p.get());
    let pw = |k: usize| num::pow(q.clone(), k);
    let full = match r {
        1 => pw(3) - pw(2),
        2 => pw(4) * 2 - pw(3) * 2 - pw(2) * 3 + &q * 3,
        3 => pw(5) * 5 - pw(4) * 5 - pw(3) * 9 + pw(2) * 4 + &q * 5,
        _ => return Err(Error::OutOfRange { name: "R", value: r as i64, expected: "R in {1, 2, 3}" }),
    };
    Ok(if restricted { full - (q - 1) } else { full })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentReport {
    pub p: Prime,
    pub r: u32,
    pub empirical: BigInt,
    pub formula: BigInt,
    pub restricted: bool,
    pub matches: bool,
}

/// `(1/V) Σₙ (2cos θₙ)^{2R} = (1/V) Σₙ aₙ^{2R} / p^R`, exactly.
pub fn normalized_moment(sample: &TraceSample, r: u32) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::OutOfRange { name: "R", value: 0, expected: "R >= 1" });
    }
    if sample.traces.is_empty() {
        return Err(Error::EmptySample);
    }
    let total: BigInt = sample
        .histogram()
        .into_iter()
        .map(|(a, n)| num::pow(BigInt::from(a), 2 * r as usize) * BigInt::from(n))
        .sum();
    let den = num::pow(BigInt::from(sample.p.get()), r as usize) * BigInt::from(sample.v_p());
    Ok(BigRational::new(total, den))
}

/// `A_j(p) = Σ_{t mod p} a_t(p)^j` over every `t`, singular fibres included
/// with their raw Legendre-sum trace.
pub fn a_moment(fam: &OneParamFamily, p: Prime, j: u32) -> Result<BigInt> {
    a_moment_with(fam, p, j, Execution::default())
}

pub fn a_moment_with(fam: &OneParamFamily, p: Prime, j: u32, exec: Execution) -> Result<BigInt> {
    if j == 0 {
        return Err(Error::OutOfRange { name: "j", value: 0, expected: "j >= 1" });
    }
    let rows = one_param_rows(fam, p, &QRTable::new(p), exec)?;
    let traces: Vec<i64> = rows.into_iter().map(|(a, _)| a).collect();
    Ok(histogram(&traces)
        .into_iter()
        .map(|(a, n)| num::pow(BigInt::from(a), j as usize) * BigInt::from(n))
        .sum())
}

/// Second moment of `y² = x³ + Tx² + 1` in closed form:
/// `p² − n·p − 1 + p·Σₓ χ(4x³ + 1)` with `n = #{x : x³ ≡ 2}`.
pub fn a2_closed_form(p: Prime) -> BigInt {
    let q = BigInt::from(p.get());
    let table = QRTable::new(p);
    let m = p.get();
    let chi_sum: i64 = (0..m)
        .map(|x| {
            let cube = crate::arith::pow_mod(x, 3, m);
            table.get((4 * cube + 1) % m) as i64
        })
        .sum();
    let n = count_cube_roots(2, p);
    &q * &q - &q * n - BigInt::one() + q * chi_sum
}

/// The family `y² = x³ + Tx² + 1` whose second moment has the closed form
/// [`a2_closed_form`].
pub fn a2_family() -> OneParamFamily {
    use crate::IntPoly;
    OneParamFamily::new(IntPoly::t(), IntPoly::zero(), IntPoly::constant(1))
        .expect("x³ + Tx² + 1 has nonconstant j-invariant")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymSumReport {
    pub k: u32,
    pub p: Prime,
    pub v_p: usize,
    /// `Σₙ sym_k(θₙ)`.
    pub raw_sum: f64,
    /// `|raw_sum|·√p / ((k+1)·p)`.
    pub normalized: f64,
    /// `c_Δ` for a one-parameter family.
    pub c_delta: Option<usize>,
    pub all_curves: bool,
}

impl SymSumReport {
    /// `|raw_sum|·√p / (k·V_p)`, the decay ratio for the family of all curves.
    pub fn katz_ratio(&self) -> f64 {
        self.raw_sum.abs() * self.p.sqrt() / (self.k as f64 * self.v_p as f64)
    }
}

/// `Σₙ sym_k(θₙ) = Σₙ U_k(aₙ / (2√p))`.
pub fn sym_sum(sample: &TraceSample, k: u32) -> Result<SymSumReport> {
    if k == 0 {
        return Err(Error::OutOfRange { name: "k", value: 0, expected: "k >= 1" });
    }
    let raw_sum = sym_raw(sample, k);
    let p = sample.p;
    let c_delta = match &sample.kind {
        FamilyKind::OneParam(f) => Some(f.c_delta()),
        FamilyKind::AllCurves => None,
    };
    Ok(SymSumReport {
        k,
        p,
        v_p: sample.v_p(),
        raw_sum,
        normalized: raw_sum.abs() * p.sqrt() / ((k + 1) as f64 * p.get() as f64),
        c_delta,
        all_curves: sample.kind.is_all_curves(),
    })
}

pub(crate) fn sym_raw(sample: &TraceSample, k: u32) -> f64 {
    let scale = 2.0 * sample.p.sqrt();
    sample
        .histogram()
        .into_iter()
        .map(|(a, n)| n as f64 * chebyshev_u(k, &(a as f64 / scale)))
        .sum()
}

/// Exact `Σₙ cos(2mθₙ)`.
pub fn cos2m_sum(sample: &TraceSample, m: u32) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::OutOfRange { name: "m", value: 0, expected: "m >= 1" });
    }
    Ok(exact_cos_sums(sample, m as usize).pop().expect("m >= 1"))
}

/// `|q|` of a big rational as `f64`.
pub fn abs_f64(q: &BigRational) -> f64 {
    crate::identities::to_f64(&q.abs())
}
