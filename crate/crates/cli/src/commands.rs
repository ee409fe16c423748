use std::f64::consts::PI;
use std::time::Instant;

use indexmap::IndexMap;
use num::{BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use satotate::equidist::{
    et_bound, exp_sums, interval_discrepancy, optimal_m, probe_intervals, star_and_extreme_discrepancy,
};
use satotate::families::{angles, enumerate_all, specialize};
use satotate::identities::{
    catalan_orthogonality, chebyshev_t, chebyshev_u, cos2m_expansion_check, lemma_a2_check, lemma_sum,
    vandermonde_check,
};
use satotate::measures::{sato_tate, serre_measure};
use satotate::statistics::{a2_closed_form, a2_family, a_moment, sym_sum, BirchSums};
use satotate::{AngleSample, Execution, FamilyKind, OneParamFamily, Prime, QRTable, TraceSample};

use crate::report::*;
use crate::CliError;

/// Seed for the randomized identity checks; fixed so reports are reproducible.
const IDENTITY_SEED: u64 = 0x5a70_7a7e;

pub struct FamilyOptions {
    pub m: Option<usize>,
    pub exact: bool,
}

pub fn all_curves_report(p: Prime, opts: &FamilyOptions) -> Result<(FamilyReport, AngleSample), CliError> {
    let traces = enumerate_all(p, &QRTable::new(p));
    family_report(&traces, false, opts)
}

pub fn one_param_report(
    fam: &OneParamFamily,
    p: Prime,
    opts: &FamilyOptions,
) -> Result<(FamilyReport, AngleSample), CliError> {
    let traces = specialize(fam, p, &QRTable::new(p))?;
    let (mut report, sample) = family_report(&traces, true, opts)?;

    let sym = (1..=10)
        .map(|k| {
            let s = sym_sum(&traces, k)?;
            Ok(SymOut { k, raw_sum: s.raw_sum, normalized: s.normalized })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let a2 = a_moment(fam, p, 2)?;
    let a2_closed_form_match = (fam.describe() == a2_family().describe()).then(|| a2_closed_form(p) == a2);
    report.one_param = Some(OneParamOut {
        c_delta: fam.c_delta(),
        sym,
        a1: a_moment(fam, p, 1)?.to_string(),
        a2: a2.to_string(),
        a2_closed_form_match,
    });
    Ok((report, sample))
}

fn family_report(
    traces: &TraceSample,
    doubled: bool,
    opts: &FamilyOptions,
) -> Result<(FamilyReport, AngleSample), CliError> {
    let p = traces.p;
    let sample = angles(traces, doubled);
    let tilde_v = sample.tilde_v();
    let m = match opts.m {
        Some(m) => m,
        None => optimal_m(&traces.kind, tilde_v, p)?,
    };
    let mut sums = exp_sums(&sample, m)?;
    if opts.exact {
        sums = sums.with_exact(traces, doubled);
    }

    let mut measures = Vec::with_capacity(2);
    for mu in [sato_tate(), serre_measure(p)] {
        let sup = star_and_extreme_discrepancy(&sample, &mu)?;
        let et_extreme = et_bound(&sums, &mu, 1.0, sup.extreme);
        let intervals: Vec<IntervalOut> = probe_intervals()
            .iter()
            .map(|i| {
                let d = interval_discrepancy(&sample, i, &mu);
                let et = et_bound(&sums, &mu, i.len(), d.discrepancy);
                IntervalOut {
                    lo: d.lo,
                    hi: d.hi,
                    count: d.count,
                    expected: d.expected,
                    discrepancy: d.discrepancy,
                    et_bound: et.bound,
                    et_satisfied: et.satisfied,
                }
            })
            .collect();
        let et_satisfied = et_extreme.satisfied && intervals.iter().all(|i| i.et_satisfied);
        measures.push(MeasureOut {
            measure: mu.name().to_string(),
            sup_norm: mu.sup_norm(),
            star: sup.star,
            extreme: sup.extreme,
            et_extreme,
            intervals,
            et_satisfied,
        });
    }

    let v = tilde_v as f64;
    let extreme = measures[0].extreme;
    let (d_over_v_log_v, d_over_v_3_4) = match &traces.kind {
        FamilyKind::AllCurves => (Some(extreme / (v / v.ln())), None),
        FamilyKind::OneParam(_) => (None, Some(extreme / v.powf(0.75))),
    };
    let family = match &traces.kind {
        FamilyKind::AllCurves => "y^2 = x^3 - a*x - b".to_string(),
        FamilyKind::OneParam(f) => f.describe(),
    };
    let report = FamilyReport {
        p: p.get(),
        family,
        doubled,
        v_p: traces.v_p(),
        tilde_v,
        skipped: traces.skipped,
        m,
        exp_sums: ExpSumsOut { cos: sums.cos_sums.clone(), sin: sums.sin_sums.clone() },
        exact_cos_sums: sums.exact_cos.as_ref().map(|v| v.iter().map(rational_pair).collect()),
        et_satisfied: measures.iter().all(|m| m.et_satisfied),
        measures,
        d_over_v_log_v,
        d_over_v_3_4,
        one_param: None,
    };
    Ok((report, sample))
}

pub fn moments_report(primes: &[Prime]) -> Result<Vec<MomentOut>, CliError> {
    let mut out = Vec::new();
    for &p in primes {
        if p.get() > 200 {
            eprintln!("warning: moment sums at p = {p} enumerate p² curves of p points each");
        }
        let start = Instant::now();
        let sums = BirchSums::new(p, Execution::default());
        for r in 1..=3 {
            for restricted in [false, true] {
                let rep = sums.report(r, restricted)?;
                out.push(MomentOut {
                    p: p.get(),
                    r,
                    restricted,
                    empirical: rep.empirical.to_string(),
                    formula: rep.formula.to_string(),
                    matches: rep.matches,
                });
            }
        }
        eprintln!("moments p = {p}: {:.3}s", start.elapsed().as_secs_f64());
    }
    Ok(out)
}

fn exact_check(name: &str, cases: usize, failures: usize) -> CheckOut {
    CheckOut { name: name.into(), cases, failures, max_error: None, tolerance: None, pass: failures == 0 }
}

fn float_check(name: &str, errors: &[f64], tolerance: f64) -> CheckOut {
    let max = errors.iter().copied().fold(0.0, f64::max);
    let failures = errors.iter().filter(|e| e.is_nan() || **e > tolerance).count();
    CheckOut {
        name: name.into(),
        cases: errors.len(),
        failures,
        max_error: Some(max),
        tolerance: Some(tolerance),
        pass: failures == 0,
    }
}

pub fn identities_report() -> Result<IdentitiesReport, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(IDENTITY_SEED);
    let mut checks = Vec::new();

    let mut lemma = IndexMap::new();
    let mut failures = 0;
    for m in 1..=300i64 {
        let v = lemma_sum(m)?;
        let expected = if m == 1 { BigRational::new(1.into(), 2.into()) } else { BigRational::zero() };
        failures += usize::from(v != expected);
        lemma.insert(m.to_string(), v.to_string());
    }
    checks.push(exact_check("lemma_sum", 300, failures));

    let mut ortho = IndexMap::new();
    let mut failures = 0;
    for m in 1..=100i64 {
        let v = catalan_orthogonality(m)?;
        let expected = if m == 1 { -BigRational::one() } else { BigRational::zero() };
        failures += usize::from(v != expected);
        ortho.insert(m.to_string(), v.to_string());
    }
    checks.push(exact_check("catalan_orthogonality", 100, failures));

    let thetas: Vec<f64> = (0..100).map(|_| rng.gen_range(0.0..PI)).collect();
    let mut errs = Vec::new();
    for m in 1..=30 {
        for &t in &thetas {
            errs.push(cos2m_expansion_check(m, t)?);
        }
    }
    checks.push(float_check("cos2m_expansion", &errs, 1e-9));

    let (mut t_errs, mut u_errs, mut tu_errs) = (Vec::new(), Vec::new(), Vec::new());
    for &t in &thetas {
        let c = t.cos();
        for l in 0..=30u32 {
            let lf = l as f64;
            t_errs.push((chebyshev_t(l, &c) - (lf * t).cos()).abs());
            u_errs.push((chebyshev_u(l, &c) - ((lf + 1.0) * t).sin() / t.sin()).abs());
            if l >= 2 {
                let half = 0.5 * (chebyshev_u(l, &c) - chebyshev_u(l - 2, &c));
                tu_errs.push((chebyshev_t(l, &c) - half).abs());
            }
        }
    }
    checks.push(float_check("chebyshev_t", &t_errs, 1e-10));
    checks.push(float_check("chebyshev_u", &u_errs, 1e-10));
    checks.push(float_check("chebyshev_t_from_u", &tu_errs, 1e-10));

    let mut failures = 0;
    for _ in 0..500 {
        let (r, s) = (rng.gen_range(-15..=15), rng.gen_range(-15..=15));
        let (m, n) = (rng.gen_range(0..=12), rng.gen_range(0..=12));
        let (lhs, rhs) = vandermonde_check(r, s, m, n);
        failures += usize::from(lhs != rhs);
    }
    checks.push(exact_check("vandermonde", 500, failures));

    let mut failures = 0;
    for _ in 0..500 {
        let (l, m) = (rng.gen_range(0..=20), rng.gen_range(0..=20));
        let (s, n) = (rng.gen_range(0..=20), rng.gen_range(0..=20));
        let (lhs, rhs) = lemma_a2_check(l, m, s, n);
        failures += usize::from(lhs != rhs);
    }
    checks.push(exact_check("lemma_a2", 500, failures));

    let pass = checks.iter().all(|c| c.pass);
    Ok(IdentitiesReport { lemma_sum: lemma, catalan_orthogonality: ortho, checks, pass })
}

/// `(x, empirical CDF, Sato–Tate CDF)` rows for a sorted sample.
pub fn plot_rows(sample: &AngleSample) -> Vec<(f64, f64, f64)> {
    let mu = sato_tate();
    let mut x = sample.x.clone();
    x.sort_by(f64::total_cmp);
    let n = x.len() as f64;
    x.iter().enumerate().map(|(i, &v)| (v, (i + 1) as f64 / n, mu.cdf(v))).collect()
}
