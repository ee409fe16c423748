//! Cross-module invariants checked on randomly drawn primes and families.

use num::{BigInt, BigRational};
use proptest::prelude::*;

use satotate::equidist::{exact_cos_sums, exp_sums_with, interval_discrepancy, star_and_extreme_discrepancy};
use satotate::families::{angles, enumerate_all_with, specialize_with};
use satotate::measures::{sato_tate, serre_measure};
use satotate::statistics::{cos2m_sum, normalized_moment, sym_sum};
use satotate::{Execution, IntPoly, Interval, OneParamFamily, Prime, QRTable};

fn small_primes() -> Vec<u64> {
    (5..200).filter(|&n| satotate::arith::is_prime(n)).collect()
}

fn any_prime() -> impl Strategy<Value = Prime> {
    proptest::sample::select(small_primes()).prop_map(|p| Prime::new(p).unwrap())
}

fn any_family() -> impl Strategy<Value = OneParamFamily> {
    (
        proptest::collection::vec(-5i64..=5, 0..3),
        proptest::collection::vec(-5i64..=5, 0..3),
        proptest::collection::vec(-5i64..=5, 0..3),
    )
        .prop_filter_map("degenerate family", |(a2, a4, a6)| {
            OneParamFamily::new(IntPoly::from_i64(&a2), IntPoly::from_i64(&a4), IntPoly::from_i64(&a6)).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn all_curves_shape(p in any_prime()) {
        let table = QRTable::new(p);
        let seq = enumerate_all_with(p, &table, Execution::Sequential);
        let par = enumerate_all_with(p, &table, Execution::Parallel);
        prop_assert_eq!(&seq, &par);
        let q = p.get() as usize;
        prop_assert_eq!(seq.v_p() + seq.skipped, q * q);
        prop_assert_eq!(seq.skipped, q);
        let hasse = 2.0 * p.sqrt();
        prop_assert!(seq.traces.iter().all(|&a| (a as f64).abs() <= hasse));

        // second moment: (p³ − p² − (p − 1)) / (p · (p² − p))
        let qi = p.get() as i64;
        let expected = BigRational::new(
            BigInt::from(qi * qi * qi - qi * qi - (qi - 1)),
            BigInt::from(qi * (qi * qi - qi)),
        );
        prop_assert_eq!(normalized_moment(&seq, 1).unwrap(), expected);
    }

    #[test]
    fn one_param_shape(fam in any_family(), p in any_prime()) {
        let table = QRTable::new(p);
        let seq = specialize_with(&fam, p, &table, Execution::Sequential);
        let par = specialize_with(&fam, p, &table, Execution::Parallel);
        prop_assert_eq!(&seq, &par);
        let Ok(sample) = seq else { return Ok(()) };
        prop_assert_eq!(sample.v_p() + sample.skipped, p.get() as usize);
        let delta = fam.delta().to_mod(p);
        let roots = (0..p.get()).filter(|&t| delta.eval(t) == 0).count();
        prop_assert_eq!(sample.skipped, roots);
    }

    #[test]
    fn sample_statistics(fam in any_family(), p in any_prime()) {
        let Ok(traces) = specialize_with(&fam, p, &QRTable::new(p), Execution::default()) else { return Ok(()) };
        prop_assume!(!traces.traces.is_empty());
        let sample = angles(&traces, true);
        let n = sample.tilde_v() as f64;
        prop_assert!(sample.x.iter().all(|x| (0.0..=1.0).contains(x)));

        for mu in [sato_tate(), serre_measure(p)] {
            let d = star_and_extreme_discrepancy(&sample, &mu).unwrap();
            prop_assert!(d.star <= d.extreme + 1e-9);
            prop_assert!(d.extreme <= 2.0 * d.star + 1e-9);
            prop_assert!(d.extreme <= n + 1e-9);
            let full = interval_discrepancy(&sample, &Interval::unit(), &mu);
            prop_assert!(full.discrepancy <= 1e-9 * n);
        }

        let float = exp_sums_with(&sample, 6, Execution::Sequential).unwrap();
        let exact = exact_cos_sums(&traces, 6);
        for m in 0..6 {
            prop_assert!(float.sin_sums[m].abs() <= 1e-9 * n);
            let e = 2.0 * satotate::identities::to_f64(&exact[m]);
            prop_assert!((float.cos_sums[m] - e).abs() <= 1e-9 * n);
            prop_assert_eq!(&cos2m_sum(&traces, m as u32 + 1).unwrap(), &exact[m]);
        }

        for k in 1..=6 {
            let r = sym_sum(&traces, k).unwrap();
            prop_assert!(r.normalized >= 0.0);
            prop_assert_eq!(r.c_delta, Some(fam.c_delta()));
            // |sym_k| ≤ k + 1 pointwise
            prop_assert!(r.raw_sum.abs() <= (k + 1) as f64 * traces.v_p() as f64 + 1e-9);
        }
    }
}
