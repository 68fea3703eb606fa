//! Randomized invariants.

use gapdens::estimators::{functional_stream, tail_liminf, tail_limsup, FunctionalKind, WindowPolicy};
use gapdens::generators::{FamilyKind, FamilySpec};
use gapdens::sequence::{build_prefix, build_prefix_u64, gap_ratio_samples, SequencePrefix};
use gapdens::verifier::{check_stolz, CheckStatus};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer};

fn increasing_u64(max_start: u64, max_step: u64, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u64>> {
    (1..max_start, prop::collection::vec(1..max_step, len)).prop_map(|(start, steps)| {
        let mut v = vec![start];
        for s in steps {
            let next = v.last().unwrap().saturating_add(s);
            if next == *v.last().unwrap() {
                break;
            }
            v.push(next);
        }
        v
    })
}

fn rel_err(a: &Float, b: &Float) -> f64 {
    if b.is_zero() {
        return a.to_f64().abs();
    }
    Float::with_val(256, Float::with_val(256, a - b) / b).abs().to_f64()
}

fn abs_err(a: &Float, b: &Float) -> f64 {
    Float::with_val(256, a - b).abs().to_f64()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn tail_liminf_never_exceeds_limsup(v in increasing_u64(1 << 40, 1 << 24, 40..300)) {
        let p = build_prefix_u64(&v, false).unwrap();
        let policy = WindowPolicy::default();
        for kind in FunctionalKind::ALL {
            let s = functional_stream(&p, kind).unwrap();
            let lo = tail_liminf(&s, &policy).unwrap();
            let hi = tail_limsup(&s, &policy).unwrap();
            prop_assert!(lo.tail_estimate <= hi.tail_estimate, "{kind}");
        }
    }

    #[test]
    fn stolz_never_fails_on_monotone_y(
        x in prop::collection::vec(-1e3f64..1e3, 3..300),
        y0 in -10.0f64..10.0,
        steps in prop::collection::vec(1e-3f64..1e3, 300),
    ) {
        let mut y = Vec::with_capacity(x.len());
        let mut acc = y0;
        for s in steps.iter().take(x.len()) {
            y.push(acc);
            acc += s;
        }
        let r = check_stolz(&x, &y).unwrap();
        prop_assert!(r.status != CheckStatus::Fail, "{r:?}");
    }

    #[test]
    fn gap_identity_holds(v in increasing_u64(u64::MAX / 2, u64::MAX / 4, 2..60)) {
        let p = build_prefix_u64(&v, false).unwrap();
        let bound = 2f64.powi(-(p.precision_bits() as i32 - 8));
        for s in gap_ratio_samples(&p).unwrap() {
            prop_assert!(s.ratio_prev > 0 && s.ratio_prev < 1);
            prop_assert!(s.gap_over_curr > 0);
            let sum = Float::with_val(256, &s.ratio_prev + &s.gap_over_next) - 1u32;
            prop_assert!(sum.abs().to_f64() <= bound);
        }
    }

    #[test]
    fn log_domain_round_trip(v in increasing_u64(u64::MAX / 2, u64::MAX / 4, 2..60)) {
        let p = build_prefix_u64(&v, false).unwrap();
        let lp = p.to_log_domain(128).unwrap();
        let tol = 2f64.powi(-100);
        for (e, l) in gap_ratio_samples(&p).unwrap().iter().zip(gap_ratio_samples(&lp).unwrap()) {
            prop_assert_eq!(e.index, l.index);
            prop_assert!(rel_err(&l.ratio_prev, &e.ratio_prev) <= tol);
            // 128-bit logs fix ratios to about 2^-122 absolutely, which is
            // all a gap far below the term can be resolved to
            prop_assert!(abs_err(&l.gap_over_next, &e.gap_over_next) <= tol);
            prop_assert!(abs_err(&l.gap_over_curr, &e.gap_over_curr) <= tol);
            if e.gap_over_curr > 2f64.powi(-20) {
                prop_assert!(rel_err(&l.gap_over_curr, &e.gap_over_curr) <= tol);
                prop_assert!(rel_err(&l.gap_over_next, &e.gap_over_next) <= tol);
            }
        }
    }

    #[test]
    fn scaling_moves_eps_within_bound(v in increasing_u64(1 << 30, 1 << 20, 2..200), c in 2u64..1000) {
        let p = build_prefix_u64(&v, false).unwrap();
        let scaled: Vec<Integer> = v.iter().map(|&x| Integer::from(x) * c).collect();
        let q = build_prefix(scaled, false).unwrap();
        let a = functional_stream(&p, FunctionalKind::Eps).unwrap();
        let b = functional_stream(&q, FunctionalKind::Eps).unwrap();
        let ln_c = (c as f64).ln();
        for ((n, x), (m, y)) in a.samples.iter().zip(&b.samples) {
            prop_assert_eq!(n, m);
            let ln_a = (v[n - 1] as f64).ln();
            let diff = Float::with_val(128, x - y).abs().to_f64();
            prop_assert!(diff <= ln_c / ln_a * (1.0 + 1e-12), "n={n} diff={diff}");
        }
    }

    #[test]
    fn generators_are_increasing_with_eps_at_most_one(
        which in 0usize..7,
        a in 0.2f64..1.0,
        k in 0u64..100,
        l in 1u64..100,
        d in 1.0f64..3.0,
        b in 1.1f64..4.0,
        n in 20usize..300,
    ) {
        let kind = match which {
            0 => FamilyKind::Power { a },
            1 => FamilyKind::Arithmetic { k, l },
            2 => FamilyKind::quadratic(k, l, 1 + k % 5),
            3 => FamilyKind::RealPower { t: 0.5 + a, d },
            4 => FamilyKind::GeometricLike { alpha: a * 3.0, b },
            5 => FamilyKind::Product { c: 1.0 + a, alpha: 0.3 + a / 2.0 },
            _ => FamilyKind::Polynomial { coeffs: vec![k, 0, 0, 1 + l % 3] },
        };
        let p = FamilySpec::new(kind, n).generate_prefix().unwrap();
        assert_increasing(&p);
        let eps = functional_stream(&p, FunctionalKind::Eps).unwrap();
        prop_assert!(eps.values_f64().iter().all(|&e| e <= 1.0 + 1e-15));
    }
}

fn assert_increasing(p: &SequencePrefix) {
    match p.exact_terms() {
        Some(t) => assert!(t.windows(2).all(|w| w[0] < w[1])),
        None => {
            let l = p.log_terms().unwrap();
            assert!(l.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn power_floors_are_certified() {
    // floor(n^(1/a)) = t  iff  t^p <= n^q < (t+1)^p  for a = p/q
    for (p, q) in [(1u32, 2u32), (1, 3), (2, 3), (2, 5), (3, 7)] {
        let prefix = FamilySpec::new(FamilyKind::Power { a: p as f64 / q as f64 }, 3000)
            .generate_prefix()
            .unwrap();
        // exponent q/p >= 1, so every index gives a new floor
        assert_eq!(prefix.meta().collisions, 0);
        for (i, t) in prefix.exact_terms().unwrap().iter().enumerate() {
            let nq = Integer::from(i as u32 + 1).pow(q);
            let tp = Integer::from(t.pow(p));
            let t1p = Integer::from(t + 1u32).pow(p);
            assert!(tp <= nq && nq < t1p, "a={p}/{q} n={}", i + 1);
        }
    }
}

#[test]
fn verdicts_are_monotone_in_sigma_on_catalog() {
    use gapdens::series::{partial_sums, Verdict, VerdictRule};
    for spec in gapdens::table::table_families(4000, 60) {
        let p = spec.generate_prefix().unwrap();
        let mut converged = false;
        for i in 1..=60 {
            let sigma = 0.02 * i as f64;
            let v = partial_sums(&p, sigma, VerdictRule::default()).unwrap().verdict;
            if converged {
                assert_ne!(v, Verdict::Diverging, "{} sigma={sigma}", spec.label());
            }
            converged |= v == Verdict::Converging;
        }
    }
}
