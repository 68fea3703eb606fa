//! Outputs compared against independent reference computations.

use gapdens::estimators::{density_profile, ProfileConfig};
use gapdens::generators::{gen_double_exp_union, FamilyKind, FamilySpec};
use gapdens::series::{log_sum_exp, partial_sums, VerdictRule};

/// `{2^n : n >= 1}` merged with `{2^(2^m) + 1 : m >= 1}` below `2^64`.
fn union_brute_force() -> Vec<u128> {
    let mut v: Vec<u128> = (1..64).map(|e| 1u128 << e).collect();
    let mut m = 1;
    while (1u32 << m) < 64 {
        v.push((1u128 << (1u32 << m)) + 1);
        m += 1;
    }
    v.sort_unstable();
    v.dedup();
    v
}

#[test]
fn union_matches_brute_force_merge() {
    let want = union_brute_force();
    for n in 1..=want.len() {
        let p = gen_double_exp_union(n).unwrap();
        let got: Vec<u128> = p
            .exact_terms()
            .unwrap()
            .iter()
            .map(|t| t.to_u128().unwrap())
            .collect();
        assert_eq!(got, want[..n], "n={n}");
    }
}

#[test]
fn eps_and_harmonic_agree_at_ten_thousand() {
    // the gap is about gamma / ln a_n at the tail argument, so short
    // prefixes such as the union at N = 60 sit just above 0.02
    for spec in gapdens::generators::catalog(10_000) {
        let p = spec.generate_prefix().unwrap();
        if p.ln_values_f64().last().unwrap() < &(1e3f64).ln() {
            continue;
        }
        let prof = density_profile(&p, &ProfileConfig::default()).unwrap();
        assert!(
            prof.eps_harmonic_discrepancy <= 0.02,
            "{}: {}",
            spec.label(),
            prof.eps_harmonic_discrepancy
        );
    }
}

#[test]
fn log_sum_exp_matches_direct_summation() {
    // terms that stay inside double range
    let families = [
        FamilyKind::Power { a: 0.5 },
        FamilyKind::Arithmetic { k: 3, l: 5 },
        FamilyKind::NonSquareSquares,
        FamilyKind::RealPower { t: 1.0, d: 2.5 },
    ];
    for kind in families {
        let p = FamilySpec::new(kind, 20_000).generate_prefix().unwrap();
        let ln = p.ln_values_f64();
        for sigma in [0.3, 0.7, 1.0, 2.0] {
            let direct: f64 = {
                let mut terms: Vec<f64> = ln.iter().map(|l| (-sigma * l).exp()).collect();
                // smallest first, accumulated in extended steps
                terms.reverse();
                let (mut s, mut c) = (0.0f64, 0.0f64);
                for t in terms {
                    let y = t - c;
                    let z = s + y;
                    c = (z - s) - y;
                    s = z;
                }
                s
            };
            let trace = partial_sums(&p, sigma, VerdictRule::default()).unwrap();
            let rel = (trace.log_total().exp() - direct).abs() / direct;
            assert!(rel <= 1e-12, "{} sigma={sigma}: {rel:e}", p.family_tag());
        }
    }
}

#[test]
fn block_log_sum_exp_matches_direct() {
    let xs: Vec<f64> = (1..=1000).map(|k| -(k as f64).ln() * 1.3).collect();
    let direct: f64 = xs.iter().map(|x| x.exp()).sum();
    let rel = (log_sum_exp(&xs).exp() - direct).abs() / direct;
    assert!(rel <= 1e-12);
}
