//! Acceptance suite: the ten criteria the toolkit must meet, one test per
//! criterion, each printing a single pass line (run with `-- --nocapture`
//! to see them on success).

mod common;

use std::time::Instant;

use bohr_kit::cert::Verdict;
use bohr_kit::consts;
use bohr_kit::functionals::{
    envelope_bound, functional_value, gpoly_admissible, sr_over_pi, AdmissibilityVariant,
    FunctionalContext, FunctionalKind, GPoly,
};
use bohr_kit::multidim::{compose_linear, homothety_verify, CircularDomain, MultiSeries};
use bohr_kit::radii::{solve_radius, threshold_a, RadiusSpec};
use bohr_kit::series::{random_schur_head, OperatorSeries};
use bohr_kit::sharpness::{adjudicate_radius, default_b_grid, AdjudicateOptions, SharpnessVerdict};
use bohr_kit::verify::{run_verify, VerifyConfig, VerifyRadius};
use common::{oracle_spectral_norm, random_matrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corollary_g() -> GPoly {
    GPoly::new(vec![2.0 * (5f64.sqrt() - 1.0)]).unwrap()
}

#[test]
fn criterion_01_radius_table() {
    let start = Instant::now();
    let case = |spec: RadiusSpec, expected: f64| {
        let sol = solve_radius(&spec).unwrap();
        assert!(
            (sol.value - expected).abs() < 1e-10,
            "{spec:?}: {} vs {expected}",
            sol.value
        );
        assert!(sol.residual < 1e-10, "{spec:?}: residual {}", sol.residual);
        sol.residual
    };
    let mut worst = case(
        RadiusSpec::RogosinskiValue { n: 1 },
        consts::sqrt5_minus_2(),
    );
    worst = worst.max(case(
        RadiusSpec::RogosinskiSquare { n: 1 },
        consts::one_third(),
    ));
    worst = worst.max(case(
        RadiusSpec::ScalarRefined { a0: 0.0 },
        (3.0 - 5f64.sqrt()) / 2.0,
    ));
    worst = worst.max(case(
        RadiusSpec::ScalarRefined { a0: 1.0 },
        consts::sqrt5_minus_2(),
    ));
    for value in [
        consts::one_third(),
        consts::one_fifth(),
        consts::sqrt5_minus_2(),
    ] {
        worst = worst.max(case(RadiusSpec::Const { value }, value));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "radius table took {elapsed:?}");
    println!("criterion 01: PASS - radius table reproduced, max residual {worst:.2e}, {elapsed:?}");
}

#[test]
fn criterion_02_thresholds() {
    let start = Instant::now();
    let n1 = threshold_a(1).unwrap();
    let n2 = threshold_a(2).unwrap();
    assert!(
        (n1.value - 0.402964).abs() <= 1e-5,
        "N1 threshold {}",
        n1.value
    );
    assert!(
        (n2.value - 0.489758).abs() <= 1e-5,
        "N2 threshold {}",
        n2.value
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "thresholds took {elapsed:?}");
    println!(
        "criterion 02: PASS - thresholds {:.6} and {:.6}, {elapsed:?}",
        n1.value, n2.value
    );
}

#[test]
fn criterion_03_inequality_verification() {
    let start = Instant::now();
    let third = consts::one_third();
    // (kind, radius, head range). Radii are each kind's established
    // validity radius; the square-remainder kind is stratified to the
    // scalar threshold and the area-refined kinds to their head
    // thresholds, per the hypotheses under which the inequalities hold.
    let runs: Vec<(FunctionalKind, VerifyRadius, (f64, f64))> = vec![
        (
            FunctionalKind::HeadPower { p: 1.0 },
            VerifyRadius::Fixed { r: third },
            (0.0, 0.999),
        ),
        (
            FunctionalKind::HeadPower { p: 0.5 },
            VerifyRadius::Fixed { r: 0.5 / 2.5 },
            (0.0, 0.999),
        ),
        (
            FunctionalKind::RemainderRefined { power: 1 },
            VerifyRadius::Fixed {
                r: consts::one_fifth(),
            },
            (0.0, 0.999),
        ),
        (
            FunctionalKind::RemainderRefined { power: 2 },
            VerifyRadius::Fixed { r: third },
            (0.0, consts::scalar_remainder_sq_threshold()),
        ),
        (
            FunctionalKind::ValueRefined { power: 2 },
            VerifyRadius::Fixed { r: third },
            (0.0, 0.999),
        ),
        (
            FunctionalKind::AreaValue { g: corollary_g() },
            VerifyRadius::Fixed {
                r: consts::sqrt5_minus_2(),
            },
            (0.0, 0.999),
        ),
        (
            FunctionalKind::HeadAreaRefined {
                power: 1,
                lambda: 8.0 / 9.0,
            },
            VerifyRadius::Fixed { r: third },
            (0.0, 0.402964),
        ),
        (
            FunctionalKind::HeadAreaRefined {
                power: 2,
                lambda: 9.0 / 8.0,
            },
            VerifyRadius::HeadDependent,
            (0.0, 0.489758),
        ),
    ];
    for (i, (kind, radius, a0_range)) in runs.into_iter().enumerate() {
        let config = VerifyConfig {
            kind: kind.clone(),
            radius,
            samples: 1000,
            dim: 4,
            order: 128,
            seed: 0x3000 + i as u64,
            a0_range,
            include_extremal: false,
        };
        let report = run_verify(&config).unwrap();
        assert_eq!(
            report.fail,
            0,
            "{kind}: {} FAIL verdicts, worst {:?}",
            report.fail,
            report.worst()
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "verification took {elapsed:?}"
    );
    println!("criterion 03: PASS - 8 kinds x 1000 samples, zero FAIL, {elapsed:?}");
}

#[test]
fn criterion_04_sharpness_confirmations() {
    let opts = AdjudicateOptions::default();
    let cases = [
        (FunctionalKind::Bohr, consts::one_third()),
        (
            FunctionalKind::RemainderRefined { power: 1 },
            consts::one_fifth(),
        ),
        (FunctionalKind::HeadPower { p: 1.0 }, consts::one_third()),
    ];
    for (kind, expected) in cases {
        let report = adjudicate_radius(&kind, &default_b_grid(), opts).unwrap();
        assert_eq!(
            report.verdict,
            SharpnessVerdict::Confirms,
            "{kind}: {report:?}"
        );
        assert!(
            (report.empirical_radius - expected).abs() <= 1e-4,
            "{kind}: empirical {} vs {expected}",
            report.empirical_radius
        );
    }
    println!("criterion 04: PASS - bohr, c1, bp(1) adjudicated CONFIRMS at their radii");
}

#[test]
fn criterion_05_discrepancy_adjudication() {
    let kind = FunctionalKind::ValueRefined { power: 1 };
    let report = adjudicate_radius(&kind, &default_b_grid(), AdjudicateOptions::default()).unwrap();
    assert_eq!(report.verdict, SharpnessVerdict::Contradicts, "{report:?}");
    assert!(
        (report.empirical_radius - 0.2361).abs() <= 1e-3,
        "empirical {} should sit at the root of r^2 + 4r - 1",
        report.empirical_radius
    );
    assert!((report.claimed_radius - consts::inv_sqrt5()).abs() < 1e-12);
    let w = report
        .worst_witness
        .expect("CONTRADICTS must carry a witness");
    assert!(w.b >= 0.999, "witness b = {}", w.b);
    assert!(w.r > 0.24 && w.r < 0.26, "witness r = {}", w.r);
    assert!(w.value > 1.0, "witness value = {}", w.value);
    println!(
        "criterion 05: PASS - m1 CONTRADICTS: empirical {:.5} vs claimed {:.5}, witness (b={}, r={}, value={:.8})",
        report.empirical_radius, report.claimed_radius, w.b, w.r, w.value
    );
}

#[test]
fn criterion_06_envelope_dominance() {
    let start = Instant::now();
    let kinds: Vec<FunctionalKind> = vec![
        FunctionalKind::ValueRefined { power: 1 },
        FunctionalKind::ValueRefined { power: 2 },
        FunctionalKind::RemainderRefined { power: 1 },
        FunctionalKind::RemainderRefined { power: 2 },
        FunctionalKind::HeadPower { p: 0.5 },
        FunctionalKind::AreaValue { g: corollary_g() },
        FunctionalKind::HeadAreaRefined {
            power: 1,
            lambda: 8.0 / 9.0,
        },
        FunctionalKind::HeadAreaRefined {
            power: 2,
            lambda: 9.0 / 8.0,
        },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x6000);
    let mut violations = 0usize;
    let mut checks = 0usize;
    // The subordination-based area bound inside the envelopes needs
    // r <= 1/sqrt2; the grid tops out at 0.70.
    let r_grid: Vec<f64> = (0..50).map(|k| 0.01 + 0.69 * k as f64 / 49.0).collect();
    for _ in 0..1000 {
        let a0 = 0.999 * rng.random::<f64>();
        let s = random_schur_head(a0, 4, 128, &mut rng).unwrap();
        for &r in &r_grid {
            let ctx = FunctionalContext::new(&s, r).unwrap();
            for kind in &kinds {
                let value = ctx.value(kind).unwrap();
                let envelope = envelope_bound(kind, a0, r).unwrap();
                checks += 1;
                // The class bound carries a 1e-9 construction tolerance.
                if value.lo() > envelope + 1e-8 {
                    violations += 1;
                    eprintln!(
                        "dominance violation: {kind} a0={a0} r={r}: {} > {envelope}",
                        value.lo()
                    );
                }
            }
        }
    }
    assert_eq!(violations, 0, "{violations} envelope violations");
    println!(
        "criterion 06: PASS - envelope dominance over {checks} checks, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_07_area_quantity_bound() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7000);
    let r_grid: Vec<f64> = (1..=7).map(|k| k as f64 / 10.0).collect();
    let mut violations = 0usize;
    for _ in 0..1000 {
        let a0 = 0.999 * rng.random::<f64>();
        let s = random_schur_head(a0, 4, 128, &mut rng).unwrap();
        for &r in &r_grid {
            let got = sr_over_pi(&s, r).unwrap();
            let bound = (r * (1.0 - a0 * a0) / (1.0 - a0 * a0 * r * r)).powi(2);
            // Construction tolerance on the coefficient bound, squared and
            // summed, stays under 1e-7 at these radii.
            if got.lo() > bound + 1e-7 {
                violations += 1;
                eprintln!(
                    "area bound violation: a0={a0} r={r}: {} > {bound}",
                    got.lo()
                );
            }
        }
    }
    assert_eq!(violations, 0);

    // Equality on the extremal family within 1e-6.
    for &b in &[0.0, 0.3, 0.6, 0.9, 0.99] {
        let phi = OperatorSeries::blaschke(b, 2, 128).unwrap();
        for &r in &r_grid {
            let got = sr_over_pi(&phi, r).unwrap();
            let closed = (r * (1.0 - b * b) / (1.0 - b * b * r * r)).powi(2);
            assert!(
                (got.value() - closed).abs() <= 1e-6,
                "b={b} r={r}: {} vs {closed}",
                got.value()
            );
        }
    }
    println!(
        "criterion 07: PASS - area quantity bounded for 1000 samples, equality on the extremal family, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_08_gpoly_constants() {
    // Independently keyed decimal expansions.
    let bound = gpoly_admissible(
        &GPoly::new(vec![1.0]).unwrap(),
        AdmissibilityVariant::Sqrt5Minus2,
    )
    .bound;
    assert!(
        (bound - 0.454_915_028_125_263).abs() < 1e-12,
        "bound {bound}"
    );

    // Monomial threshold for the one-third condition is exactly 8/9.
    let at_threshold = gpoly_admissible(
        &GPoly::new(vec![8.0 / 9.0]).unwrap(),
        AdmissibilityVariant::OneThird,
    );
    assert!(
        at_threshold.margin.abs() <= 1e-12,
        "margin {}",
        at_threshold.margin
    );
    assert!(at_threshold.admissible);

    // The corollary coefficient 2(sqrt5 - 1) passes the sqrt5 condition.
    let corollary = gpoly_admissible(&corollary_g(), AdmissibilityVariant::Sqrt5Minus2);
    assert!(corollary.admissible);
    assert!((corollary.margin - 0.1459).abs() < 1e-3);
    println!("criterion 08: PASS - admissibility constants reproduced to 1e-12");
}

#[test]
fn criterion_09_multidim_homothety() {
    let start = Instant::now();
    let domains = [
        CircularDomain::Polydisc { n: 2 },
        CircularDomain::EuclideanBall { n: 3 },
    ];
    let runs: Vec<(FunctionalKind, f64)> = vec![
        (
            FunctionalKind::RemainderRefined { power: 1 },
            consts::one_fifth(),
        ),
        (FunctionalKind::HeadPower { p: 1.0 }, consts::one_third()),
        (
            FunctionalKind::ValueRefined { power: 2 },
            consts::one_third(),
        ),
        (
            FunctionalKind::AreaValue { g: corollary_g() },
            consts::sqrt5_minus_2(),
        ),
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(0x9000);
    let mut verified = 0usize;
    for domain in domains {
        let n = domain.vars();
        for series_idx in 0..100 {
            let a0 = 0.95 * rng.random::<f64>();
            let inner = random_schur_head(a0, 4, 128, &mut rng).unwrap();
            // Random weights rescaled onto the dual-gauge sphere.
            let raw: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect();
            let dual = domain.dual_norm(&raw);
            let weights: Vec<Complex64> = raw.iter().map(|w| w / dual).collect();
            let map: MultiSeries = compose_linear(inner, weights, domain).unwrap();
            for (kind, rho) in &runs {
                let report =
                    homothety_verify(&map, kind, *rho, 0x9100 + series_idx, 10_000).unwrap();
                assert_eq!(
                    report.verdict,
                    Verdict::Pass,
                    "{domain:?} {kind} rho={rho}: {:?}",
                    report.worst
                );
                verified += 1;
            }
        }
    }

    // Past each claimed radius, a near-extremal inner map must fail, with
    // a certain (slack-covered) violation witness.
    for domain in domains {
        let n = domain.vars();
        let inner = OperatorSeries::blaschke(0.9999, 4, 128).unwrap();
        let mut weights = vec![Complex64::ZERO; n];
        weights[0] = Complex64::ONE;
        let map = compose_linear(inner, weights, domain).unwrap();
        for (kind, rho) in &runs {
            let report = homothety_verify(&map, kind, rho + 0.05, 0x9f00, 10_000).unwrap();
            assert_eq!(
                report.verdict,
                Verdict::Fail,
                "{domain:?} {kind} at rho + 0.05"
            );
            let worst = report.worst.expect("FAIL carries a witness");
            assert!(
                worst.value - worst.slack > 1.0,
                "{domain:?} {kind}: witness not certain ({} +- {})",
                worst.value,
                worst.slack
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 600.0, "homothety took {elapsed:?}");
    println!(
        "criterion 09: PASS - {verified} homothety runs x 10000 directions, zero FAIL; witnesses found past the radii, {elapsed:?}"
    );
}

#[test]
fn criterion_10_oracle_cross_checks() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xa000);
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let dim = 1 + (trial % 8);
        let m = random_matrix(dim, 1.5, &mut rng);
        let diff = (m.spectral_norm() - oracle_spectral_norm(&m)).abs();
        worst = worst.max(diff);
        assert!(diff <= 1e-10, "trial {trial}: diff {diff}");
    }

    // Scalar unitary colligation blocks reproduce the extremal family's
    // coefficient norms exactly.
    for &b in &[0.0, 0.25, 0.6, 0.9] {
        for dim in [1usize, 3] {
            let s = (1.0f64 - b * b).sqrt();
            let mk = |x: f64| bohr_kit::matrix::ComplexMatrix::scalar(dim, Complex64::new(x, 0.0));
            let series = OperatorSeries::colligation(&mk(b), &mk(s), &mk(s), &mk(-b), 24).unwrap();
            let phi = OperatorSeries::blaschke(b, dim, 24).unwrap();
            for k in 0..=24 {
                let diff = (series.coeff_norms()[k] - phi.coeff_norms()[k]).abs();
                assert!(diff <= 1e-12, "b={b} dim={dim} k={k}: diff {diff}");
            }
        }
    }
    println!(
        "criterion 10: PASS - 1000 eigen-oracle checks (worst {worst:.2e}) and colligation/extremal agreement, {:?}",
        start.elapsed()
    );
}

// The examples stated alongside the operations, frozen as regression pins.
#[test]
fn spec_examples_pinned() {
    // Remainder-refined value on Phi_0 at 0.2 (hand-composed): 0.45.
    let phi0 = OperatorSeries::blaschke(0.0, 2, 128).unwrap();
    let c1 = functional_value(&FunctionalKind::RemainderRefined { power: 1 }, &phi0, 0.2).unwrap();
    assert!((c1.value() - 0.45).abs() < 1e-9);

    // Square-headed value on Phi_0 at 1/3: 11/18.
    let m2 =
        functional_value(&FunctionalKind::ValueRefined { power: 2 }, &phi0, 1.0 / 3.0).unwrap();
    assert!((m2.value() - 11.0 / 18.0).abs() < 1e-6);
    println!("spec examples: PASS");
}
