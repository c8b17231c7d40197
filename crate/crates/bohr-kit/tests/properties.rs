//! Property tests for the structural invariants: norm algebra, generator
//! class guarantees, functional monotonicity, slicing consistency, and
//! witness coherence.

mod common;

use bohr_kit::cert::Verdict;
use bohr_kit::functionals::{
    functional_value, majorant_sum, schwarz_pick_check, weighted_square_sum, FunctionalContext,
    FunctionalKind, GPoly,
};
use bohr_kit::matrix::ComplexMatrix;
use bohr_kit::multidim::{compose_linear, homothety_verify, slice, CircularDomain};
use bohr_kit::radii::{solve_radius, RadiusSpec};
use bohr_kit::series::{random_schur_head, OperatorSeries};
use bohr_kit::sharpness::{violation_witness, WitnessSearch};
use common::random_matrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectral_norm_submultiplicative(seed in 0u64..5000, d in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix(d, 1.5, &mut rng);
        let b = random_matrix(d, 1.5, &mut rng);
        let prod = a.mul(&b).spectral_norm();
        prop_assert!(prod <= a.spectral_norm() * b.spectral_norm() + 1e-9);
    }

    #[test]
    fn spectral_norm_homogeneous(seed in 0u64..5000, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(4, 1.0, &mut rng);
        let c = Complex64::new(re, im);
        let scaled = m.scale(c).spectral_norm();
        prop_assert!((scaled - c.norm() * m.spectral_norm()).abs() < 1e-10);
    }

    #[test]
    fn invert_round_trips(seed in 0u64..5000, d in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Diagonally dominated shift keeps the sample well-conditioned.
        let m = random_matrix(d, 1.0, &mut rng)
            .add(&ComplexMatrix::scalar(d, Complex64::new(4.0, 0.0)));
        let back = m.invert().unwrap().invert().unwrap();
        prop_assert!(back.sub(&m).max_abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn generated_series_obey_coefficient_bound(seed in 0u64..2000, head in 0.0f64..0.95) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_schur_head(head, 3, 48, &mut rng).unwrap();
        let report = schwarz_pick_check(&s).unwrap();
        prop_assert!(report.ok, "excess {} at index {}", report.worst_excess, report.worst_index);
    }

    #[test]
    fn growth_bound_on_sampled_circles(seed in 0u64..2000, head in 0.0f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_schur_head(head, 3, 96, &mut rng).unwrap();
        for k in 1..=9usize {
            let r = k as f64 / 10.0;
            let tail = s.tail_majorant_bound(r).unwrap();
            let growth = (head + r) / (1.0 + head * r);
            for i in 0..12 {
                let theta = i as f64 * std::f64::consts::TAU / 12.0;
                let z = Complex64::new(r * theta.cos(), r * theta.sin());
                let norm = s.evaluate(z).unwrap().spectral_norm();
                prop_assert!(
                    norm <= growth + tail + 1e-8,
                    "||f|| = {norm} > {growth} at r = {r}"
                );
            }
        }
    }

    #[test]
    fn evaluate_is_linear_in_coefficients(seed in 0u64..2000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_schur_head(0.3, 2, 24, &mut rng).unwrap();
        let b = random_schur_head(0.5, 2, 24, &mut rng).unwrap();
        let summed: Vec<ComplexMatrix> = a
            .coeffs()
            .iter()
            .zip(b.coeffs())
            .map(|(x, y)| x.add(y))
            .collect();
        let sum_series =
            OperatorSeries::new(summed, bohr_kit::series::SeriesClass::General).unwrap();
        let z = Complex64::new(0.4 * rng.random::<f64>(), 0.4 * rng.random::<f64>());
        let direct = sum_series.evaluate(z).unwrap();
        let split = a.evaluate(z).unwrap().add(&b.evaluate(z).unwrap());
        prop_assert!(direct.sub(&split).max_abs() < 1e-12);
    }

    #[test]
    fn functional_values_nondecreasing_in_r(seed in 0u64..500, head in 0.0f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_schur_head(head, 3, 96, &mut rng).unwrap();
        let kinds = [
            FunctionalKind::Bohr,
            FunctionalKind::ValueRefined { power: 1 },
            FunctionalKind::RemainderRefined { power: 2 },
            FunctionalKind::HeadPower { p: 0.5 },
            FunctionalKind::HeadAreaRefined { power: 1, lambda: 8.0 / 9.0 },
        ];
        for kind in &kinds {
            let mut prev = f64::NEG_INFINITY;
            for step in 0..=9 {
                let r = 0.9 * step as f64 / 9.0;
                let v = functional_value(kind, &s, r).unwrap();
                // Compare with slack: midpoints of adjacent enclosures.
                prop_assert!(
                    v.hi() >= prev - 1e-9,
                    "{kind} decreased at r = {r}"
                );
                prev = v.lo();
            }
        }
    }
}

#[test]
fn tail_bound_monotone_in_order_and_vanishes_at_zero() {
    for order in [2usize, 8, 32, 128] {
        let s = OperatorSeries::blaschke(0.4, 2, order).unwrap();
        assert_eq!(s.tail_majorant_bound(0.0).unwrap(), 0.0);
    }
    let mut prev = f64::INFINITY;
    for order in [2usize, 4, 8, 16, 64] {
        let s = OperatorSeries::blaschke(0.4, 2, order).unwrap();
        let tail = s.tail_majorant_bound(0.5).unwrap();
        assert!(tail < prev, "tail must shrink as the order grows");
        prev = tail;
    }
}

#[test]
fn gpoly_monotone_in_argument() {
    let g = GPoly::new(vec![0.3, 0.0, 1.2]).unwrap();
    let mut prev = -1.0;
    for k in 0..=20 {
        let t = k as f64 / 10.0;
        let v = g.eval(t);
        assert!(v >= prev);
        prev = v;
    }
}

#[test]
fn remainder_kind_shares_majorant_subterms() {
    // Stripping the weighted squares and the remainder power from the
    // remainder-refined kind leaves exactly the plain majorant sum.
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..6 {
        let s = random_schur_head(0.6 * rng.random::<f64>(), 3, 64, &mut rng).unwrap();
        let r = 0.05 + 0.5 * rng.random::<f64>();
        let c1 = functional_value(&FunctionalKind::RemainderRefined { power: 1 }, &s, r).unwrap();
        let bohr = functional_value(&FunctionalKind::Bohr, &s, r).unwrap();
        let ctx = FunctionalContext::new(&s, r).unwrap();
        let _ = ctx;
        let wsq = {
            let w = 1.0 / (1.0 + s.scalar_head().unwrap()) + r / (1.0 - r);
            weighted_square_sum(&s, r).unwrap().value() * w
        };
        let m1 = majorant_sum(&s, r, 1).unwrap().value();
        assert!(
            (c1.value() - wsq - m1 - bohr.value()).abs() < 1e-12,
            "shared sub-terms diverge"
        );
    }
}

#[test]
fn witnesses_reevaluate_above_one() {
    // Any returned witness must reproduce its margin through the series
    // functional path within combined slack.
    let kind = FunctionalKind::Bohr;
    let w = violation_witness(
        &kind,
        0.4,
        WitnessSearch {
            samples: 0,
            ..Default::default()
        },
    )
    .unwrap()
    .expect("0.4 > 1/3");
    let phi = OperatorSeries::blaschke(w.b, 2, 256).unwrap();
    let v = functional_value(&kind, &phi, w.r).unwrap();
    assert!((v.value() - w.value).abs() <= v.slack() + 1e-9);
    assert_eq!(Verdict::le_one(v), Verdict::Fail);
}

#[test]
fn slicing_consistency_depends_only_on_omega_modulus() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let inner = random_schur_head(0.4, 3, 64, &mut rng).unwrap();
    let domain = CircularDomain::Polydisc { n: 2 };
    let m = compose_linear(
        inner,
        vec![Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)],
        domain,
    )
    .unwrap();
    let kind = FunctionalKind::RemainderRefined { power: 1 };
    let theta = 1.234f64;
    let u = Complex64::new(theta.cos(), theta.sin());
    // omega((1, u)) = 0.5 (1 + u) and omega((u, 1)) = 0.5 (u + 1): equal
    // moduli, different directions.
    let da = [Complex64::new(1.0, 0.0), u];
    let db = [u, Complex64::new(1.0, 0.0)];
    let sa = slice(&m, &da).unwrap();
    let sb = slice(&m, &db).unwrap();
    let va = functional_value(&kind, &sa, 0.3).unwrap();
    let vb = functional_value(&kind, &sb, 0.3).unwrap();
    assert!((va.value() - vb.value()).abs() < 1e-10);
}

#[test]
fn homothety_monotone_in_rho() {
    let mut rng = ChaCha8Rng::seed_from_u64(2048);
    let inner = random_schur_head(0.55, 3, 96, &mut rng).unwrap();
    let m = compose_linear(
        inner,
        vec![Complex64::new(0.6, 0.0), Complex64::new(0.4, 0.0)],
        CircularDomain::Polydisc { n: 2 },
    )
    .unwrap();
    let kind = FunctionalKind::HeadPower { p: 1.0 };
    let at_third = homothety_verify(&m, &kind, 1.0 / 3.0, 9, 300).unwrap();
    assert_eq!(at_third.verdict, Verdict::Pass);
    for rho in [0.05, 0.15, 0.25] {
        let report = homothety_verify(&m, &kind, rho, 9, 300).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Pass,
            "passing at 1/3 must pass at {rho}"
        );
    }
}

#[test]
fn rogosinski_power_radius_monotone_in_p() {
    let mut prev = 0.0;
    for k in 1..=10 {
        let p = k as f64 / 10.0;
        let r = solve_radius(&RadiusSpec::RogosinskiPower { n: 2, p })
            .unwrap()
            .value;
        assert!(r > prev, "radius should grow with p");
        prev = r;
    }
    let rn = solve_radius(&RadiusSpec::RogosinskiValue { n: 2 })
        .unwrap()
        .value;
    assert!(
        (prev - rn).abs() < 1e-12,
        "p = 1 specializes to the plain radius"
    );
}

#[test]
fn sampler_is_deterministic_for_fixed_seed() {
    let gen = || {
        let mut rng = ChaCha8Rng::seed_from_u64(9000);
        random_schur_head(0.42, 3, 32, &mut rng).unwrap()
    };
    let a = gen();
    let b = gen();
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        assert_eq!(x, y);
    }
}

#[test]
fn core_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<ComplexMatrix>();
    assert_send_sync::<OperatorSeries>();
    assert_send_sync::<bohr_kit::MultiSeries>();
    assert_send_sync::<FunctionalKind>();
}

#[test]
fn rogosinski_adjudication_recovers_solved_radii() {
    // The empirical radius of the cutoff functionals must land on the
    // roots of their defining equations.
    use bohr_kit::{adjudicate_radius, default_b_grid, AdjudicateOptions, SharpnessVerdict};
    let opts = AdjudicateOptions {
        samples: 4,
        dim: 2,
        order: 64,
        ..Default::default()
    };
    for (kind, spec) in [
        (
            FunctionalKind::Rogosinski {
                cutoff: 1,
                power: 1,
            },
            RadiusSpec::RogosinskiValue { n: 1 },
        ),
        (
            FunctionalKind::Rogosinski {
                cutoff: 2,
                power: 2,
            },
            RadiusSpec::RogosinskiSquare { n: 2 },
        ),
    ] {
        let expected = solve_radius(&spec).unwrap().value;
        let report = adjudicate_radius(&kind, &default_b_grid(), opts).unwrap();
        assert_eq!(
            report.verdict,
            SharpnessVerdict::Confirms,
            "{kind}: {report:?}"
        );
        assert!(
            (report.empirical_radius - expected).abs() < 1e-4,
            "{kind}: empirical {} vs root {expected}",
            report.empirical_radius
        );
    }
}

#[test]
fn area_head_adjudication_confirms_one_third() {
    use bohr_kit::{adjudicate_radius, default_b_grid, AdjudicateOptions, SharpnessVerdict};
    let g = GPoly::new(vec![0.8]).unwrap(); // one-third admissible monomial
    let kind = FunctionalKind::AreaHead { g };
    let opts = AdjudicateOptions { samples: 4, dim: 2, order: 64, ..Default::default() };
    let report = adjudicate_radius(&kind, &default_b_grid(), opts).unwrap();
    assert_eq!(report.verdict, SharpnessVerdict::Confirms, "{report:?}");
    assert!((report.empirical_radius - 1.0 / 3.0).abs() < 1e-4);
}
