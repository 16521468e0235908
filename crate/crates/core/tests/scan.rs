//! Cross-checks between the criterion scan and the geometric oracles, plus
//! known-failure detection controls and determinism across thread pools.

mod common;

use num_complex::Complex64;
use polyacc_core::polyharmonic::{NamedExample, PolyanalyticSpec, PolyharmonicSpec};
use polyacc_core::series::AnalyticSpec;
use polyacc_core::univalence::{
    circle_simplicity_oracle, injectivity_oracle, scan_univalence, GridSpec, ScanOptions,
    ScanTarget, ScanVerdict,
};

fn univalent_examples() -> Vec<(&'static str, PolyharmonicSpec)> {
    vec![
        (
            "moebius-shear",
            NamedExample::Eg1 {
                p: 2,
                a: Complex64::new(4.0, 0.0),
                b: Complex64::new(1.0, 0.0),
                c: Complex64::new(0.2, 0.0),
            }
            .build()
            .unwrap(),
        ),
        (
            "monomial-shear",
            NamedExample::Eg2 { p: 2, n: 2, lambda: Complex64::new(0.5, 0.0) }.build().unwrap(),
        ),
        (
            "halfplane-drift",
            NamedExample::Eg3 { p: 2, mu: Complex64::new(0.25, 0.0) }.build().unwrap(),
        ),
    ]
}

fn test_grid() -> GridSpec {
    GridSpec {
        r_min: 0.05,
        r_max: 0.95,
        n_r: 24,
        n_theta: 48,
        n_t: 12,
    }
}

#[test]
fn scan_clears_univalent_examples() {
    for (name, spec) in univalent_examples() {
        let report = scan_univalence(&spec, &test_grid(), &ScanOptions::default()).unwrap();
        assert_eq!(report.verdict, ScanVerdict::NoViolationFound, "{name}");
        assert!(report.min_modulus > report.zero_threshold, "{name}");
    }
}

#[test]
fn collision_oracle_clears_univalent_examples() {
    for (name, spec) in univalent_examples() {
        let report = injectivity_oracle(&spec, 0.9, 64, 1e-3, None).unwrap();
        assert!(report.pairs.is_empty(), "{name}: {:?}", report.pairs.first());
        assert_eq!(report.total_collisions, 0, "{name}");
        assert!(!report.truncated, "{name}");
    }
}

#[test]
fn circles_stay_simple_under_univalent_examples() {
    for (name, spec) in univalent_examples() {
        for r in [0.3, 0.6, 0.9] {
            let simple = circle_simplicity_oracle(&spec, r, 2048).unwrap();
            assert!(simple, "{name}: image of |z| = {r} self-intersects");
        }
    }
}

#[test]
fn scan_detects_fold_map() {
    let fold = PolyharmonicSpec::harmonic(AnalyticSpec::identity(), AnalyticSpec::identity());
    let report = scan_univalence(&fold, &test_grid(), &ScanOptions::default()).unwrap();
    assert_eq!(report.verdict, ScanVerdict::ViolationFound);
    assert!(report.min_modulus <= report.zero_threshold);
    // The fold also degenerates at the origin; the violation takes precedence
    // but the origin evidence is still recorded.
    assert_eq!(report.origin_check.local_injectivity_pass, Some(false));
}

#[test]
fn scan_and_oracle_detect_square_map() {
    let square = PolyharmonicSpec::harmonic(
        AnalyticSpec::monomial(2, Complex64::new(1.0, 0.0)),
        AnalyticSpec::zero(),
    );
    // The scan sees the degenerate origin (J(0) = 0 and local collisions);
    // the geometric oracles see the antipodal collision z^2 = (-z)^2.
    let report = scan_univalence(&square, &test_grid(), &ScanOptions::default()).unwrap();
    assert_ne!(report.verdict, ScanVerdict::NoViolationFound);
    assert_eq!(report.origin_check.local_injectivity_pass, Some(false));

    let collisions = injectivity_oracle(&square, 0.9, 64, 1e-3, None).unwrap();
    assert!(collisions.total_collisions > 0);
    let pair = &collisions.pairs[0];
    assert!(pair.image_distance <= collisions.collision_tolerance);
    assert!((pair.z1 + pair.z2).norm() <= 1e-9, "collisions pair antipodes");

    assert!(!circle_simplicity_oracle(&square, 0.5, 512).unwrap());
}

#[test]
fn scan_detects_radial_collapse() {
    // 1 - |z|^2 as a polyanalytic map: a_0 = 1, a_1(z) = -z.
    let radial = PolyanalyticSpec::new(vec![
        AnalyticSpec::from_series(vec![Complex64::new(1.0, 0.0)]),
        AnalyticSpec::from_series(vec![Complex64::ZERO, Complex64::new(-1.0, 0.0)]),
    ])
    .unwrap();
    let report = scan_univalence(&radial, &test_grid(), &ScanOptions::default()).unwrap();
    assert_eq!(report.verdict, ScanVerdict::ViolationFound);
    assert_eq!(report.min_modulus, 0.0);
}

/// Near t = 0 the criterion approaches sum_i |z|^{2i} (z h_i' - conj(z g_i')).
#[test]
fn criterion_continuous_at_small_t() {
    let specs = univalent_examples();
    for (name, spec) in &specs {
        for z in [Complex64::new(0.3, 0.4), Complex64::new(-0.55, 0.2)] {
            let small = spec.criterion_value(z, 1e-9).unwrap();
            let mut limit = Complex64::ZERO;
            let s = z.norm_sqr();
            for (i, layer) in spec.layers.iter().enumerate() {
                let w = s.powi(i as i32);
                limit += w * (z * layer.h.deriv(z).unwrap() - (z * layer.g.deriv(z).unwrap()).conj());
            }
            assert!(
                (small - limit).norm() <= 1e-6 * limit.norm().max(1.0),
                "{name}: {small} vs limit {limit} at {z}"
            );
        }
    }
}

#[test]
fn reports_identical_across_thread_counts() {
    let spec = NamedExample::Eg2 { p: 2, n: 2, lambda: Complex64::new(0.5, 0.0) }.build().unwrap();
    let square = PolyharmonicSpec::harmonic(
        AnalyticSpec::monomial(2, Complex64::new(1.0, 0.0)),
        AnalyticSpec::zero(),
    );
    let run = || {
        let scan = scan_univalence(&spec, &test_grid(), &ScanOptions::default()).unwrap();
        let collide = injectivity_oracle(&square, 0.9, 48, 1e-3, None).unwrap();
        (serde_json::to_string(&scan).unwrap(), serde_json::to_string(&collide).unwrap())
    };
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(run);
    let multi = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap().install(run);
    assert_eq!(single, multi);
}
