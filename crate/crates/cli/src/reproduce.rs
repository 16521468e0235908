//! Batch driver rerunning the toolkit's verification scenarios into a
//! deterministic artifact tree: JSON reports, four SVG figures, a summary.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use polyacc_core::accessibility::{
    access_margin, boundary_cone_oracle, biharmonic_l2, check_fully_accessible, estimate_alpha_sup,
    harmonic_margin, AccessVerdict,
};
use polyacc_core::kernel::{c_alpha, solve_dirichlet, t_alpha_residual, BoundaryData, KernelParams};
use polyacc_core::polyharmonic::{
    jacobian_trichotomy, JacobianSign, NamedExample, PolyanalyticSpec, PolyharmonicSpec,
};
use polyacc_core::render::{csv_string, emit_svg, render_image, svg_string, RenderSpec};
use polyacc_core::series::{dirichlet_ratio, AnalyticSpec};
use polyacc_core::univalence::{
    circle_simplicity_oracle, injectivity_oracle, scan_univalence, GridSpec, ScanOptions,
    ScanTarget, ScanVerdict,
};
use polyacc_core::{Error, Result};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real(x: f64) -> Complex64 {
    c(x, 0.0)
}

/// Trimmed scan lattice used throughout the batch; every report records it.
fn batch_grid() -> GridSpec {
    GridSpec {
        r_min: 0.05,
        r_max: 0.95,
        n_r: 48,
        n_theta: 64,
        n_t: 16,
    }
}

fn random_point(rng: &mut ChaCha8Rng, r_lo: f64, r_hi: f64) -> Complex64 {
    let r = (rng.gen_range(r_lo.powi(2)..r_hi.powi(2))).sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
}

fn random_series(rng: &mut ChaCha8Rng, max_deg: usize, scale: f64, zero_constant: bool) -> AnalyticSpec {
    let coeffs = (0..=max_deg)
        .map(|k| {
            if k == 0 && zero_constant {
                Complex64::ZERO
            } else {
                c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
            }
        })
        .collect();
    AnalyticSpec::from_series(coeffs)
}

fn write_report<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf> {
    let path = dir.join(name);
    let body = serde_json::to_string_pretty(value).map_err(|e| Error::SingularInput(e.to_string()))?;
    std::fs::write(&path, body + "\n").map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(path)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioStatus {
    pub id: String,
    pub ok: bool,
    pub report: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub scenarios: Vec<ScenarioStatus>,
    pub figures: Vec<String>,
    pub all_ok: bool,
}

#[derive(Serialize)]
struct KernelLimitReport {
    n_max: i64,
    exact_at_zero: bool,
    grid_points: usize,
    max_excess_over_bound: f64,
    ok: bool,
}

fn s01_kernel_limit() -> (KernelLimitReport, bool) {
    let exact = (1..=50).all(|n| dirichlet_ratio(n, 0.0) == n as f64);
    let grid_points = 1000;
    let mut excess: f64 = f64::NEG_INFINITY;
    for n in 1..=50i64 {
        for l in 0..grid_points {
            let t = (l + 1) as f64 / grid_points as f64 * FRAC_PI_2;
            excess = excess.max(dirichlet_ratio(n, t).abs() - n as f64);
        }
    }
    let ok = exact && excess <= 1e-12;
    (
        KernelLimitReport {
            n_max: 50,
            exact_at_zero: exact,
            grid_points: grid_points as usize,
            max_excess_over_bound: excess,
            ok,
        },
        ok,
    )
}

fn positive_examples() -> Vec<(String, PolyharmonicSpec)> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5] {
        for n in [2u32, 3, 4, 5, 10] {
            let spec = NamedExample::Eg2 { p, n, lambda: real(1.0 / f64::from(n)) }
                .build()
                .expect("admissible parameters");
            out.push((format!("eg2-p{p}-n{n}"), spec));
        }
    }
    for (a, b, cc) in [(4.0, 1.0, 0.0), (3.0, 0.5, 0.2)] {
        let spec = NamedExample::Eg1 { p: 2, a: real(a), b: real(b), c: real(cc) }
            .build()
            .expect("admissible parameters");
        out.push((format!("eg1-a{a}-b{b}-c{cc}"), spec));
    }
    for (p, mu) in [(2u32, 0.25), (5, 0.5)] {
        let spec = NamedExample::Eg3 { p, mu: real(mu) }.build().expect("admissible parameters");
        out.push((format!("eg3-p{p}-mu{mu}"), spec));
    }
    out
}

#[derive(Serialize)]
struct PositiveCase {
    name: String,
    verdict: ScanVerdict,
    min_modulus: f64,
    oracle_collisions: usize,
    circles_simple: Vec<bool>,
    ok: bool,
}

#[derive(Serialize)]
struct PositiveReport {
    grid: GridSpec,
    oracle_resolution: usize,
    circle_samples: usize,
    circle_radii: Vec<f64>,
    cases: Vec<PositiveCase>,
    ok: bool,
}

fn s02_univalence_positive() -> Result<(PositiveReport, bool)> {
    let grid = batch_grid();
    let opts = ScanOptions::default();
    let radii = vec![0.3, 0.6, 0.9];
    let mut cases = Vec::new();
    for (name, spec) in positive_examples() {
        let scan = scan_univalence(&spec, &grid, &opts)?;
        let oracle = injectivity_oracle(&spec, 0.9, 96, 1e-3, None)?;
        let circles = radii
            .iter()
            .map(|&r| circle_simplicity_oracle(&spec, r, 384))
            .collect::<Result<Vec<bool>>>()?;
        let ok = scan.verdict == ScanVerdict::NoViolationFound
            && scan.min_modulus > 1e-6
            && oracle.total_collisions == 0
            && circles.iter().all(|&s| s);
        cases.push(PositiveCase {
            name,
            verdict: scan.verdict,
            min_modulus: scan.min_modulus,
            oracle_collisions: oracle.total_collisions,
            circles_simple: circles,
            ok,
        });
    }
    let ok = cases.iter().all(|case| case.ok);
    Ok((
        PositiveReport {
            grid,
            oracle_resolution: 96,
            circle_samples: 384,
            circle_radii: radii,
            cases,
            ok,
        },
        ok,
    ))
}

#[derive(Serialize)]
struct NegativeCase {
    name: String,
    scan_verdict: ScanVerdict,
    oracle_collisions: usize,
    /// None when the image curve degenerates and the oracle cannot decide.
    circle_simple: Option<bool>,
    detectors_flagging: u32,
    criterion_max_modulus: Option<f64>,
    ok: bool,
}

#[derive(Serialize)]
struct NegativeReport {
    grid: GridSpec,
    cases: Vec<NegativeCase>,
    ok: bool,
}

fn s03_univalence_negative() -> Result<(NegativeReport, bool)> {
    let grid = batch_grid();
    let opts = ScanOptions::default();

    let fold = PolyharmonicSpec::harmonic(AnalyticSpec::identity(), AnalyticSpec::identity());
    let square = PolyharmonicSpec::harmonic(
        AnalyticSpec::from_series(vec![Complex64::ZERO, Complex64::ZERO, Complex64::ONE]),
        AnalyticSpec::zero(),
    );
    let radial = PolyanalyticSpec::new(vec![
        AnalyticSpec::from_series(vec![Complex64::ONE]),
        AnalyticSpec::from_series(vec![Complex64::ZERO, -Complex64::ONE]),
    ])?;

    let mut cases = Vec::new();
    let mut run = |name: &str, target: &dyn ScanTarget, check_zero: bool| -> Result<()> {
        let scan = scan_univalence(target, &grid, &opts)?;
        let oracle = injectivity_oracle(target, 0.9, 96, 1e-3, None)?;
        let circle = match circle_simplicity_oracle(target, 0.6, 384) {
            Ok(simple) => Some(simple),
            Err(Error::DegenerateCurve(_)) => None,
            Err(e) => return Err(e),
        };
        let mut flags = 0u32;
        if scan.verdict != ScanVerdict::NoViolationFound {
            flags += 1;
        }
        if oracle.total_collisions > 0 {
            flags += 1;
        }
        if circle == Some(false) {
            flags += 1;
        }
        let criterion_max = if check_zero {
            let mut max: f64 = 0.0;
            for &r in &grid.radii() {
                for &th in &grid.thetas() {
                    for &t in &grid.t_values() {
                        max = max.max(target.criterion_value(Complex64::from_polar(r, th), t)?.norm());
                    }
                }
            }
            Some(max)
        } else {
            None
        };
        let ok = flags >= 2 && criterion_max.map_or(true, |m| m <= 1e-14);
        cases.push(NegativeCase {
            name: name.to_string(),
            scan_verdict: scan.verdict,
            oracle_collisions: oracle.total_collisions,
            circle_simple: circle,
            detectors_flagging: flags,
            criterion_max_modulus: criterion_max,
            ok,
        });
        Ok(())
    };
    run("fold", &fold, false)?;
    run("square", &square, false)?;
    run("radial-collapse", &radial, true)?;

    let ok = cases.iter().all(|case| case.ok);
    Ok((NegativeReport { grid, cases, ok }, ok))
}

#[derive(Serialize)]
struct JacobianReport {
    samples: usize,
    cube_max_dev: f64,
    eg2_j0: f64,
    eg2_j0_expected: f64,
    eg3_j0: f64,
    eg3_j0_expected: f64,
    trichotomy_agreements: usize,
    trichotomy_total: usize,
    ok: bool,
}

fn s04_jacobian_forms() -> Result<(JacobianReport, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let cube = PolyharmonicSpec::weighted(2, AnalyticSpec::identity())?;
    let mut cube_dev: f64 = 0.0;
    for _ in 0..100 {
        let z = random_point(&mut rng, 0.0, 0.95);
        cube_dev = cube_dev.max((cube.jacobian(z)? - 3.0 * z.norm().powi(4)).abs());
    }

    let eg2 = NamedExample::Eg2 { p: 2, n: 2, lambda: real(0.5) }.build()?;
    let eg3 = NamedExample::Eg3 { p: 2, mu: real(0.25) }.build()?;
    let eg2_j0 = eg2.jacobian(Complex64::ZERO)?;
    let eg3_j0 = eg3.jacobian(Complex64::ZERO)?;

    let total = 100;
    let mut agreements = 0;
    let mut drawn = 0;
    while drawn < total {
        let f1 = random_series(&mut rng, 4, 0.8, false);
        let p = rng.gen_range(2..=4u32);
        let z = random_point(&mut rng, 0.05, 0.9);
        // the ratio test is undefined at zeros of the layer
        if f1.eval(z)?.norm() < 1e-6 {
            continue;
        }
        drawn += 1;
        let jac = PolyharmonicSpec::weighted(p, f1.clone())?.jacobian(z)?;
        let agrees = match jacobian_trichotomy(&f1, p, z)? {
            JacobianSign::Positive => jac > -1e-10,
            JacobianSign::Negative => jac < 1e-10,
            JacobianSign::Zero => jac.abs() <= 1e-10,
        };
        if agrees {
            agreements += 1;
        }
    }

    let ok = cube_dev <= 1e-12
        && (eg2_j0 - 1.0).abs() <= 1e-12
        && (eg3_j0 - 2.0).abs() <= 1e-12
        && agreements == total;
    Ok((
        JacobianReport {
            samples: 100,
            cube_max_dev: cube_dev,
            eg2_j0,
            eg2_j0_expected: 1.0,
            eg3_j0,
            eg3_j0_expected: 2.0,
            trichotomy_agreements: agreements,
            trichotomy_total: total,
            ok,
        },
        ok,
    ))
}

#[derive(Serialize)]
struct AccessIdentityReport {
    samples: usize,
    l2_max_dev: f64,
    harmonic_margin_max_dev: f64,
    monotone_alphas: Vec<f64>,
    monotone_min_margins: Vec<f64>,
    monotone: bool,
    ok: bool,
}

fn s05_access_identities() -> Result<(AccessIdentityReport, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(43);

    let mut l2_dev: f64 = 0.0;
    for _ in 0..100 {
        let layers = vec![
            polyacc_core::polyharmonic::HarmonicLayer::new(
                random_series(&mut rng, 4, 0.6, true),
                random_series(&mut rng, 4, 0.6, true),
            ),
            polyacc_core::polyharmonic::HarmonicLayer::new(
                random_series(&mut rng, 4, 0.6, true),
                random_series(&mut rng, 4, 0.6, true),
            ),
        ];
        let spec = PolyharmonicSpec::new(layers)?;
        let z = random_point(&mut rng, 0.05, 0.85);
        let m = access_margin(&spec, z)?;
        l2_dev = l2_dev.max((biharmonic_l2(&spec, z)? - (m.a * m.a + m.b * m.b)).abs());
    }

    let mut margin_dev: f64 = 0.0;
    for _ in 0..100 {
        let h = random_series(&mut rng, 4, 0.6, true);
        let g = random_series(&mut rng, 4, 0.6, true);
        let spec = PolyharmonicSpec::harmonic(h.clone(), g.clone());
        let z = random_point(&mut rng, 0.05, 0.85);
        let alpha = rng.gen_range(0.0..0.95);
        let general = access_margin(&spec, z)?.margin(alpha);
        margin_dev = margin_dev.max((harmonic_margin(&h, &g, z, alpha)? - general).abs());
    }

    let spec = NamedExample::Acc1 { p: 2, n: 2, lambda: real(0.4) }.build()?;
    let grid = batch_grid();
    let alphas = vec![0.0, 0.2, 0.4, 0.6, 0.8];
    let mins = alphas
        .iter()
        .map(|&alpha| Ok(check_fully_accessible(&spec, alpha, &grid)?.min_margin))
        .collect::<Result<Vec<f64>>>()?;
    let monotone = mins.windows(2).all(|w| w[1] <= w[0]);

    let ok = l2_dev <= 1e-10 && margin_dev <= 1e-10 && monotone;
    Ok((
        AccessIdentityReport {
            samples: 100,
            l2_max_dev: l2_dev,
            harmonic_margin_max_dev: margin_dev,
            monotone_alphas: alphas,
            monotone_min_margins: mins,
            monotone,
            ok,
        },
        ok,
    ))
}

/// The four paper-level accessibility cases: radial shifts at the arcsin
/// level, weighted shears at the complementary arcsin level.
fn bound_cases() -> Result<Vec<(String, PolyharmonicSpec, f64)>> {
    let mut out = Vec::new();
    for (p, lam) in [(2u32, 0.25f64), (3, 0.125)] {
        let alpha = 2.0 / PI * ((1.0 - lam) / (1.0 + lam)).asin() - 0.02;
        let spec = NamedExample::Acc2 { p, lambda: real(lam) }.build()?;
        out.push((format!("radial-shift-p{p}"), spec, alpha));
    }
    for (p, n) in [(2u32, 2u32), (3, 3)] {
        let lam = 1.0 / (2.0 * f64::from(n));
        let alpha = 1.0 - 2.0 / PI * (lam * f64::from(n - 1) / (1.0 - lam)).asin() - 0.02;
        let spec = NamedExample::Acc1 { p, n, lambda: real(lam) }.build()?;
        out.push((format!("weighted-shear-p{p}-n{n}"), spec, alpha));
    }
    Ok(out)
}

#[derive(Serialize)]
struct BoundCase {
    name: String,
    alpha: f64,
    verdict: AccessVerdict,
    min_margin: f64,
    ok: bool,
}

#[derive(Serialize)]
struct EstimateCase {
    name: String,
    verdict: AccessVerdict,
    alpha_sup_estimate: Option<f64>,
    recheck_alpha: f64,
    recheck_verdict: AccessVerdict,
    ok: bool,
}

#[derive(Serialize)]
struct AccessBoundReport {
    grid: GridSpec,
    cases: Vec<BoundCase>,
    estimate: EstimateCase,
    ok: bool,
}

fn s06_access_bounds() -> Result<(AccessBoundReport, bool)> {
    let grid = batch_grid();
    let mut cases = Vec::new();
    for (name, spec, alpha) in bound_cases()? {
        let report = check_fully_accessible(&spec, alpha, &grid)?;
        let ok = report.verdict == AccessVerdict::Holds;
        cases.push(BoundCase {
            name,
            alpha,
            verdict: report.verdict,
            min_margin: report.min_margin,
            ok,
        });
    }

    let contested = NamedExample::Acc1 { p: 2, n: 3, lambda: real(1.0 / 3.0) }.build()?;
    let est = estimate_alpha_sup(&contested, &grid)?;
    let alpha_est = est.alpha_sup_estimate.unwrap_or(0.0);
    let recheck_alpha = (alpha_est - 0.01).max(0.0);
    let recheck = check_fully_accessible(&contested, recheck_alpha, &grid)?;
    let est_ok = est.verdict == AccessVerdict::Estimated
        && (0.0..=1.0).contains(&alpha_est)
        && recheck.verdict == AccessVerdict::Holds;
    let estimate = EstimateCase {
        name: "weighted-shear-p2-n3-extremal".to_string(),
        verdict: est.verdict,
        alpha_sup_estimate: est.alpha_sup_estimate,
        recheck_alpha,
        recheck_verdict: recheck.verdict,
        ok: est_ok,
    };

    let ok = cases.iter().all(|case| case.ok) && est_ok;
    Ok((AccessBoundReport { grid, cases, estimate, ok }, ok))
}

#[derive(Serialize)]
struct ConeCase {
    name: String,
    alpha: f64,
    margin_holds: bool,
    cone_holds: bool,
    ok: bool,
}

#[derive(Serialize)]
struct ConeReport {
    r: f64,
    n_theta: usize,
    cases: Vec<ConeCase>,
    ok: bool,
}

fn s07_cone_agreement() -> Result<(ConeReport, bool)> {
    let r = 0.9;
    let n_theta = 256;
    let mut cases = Vec::new();
    for (name, spec, alpha_bound) in bound_cases()? {
        for alpha in [0.0, alpha_bound] {
            let mut holds = true;
            for k in 0..n_theta {
                let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / n_theta as f64);
                let m = access_margin(&spec, z)?;
                if m.phi_abs * m.l < 1e-14 {
                    if m.lhs < -1e-12 {
                        holds = false;
                        break;
                    }
                } else if m.margin(alpha) < 0.0 {
                    holds = false;
                    break;
                }
            }
            let cone = boundary_cone_oracle(&spec, r, alpha, n_theta, 1e-6)?;
            cases.push(ConeCase {
                name: name.clone(),
                alpha,
                margin_holds: holds,
                cone_holds: cone,
                ok: holds == cone,
            });
        }
    }
    let ok = cases.iter().all(|case| case.ok);
    Ok((ConeReport { r, n_theta, cases, ok }, ok))
}

#[derive(Serialize)]
struct ResidualCase {
    alpha: f64,
    h_coarse: f64,
    h_fine: f64,
    residual_coarse: f64,
    residual_fine: f64,
    ratio: f64,
    expected_low: f64,
    expected_high: f64,
    ok: bool,
}

#[derive(Serialize)]
struct KernelSuiteReport {
    c0: f64,
    c2: f64,
    c4: f64,
    c4_expected: f64,
    constants_ok: bool,
    const_solution_max_dev: f64,
    const_solution_ok: bool,
    residual_cases: Vec<ResidualCase>,
    residuals_ok: bool,
    self_convergence_dev: f64,
    self_convergence_ok: bool,
    ok: bool,
}

fn s08_kernel_suite() -> Result<(KernelSuiteReport, bool)> {
    let c0 = c_alpha(0.0)?;
    let c2 = c_alpha(2.0)?;
    let c4 = c_alpha(4.0)?;
    let c4_expected = 2.0 / 3.0;
    let constants_ok =
        (c0 - 1.0).abs() <= 1e-10 && (c2 - 0.5).abs() <= 1e-10 && (c4 - c4_expected).abs() <= 1e-10;

    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let params = KernelParams::new(0.0).with_nodes(256);
    let one = BoundaryData::Constant { value: Complex64::ONE };
    let mut const_dev: f64 = 0.0;
    for _ in 0..20 {
        let z = random_point(&mut rng, 0.0, 0.9);
        const_dev = const_dev.max((solve_dirichlet(&one, &params, z)? - Complex64::ONE).norm());
    }
    let const_ok = const_dev <= 1e-10;

    let mut residual_cases = Vec::new();
    for alpha in [0.0, 2.0] {
        let solver_params = KernelParams::new(alpha).with_nodes(256);
        let boundary = BoundaryData::Cos { k: 1 };
        let f = |z: Complex64| solve_dirichlet(&boundary, &solver_params, z);
        let (h_coarse, h_fine) = (1.0 / 32.0, 1.0 / 64.0);
        let coarse = t_alpha_residual(&f, h_coarse, alpha)?;
        let fine = t_alpha_residual(&f, h_fine, alpha)?;
        let ratio = coarse / fine;
        residual_cases.push(ResidualCase {
            alpha,
            h_coarse,
            h_fine,
            residual_coarse: coarse,
            residual_fine: fine,
            ratio,
            expected_low: 3.5,
            expected_high: 4.5,
            ok: (3.5..=4.5).contains(&ratio),
        });
    }
    let residuals_ok = residual_cases.iter().all(|case| case.ok);

    let probe = c(0.5 * (0.3f64).cos(), 0.5 * (0.3f64).sin());
    let boundary = BoundaryData::Cos { k: 2 };
    let coarse = solve_dirichlet(&boundary, &KernelParams::new(2.0).with_nodes(256), probe)?;
    let fine = solve_dirichlet(&boundary, &KernelParams::new(2.0).with_nodes(512), probe)?;
    let self_dev = (coarse - fine).norm();
    let self_ok = self_dev <= 1e-10;

    let ok = constants_ok && const_ok && residuals_ok && self_ok;
    Ok((
        KernelSuiteReport {
            c0,
            c2,
            c4,
            c4_expected,
            constants_ok,
            const_solution_max_dev: const_dev,
            const_solution_ok: const_ok,
            residual_cases,
            residuals_ok,
            self_convergence_dev: self_dev,
            self_convergence_ok: self_ok,
            ok,
        },
        ok,
    ))
}

#[derive(Serialize)]
struct BoundaryModulusCase {
    n: u32,
    max_modulus: f64,
    expected: f64,
    ok: bool,
}

#[derive(Serialize)]
struct RenderSuiteReport {
    boundary_cases: Vec<BoundaryModulusCase>,
    boundary_ok: bool,
    symmetry_max_dev: f64,
    symmetry_ok: bool,
    svg_polylines: usize,
    svg_polylines_expected: usize,
    svg_ok: bool,
    csv_bit_exact: bool,
    ok: bool,
}

fn s09_render_suite() -> Result<(RenderSuiteReport, bool)> {
    let mut boundary_cases = Vec::new();
    for n in [2u32, 3] {
        let spec = NamedExample::Eg2 { p: 2, n, lambda: real(1.0 / f64::from(n)) }.build()?;
        let rs = RenderSpec {
            n_circles: 1,
            n_rays: 0,
            samples_per_curve: 512,
            r_max: 0.999,
            canvas_px: 400,
            stroke_width: 1.0,
        };
        let image = render_image(&spec, &rs)?;
        let max_mod = image.polylines[0]
            .points
            .iter()
            .map(|w| w.norm())
            .fold(f64::NEG_INFINITY, f64::max);
        let expected = 2.0 + 1.0 / f64::from(n);
        boundary_cases.push(BoundaryModulusCase {
            n,
            max_modulus: max_mod,
            expected,
            ok: (max_mod - expected).abs() <= 1e-2,
        });
    }
    let boundary_ok = boundary_cases.iter().all(|case| case.ok);

    let spec = NamedExample::Eg2 { p: 2, n: 2, lambda: real(0.5) }.build()?;
    let rs = RenderSpec {
        n_circles: 6,
        n_rays: 8,
        samples_per_curve: 256,
        r_max: 0.9,
        canvas_px: 400,
        stroke_width: 1.0,
    };
    let image = render_image(&spec, &rs)?;
    let s = rs.samples_per_curve;
    let mut sym_dev: f64 = 0.0;
    for line in image.polylines.iter().take(rs.n_circles) {
        for k in 0..s {
            let mirrored = line.points[(s - k) % s].conj();
            sym_dev = sym_dev.max((line.points[k] - mirrored).norm());
        }
    }
    for i in 0..rs.n_rays {
        let ray = &image.polylines[rs.n_circles + i].points;
        let partner = &image.polylines[rs.n_circles + (rs.n_rays - i) % rs.n_rays].points;
        for k in 0..s {
            sym_dev = sym_dev.max((ray[k] - partner[k].conj()).norm());
        }
    }
    let symmetry_ok = sym_dev <= 1e-12;

    let svg = svg_string(&image, &rs)?;
    let svg_polylines = svg.matches("<polyline").count();
    let svg_expected = rs.n_circles + rs.n_rays;
    let svg_ok = svg_polylines == svg_expected;

    let csv = csv_string(&image)?;
    let mut rows = csv.lines();
    let header_ok = rows.next() == Some("curve_id,sample_index,re,im");
    let mut bit_exact = header_ok;
    let mut row_count = 0usize;
    for row in rows {
        let parts: Vec<&str> = row.split(',').collect();
        if parts.len() != 4 {
            bit_exact = false;
            break;
        }
        let id: usize = parts[0].parse().unwrap_or(usize::MAX);
        let idx: usize = parts[1].parse().unwrap_or(usize::MAX);
        let re: f64 = parts[2].parse().unwrap_or(f64::NAN);
        let im: f64 = parts[3].parse().unwrap_or(f64::NAN);
        let point = image.polylines[id].points[idx];
        if re.to_bits() != point.re.to_bits() || im.to_bits() != point.im.to_bits() {
            bit_exact = false;
            break;
        }
        row_count += 1;
    }
    bit_exact = bit_exact && row_count == svg_expected * s;

    let ok = boundary_ok && symmetry_ok && svg_ok && bit_exact;
    Ok((
        RenderSuiteReport {
            boundary_cases,
            boundary_ok,
            symmetry_max_dev: sym_dev,
            symmetry_ok,
            svg_polylines,
            svg_polylines_expected: svg_expected,
            svg_ok,
            csv_bit_exact: bit_exact,
            ok,
        },
        ok,
    ))
}

#[derive(Serialize)]
struct ComparisonSuiteReport {
    monomial_shear_lhs: f64,
    monomial_shear_expected: f64,
    monomial_shear_ok: bool,
    shear_lhs: f64,
    shear_expected: f64,
    shear_ok: bool,
    halfplane_lhs: f64,
    halfplane_threshold_product: f64,
    halfplane_ok: bool,
    ok: bool,
}

fn s10_comparison() -> Result<(ComparisonSuiteReport, bool)> {
    use crate::lavrentiev::{lavrentiev_lhs, ComparisonPair};

    let zero = Complex64::ZERO;
    let (g, k) = ComparisonPair::MonomialShear.build(zero, zero, 2)?;
    let monomial_lhs = lavrentiev_lhs(&g, &k, real(0.99))?;
    let monomial_ok = (monomial_lhs - 298.0).abs() <= 1e-9;

    let (g, k) = ComparisonPair::Shear.build(real(4.0), real(1.0), 0)?;
    let z = real(0.9);
    let shear_lhs = lavrentiev_lhs(&g, &k, z)?;
    let shear_expected = (2.0 * z.norm() + 1.0) / 3.0;
    let shear_ok = (shear_lhs - shear_expected).abs() <= 1e-12;

    let (g, k) = ComparisonPair::HalfPlane.build(zero, zero, 0)?;
    let halfplane_lhs = lavrentiev_lhs(&g, &k, real(-0.999))?;
    let product = 4.0 * halfplane_lhs;
    let halfplane_ok = product > 4.0;

    let ok = monomial_ok && shear_ok && halfplane_ok;
    Ok((
        ComparisonSuiteReport {
            monomial_shear_lhs: monomial_lhs,
            monomial_shear_expected: 298.0,
            monomial_shear_ok: monomial_ok,
            shear_lhs,
            shear_expected,
            shear_ok,
            halfplane_lhs,
            halfplane_threshold_product: product,
            halfplane_ok,
            ok,
        },
        ok,
    ))
}

fn figure_specs() -> Result<Vec<(String, PolyharmonicSpec)>> {
    Ok(vec![
        (
            "fig1".to_string(),
            NamedExample::Eg2 { p: 2, n: 2, lambda: real(0.5) }.build()?,
        ),
        (
            "fig2".to_string(),
            NamedExample::Eg2 { p: 3, n: 5, lambda: real(0.2) }.build()?,
        ),
        (
            "fig3".to_string(),
            NamedExample::Eg3 { p: 2, mu: real(0.25) }.build()?,
        ),
        (
            "fig4".to_string(),
            NamedExample::Acc1 { p: 2, n: 3, lambda: real(1.0 / 3.0) }.build()?,
        ),
    ])
}

/// Run every scenario, write reports/, figures/ and summary.json under
/// `out_dir`, and return the summary plus all written paths.
pub fn reproduce_paper(out_dir: &Path) -> Result<(Summary, Vec<PathBuf>)> {
    let reports_dir = out_dir.join("reports");
    let figures_dir = out_dir.join("figures");
    for dir in [out_dir, &reports_dir, &figures_dir] {
        std::fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.display().to_string(),
            source,
        })?;
    }

    let mut outputs = Vec::new();
    let mut scenarios = Vec::new();
    let mut record = |name: &str, path: PathBuf, ok: bool, outputs: &mut Vec<PathBuf>| {
        scenarios.push(ScenarioStatus {
            id: name.to_string(),
            ok,
            report: format!("reports/{}", path.file_name().unwrap().to_string_lossy()),
        });
        outputs.push(path);
    };

    let (report, ok) = s01_kernel_limit();
    record("kernel-limit", write_report(&reports_dir, "s01_kernel_limit.json", &report)?, ok, &mut outputs);

    let (report, ok) = s02_univalence_positive()?;
    record("univalence-positive", write_report(&reports_dir, "s02_univalence_positive.json", &report)?, ok, &mut outputs);

    let (report, ok) = s03_univalence_negative()?;
    record("univalence-negative", write_report(&reports_dir, "s03_univalence_negative.json", &report)?, ok, &mut outputs);

    let (report, ok) = s04_jacobian_forms()?;
    record("jacobian-forms", write_report(&reports_dir, "s04_jacobian_forms.json", &report)?, ok, &mut outputs);

    let (report, ok) = s05_access_identities()?;
    record("accessibility-identities", write_report(&reports_dir, "s05_access_identities.json", &report)?, ok, &mut outputs);

    let (report, ok) = s06_access_bounds()?;
    record("accessibility-bounds", write_report(&reports_dir, "s06_access_bounds.json", &report)?, ok, &mut outputs);

    let (report, ok) = s07_cone_agreement()?;
    record("cone-agreement", write_report(&reports_dir, "s07_cone_agreement.json", &report)?, ok, &mut outputs);

    let (report, ok) = s08_kernel_suite()?;
    record("kernel-suite", write_report(&reports_dir, "s08_kernel_suite.json", &report)?, ok, &mut outputs);

    let (report, ok) = s09_render_suite()?;
    record("render-suite", write_report(&reports_dir, "s09_render_suite.json", &report)?, ok, &mut outputs);

    let (report, ok) = s10_comparison()?;
    record("comparison-suite", write_report(&reports_dir, "s10_comparison.json", &report)?, ok, &mut outputs);

    let rs = RenderSpec {
        n_circles: 16,
        n_rays: 16,
        samples_per_curve: 256,
        r_max: 0.95,
        canvas_px: 800,
        stroke_width: 1.0,
    };
    let mut figures = Vec::new();
    for (name, spec) in figure_specs()? {
        let image = render_image(&spec, &rs)?;
        let path = figures_dir.join(format!("{name}.svg"));
        emit_svg(&image, &rs, &path)?;
        figures.push(format!("figures/{name}.svg"));
        outputs.push(path);
    }

    let all_ok = scenarios.iter().all(|s| s.ok);
    let summary = Summary { scenarios, figures, all_ok };
    let summary_path = out_dir.join("summary.json");
    let body = serde_json::to_string_pretty(&summary).map_err(|e| Error::SingularInput(e.to_string()))?;
    std::fs::write(&summary_path, body + "\n").map_err(|source| Error::Io {
        path: summary_path.display().to_string(),
        source,
    })?;
    outputs.push(summary_path);

    Ok((summary, outputs))
}
