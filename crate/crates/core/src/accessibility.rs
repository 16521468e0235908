//! Cone-visibility of image domains: the layered margin inequality deciding
//! full alpha-accessibility, its biharmonic, harmonic, and analytic
//! reductions, supremum-alpha estimation, and a boundary cone oracle.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::polyharmonic::PolyharmonicSpec;
use crate::series::AnalyticSpec;
use crate::univalence::{GridSpec, ScanTarget};
use crate::{Error, Result};

/// Nodes where |Phi| * L falls below this are decided by the sign of lhs.
const DEGENERATE_NODE: f64 = 1e-14;
const DEGENERATE_LHS_FLOOR: f64 = -1e-12;

/// Pointwise ingredients of the accessibility inequality at one z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccessMargin {
    /// sum_i |z|^{2i} Re{z (h_i' conj(Phi) - g_i' Phi)}
    pub lhs: f64,
    /// Re{z sum_i |z|^{2i} (h_i' - g_i')}
    pub a: f64,
    /// Im{z sum_i |z|^{2i} (h_i' + g_i')}
    pub b: f64,
    /// sqrt(a^2 + b^2)
    pub l: f64,
    pub phi_abs: f64,
}

impl AccessMargin {
    /// lhs - sin(alpha*pi/2) * |Phi| * L; accessibility at level alpha means
    /// this stays nonnegative over the disk.
    pub fn margin(&self, alpha: f64) -> f64 {
        self.lhs - (alpha * FRAC_PI_2).sin() * self.phi_abs * self.l
    }

    /// lhs / (|Phi| L), or None at degenerate nodes.
    pub fn ratio(&self) -> Option<f64> {
        let denom = self.phi_abs * self.l;
        (denom >= DEGENERATE_NODE).then(|| self.lhs / denom)
    }
}

struct NodeEval {
    margin: AccessMargin,
    jacobian: f64,
}

fn eval_node(spec: &PolyharmonicSpec, z: Complex64) -> Result<NodeEval> {
    let s = z.norm_sqr();
    let mut phi = Complex64::ZERO;
    let mut sum_hd = Complex64::ZERO;
    let mut sum_gd = Complex64::ZERO;
    let mut dz = Complex64::ZERO;
    let mut dzbar = Complex64::ZERO;
    for (i, layer) in spec.layers.iter().enumerate() {
        let w = s.powi(i as i32);
        let f = layer.value(z)?;
        let hd = layer.h.deriv(z)?;
        let gd = layer.g.deriv(z)?;
        phi += w * f;
        sum_hd += w * hd;
        sum_gd += w * gd;
        dz += w * hd;
        dzbar += w * gd.conj();
        if i >= 1 {
            let wm = i as f64 * s.powi(i as i32 - 1);
            dz += wm * z.conj() * f;
            dzbar += wm * z * f;
        }
    }
    let lhs = (z * sum_hd * phi.conj() - z * sum_gd * phi).re;
    let a = (z * (sum_hd - sum_gd)).re;
    let b = (z * (sum_hd + sum_gd)).im;
    Ok(NodeEval {
        margin: AccessMargin {
            lhs,
            a,
            b,
            l: a.hypot(b),
            phi_abs: phi.norm(),
        },
        jacobian: dz.norm_sqr() - dzbar.norm_sqr(),
    })
}

/// Margin ingredients at z for a map with Phi(0) = 0.
pub fn access_margin(spec: &PolyharmonicSpec, z: Complex64) -> Result<AccessMargin> {
    if !spec.vanishes_at_origin() {
        return Err(Error::NotNormalized(spec.eval(Complex64::ZERO)?));
    }
    if z == Complex64::ZERO {
        return Err(Error::OriginExcluded);
    }
    Ok(eval_node(spec, z)?.margin)
}

fn validate_alpha(alpha: f64) -> Result<()> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::param("alpha", "must lie in [0, 1)"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AccessVerdict {
    Holds,
    Fails,
    HypothesisFailed,
    Estimated,
    NotAccessibleAtResolution,
}

/// Standing hypotheses of the margin inequality, as observed on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccessHypothesis {
    pub normalized: bool,
    pub jacobian_positive: bool,
    pub min_jacobian: f64,
    #[serde(with = "crate::cpx")]
    pub jacobian_argmin_z: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccessReport {
    pub verdict: AccessVerdict,
    pub alpha_tested: Option<f64>,
    pub min_margin: f64,
    #[serde(with = "crate::cpx")]
    pub argmin_z: Complex64,
    pub ratio_inf: f64,
    pub alpha_sup_estimate: Option<f64>,
    pub skipped_nodes: usize,
    pub hypothesis: AccessHypothesis,
}

struct Node {
    z: Complex64,
    lhs: f64,
    phi_l: f64,
    jacobian: f64,
}

fn collect_nodes(spec: &PolyharmonicSpec, grid: &GridSpec) -> Result<Vec<Node>> {
    grid.validate()?;
    let radii = grid.radii();
    let thetas = grid.thetas();
    let zs: Vec<Complex64> = radii
        .iter()
        .flat_map(|&r| thetas.iter().map(move |&th| Complex64::from_polar(r, th)))
        .collect();
    zs.par_iter()
        .map(|&z| {
            let node = eval_node(spec, z)?;
            Ok(Node {
                z,
                lhs: node.margin.lhs,
                phi_l: node.margin.phi_abs * node.margin.l,
                jacobian: node.jacobian,
            })
        })
        .collect()
}

struct MarginStats {
    min_margin: f64,
    argmin: usize,
    ratio_inf: f64,
    ratio_argmin: usize,
    skipped: usize,
    skipped_bad: usize,
}

fn margin_stats(nodes: &[Node], alpha: f64) -> MarginStats {
    let sin_a = (alpha * FRAC_PI_2).sin();
    let mut stats = MarginStats {
        min_margin: f64::INFINITY,
        argmin: 0,
        ratio_inf: f64::INFINITY,
        ratio_argmin: 0,
        skipped: 0,
        skipped_bad: 0,
    };
    for (i, node) in nodes.iter().enumerate() {
        let m = if node.phi_l < DEGENERATE_NODE {
            stats.skipped += 1;
            if node.lhs >= DEGENERATE_LHS_FLOOR {
                continue;
            }
            stats.skipped_bad += 1;
            node.lhs
        } else {
            let r = node.lhs / node.phi_l;
            if r < stats.ratio_inf {
                stats.ratio_inf = r;
                stats.ratio_argmin = i;
            }
            node.lhs - sin_a * node.phi_l
        };
        if m < stats.min_margin {
            stats.min_margin = m;
            stats.argmin = i;
        }
    }
    if !stats.min_margin.is_finite() {
        stats.min_margin = 0.0;
    }
    if !stats.ratio_inf.is_finite() {
        stats.ratio_inf = 0.0;
    }
    stats
}

fn jacobian_floor(nodes: &[Node]) -> (f64, usize) {
    let mut best = (f64::INFINITY, 0usize);
    for (i, node) in nodes.iter().enumerate() {
        if node.jacobian < best.0 {
            best = (node.jacobian, i);
        }
    }
    if !best.0.is_finite() {
        best.0 = 0.0;
    }
    best
}

fn hypothesis_of(spec: &PolyharmonicSpec, nodes: &[Node]) -> AccessHypothesis {
    let (min_jac, idx) = jacobian_floor(nodes);
    AccessHypothesis {
        normalized: spec.vanishes_at_origin(),
        jacobian_positive: min_jac > 0.0,
        min_jacobian: min_jac,
        jacobian_argmin_z: nodes[idx].z,
    }
}

fn estimate_from_ratio(ratio_inf: f64) -> Option<f64> {
    (ratio_inf >= 0.0).then(|| 2.0 / PI * ratio_inf.clamp(-1.0, 1.0).asin())
}

/// Check the margin inequality at a fixed alpha over the grid (the t part of
/// the grid is unused here).
pub fn check_fully_accessible(
    spec: &PolyharmonicSpec,
    alpha: f64,
    grid: &GridSpec,
) -> Result<AccessReport> {
    validate_alpha(alpha)?;
    let nodes = collect_nodes(spec, grid)?;
    let hypothesis = hypothesis_of(spec, &nodes);
    let stats = margin_stats(&nodes, alpha);
    let verdict = if !(hypothesis.normalized && hypothesis.jacobian_positive) {
        AccessVerdict::HypothesisFailed
    } else if stats.min_margin < 0.0 {
        AccessVerdict::Fails
    } else {
        AccessVerdict::Holds
    };
    Ok(AccessReport {
        verdict,
        alpha_tested: Some(alpha),
        min_margin: stats.min_margin,
        argmin_z: nodes[stats.argmin].z,
        ratio_inf: stats.ratio_inf,
        alpha_sup_estimate: estimate_from_ratio(stats.ratio_inf),
        skipped_nodes: stats.skipped,
        hypothesis,
    })
}

fn all_margins_hold(nodes: &[Node], alpha: f64) -> bool {
    let sin_a = (alpha * FRAC_PI_2).sin();
    nodes.iter().all(|node| {
        if node.phi_l < DEGENERATE_NODE {
            node.lhs >= DEGENERATE_LHS_FLOOR
        } else {
            node.lhs - sin_a * node.phi_l >= 0.0
        }
    })
}

/// Estimate sup{alpha : the margin inequality holds} by the grid infimum of
/// lhs/(|Phi| L), sharpened by one half-step local refinement around the
/// argmin and validated by bisection against the margin test itself.
pub fn estimate_alpha_sup(spec: &PolyharmonicSpec, grid: &GridSpec) -> Result<AccessReport> {
    let nodes = collect_nodes(spec, grid)?;
    let hypothesis = hypothesis_of(spec, &nodes);
    let stats0 = margin_stats(&nodes, 0.0);

    if !(hypothesis.normalized && hypothesis.jacobian_positive) {
        return Ok(AccessReport {
            verdict: AccessVerdict::HypothesisFailed,
            alpha_tested: None,
            min_margin: stats0.min_margin,
            argmin_z: nodes[stats0.argmin].z,
            ratio_inf: stats0.ratio_inf,
            alpha_sup_estimate: None,
            skipped_nodes: stats0.skipped,
            hypothesis,
        });
    }
    if stats0.skipped_bad > 0 || stats0.ratio_inf < 0.0 {
        return Ok(AccessReport {
            verdict: AccessVerdict::NotAccessibleAtResolution,
            alpha_tested: None,
            min_margin: stats0.min_margin,
            argmin_z: nodes[stats0.argmin].z,
            ratio_inf: stats0.ratio_inf,
            alpha_sup_estimate: None,
            skipped_nodes: stats0.skipped,
            hypothesis,
        });
    }

    let radii = grid.radii();
    let ri = stats0.ratio_argmin / grid.n_theta;
    let ki = stats0.ratio_argmin % grid.n_theta;
    let r = radii[ri];
    let r_lo = 0.5 * (radii[ri.saturating_sub(1)] + r);
    let r_hi = 0.5 * (radii[(ri + 1).min(radii.len() - 1)] + r);
    let theta = 2.0 * PI * ki as f64 / grid.n_theta as f64;
    let half_step = PI / grid.n_theta as f64;

    let mut ratio_inf = stats0.ratio_inf;
    let mut ratio_argmin_z = nodes[stats0.ratio_argmin].z;
    for &rr in &[r_lo, r, r_hi] {
        for &th in &[theta - half_step, theta, theta + half_step] {
            let z = Complex64::from_polar(rr, th);
            if let Some(ratio) = eval_node(spec, z)?.margin.ratio() {
                if ratio < ratio_inf {
                    ratio_inf = ratio;
                    ratio_argmin_z = z;
                }
            }
        }
    }

    let candidate = estimate_from_ratio(ratio_inf).unwrap_or(0.0);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        if all_margins_hold(&nodes, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let estimate = if all_margins_hold(&nodes, candidate) {
        candidate
    } else {
        candidate.min(lo)
    };

    let at_estimate = margin_stats(&nodes, estimate);
    Ok(AccessReport {
        verdict: AccessVerdict::Estimated,
        alpha_tested: None,
        min_margin: at_estimate.min_margin,
        argmin_z: ratio_argmin_z,
        ratio_inf,
        alpha_sup_estimate: Some(estimate),
        skipped_nodes: stats0.skipped,
        hypothesis,
    })
}

/// L^2 for an order-2 map via the expanded closed form; agrees with a^2 + b^2
/// from access_margin.
pub fn biharmonic_l2(spec: &PolyharmonicSpec, z: Complex64) -> Result<f64> {
    if spec.order() != 2 {
        return Err(Error::WrongOrder {
            expected: 2,
            actual: spec.order(),
        });
    }
    // weighted layer first in the classical notation
    let h1 = spec.layers[1].h.deriv(z)?;
    let g1 = spec.layers[1].g.deriv(z)?;
    let h2 = spec.layers[0].h.deriv(z)?;
    let g2 = spec.layers[0].g.deriv(z)?;
    let s = z.norm_sqr();
    let z2 = z * z;
    Ok(s.powi(3) * (h1.norm_sqr() + g1.norm_sqr())
        + s * (h2.norm_sqr() + g2.norm_sqr())
        + 2.0 * s.powi(2) * (h1 * h2.conj() + g1 * g2.conj()).re
        - 2.0 * (z2 * (h2 * g2 + s.powi(2) * h1 * g1)).re
        - 2.0 * s * (z2 * (h1 * g2 + g1 * h2)).re)
}

/// Margin for an order-1 map via the ratio-form inequality, falling back to
/// the general path at zeros of h or g.
pub fn harmonic_margin(h: &AnalyticSpec, g: &AnalyticSpec, z: Complex64, alpha: f64) -> Result<f64> {
    validate_alpha(alpha)?;
    let hv = h.eval(z)?;
    let gv = g.eval(z)?;
    if hv == Complex64::ZERO || gv == Complex64::ZERO {
        let spec = PolyharmonicSpec::harmonic(h.clone(), g.clone());
        return Ok(access_margin(&spec, z)?.margin(alpha));
    }
    let hd = h.deriv(z)?;
    let gd = g.deriv(z)?;
    let lhs = hv.norm_sqr() * (z * hd / hv).re - gv.norm_sqr() * (z * gd / gv).re
        - (z * (gd * hv - hd * gv)).re;
    let rhs = (alpha * FRAC_PI_2).sin() * (z * hd - (z * gd).conj()).norm() * (hv + gv.conj()).norm();
    Ok(lhs - rhs)
}

/// |arg(z Phi'(z) / Phi(z))| for an analytic map with Phi(0) = 0; the image is
/// fully alpha-accessible iff this stays below (pi/2)(1 - alpha).
pub fn analytic_alpha(spec: &AnalyticSpec, z: Complex64) -> Result<f64> {
    if z == Complex64::ZERO {
        return Err(Error::OriginExcluded);
    }
    let phi = spec.eval(z)?;
    if phi == Complex64::ZERO {
        return Err(Error::SingularInput(format!(
            "argument ratio undefined at a zero of the map (z = {z})"
        )));
    }
    Ok((z * spec.deriv(z)? / phi).arg().abs())
}

/// Discrete cone condition on the image of |z| = r: the outward normal and
/// the position direction must satisfy <n, w/|w|> >= sin(alpha*pi/2) - tol at
/// every sample.
pub fn boundary_cone_oracle<T: ScanTarget + ?Sized>(
    target: &T,
    r: f64,
    alpha: f64,
    n_theta: usize,
    tol: f64,
) -> Result<bool> {
    validate_alpha(alpha)?;
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::param("r", "must lie in (0, 1)"));
    }
    if n_theta < 8 {
        return Err(Error::param("n_theta", "needs at least 8 samples"));
    }
    let w = (0..n_theta)
        .map(|k| target.value(Complex64::from_polar(r, 2.0 * PI * k as f64 / n_theta as f64)))
        .collect::<Result<Vec<_>>>()?;
    for k in 0..n_theta {
        if (w[(k + 1) % n_theta] - w[k]).norm() < 1e-14 {
            return Err(Error::DegenerateCurve(k));
        }
        if w[k].norm() < 1e-14 {
            return Err(Error::SingularInput(format!(
                "image curve passes through the origin at sample {k}"
            )));
        }
    }

    let winding: f64 = (0..n_theta)
        .map(|k| (w[(k + 1) % n_theta] / w[k]).arg())
        .sum();
    let orientation = if winding >= 0.0 { 1.0 } else { -1.0 };

    let threshold = (alpha * FRAC_PI_2).sin() - tol;
    let minus_i = Complex64::new(0.0, -1.0);
    for k in 0..n_theta {
        let tangent = w[(k + 1) % n_theta] - w[(k + n_theta - 1) % n_theta];
        let norm = tangent.norm();
        if norm < 1e-14 {
            return Err(Error::DegenerateCurve(k));
        }
        let normal = minus_i * tangent / norm * orientation;
        if (normal * (w[k] / w[k].norm()).conj()).re < threshold {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyharmonic::NamedExample;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn identity_map() -> PolyharmonicSpec {
        PolyharmonicSpec::harmonic(AnalyticSpec::identity(), AnalyticSpec::zero())
    }

    fn small_grid() -> GridSpec {
        GridSpec {
            r_min: 0.05,
            r_max: 0.9,
            n_r: 16,
            n_theta: 24,
            n_t: 2,
        }
    }

    #[test]
    fn margin_of_identity() {
        let f = identity_map();
        let z = c(0.3, 0.4);
        let m = access_margin(&f, z).unwrap();
        assert!((m.lhs - 0.25).abs() < 1e-15);
        assert!((m.a - 0.3).abs() < 1e-15);
        assert!((m.b - 0.4).abs() < 1e-15);
        assert!((m.l - 0.5).abs() < 1e-15);
        for &alpha in &[0.0, 0.5, 0.99] {
            let expect = 0.25 * (1.0 - (alpha * FRAC_PI_2).sin());
            assert!((m.margin(alpha) - expect).abs() < 1e-12);
        }
        assert!(m.margin(1.0).abs() < 1e-15);
        assert!((m.ratio().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn margin_of_weighted_identity_has_unit_ratio() {
        for p in [2, 3] {
            let f = PolyharmonicSpec::weighted(p, AnalyticSpec::identity()).unwrap();
            let m = access_margin(&f, c(0.5, -0.2)).unwrap();
            assert!((m.ratio().unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn margin_requires_normalization_and_excludes_origin() {
        let pole = NamedExample::Eg3 { p: 2, mu: c(0.25, 0.0) }.build().unwrap();
        assert!(matches!(
            access_margin(&pole, c(0.5, 0.0)),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            access_margin(&identity_map(), Complex64::ZERO),
            Err(Error::OriginExcluded)
        ));
    }

    #[test]
    fn check_holds_for_shifted_example() {
        let f = NamedExample::Acc2 { p: 2, lambda: c(0.25, 0.0) }.build().unwrap();
        let report = check_fully_accessible(&f, 0.4, &small_grid()).unwrap();
        assert_eq!(report.verdict, AccessVerdict::Holds);
        assert!(report.min_margin >= 0.0);
        assert!(report.hypothesis.jacobian_positive);
    }

    #[test]
    fn check_reports_jacobian_hypothesis_failure() {
        // z + 2 conj(z) is orientation reversing
        let f = PolyharmonicSpec::harmonic(
            AnalyticSpec::identity(),
            AnalyticSpec::from_series(vec![Complex64::ZERO, c(2.0, 0.0)]),
        );
        let report = check_fully_accessible(&f, 0.0, &small_grid()).unwrap();
        assert_eq!(report.verdict, AccessVerdict::HypothesisFailed);
        assert!(report.hypothesis.min_jacobian < 0.0);
        assert!(report.hypothesis.normalized);
    }

    #[test]
    fn check_rejects_bad_alpha() {
        assert!(check_fully_accessible(&identity_map(), 1.0, &small_grid()).is_err());
        assert!(check_fully_accessible(&identity_map(), -0.1, &small_grid()).is_err());
    }

    #[test]
    fn estimate_for_identity_is_one() {
        let report = estimate_alpha_sup(&identity_map(), &small_grid()).unwrap();
        assert_eq!(report.verdict, AccessVerdict::Estimated);
        let est = report.alpha_sup_estimate.unwrap();
        assert!(est > 1.0 - 1e-6 && est <= 1.0);
        let back = check_fully_accessible(&identity_map(), (est - 0.01).max(0.0), &small_grid()).unwrap();
        assert_eq!(back.verdict, AccessVerdict::Holds);
    }

    #[test]
    fn estimate_flags_inaccessible_map() {
        // h = z(1 - 1.4 z): zh'/h takes negative real part inside the disk
        let f = PolyharmonicSpec::harmonic(
            AnalyticSpec::from_series(vec![Complex64::ZERO, Complex64::ONE, c(-1.4, 0.0)]),
            AnalyticSpec::zero(),
        );
        let report = estimate_alpha_sup(&f, &small_grid()).unwrap();
        assert_eq!(report.verdict, AccessVerdict::NotAccessibleAtResolution);
        assert!(report.ratio_inf < 0.0);
        assert!(report.alpha_sup_estimate.is_none());
    }

    #[test]
    fn biharmonic_l2_matches_general_form() {
        let f = NamedExample::Eg2 { p: 2, n: 3, lambda: c(0.2, 0.1) }.build().unwrap();
        for &z in &[c(0.5, 0.0), c(-0.3, 0.6), c(0.1, -0.7)] {
            let l2 = biharmonic_l2(&f, z).unwrap();
            let m = access_margin(&f, z).unwrap();
            assert!((l2 - (m.a * m.a + m.b * m.b)).abs() < 1e-12);
        }
    }

    #[test]
    fn biharmonic_l2_known_value() {
        let mut f = PolyharmonicSpec::weighted(2, AnalyticSpec::identity()).unwrap();
        f.layers[0].h = AnalyticSpec::identity();
        let l2 = biharmonic_l2(&f, c(0.5, 0.0)).unwrap();
        assert!((l2.sqrt() - 0.625).abs() < 1e-12);

        let zero = PolyharmonicSpec::new(vec![Default::default(), Default::default()]).unwrap();
        assert_eq!(biharmonic_l2(&zero, c(0.5, 0.0)).unwrap(), 0.0);

        assert!(matches!(
            biharmonic_l2(&identity_map(), c(0.5, 0.0)),
            Err(Error::WrongOrder { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn harmonic_margin_matches_general_path() {
        let h = AnalyticSpec::identity();
        let g = AnalyticSpec::monomial(2, c(0.1, 0.05));
        let spec = PolyharmonicSpec::harmonic(h.clone(), g.clone());
        for &z in &[c(0.4, 0.2), c(-0.5, 0.3), c(0.05, -0.6)] {
            for &alpha in &[0.0, 0.3, 0.8] {
                let reduced = harmonic_margin(&h, &g, z, alpha).unwrap();
                let general = access_margin(&spec, z).unwrap().margin(alpha);
                assert!((reduced - general).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn harmonic_margin_falls_back_at_zero_of_g() {
        let h = AnalyticSpec::identity();
        let g = AnalyticSpec::zero();
        let z = c(0.3, 0.4);
        let m = harmonic_margin(&h, &g, z, 0.5).unwrap();
        let expect = 0.25 * (1.0 - (0.5 * FRAC_PI_2).sin());
        assert!((m - expect).abs() < 1e-12);
    }

    #[test]
    fn analytic_alpha_values_and_errors() {
        let id = AnalyticSpec::identity();
        assert!(analytic_alpha(&id, c(0.5, 0.3)).unwrap().abs() < 1e-15);

        let shifted = AnalyticSpec::from_series(vec![c(-0.5, 0.0), Complex64::ONE]);
        assert!(matches!(
            analytic_alpha(&shifted, c(0.5, 0.0)),
            Err(Error::SingularInput(_))
        ));
        assert!(matches!(
            analytic_alpha(&id, Complex64::ZERO),
            Err(Error::OriginExcluded)
        ));
    }

    #[test]
    fn cone_oracle_accepts_disk_and_rejects_tight_cone() {
        let id = identity_map();
        assert!(boundary_cone_oracle(&id, 0.5, 0.8, 512, 1e-6).unwrap());

        let f = NamedExample::Acc2 { p: 2, lambda: c(0.25, 0.0) }.build().unwrap();
        assert!(boundary_cone_oracle(&f, 0.9, 0.0, 512, 1e-6).unwrap());
        assert!(!boundary_cone_oracle(&f, 0.9, 0.9, 512, 1e-6).unwrap());
    }

    #[test]
    fn cone_oracle_rejects_degenerate_curve() {
        let constant = PolyharmonicSpec::harmonic(
            AnalyticSpec::from_series(vec![c(0.7, 0.0)]),
            AnalyticSpec::zero(),
        );
        assert!(matches!(
            boundary_cone_oracle(&constant, 0.5, 0.0, 64, 1e-6),
            Err(Error::DegenerateCurve(_))
        ));
    }

    #[test]
    fn report_serializes_kebab_verdicts() {
        let report = check_fully_accessible(&identity_map(), 0.5, &small_grid()).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains(r#""verdict":"holds""#));
        let back: AccessReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
