//! Criterion functionals whose non-vanishing characterizes injectivity of
//! layered and polyanalytic maps, grid scans for violations, and brute-force
//! geometric oracles.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::polyharmonic::{PolyanalyticSpec, PolyharmonicSpec, WirtingerJet};
use crate::{Error, Result};

/// Scan lattice: geometric radii, uniform angles, uniform t in (0, pi/2].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub n_t: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            r_min: 0.01,
            r_max: 0.99,
            n_r: 100,
            n_theta: 128,
            n_t: 32,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) {
            return Err(Error::param("r_min", "must be positive; the origin is excluded"));
        }
        if !(self.r_max < 1.0) {
            return Err(Error::param("r_max", "must be below 1"));
        }
        if self.r_min > self.r_max {
            return Err(Error::param("r_min", "must not exceed r_max"));
        }
        if self.n_r < 2 || self.n_theta < 2 || self.n_t < 2 {
            return Err(Error::param("n_r/n_theta/n_t", "counts must be at least 2"));
        }
        Ok(())
    }

    /// Geometric progression from r_min to r_max, endpoint exact.
    pub fn radii(&self) -> Vec<f64> {
        let ratio = self.r_max / self.r_min;
        let last = self.n_r - 1;
        (0..self.n_r)
            .map(|j| {
                if j == last {
                    self.r_max
                } else {
                    self.r_min * ratio.powf(j as f64 / last as f64)
                }
            })
            .collect()
    }

    /// Uniform angles covering [0, 2*pi).
    pub fn thetas(&self) -> Vec<f64> {
        (0..self.n_theta)
            .map(|k| 2.0 * PI * k as f64 / self.n_theta as f64)
            .collect()
    }

    /// Uniform t in (0, pi/2], upper endpoint exact, zero excluded.
    pub fn t_values(&self) -> Vec<f64> {
        (0..self.n_t)
            .map(|l| ((l + 1) as f64 / self.n_t as f64) * FRAC_PI_2)
            .collect()
    }
}

/// Anything a scan can drive: pointwise values, Wirtinger jets, and the
/// injectivity criterion functional.
pub trait ScanTarget: Sync {
    fn value(&self, z: Complex64) -> Result<Complex64>;
    fn wirtinger_jet(&self, z: Complex64) -> Result<WirtingerJet>;
    fn criterion_value(&self, z: Complex64, t: f64) -> Result<Complex64>;
}

impl ScanTarget for PolyharmonicSpec {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        self.eval(z)
    }

    fn wirtinger_jet(&self, z: Complex64) -> Result<WirtingerJet> {
        PolyharmonicSpec::wirtinger_jet(self, z)
    }

    fn criterion_value(&self, z: Complex64, t: f64) -> Result<Complex64> {
        criterion_value_ph(self, z, t)
    }
}

impl ScanTarget for PolyanalyticSpec {
    fn value(&self, z: Complex64) -> Result<Complex64> {
        self.eval(z)
    }

    fn wirtinger_jet(&self, z: Complex64) -> Result<WirtingerJet> {
        PolyanalyticSpec::wirtinger_jet(self, z)
    }

    fn criterion_value(&self, z: Complex64, t: f64) -> Result<Complex64> {
        criterion_value_pa(self, z, t)
    }
}

/// U(z,t) = sum_i |z|^{2i} (S_t[h_i](z) - conj(S_t[g_i](z))); the map is
/// injective on the disk iff this never vanishes for z != 0, t in (0, pi/2].
pub fn criterion_value_ph(spec: &PolyharmonicSpec, z: Complex64, t: f64) -> Result<Complex64> {
    if z == Complex64::ZERO {
        return Err(Error::OriginExcluded);
    }
    let s = z.norm_sqr();
    let mut acc = Complex64::ZERO;
    for (i, layer) in spec.layers.iter().enumerate() {
        let sh = layer.h.sine_kernel(z, t)?.value;
        let sg = layer.g.sine_kernel(z, t)?.value;
        acc += s.powi(i as i32) * (sh - sg.conj());
    }
    Ok(acc)
}

/// sum_k conj(z)^k sum_n c_n^{(k)} D(n-k, t) z^n for a polyanalytic map.
pub fn criterion_value_pa(spec: &PolyanalyticSpec, z: Complex64, t: f64) -> Result<Complex64> {
    if z == Complex64::ZERO {
        return Err(Error::OriginExcluded);
    }
    let zb = z.conj();
    let mut acc = Complex64::ZERO;
    let mut zbk = Complex64::ONE;
    for (k, a) in spec.coeffs.iter().enumerate() {
        acc += zbk * a.shifted_sine_kernel(z, t, k as i64)?;
        zbk *= zb;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanVerdict {
    NoViolationFound,
    ViolationFound,
    HypothesisFailed,
}

/// Local univalence evidence at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OriginCheck {
    pub jacobian_at_origin: f64,
    /// Present only when the Jacobian at 0 is numerically zero and the local
    /// collision oracle had to decide.
    pub local_injectivity_pass: Option<bool>,
}

impl OriginCheck {
    pub fn passed(&self) -> bool {
        self.local_injectivity_pass.unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub refine: bool,
    pub zero_threshold: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            refine: true,
            zero_threshold: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub verdict: ScanVerdict,
    /// Smallest criterion modulus seen anywhere, refinement included.
    pub min_modulus: f64,
    pub min_modulus_coarse: f64,
    pub min_modulus_refined: Option<f64>,
    #[serde(with = "crate::cpx")]
    pub argmin_z: Complex64,
    pub argmin_t: f64,
    pub grid: GridSpec,
    pub zero_threshold: f64,
    pub origin_check: OriginCheck,
}

fn lex_min(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Scan |criterion| over the grid. A violation is reported only when the
/// minimum lies below the zero threshold and, with refinement on, keeps
/// shrinking under local refinement (a positive true minimum does not).
pub fn scan_univalence<T: ScanTarget + ?Sized>(
    target: &T,
    grid: &GridSpec,
    opts: &ScanOptions,
) -> Result<ScanReport> {
    grid.validate()?;

    let origin_jet = target.wirtinger_jet(Complex64::ZERO)?;
    let j0 = origin_jet.jacobian();
    let local_pass = if j0.abs() < 1e-12 {
        let report = injectivity_oracle(target, 0.05, 64, 1e-3, Some(1e-9))?;
        Some(report.pairs.is_empty())
    } else {
        None
    };
    let origin_check = OriginCheck {
        jacobian_at_origin: j0,
        local_injectivity_pass: local_pass,
    };

    let radii = grid.radii();
    let thetas = grid.thetas();
    let ts = grid.t_values();
    let zs: Vec<Complex64> = radii
        .iter()
        .flat_map(|&r| thetas.iter().map(move |&th| Complex64::from_polar(r, th)))
        .collect();

    let n_t = ts.len();
    let total = zs.len() * n_t;
    let (min_coarse, argmin_idx) = (0..total)
        .into_par_iter()
        .try_fold(
            || (f64::INFINITY, usize::MAX),
            |acc, idx| {
                let m = target.criterion_value(zs[idx / n_t], ts[idx % n_t])?.norm();
                let m = if m.is_nan() { f64::INFINITY } else { m };
                Ok::<_, Error>(lex_min(acc, (m, idx)))
            },
        )
        .try_reduce(|| (f64::INFINITY, usize::MAX), |a, b| Ok(lex_min(a, b)))?;

    let zi = argmin_idx / n_t;
    let ti = argmin_idx % n_t;
    let argmin_z = zs[zi];
    let argmin_t = ts[ti];
    let ri = zi / grid.n_theta;
    let ki = zi % grid.n_theta;

    let min_refined = if opts.refine {
        Some(refine_around(
            target, grid, &radii, min_coarse, ri, thetas[ki], ti, &ts,
        )?)
    } else {
        None
    };

    let min_modulus = min_refined.unwrap_or(min_coarse);
    let confirmed = match min_refined {
        Some(refined) => refined < opts.zero_threshold && refined <= 0.5 * min_coarse,
        None => min_coarse < opts.zero_threshold,
    };
    // A confirmed criterion zero is decisive about non-injectivity, so it
    // outranks a failed origin hypothesis; both carry nonzero exit codes.
    let verdict = if confirmed {
        ScanVerdict::ViolationFound
    } else if !origin_check.passed() {
        ScanVerdict::HypothesisFailed
    } else {
        ScanVerdict::NoViolationFound
    };

    Ok(ScanReport {
        verdict,
        min_modulus,
        min_modulus_coarse: min_coarse,
        min_modulus_refined: min_refined,
        argmin_z,
        argmin_t,
        grid: grid.clone(),
        zero_threshold: opts.zero_threshold,
        origin_check,
    })
}

#[allow(clippy::too_many_arguments)]
fn refine_around<T: ScanTarget + ?Sized>(
    target: &T,
    grid: &GridSpec,
    radii: &[f64],
    center_value: f64,
    ri: usize,
    theta: f64,
    ti: usize,
    ts: &[f64],
) -> Result<f64> {
    const STEPS: usize = 10;
    let r_lo = radii[ri.saturating_sub(1)];
    let r_hi = radii[(ri + 1).min(radii.len() - 1)];
    let d_theta = 2.0 * PI / grid.n_theta as f64;
    let (th_lo, th_hi) = (theta - d_theta, theta + d_theta);
    let d_t = FRAC_PI_2 / grid.n_t as f64;
    let t_lo = (ts[ti] - d_t).max(1e-3 * d_t);
    let t_hi = (ts[ti] + d_t).min(FRAC_PI_2);

    let lerp = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (STEPS - 1) as f64;
    let mut best = center_value;
    for i in 0..STEPS {
        let r = lerp(r_lo, r_hi, i);
        for j in 0..STEPS {
            let z = Complex64::from_polar(r, lerp(th_lo, th_hi, j));
            for k in 0..STEPS {
                let m = target.criterion_value(z, lerp(t_lo, t_hi, k))?.norm();
                if m < best {
                    best = m;
                }
            }
        }
    }
    Ok(best)
}

/// A pair of well-separated inputs whose images nearly coincide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionPair {
    #[serde(with = "crate::cpx")]
    pub z1: Complex64,
    #[serde(with = "crate::cpx")]
    pub z2: Complex64,
    pub image_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollisionReport {
    /// First collisions in deterministic grid order, capped at MAX_PAIRS.
    pub pairs: Vec<CollisionPair>,
    pub total_collisions: usize,
    pub truncated: bool,
    pub resolution: usize,
    pub separation: f64,
    pub collision_tolerance: f64,
}

const MAX_PAIRS: usize = 256;

/// Brute-force collision search over a Cartesian grid on |z| <= r_max using a
/// spatial hash of image points. Collision tolerance defaults to 1e-7 times
/// the image bounding-box diameter.
pub fn injectivity_oracle<T: ScanTarget + ?Sized>(
    target: &T,
    r_max: f64,
    resolution: usize,
    delta_sep: f64,
    eps_col: Option<f64>,
) -> Result<CollisionReport> {
    if !(r_max > 0.0 && r_max < 1.0) {
        return Err(Error::param("r_max", "must lie in (0, 1)"));
    }
    if resolution < 2 {
        return Err(Error::param("resolution", "must be at least 2"));
    }

    let mut points = Vec::new();
    for iy in 0..resolution {
        for ix in 0..resolution {
            let x = -r_max + 2.0 * r_max * ix as f64 / (resolution - 1) as f64;
            let y = -r_max + 2.0 * r_max * iy as f64 / (resolution - 1) as f64;
            let z = Complex64::new(x, y);
            if z.norm() <= r_max {
                points.push(z);
            }
        }
    }
    let images = points
        .iter()
        .map(|&z| target.value(z))
        .collect::<Result<Vec<_>>>()?;

    let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), -Complex64::new(f64::INFINITY, f64::INFINITY));
    for w in &images {
        lo = Complex64::new(lo.re.min(w.re), lo.im.min(w.im));
        hi = Complex64::new(hi.re.max(w.re), hi.im.max(w.im));
    }
    let diameter = (hi - lo).norm();
    let eps = eps_col.unwrap_or(1e-7 * diameter).max(f64::MIN_POSITIVE);

    let bucket = |w: Complex64| ((w.re / eps).floor() as i64, (w.im / eps).floor() as i64);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &w) in images.iter().enumerate() {
        buckets.entry(bucket(w)).or_default().push(i);
    }

    let collisions: Vec<CollisionPair> = (0..points.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (bx, by) = bucket(images[i]);
            let mut mates = Vec::new();
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(list) = buckets.get(&(bx + dx, by + dy)) {
                        for &j in list {
                            if j > i
                                && (points[i] - points[j]).norm() > delta_sep
                                && (images[i] - images[j]).norm() < eps
                            {
                                mates.push(j);
                            }
                        }
                    }
                }
            }
            mates.sort_unstable();
            mates
                .into_iter()
                .map(|j| CollisionPair {
                    z1: points[i],
                    z2: points[j],
                    image_distance: (images[i] - images[j]).norm(),
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let total = collisions.len();
    let mut pairs = collisions;
    pairs.truncate(MAX_PAIRS);
    Ok(CollisionReport {
        truncated: total > pairs.len(),
        total_collisions: total,
        pairs,
        resolution,
        separation: delta_sep,
        collision_tolerance: eps,
    })
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn on_segment(a: Complex64, b: Complex64, p: Complex64) -> bool {
    p.re >= a.re.min(b.re)
        && p.re <= a.re.max(b.re)
        && p.im >= a.im.min(b.im)
        && p.im <= a.im.max(b.im)
}

fn segments_intersect(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = cross(q2 - q1, p1 - q1);
    let d2 = cross(q2 - q1, p2 - q1);
    let d3 = cross(p2 - p1, q1 - p1);
    let d4 = cross(p2 - p1, q2 - p1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// True iff the closed image curve of the circle |z| = r is simple, decided
/// by exhaustive non-adjacent segment-pair intersection tests.
pub fn circle_simplicity_oracle<T: ScanTarget + ?Sized>(
    target: &T,
    r: f64,
    n_theta: usize,
) -> Result<bool> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::param("r", "must lie in (0, 1)"));
    }
    if n_theta < 4 {
        return Err(Error::param("n_theta", "needs at least 4 samples"));
    }
    let w = (0..n_theta)
        .map(|k| target.value(Complex64::from_polar(r, 2.0 * PI * k as f64 / n_theta as f64)))
        .collect::<Result<Vec<_>>>()?;
    for k in 0..n_theta {
        if (w[(k + 1) % n_theta] - w[k]).norm() < 1e-14 {
            return Err(Error::DegenerateCurve(k));
        }
    }

    let crossing = (0..n_theta).into_par_iter().any(|i| {
        let a1 = w[i];
        let a2 = w[(i + 1) % n_theta];
        // j > i + 1, skipping the wrap-adjacent pair (0, n-1)
        ((i + 2)..n_theta).any(|j| {
            if i == 0 && j == n_theta - 1 {
                return false;
            }
            segments_intersect(a1, a2, w[j], w[(j + 1) % n_theta])
        })
    });
    Ok(!crossing)
}
