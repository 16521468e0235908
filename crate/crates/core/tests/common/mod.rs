//! Shared helpers for the integration tests: finite-difference jets, seeded
//! random spec generators, and slow reference oracles.
#![allow(dead_code)]

use num_complex::Complex64;
use polyacc_core::polyharmonic::{HarmonicLayer, PolyharmonicSpec};
use polyacc_core::series::{AnalyticAtom, AnalyticSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FD_STEP: f64 = 1e-5;

/// Wirtinger derivatives by 4-point central differences along both axes.
pub fn fd_wirtinger<F>(f: F, z: Complex64, h: f64) -> (Complex64, Complex64)
where
    F: Fn(Complex64) -> Complex64,
{
    let stencil = |dir: Complex64| {
        (-f(z + 2.0 * h * dir) + 8.0 * f(z + h * dir) - 8.0 * f(z - h * dir) + f(z - 2.0 * h * dir))
            / (12.0 * h)
    };
    let fx = stencil(Complex64::new(1.0, 0.0));
    let fy = stencil(Complex64::new(0.0, 1.0));
    let i = Complex64::new(0.0, 1.0);
    ((fx - i * fy) / 2.0, (fx + i * fy) / 2.0)
}

/// Five-point discrete Laplacian of a closure, itself usable as a closure.
pub fn discrete_laplacian<'a, F>(f: &'a F, h: f64) -> impl Fn(Complex64) -> Complex64 + 'a
where
    F: Fn(Complex64) -> Complex64,
{
    move |z| {
        let e = Complex64::new(h, 0.0);
        let ie = Complex64::new(0.0, h);
        (f(z + e) + f(z - e) + f(z + ie) + f(z - ie) - 4.0 * f(z)) / (h * h)
    }
}

/// p-fold discrete Laplacian evaluated at one point.
pub fn discrete_polylaplacian<F>(f: &F, p: u32, h: f64, z: Complex64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    match p {
        0 => f(z),
        1 => discrete_laplacian(f, h)(z),
        _ => {
            let inner = |w| discrete_polylaplacian(f, p - 1, h, w);
            let lap = discrete_laplacian(&inner, h);
            lap(z)
        }
    }
}

pub fn random_disk_point(rng: &mut ChaCha8Rng, r_max: f64) -> Complex64 {
    let r = r_max * rng.gen_range(0.0f64..1.0).sqrt();
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, theta)
}

pub fn random_unit(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn random_series(rng: &mut ChaCha8Rng, max_deg: usize, scale: f64) -> Vec<Complex64> {
    let deg = rng.gen_range(0..=max_deg);
    (0..=deg).map(|_| random_unit(rng, scale)).collect()
}

/// Random analytic spec; atoms are kept well inside their validity ranges so
/// derivatives stay moderate on |z| <= 0.9.
pub fn random_analytic(rng: &mut ChaCha8Rng, allow_atoms: bool) -> AnalyticSpec {
    let mut spec = AnalyticSpec::from_series(random_series(rng, 5, 1.0));
    if allow_atoms {
        for _ in 0..rng.gen_range(0..=2) {
            let atom = match rng.gen_range(0..3) {
                0 => AnalyticAtom::Monomial {
                    n: rng.gen_range(0..=6),
                    w: random_unit(rng, 1.0),
                },
                1 => AnalyticAtom::Moebius {
                    c: random_disk_point(rng, 0.6),
                    w: random_unit(rng, 1.0),
                },
                _ => AnalyticAtom::HalfPlane {
                    w: random_unit(rng, 0.5),
                },
            };
            spec.atoms.push(atom);
        }
    }
    spec
}

pub fn random_polyharmonic(rng: &mut ChaCha8Rng, p: u32, allow_atoms: bool) -> PolyharmonicSpec {
    let layers = (0..p)
        .map(|_| HarmonicLayer::new(random_analytic(rng, allow_atoms), random_analytic(rng, allow_atoms)))
        .collect();
    PolyharmonicSpec::new(layers).expect("nonempty layer stack")
}

/// Random spec with F(0) = 0, as the accessibility hypotheses require.
pub fn random_normalized_polyharmonic(rng: &mut ChaCha8Rng, p: u32) -> PolyharmonicSpec {
    let layers = (0..p)
        .map(|_| {
            let mut h = AnalyticSpec::from_series(random_series(rng, 4, 0.8));
            let mut g = AnalyticSpec::from_series(random_series(rng, 4, 0.8));
            if let Some(c) = h.series.first_mut() {
                *c = Complex64::ZERO;
            }
            if let Some(c) = g.series.first_mut() {
                *c = Complex64::ZERO;
            }
            HarmonicLayer::new(h, g)
        })
        .collect();
    PolyharmonicSpec::new(layers).expect("nonempty layer stack")
}

/// Bound on the tail sum_{m >= m0} |a_m| (m + |shift|) r^m of a truncated
/// sine-kernel series, from per-atom coefficient bounds.
pub fn kernel_tail_bound(spec: &AnalyticSpec, m0: usize, r: f64, shift: i64) -> f64 {
    let coeff_bound = |m: usize| -> f64 {
        let mut b = 0.0;
        for atom in &spec.atoms {
            b += match *atom {
                AnalyticAtom::Monomial { n, w } => {
                    if m == n as usize {
                        w.norm()
                    } else {
                        0.0
                    }
                }
                AnalyticAtom::Moebius { c, w } => {
                    if m == 0 {
                        (w * c).norm()
                    } else {
                        w.norm() * (1.0 - c.norm_sqr()) * c.norm().powi(m as i32 - 1)
                    }
                }
                AnalyticAtom::HalfPlane { w } => {
                    if m == 0 {
                        w.norm()
                    } else {
                        2.0 * w.norm()
                    }
                }
            };
        }
        if m < spec.series.len() {
            b += spec.series[m].norm();
        }
        b
    };
    let mut tail = 0.0;
    for m in m0..m0 + 40_000 {
        let term = coeff_bound(m) * (m as f64 + shift.unsigned_abs() as f64) * r.powi(m as i32);
        tail += term;
        if m > m0 + 50 && term < 1e-18 {
            break;
        }
    }
    tail
}

/// Gamma function by Simpson quadrature of 2 u^{2s-1} e^{-u^2} on [0, 12].
pub fn gamma_by_quadrature(s: f64) -> f64 {
    assert!(s >= 0.5, "substituted integrand needs 2s - 1 >= 0");
    let n = 48_000;
    let upper = 12.0;
    let h = upper / n as f64;
    let integrand = |u: f64| 2.0 * u.powf(2.0 * s - 1.0) * (-u * u).exp();
    let mut acc = integrand(0.0) + integrand(upper);
    for j in 1..n {
        let w = if j % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * integrand(j as f64 * h);
    }
    acc * h / 3.0
}
