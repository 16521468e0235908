//! Poisson-type kernel for radially weighted harmonic orders, quadrature
//! solution of the associated Dirichlet problem, and finite-difference
//! verification of the governing operator.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for s in (0, 50], relative error below 1e-10.
pub fn gamma_fn(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::param("s", "gamma requires a positive argument"));
    }
    Ok(lanczos_gamma(s))
}

fn lanczos_gamma(s: f64) -> f64 {
    if s < 0.5 {
        // reflection: gamma(s) gamma(1-s) = pi / sin(pi s)
        return PI / ((PI * s).sin() * lanczos_gamma(1.0 - s));
    }
    let x = s - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &coeff) in LANCZOS.iter().enumerate().skip(1) {
        acc += coeff / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Normalizing constant gamma(alpha/2 + 1)^2 / gamma(1 + alpha).
pub fn c_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::param("alpha", "must exceed -1"));
    }
    Ok(gamma_fn(0.5 * alpha + 1.0)?.powi(2) / gamma_fn(1.0 + alpha)?)
}

/// x^e with a cheap path for small integer exponents.
fn real_pow(x: f64, e: f64) -> f64 {
    if e.fract() == 0.0 && e.abs() <= 64.0 {
        x.powi(e as i32)
    } else {
        x.powf(e)
    }
}

/// K_alpha(z) = c_alpha (1 - |z|^2)^{alpha+1} / |1 - z|^{alpha+2}.
pub fn k_alpha(z: Complex64, alpha: f64) -> Result<f64> {
    let c = c_alpha(alpha)?;
    if z.norm_sqr() >= 1.0 {
        return Err(Error::OutsideDisk(z));
    }
    Ok(c * real_pow(1.0 - z.norm_sqr(), alpha + 1.0)
        / real_pow((Complex64::ONE - z).norm(), alpha + 2.0))
}

/// Kernel order and quadrature resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub alpha: f64,
    pub nodes: usize,
}

impl Default for KernelParams {
    fn default() -> Self {
        KernelParams {
            alpha: 0.0,
            nodes: 256,
        }
    }
}

impl KernelParams {
    pub fn new(alpha: f64) -> Self {
        KernelParams {
            alpha,
            ..Default::default()
        }
    }

    pub fn with_nodes(self, nodes: usize) -> Self {
        KernelParams { nodes, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > -1.0) {
            return Err(Error::param("alpha", "must exceed -1"));
        }
        if self.nodes < 16 || self.nodes % 2 != 0 {
            return Err(Error::param("nodes", "must be even and at least 16"));
        }
        Ok(())
    }
}

/// Smooth 2*pi-periodic boundary values, closed-form or tabulated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoundaryData {
    Constant {
        #[serde(with = "crate::cpx")]
        value: Complex64,
    },
    Cos {
        k: u32,
    },
    Sin {
        k: u32,
    },
    Fourier {
        terms: Vec<FourierTerm>,
    },
    /// Values at the quadrature nodes tau_j = 2*pi*j/M; the length must match
    /// the node count.
    Samples {
        #[serde(with = "crate::cpx::vec")]
        values: Vec<Complex64>,
    },
}

/// a cos(k theta) + b sin(k theta)
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierTerm {
    pub k: u32,
    #[serde(with = "crate::cpx")]
    pub a: Complex64,
    #[serde(with = "crate::cpx")]
    pub b: Complex64,
}

impl BoundaryData {
    fn at_node(&self, j: usize, nodes: usize) -> Result<Complex64> {
        let theta = 2.0 * PI * j as f64 / nodes as f64;
        Ok(match self {
            BoundaryData::Constant { value } => *value,
            BoundaryData::Cos { k } => Complex64::new((f64::from(*k) * theta).cos(), 0.0),
            BoundaryData::Sin { k } => Complex64::new((f64::from(*k) * theta).sin(), 0.0),
            BoundaryData::Fourier { terms } => terms
                .iter()
                .map(|t| {
                    let kt = f64::from(t.k) * theta;
                    t.a * kt.cos() + t.b * kt.sin()
                })
                .sum(),
            BoundaryData::Samples { values } => {
                if values.len() != nodes {
                    return Err(Error::param(
                        "values",
                        format!("expected {nodes} samples, got {}", values.len()),
                    ));
                }
                values[j]
            }
        })
    }
}

/// f(z) = (1/2pi) integral of K_alpha(z e^{-i tau}) f*(e^{i tau}) d tau by the
/// periodic trapezoid rule, spectrally accurate for smooth data.
pub fn solve_dirichlet(
    boundary: &BoundaryData,
    params: &KernelParams,
    z: Complex64,
) -> Result<Complex64> {
    params.validate()?;
    if z.norm_sqr() >= 1.0 {
        return Err(Error::OutsideDisk(z));
    }
    let m = params.nodes;
    let mut acc = Complex64::ZERO;
    for j in 0..m {
        let tau = 2.0 * PI * j as f64 / m as f64;
        let rotated = z * Complex64::from_polar(1.0, -tau);
        acc += k_alpha(rotated, params.alpha)? * boundary.at_node(j, m)?;
    }
    Ok(acc / m as f64)
}

/// Max-norm residual of the weighted Laplacian
/// T_alpha = -(alpha^2/4) W^{-alpha-1} + (alpha/2) W^{-alpha-1} (x d_x + y d_y)
///         + (1/4) W^{-alpha} Lap,   W = 1 - |z|^2,
/// evaluated with central differences on the step-h lattice inside |z| <= 0.8,
/// at nodes with |z| <= 0.8 - 2h.
pub fn t_alpha_residual<F>(f: F, h: f64, alpha: f64) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if !(alpha > -1.0) {
        return Err(Error::param("alpha", "must exceed -1"));
    }
    if !(h > 0.0) {
        return Err(Error::param("h", "step must be positive"));
    }
    const R: f64 = 0.8;
    let interior = R - 2.0 * h;
    if interior <= 0.0 {
        return Err(Error::GridTooSmall(format!(
            "step {h} leaves no interior nodes inside |z| <= {R}"
        )));
    }

    let n = (R / h).floor() as i64;
    let width = (2 * n + 1) as usize;
    let cell = |i: i64, j: i64| (i + n) as usize * width + (j + n) as usize;

    let mut coords = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let z = Complex64::new(i as f64 * h, j as f64 * h);
            if z.norm() <= R {
                coords.push((i, j, z));
            }
        }
    }
    let sampled: Vec<(usize, Complex64)> = coords
        .par_iter()
        .map(|&(i, j, z)| Ok((cell(i, j), f(z)?)))
        .collect::<Result<_>>()?;
    let mut table = vec![None; width * width];
    for (c, v) in sampled {
        table[c] = Some(v);
    }

    let eligible: Vec<(i64, i64, Complex64)> = coords
        .iter()
        .copied()
        .filter(|&(_, _, z)| z.norm() <= interior)
        .collect();
    if eligible.is_empty() {
        return Err(Error::GridTooSmall(format!(
            "step {h} leaves no interior nodes inside |z| <= {interior}"
        )));
    }

    let residual = eligible
        .par_iter()
        .map(|&(i, j, z)| {
            let center = table[cell(i, j)].unwrap();
            let east = table[cell(i + 1, j)].unwrap();
            let west = table[cell(i - 1, j)].unwrap();
            let north = table[cell(i, j + 1)].unwrap();
            let south = table[cell(i, j - 1)].unwrap();
            let fx = (east - west) / (2.0 * h);
            let fy = (north - south) / (2.0 * h);
            let lap = (east + west + north + south - 4.0 * center) / (h * h);
            let w = 1.0 - z.norm_sqr();
            let radial = z.re * fx + z.im * fy;
            let t = -(alpha * alpha / 4.0) * real_pow(w, -alpha - 1.0) * center
                + (alpha / 2.0) * real_pow(w, -alpha - 1.0) * radial
                + 0.25 * real_pow(w, -alpha) * lap;
            t.norm()
        })
        .reduce(|| 0.0, f64::max);
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_known_values() {
        let cases = [
            (1.0, 1.0),
            (2.0, 1.0),
            (3.0, 2.0),
            (4.0, 6.0),
            (0.5, PI.sqrt()),
            (7.5, 1871.254_305_797_788_4),
            (50.0, 6.082_818_640_342_675e62),
        ];
        for (s, expect) in cases {
            let got = gamma_fn(s).unwrap();
            assert!(
                ((got - expect) / expect).abs() < 1e-10,
                "gamma({s}) = {got}, expected {expect}"
            );
        }
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-1.5).is_err());
    }

    #[test]
    fn normalizing_constant_values() {
        assert!((c_alpha(0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((c_alpha(2.0).unwrap() - 0.5).abs() < 1e-12);
        // gamma(3)^2 / gamma(5) = 4/24
        assert!((c_alpha(4.0).unwrap() - 1.0 / 6.0).abs() < 1e-12);
        assert!(c_alpha(-1.0).is_err());
    }

    #[test]
    fn kernel_point_values() {
        assert!((k_alpha(Complex64::ZERO, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((k_alpha(Complex64::ZERO, 2.0).unwrap() - 0.5).abs() < 1e-12);
        assert!((k_alpha(Complex64::new(0.5, 0.0), 0.0).unwrap() - 3.0).abs() < 1e-12);
        assert!((k_alpha(Complex64::new(-0.5, 0.0), 0.0).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!(k_alpha(Complex64::new(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn dirichlet_reproduces_constants_and_harmonics() {
        let one = BoundaryData::Constant { value: Complex64::ONE };
        let p0 = KernelParams::new(0.0);
        for &z in &[
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.7, 0.2),
            Complex64::new(0.0, 0.85),
        ] {
            let f = solve_dirichlet(&one, &p0, z).unwrap();
            assert!((f - Complex64::ONE).norm() < 1e-10, "mean value failed at {z}");
        }

        let p2 = KernelParams::new(2.0);
        let at0 = solve_dirichlet(&one, &p2, Complex64::ZERO).unwrap();
        assert!((at0 - Complex64::new(0.5, 0.0)).norm() < 1e-12);

        let cos1 = BoundaryData::Cos { k: 1 };
        for &r in &[0.2, 0.5, 0.8] {
            let f = solve_dirichlet(&cos1, &p0, Complex64::new(r, 0.0)).unwrap();
            assert!((f - Complex64::new(r, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn dirichlet_validates_inputs() {
        let one = BoundaryData::Constant { value: Complex64::ONE };
        assert!(solve_dirichlet(&one, &KernelParams::new(0.0), Complex64::new(1.0, 0.0)).is_err());
        assert!(solve_dirichlet(&one, &KernelParams::new(-1.0), Complex64::ZERO).is_err());
        assert!(
            solve_dirichlet(&one, &KernelParams::new(0.0).with_nodes(15), Complex64::ZERO)
                .is_err()
        );
        let short = BoundaryData::Samples { values: vec![Complex64::ONE; 10] };
        assert!(solve_dirichlet(&short, &KernelParams::new(0.0), Complex64::ZERO).is_err());
    }

    #[test]
    fn tabulated_samples_match_closed_form() {
        let m = 64;
        let values = (0..m)
            .map(|j| Complex64::new((2.0 * PI * j as f64 / m as f64).cos(), 0.0))
            .collect();
        let tab = BoundaryData::Samples { values };
        let cos1 = BoundaryData::Cos { k: 1 };
        let params = KernelParams::new(0.0).with_nodes(m);
        let z = Complex64::new(0.4, -0.3);
        let a = solve_dirichlet(&tab, &params, z).unwrap();
        let b = solve_dirichlet(&cos1, &params, z).unwrap();
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn residual_vanishes_for_linear_harmonic() {
        let f = |z: Complex64| Ok(Complex64::new(z.re, 0.0));
        let r = t_alpha_residual(f, 1.0 / 64.0, 0.0).unwrap();
        assert!(r <= 1e-10, "linear data should be stencil-exact, got {r}");
    }

    #[test]
    fn residual_rejects_coarse_grid() {
        let f = |z: Complex64| Ok(z);
        assert!(matches!(
            t_alpha_residual(f, 0.5, 0.0),
            Err(Error::GridTooSmall(_))
        ));
    }

    #[test]
    fn fourier_boundary_combines_terms() {
        let combo = BoundaryData::Fourier {
            terms: vec![
                FourierTerm { k: 1, a: Complex64::ONE, b: Complex64::ZERO },
                FourierTerm { k: 2, a: Complex64::ZERO, b: Complex64::new(0.5, 0.0) },
            ],
        };
        let p0 = KernelParams::new(0.0);
        let z = Complex64::new(0.3, 0.2);
        let got = solve_dirichlet(&combo, &p0, z).unwrap();
        // harmonic extension: r cos(th) + 0.5 r^2 sin(2 th) = Re z + 0.5 Im(z^2)
        let expect = Complex64::new(z.re + 0.5 * (z * z).im, 0.0);
        assert!((got - expect).norm() < 1e-10);
    }
}
