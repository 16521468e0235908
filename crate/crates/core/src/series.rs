//! Analytic building blocks on the unit disk: weighted atoms with closed-form
//! evaluation, power series, and the sine-kernel transform driving the
//! univalence criteria.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Below this threshold the ratio sin(nt)/sin(t) switches to its limit value.
const SMALL_T: f64 = 1e-7;

/// Ratio sin(nt)/sin(t), extended by its limit n at t = 0.
///
/// Exactly antisymmetric in n and exactly zero for n = 0; callers rely on
/// both identities. Defined for t in [0, pi/2].
pub fn dirichlet_ratio(n: i64, t: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if n < 0 {
        return -dirichlet_ratio(-n, t);
    }
    if t < SMALL_T {
        return n as f64;
    }
    (n as f64 * t).sin() / t.sin()
}

/// One closed-form analytic summand with a complex weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnalyticAtom {
    /// w * z^n
    Monomial {
        n: u32,
        #[serde(with = "crate::cpx")]
        w: Complex64,
    },
    /// w * (z + c) / (1 + conj(c) z), |c| < 1
    Moebius {
        #[serde(with = "crate::cpx")]
        c: Complex64,
        #[serde(with = "crate::cpx")]
        w: Complex64,
    },
    /// w * (1 + z) / (1 - z)
    HalfPlane {
        #[serde(with = "crate::cpx")]
        w: Complex64,
    },
}

impl AnalyticAtom {
    fn validate(&self) -> Result<()> {
        if let AnalyticAtom::Moebius { c, .. } = self {
            if c.norm() >= 1.0 {
                return Err(Error::param("c", format!("requires |c| < 1, got |c| = {}", c.norm())));
            }
        }
        Ok(())
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        match *self {
            AnalyticAtom::Monomial { n, w } => w * z.powu(n),
            AnalyticAtom::Moebius { c, w } => w * (z + c) / (1.0 + c.conj() * z),
            AnalyticAtom::HalfPlane { w } => w * (1.0 + z) / (1.0 - z),
        }
    }

    fn deriv(&self, z: Complex64) -> Complex64 {
        match *self {
            AnalyticAtom::Monomial { n, w } => {
                if n == 0 {
                    Complex64::ZERO
                } else {
                    w * f64::from(n) * z.powu(n - 1)
                }
            }
            AnalyticAtom::Moebius { c, w } => {
                let d = 1.0 + c.conj() * z;
                w * (1.0 - c.norm_sqr()) / (d * d)
            }
            AnalyticAtom::HalfPlane { w } => {
                let d = 1.0 - z;
                2.0 * w / (d * d)
            }
        }
    }

    /// Taylor coefficient of z^m.
    fn taylor_coeff(&self, m: usize) -> Complex64 {
        match *self {
            AnalyticAtom::Monomial { n, w } => {
                if m == n as usize {
                    w
                } else {
                    Complex64::ZERO
                }
            }
            AnalyticAtom::Moebius { c, w } => {
                if m == 0 {
                    w * c
                } else {
                    w * (1.0 - c.norm_sqr()) * (-c.conj()).powu(m as u32 - 1)
                }
            }
            AnalyticAtom::HalfPlane { w } => {
                if m == 0 {
                    w
                } else {
                    2.0 * w
                }
            }
        }
    }

    /// Termwise sine-kernel image with coefficient index shifted by `shift`:
    /// sum_m a_m D(m - shift, t) z^m in closed form.
    fn shifted_sine_kernel(&self, z: Complex64, t: f64, shift: i64) -> Complex64 {
        if t < SMALL_T {
            // limit t -> 0: z f'(z) - shift * f(z), termwise (m - shift) a_m z^m
            return z * self.deriv(z) - shift as f64 * self.eval(z);
        }
        match *self {
            AnalyticAtom::Monomial { n, w } => {
                w * dirichlet_ratio(i64::from(n) - shift, t) * z.powu(n)
            }
            AnalyticAtom::Moebius { c, w } => {
                let head = w * c * dirichlet_ratio(-shift, t);
                let scale = w * (1.0 - c.norm_sqr());
                head + scale * z * geometric_sine_sum(-c.conj() * z, 1 - shift, t) / t.sin()
            }
            AnalyticAtom::HalfPlane { w } => {
                let head = w * dirichlet_ratio(-shift, t);
                head + 2.0 * w * z * geometric_sine_sum(z, 1 - shift, t) / t.sin()
            }
        }
    }
}

/// sum_{m>=0} u^m sin((m + s) t) for |u| < 1.
fn geometric_sine_sum(u: Complex64, s: i64, t: f64) -> Complex64 {
    let eit = Complex64::from_polar(1.0, t);
    let eist = Complex64::from_polar(1.0, s as f64 * t);
    let plus = eist / (1.0 - u * eit);
    let minus = eist.conj() / (1.0 - u * eit.conj());
    (plus - minus) / Complex64::new(0.0, 2.0)
}

/// Value of the sine-kernel transform S_t[f] at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineKernelValue {
    pub value: Complex64,
}

/// Analytic function on the disk: a sum of closed-form atoms plus a
/// polynomial tail given by its Taylor coefficients.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAnalyticSpec")]
pub struct AnalyticSpec {
    pub atoms: Vec<AnalyticAtom>,
    #[serde(with = "crate::cpx::vec")]
    pub series: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawAnalyticSpec {
    #[serde(default)]
    atoms: Vec<AnalyticAtom>,
    #[serde(default, with = "crate::cpx::vec")]
    series: Vec<Complex64>,
}

impl TryFrom<RawAnalyticSpec> for AnalyticSpec {
    type Error = Error;

    fn try_from(raw: RawAnalyticSpec) -> Result<Self> {
        let spec = AnalyticSpec {
            atoms: raw.atoms,
            series: raw.series,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn check_in_disk(z: Complex64) -> Result<()> {
    if z.norm_sqr() >= 1.0 {
        return Err(Error::OutsideDisk(z));
    }
    Ok(())
}

impl AnalyticSpec {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Polynomial c_0 + c_1 z + ... from raw coefficients.
    pub fn from_series(series: Vec<Complex64>) -> Self {
        AnalyticSpec { atoms: Vec::new(), series }
    }

    /// The identity map z.
    pub fn identity() -> Self {
        Self::from_series(vec![Complex64::ZERO, Complex64::ONE])
    }

    /// w * z^n.
    pub fn monomial(n: u32, w: Complex64) -> Self {
        AnalyticSpec {
            atoms: vec![AnalyticAtom::Monomial { n, w }],
            series: Vec::new(),
        }
    }

    /// w * (z + c)/(1 + conj(c) z); requires |c| < 1.
    pub fn moebius(c: Complex64, w: Complex64) -> Result<Self> {
        let atom = AnalyticAtom::Moebius { c, w };
        atom.validate()?;
        Ok(AnalyticSpec { atoms: vec![atom], series: Vec::new() })
    }

    /// w * (1 + z)/(1 - z).
    pub fn halfplane(w: Complex64) -> Self {
        AnalyticSpec {
            atoms: vec![AnalyticAtom::HalfPlane { w }],
            series: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for atom in &self.atoms {
            atom.validate()?;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.series.iter().all(|c| *c == Complex64::ZERO)
    }

    /// Evaluate at z, |z| < 1.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        let mut acc = Complex64::ZERO;
        for atom in &self.atoms {
            acc += atom.eval(z);
        }
        acc += horner(&self.series, z);
        Ok(acc)
    }

    /// Complex derivative at z, |z| < 1.
    pub fn deriv(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        let mut acc = Complex64::ZERO;
        for atom in &self.atoms {
            acc += atom.deriv(z);
        }
        acc += horner_deriv(&self.series, z);
        Ok(acc)
    }

    /// Taylor coefficient of z^m of the whole spec.
    pub fn taylor_coeff(&self, m: usize) -> Complex64 {
        let mut acc = self.series.get(m).copied().unwrap_or(Complex64::ZERO);
        for atom in &self.atoms {
            acc += atom.taylor_coeff(m);
        }
        acc
    }

    /// Value at the origin without a domain check.
    pub fn value_at_origin(&self) -> Complex64 {
        self.taylor_coeff(0)
    }

    /// Sine-kernel transform S_t[f](z) = sum_m a_m D(m, t) z^m, t in [0, pi/2].
    ///
    /// At t = 0 this is z f'(z); atoms use closed forms, the series part is
    /// summed termwise.
    pub fn sine_kernel(&self, z: Complex64, t: f64) -> Result<SineKernelValue> {
        Ok(SineKernelValue { value: self.shifted_sine_kernel(z, t, 0)? })
    }

    /// Shifted transform sum_m a_m D(m - shift, t) z^m used by the
    /// polyanalytic criterion (shift = conjugate-power index).
    pub fn shifted_sine_kernel(&self, z: Complex64, t: f64, shift: i64) -> Result<Complex64> {
        check_in_disk(z)?;
        let mut acc = Complex64::ZERO;
        for atom in &self.atoms {
            acc += atom.shifted_sine_kernel(z, t, shift);
        }
        let mut zp = Complex64::ONE;
        for (m, &c) in self.series.iter().enumerate() {
            if c != Complex64::ZERO {
                acc += c * dirichlet_ratio(m as i64 - shift, t) * zp;
            }
            zp *= z;
        }
        Ok(acc)
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn horner_deriv(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for (m, &c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * m as f64;
    }
    acc
}
