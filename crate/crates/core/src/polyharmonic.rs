//! Layered polyharmonic maps F(z) = sum_k |z|^{2(k-1)} (h_k + conj(g_k)),
//! polyanalytic maps F(z) = sum_k conj(z)^k a_k(z), their Wirtinger jets, and
//! the built-in example families.

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::series::AnalyticSpec;
use crate::{Error, Result};

/// One harmonic layer h(z) + conj(g(z)) given by two analytic specs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct HarmonicLayer {
    #[serde(default)]
    pub h: AnalyticSpec,
    #[serde(default)]
    pub g: AnalyticSpec,
}

impl HarmonicLayer {
    pub fn new(h: AnalyticSpec, g: AnalyticSpec) -> Self {
        HarmonicLayer { h, g }
    }

    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.h.eval(z)? + self.g.eval(z)?.conj())
    }

    /// d/dz of the layer, which is h'.
    pub fn dz(&self, z: Complex64) -> Result<Complex64> {
        self.h.deriv(z)
    }

    /// d/dzbar of the layer, which is conj(g').
    pub fn dzbar(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.g.deriv(z)?.conj())
    }

    /// Whether h(0) = g(0) = 0.
    pub fn is_normalized(&self) -> bool {
        self.h.value_at_origin() == Complex64::ZERO && self.g.value_at_origin() == Complex64::ZERO
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.g.is_zero()
    }
}

/// Wirtinger derivatives of a map at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WirtingerJet {
    pub value: Complex64,
    pub dz: Complex64,
    pub dzbar: Complex64,
}

impl WirtingerJet {
    /// Jacobian |F_z|^2 - |F_zbar|^2.
    pub fn jacobian(&self) -> f64 {
        self.dz.norm_sqr() - self.dzbar.norm_sqr()
    }
}

/// Polyharmonic map of order p; layer at list position i (0-based) carries
/// the radial weight |z|^{2i}.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "RawPolyharmonic")]
pub struct PolyharmonicSpec {
    pub layers: Vec<HarmonicLayer>,
}

#[derive(Deserialize)]
struct RawPolyharmonic {
    p: u32,
    layers: Vec<HarmonicLayer>,
}

impl TryFrom<RawPolyharmonic> for PolyharmonicSpec {
    type Error = Error;

    fn try_from(raw: RawPolyharmonic) -> Result<Self> {
        if raw.p == 0 {
            return Err(Error::param("p", "order must be at least 1"));
        }
        if raw.layers.len() != raw.p as usize {
            return Err(Error::WrongOrder {
                expected: raw.p,
                actual: raw.layers.len() as u32,
            });
        }
        Ok(PolyharmonicSpec { layers: raw.layers })
    }
}

impl Serialize for PolyharmonicSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PolyharmonicSpec", 2)?;
        st.serialize_field("p", &(self.layers.len() as u32))?;
        st.serialize_field("layers", &self.layers)?;
        st.end()
    }
}

impl PolyharmonicSpec {
    /// Build from layers; position i carries weight |z|^{2i}.
    pub fn new(layers: Vec<HarmonicLayer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::param("layers", "at least one layer is required"));
        }
        Ok(PolyharmonicSpec { layers })
    }

    /// Order-1 map h + conj(g).
    pub fn harmonic(h: AnalyticSpec, g: AnalyticSpec) -> Self {
        PolyharmonicSpec {
            layers: vec![HarmonicLayer::new(h, g)],
        }
    }

    /// The map |z|^{2(p-1)} f1(z).
    pub fn weighted(p: u32, f1: AnalyticSpec) -> Result<Self> {
        if p == 0 {
            return Err(Error::param("p", "order must be at least 1"));
        }
        let mut layers = vec![HarmonicLayer::default(); p as usize];
        layers[p as usize - 1].h = f1;
        Ok(PolyharmonicSpec { layers })
    }

    pub fn order(&self) -> u32 {
        self.layers.len() as u32
    }

    /// Whether F(0) = 0; only the unweighted layer contributes at the origin.
    pub fn vanishes_at_origin(&self) -> bool {
        let l = &self.layers[0];
        l.h.value_at_origin() + l.g.value_at_origin().conj() == Complex64::ZERO
    }

    /// Evaluate F(z) = sum_i |z|^{2i} (h_i + conj(g_i)) for |z| < 1.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let s = z.norm_sqr();
        let mut acc = Complex64::ZERO;
        for (i, layer) in self.layers.iter().enumerate() {
            acc += s.powi(i as i32) * layer.value(z)?;
        }
        Ok(acc)
    }

    /// Exact Wirtinger derivatives assembled layer by layer.
    pub fn wirtinger_jet(&self, z: Complex64) -> Result<WirtingerJet> {
        let s = z.norm_sqr();
        let mut value = Complex64::ZERO;
        let mut dz = Complex64::ZERO;
        let mut dzbar = Complex64::ZERO;
        for (i, layer) in self.layers.iter().enumerate() {
            let w = s.powi(i as i32);
            let f = layer.value(z)?;
            value += w * f;
            dz += w * layer.dz(z)?;
            dzbar += w * layer.dzbar(z)?;
            if i >= 1 {
                let wm = i as f64 * s.powi(i as i32 - 1);
                dz += wm * z.conj() * f;
                dzbar += wm * z * f;
            }
        }
        Ok(WirtingerJet { value, dz, dzbar })
    }

    /// Jacobian |F_z|^2 - |F_zbar|^2 at z.
    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        Ok(self.wirtinger_jet(z)?.jacobian())
    }
}

/// Sign classification of the Jacobian of |z|^{2(p-1)} f1(z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JacobianSign {
    Negative,
    Zero,
    Positive,
}

/// Sign of the Jacobian of |z|^{2(p-1)} f1(z) at z != 0, decided through the
/// ratio test sign(|z f1'/f1 + p - 1| - (p - 1)).
pub fn jacobian_trichotomy(f1: &AnalyticSpec, p: u32, z: Complex64) -> Result<JacobianSign> {
    if p < 2 {
        return Err(Error::param("p", "order must be at least 2"));
    }
    if z == Complex64::ZERO {
        return Err(Error::OriginExcluded);
    }
    let f = f1.eval(z)?;
    if f == Complex64::ZERO {
        return Err(Error::SingularInput(format!(
            "ratio test undefined where the layer vanishes (z = {z})"
        )));
    }
    let pm1 = f64::from(p - 1);
    let d = (z * f1.deriv(z)? / f + pm1).norm() - pm1;
    Ok(if d > 0.0 {
        JacobianSign::Positive
    } else if d < 0.0 {
        JacobianSign::Negative
    } else {
        JacobianSign::Zero
    })
}

/// Polyanalytic map of order p: F(z) = sum_{k=0}^{p-1} conj(z)^k a_k(z).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "RawPolyanalytic")]
pub struct PolyanalyticSpec {
    pub coeffs: Vec<AnalyticSpec>,
}

#[derive(Deserialize)]
struct RawPolyanalytic {
    p: u32,
    coeffs: Vec<AnalyticSpec>,
}

impl TryFrom<RawPolyanalytic> for PolyanalyticSpec {
    type Error = Error;

    fn try_from(raw: RawPolyanalytic) -> Result<Self> {
        if raw.p == 0 {
            return Err(Error::param("p", "order must be at least 1"));
        }
        if raw.coeffs.len() != raw.p as usize {
            return Err(Error::WrongOrder {
                expected: raw.p,
                actual: raw.coeffs.len() as u32,
            });
        }
        Ok(PolyanalyticSpec { coeffs: raw.coeffs })
    }
}

impl Serialize for PolyanalyticSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PolyanalyticSpec", 2)?;
        st.serialize_field("p", &(self.coeffs.len() as u32))?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

impl PolyanalyticSpec {
    pub fn new(coeffs: Vec<AnalyticSpec>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::param("coeffs", "at least one coefficient function is required"));
        }
        Ok(PolyanalyticSpec { coeffs })
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let zb = z.conj();
        let mut acc = Complex64::ZERO;
        let mut zbk = Complex64::ONE;
        for a in &self.coeffs {
            acc += zbk * a.eval(z)?;
            zbk *= zb;
        }
        Ok(acc)
    }

    pub fn wirtinger_jet(&self, z: Complex64) -> Result<WirtingerJet> {
        let zb = z.conj();
        let mut value = Complex64::ZERO;
        let mut dz = Complex64::ZERO;
        let mut dzbar = Complex64::ZERO;
        let mut zbk = Complex64::ONE;
        for (k, a) in self.coeffs.iter().enumerate() {
            let ak = a.eval(z)?;
            value += zbk * ak;
            dz += zbk * a.deriv(z)?;
            if k >= 1 {
                dzbar += k as f64 * zb.powu(k as u32 - 1) * ak;
            }
            zbk *= zb;
        }
        Ok(WirtingerJet { value, dz, dzbar })
    }

    pub fn jacobian(&self, z: Complex64) -> Result<f64> {
        Ok(self.wirtinger_jet(z)?.jacobian())
    }

    /// Rewrite conj(z)^k z^n monomials into radially weighted layers. Only
    /// specs whose coefficient functions are pure series convert; any atom
    /// returns None.
    pub fn to_polyharmonic(&self) -> Option<PolyharmonicSpec> {
        let p = self.coeffs.len();
        let mut layers = vec![HarmonicLayer::default(); p];
        for (k, a) in self.coeffs.iter().enumerate() {
            if !a.atoms.is_empty() {
                return None;
            }
            for (n, &c) in a.series.iter().enumerate() {
                if c == Complex64::ZERO {
                    continue;
                }
                if n >= k {
                    // conj(z)^k z^n = |z|^{2k} z^{n-k}
                    add_coeff(&mut layers[k].h.series, n - k, c);
                } else {
                    // conj(z)^k z^n = |z|^{2n} conj(z)^{k-n}
                    add_coeff(&mut layers[n].g.series, k - n, c.conj());
                }
            }
        }
        Some(PolyharmonicSpec { layers })
    }
}

fn add_coeff(series: &mut Vec<Complex64>, degree: usize, c: Complex64) {
    if series.len() <= degree {
        series.resize(degree + 1, Complex64::ZERO);
    }
    series[degree] += c;
}

/// Built-in example families with their parameter constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedExample {
    /// |z|^{2(p-1)} z + a (z + c)/(1 + conj(c) z) + b conj(z)
    Eg1 { p: u32, a: Complex64, b: Complex64, c: Complex64 },
    /// |z|^{2(p-1)} z + z + lambda conj(z)^n
    Eg2 { p: u32, n: u32, lambda: Complex64 },
    /// |z|^{2(p-1)} mu conj(z) + (1 + z)/(1 - z)
    Eg3 { p: u32, mu: Complex64 },
    /// |z|^{2(p-1)} (z + lambda z^n)
    Acc1 { p: u32, n: u32, lambda: Complex64 },
    /// z - lambda |z|^{2(p-1)}
    Acc2 { p: u32, lambda: Complex64 },
}

fn require_order(p: u32, min: u32) -> Result<()> {
    if p < min {
        return Err(Error::param("p", format!("requires p >= {min}")));
    }
    Ok(())
}

impl NamedExample {
    pub fn build(&self) -> Result<PolyharmonicSpec> {
        match *self {
            NamedExample::Eg1 { p, a, b, c } => {
                require_order(p, 2)?;
                if c.norm() >= 1.0 {
                    return Err(Error::param("c", "requires |c| < 1"));
                }
                let spread = (b.norm() - a.norm() * (1.0 - c.norm_sqr())).abs();
                if spread < 1e-12 {
                    return Err(Error::param(
                        "b",
                        "requires |b| != |a| (1 - |c|^2), the degenerate-Jacobian line",
                    ));
                }
                let bound = (1.0 + b.norm()) * (1.0 + c.norm()) / (1.0 - c.norm());
                if a.norm() < bound {
                    return Err(Error::param(
                        "a",
                        format!("requires |a| >= (1 + |b|)(1 + |c|)/(1 - |c|) = {bound}"),
                    ));
                }
                let mut layers = vec![HarmonicLayer::default(); p as usize];
                layers[0].h = AnalyticSpec::moebius(c, a)?;
                layers[0].g = AnalyticSpec::from_series(vec![Complex64::ZERO, b.conj()]);
                layers[p as usize - 1].h = AnalyticSpec::identity();
                PolyharmonicSpec::new(layers)
            }
            NamedExample::Eg2 { p, n, lambda } => {
                require_order(p, 2)?;
                if n < 2 {
                    return Err(Error::param("n", "requires n >= 2"));
                }
                if lambda.norm() > 1.0 / f64::from(n) {
                    return Err(Error::param(
                        "lambda",
                        format!("requires |lambda| <= 1/n = {}", 1.0 / f64::from(n)),
                    ));
                }
                let mut layers = vec![HarmonicLayer::default(); p as usize];
                layers[0].h = AnalyticSpec::identity();
                layers[0].g = AnalyticSpec::monomial(n, lambda.conj());
                layers[p as usize - 1].h = AnalyticSpec::identity();
                PolyharmonicSpec::new(layers)
            }
            NamedExample::Eg3 { p, mu } => {
                require_order(p, 2)?;
                if mu == Complex64::ZERO || mu.norm() > 0.5 {
                    return Err(Error::param("mu", "requires 0 < |mu| <= 1/2"));
                }
                let mut layers = vec![HarmonicLayer::default(); p as usize];
                layers[0].h = AnalyticSpec::halfplane(Complex64::ONE);
                layers[p as usize - 1].g =
                    AnalyticSpec::from_series(vec![Complex64::ZERO, mu.conj()]);
                PolyharmonicSpec::new(layers)
            }
            NamedExample::Acc1 { p, n, lambda } => {
                require_order(p, 1)?;
                if n < 2 {
                    return Err(Error::param("n", "requires n >= 2"));
                }
                if lambda == Complex64::ZERO || lambda.norm() > 1.0 / f64::from(n) {
                    return Err(Error::param(
                        "lambda",
                        format!("requires 0 < |lambda| <= 1/n = {}", 1.0 / f64::from(n)),
                    ));
                }
                let mut series = vec![Complex64::ZERO; n as usize + 1];
                series[1] = Complex64::ONE;
                series[n as usize] = lambda;
                PolyharmonicSpec::weighted(p, AnalyticSpec::from_series(series))
            }
            NamedExample::Acc2 { p, lambda } => {
                require_order(p, 2)?;
                let cap = 1.0 / (2.0 * f64::from(p - 1));
                if lambda == Complex64::ZERO || lambda.norm() >= cap {
                    return Err(Error::param(
                        "lambda",
                        format!("requires 0 < |lambda| < 1/(2(p-1)) = {cap}"),
                    ));
                }
                let mut layers = vec![HarmonicLayer::default(); p as usize];
                layers[0].h = AnalyticSpec::identity();
                layers[p as usize - 1].h = AnalyticSpec::from_series(vec![-lambda]);
                PolyharmonicSpec::new(layers)
            }
        }
    }
}
