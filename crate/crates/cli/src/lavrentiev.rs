//! Pointwise Lavrentiev comparison ratio between a reference layer G and a
//! sense-preserving candidate layer K.

use num_complex::Complex64;
use polyacc_core::polyharmonic::HarmonicLayer;
use polyacc_core::series::AnalyticSpec;
use polyacc_core::{Error, Result};
use serde::Serialize;

/// (2|G| + |G_z| + |G_zbar|) / (|K_z| - |K_zbar|); requires K to be strictly
/// sense-preserving at z.
pub fn lavrentiev_lhs(g: &HarmonicLayer, k: &HarmonicLayer, z: Complex64) -> Result<f64> {
    let denom = k.dz(z)?.norm() - k.dzbar(z)?.norm();
    if denom <= 0.0 {
        return Err(Error::SingularInput(format!(
            "candidate layer is not sense-preserving at z = {z} (|K_z| - |K_zbar| = {denom})"
        )));
    }
    let numer = 2.0 * g.value(z)?.norm() + g.dz(z)?.norm() + g.dzbar(z)?.norm();
    Ok(numer / denom)
}

/// Built-in (G, K) data sets mirroring the example families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonPair {
    /// G = z against K = a z + b conj(z).
    Shear,
    /// G = z against K = z + conj(z)^n / n.
    MonomialShear,
    /// G = conj(z)/2 against K = (1 + z)/(1 - z).
    HalfPlane,
}

impl ComparisonPair {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "shear" => Ok(ComparisonPair::Shear),
            "monomial-shear" => Ok(ComparisonPair::MonomialShear),
            "halfplane" => Ok(ComparisonPair::HalfPlane),
            other => Err(Error::SingularInput(format!(
                "unknown comparison pair `{other}` (expected shear, monomial-shear or halfplane)"
            ))),
        }
    }

    /// Materialize the (G, K) layers; `a`, `b` feed the shear pair and `n`
    /// the monomial pair.
    pub fn build(&self, a: Complex64, b: Complex64, n: u32) -> Result<(HarmonicLayer, HarmonicLayer)> {
        let g_identity = HarmonicLayer::new(AnalyticSpec::identity(), AnalyticSpec::zero());
        Ok(match self {
            ComparisonPair::Shear => (
                g_identity,
                HarmonicLayer::new(
                    AnalyticSpec::from_series(vec![Complex64::ZERO, a]),
                    AnalyticSpec::from_series(vec![Complex64::ZERO, b.conj()]),
                ),
            ),
            ComparisonPair::MonomialShear => {
                if n < 2 {
                    return Err(Error::SingularInput("monomial-shear needs n >= 2".into()));
                }
                (
                    g_identity,
                    HarmonicLayer::new(
                        AnalyticSpec::identity(),
                        AnalyticSpec::monomial(n, Complex64::new(1.0 / f64::from(n), 0.0)),
                    ),
                )
            }
            ComparisonPair::HalfPlane => (
                HarmonicLayer::new(
                    AnalyticSpec::zero(),
                    AnalyticSpec::from_series(vec![Complex64::ZERO, Complex64::new(0.5, 0.0)]),
                ),
                HarmonicLayer::new(AnalyticSpec::halfplane(Complex64::ONE), AnalyticSpec::zero()),
            ),
        })
    }
}

/// Stdout payload of the lavrentiev subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub z: [f64; 2],
    pub lhs: f64,
}
