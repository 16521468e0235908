//! Disk-image rendering: concentric circles and radial rays mapped through a
//! spec, emitted as SVG polylines or CSV point tables.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::univalence::ScanTarget;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub n_circles: usize,
    pub n_rays: usize,
    pub samples_per_curve: usize,
    pub r_max: f64,
    pub canvas_px: u32,
    pub stroke_width: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            n_circles: 24,
            n_rays: 24,
            samples_per_curve: 512,
            r_max: 0.99,
            canvas_px: 800,
            stroke_width: 1.0,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.samples_per_curve < 64 {
            return Err(Error::param("samples_per_curve", "must be at least 64"));
        }
        if !(self.r_max > 0.0 && self.r_max < 1.0) {
            return Err(Error::param("r_max", "must lie in (0, 1)"));
        }
        if self.n_circles + self.n_rays == 0 {
            return Err(Error::param("n_circles/n_rays", "nothing to draw"));
        }
        if self.canvas_px == 0 {
            return Err(Error::param("canvas_px", "must be positive"));
        }
        Ok(())
    }
}

/// One sampled image curve; closed curves get their first point repeated when
/// drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub id: usize,
    pub closed: bool,
    #[serde(with = "crate::cpx::vec")]
    pub points: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min_re: f64,
    pub max_re: f64,
    pub min_im: f64,
    pub max_im: f64,
}

impl BoundingBox {
    pub fn width(&self) -> f64 {
        self.max_re - self.min_re
    }

    pub fn height(&self) -> f64 {
        self.max_im - self.min_im
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RenderImage {
    pub polylines: Vec<Polyline>,
    pub bbox: BoundingBox,
}

/// Sample the images of circles r_j = r_max j/n_circles and rays
/// theta_i = 2 pi i/n_rays.
pub fn render_image<T: ScanTarget + ?Sized>(target: &T, rs: &RenderSpec) -> Result<RenderImage> {
    rs.validate()?;
    let s = rs.samples_per_curve;

    enum Curve {
        Circle(f64),
        Ray(f64),
    }
    let mut curves = Vec::new();
    for j in 1..=rs.n_circles {
        curves.push(Curve::Circle(rs.r_max * j as f64 / rs.n_circles as f64));
    }
    for i in 0..rs.n_rays {
        curves.push(Curve::Ray(2.0 * PI * i as f64 / rs.n_rays as f64));
    }

    let polylines: Vec<Polyline> = curves
        .par_iter()
        .enumerate()
        .map(|(id, curve)| {
            let points = match *curve {
                Curve::Circle(r) => (0..s)
                    .map(|k| target.value(Complex64::from_polar(r, 2.0 * PI * k as f64 / s as f64)))
                    .collect::<Result<Vec<_>>>()?,
                Curve::Ray(theta) => (0..s)
                    .map(|k| {
                        let r = rs.r_max * k as f64 / (s - 1) as f64;
                        target.value(Complex64::from_polar(r, theta))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            Ok(Polyline {
                id,
                closed: matches!(curve, Curve::Circle(_)),
                points,
            })
        })
        .collect::<Result<_>>()?;

    let mut bbox = BoundingBox {
        min_re: f64::INFINITY,
        max_re: f64::NEG_INFINITY,
        min_im: f64::INFINITY,
        max_im: f64::NEG_INFINITY,
    };
    for line in &polylines {
        for p in &line.points {
            bbox.min_re = bbox.min_re.min(p.re);
            bbox.max_re = bbox.max_re.max(p.re);
            bbox.min_im = bbox.min_im.min(p.im);
            bbox.max_im = bbox.max_im.max(p.im);
        }
    }
    Ok(RenderImage { polylines, bbox })
}

/// SVG 1.1 document; the y axis is flipped at write time so counterclockwise
/// stays visually counterclockwise.
pub fn svg_string(image: &RenderImage, rs: &RenderSpec) -> Result<String> {
    if image.polylines.is_empty() {
        return Err(Error::param("polylines", "nothing to draw"));
    }
    let bb = &image.bbox;
    let pad = 0.05 * bb.width().max(bb.height()).max(1e-9);
    let x0 = bb.min_re - pad;
    let y0 = -bb.max_im - pad;
    let w = bb.width() + 2.0 * pad;
    let h = bb.height() + 2.0 * pad;
    let stroke = rs.stroke_width * w.max(h) / f64::from(rs.canvas_px);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{px}" height="{px}" viewBox="{x0} {y0} {w} {h}">"#,
        px = rs.canvas_px,
    );
    for line in &image.polylines {
        let mut points = String::new();
        let mut push = |p: &Complex64| {
            let _ = write!(points, "{},{} ", p.re, -p.im);
        };
        line.points.iter().for_each(&mut push);
        if line.closed {
            if let Some(first) = line.points.first() {
                push(first);
            }
        }
        let _ = writeln!(
            out,
            r##"<polyline fill="none" stroke="#1f4e79" stroke-width="{stroke}" points="{}"/>"##,
            points.trim_end(),
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// CSV point table with header curve_id,sample_index,re,im.
pub fn csv_string(image: &RenderImage) -> Result<String> {
    if image.polylines.is_empty() {
        return Err(Error::param("polylines", "nothing to write"));
    }
    let mut out = String::from("curve_id,sample_index,re,im\n");
    for line in &image.polylines {
        for (k, p) in line.points.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{}", line.id, k, p.re, p.im);
        }
    }
    Ok(out)
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn emit_svg(image: &RenderImage, rs: &RenderSpec, path: &Path) -> Result<()> {
    write_file(path, &svg_string(image, rs)?)
}

pub fn emit_csv(image: &RenderImage, path: &Path) -> Result<()> {
    write_file(path, &csv_string(image)?)
}
