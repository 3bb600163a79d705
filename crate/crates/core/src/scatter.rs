//! Far-field diffraction patterns on a detector grid, radial profiles, and
//! power-law fits of orientation-averaged scattering intensity.

use std::f64::consts::PI;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Polygon, Polyhedron, Vec2, Vec3};
use crate::oracle::pairwise_sum;
use crate::xform::{
    disk_form_factor, rect_form_factor, PolygonKernel, PolyhedronKernel, Wavevector2,
};

/// Shape of the transmitting region.
#[derive(Debug, Clone, PartialEq)]
pub enum Aperture {
    Polygon(Polygon),
    /// Disk centered at the origin.
    Disk {
        radius: f64,
    },
    /// `[-a1, a1] x [-a2, a2]`.
    Rect {
        a1: f64,
        a2: f64,
    },
}

impl Aperture {
    pub fn diameter(&self) -> f64 {
        match self {
            Aperture::Polygon(p) => p.diameter(),
            Aperture::Disk { radius } => 2.0 * radius,
            Aperture::Rect { a1, a2 } => 2.0 * a1.hypot(*a2),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            Aperture::Polygon(_) => true,
            Aperture::Disk { radius } => radius.is_finite() && *radius > 0.0,
            Aperture::Rect { a1, a2 } => a1.is_finite() && a2.is_finite() && *a1 > 0.0 && *a2 > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "aperture dimensions must be positive: {self:?}"
            )))
        }
    }
}

enum ApertureKernel {
    Polygon(PolygonKernel),
    Disk(f64),
    Rect(f64, f64),
}

impl ApertureKernel {
    fn new(a: &Aperture) -> Self {
        match a {
            Aperture::Polygon(p) => ApertureKernel::Polygon(PolygonKernel::new(p)),
            Aperture::Disk { radius } => ApertureKernel::Disk(*radius),
            Aperture::Rect { a1, a2 } => ApertureKernel::Rect(*a1, *a2),
        }
    }

    fn intensity(&self, beta: Vec2) -> f64 {
        match self {
            ApertureKernel::Polygon(k) => k.eval(beta).norm_sqr(),
            ApertureKernel::Disk(r) => disk_form_factor(*r, beta.into()).intensity(),
            ApertureKernel::Rect(a1, a2) => rect_form_factor(*a1, *a2, beta.into()).intensity(),
        }
    }
}

/// Far-field imaging geometry. The observation plane is sampled on a square
/// grid of `resolution` pixels per axis covering `[-extent, extent]^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffractionConfig {
    pub wavelength: f64,
    pub distance: f64,
    pub extent: f64,
    pub resolution: usize,
    pub aperture: Aperture,
}

/// The screen should sit this many aperture diameters away or further.
pub const FAR_FIELD_RATIO: f64 = 100.0;

impl DiffractionConfig {
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// Factor mapping observation-plane position to wavevector.
    pub fn beta_scale(&self) -> f64 {
        self.wavenumber() / self.distance
    }

    pub fn validate(&self) -> Result<Vec<String>> {
        for (name, v) in [
            ("wavelength", self.wavelength),
            ("distance", self.distance),
            ("extent", self.extent),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.resolution < 2 {
            return Err(Error::InvalidArgument(
                "resolution must be at least 2".into(),
            ));
        }
        self.aperture.validate()?;
        let mut warnings = Vec::new();
        let d = self.aperture.diameter();
        if self.distance < FAR_FIELD_RATIO * d {
            warnings.push(format!(
                "screen distance {} is below {FAR_FIELD_RATIO} aperture diameters ({d}); far-field approximation is doubtful",
                self.distance
            ));
        }
        Ok(warnings)
    }
}

/// Intensities on the observation plane, row-major with row `j` at the
/// `j`-th `y` coordinate and column `i` at the `i`-th `x` coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityGrid {
    pub resolution: usize,
    pub extent: f64,
    pub beta_scale: f64,
    pub values: Vec<f64>,
    pub warnings: Vec<String>,
}

impl IntensityGrid {
    pub fn pixel_pitch(&self) -> f64 {
        2.0 * self.extent / self.resolution as f64
    }

    /// Observation-plane coordinate of pixel center `i` along either axis.
    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + (i as f64 + 0.5) * self.pixel_pitch()
    }

    pub fn beta_at(&self, i: usize, j: usize) -> Vec2 {
        Vec2::new(self.coord(i), self.coord(j)) * self.beta_scale
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.resolution + i]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }

    /// `sum I dA` over the detector, in observation-plane area units.
    pub fn captured_energy(&self) -> f64 {
        let p = self.pixel_pitch();
        pairwise_sum(self.values.clone()) * p * p
    }

    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "# resolution={}", self.resolution)?;
        writeln!(w, "# extent={:e}", self.extent)?;
        writeln!(w, "# beta_scale={:e}", self.beta_scale)?;
        writeln!(w, "# x_min={:e}", self.coord(0))?;
        writeln!(w, "# x_max={:e}", self.coord(self.resolution - 1))?;
        for msg in &self.warnings {
            writeln!(w, "# warning={msg}")?;
        }
        for row in self.values.chunks(self.resolution) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut resolution = None;
        let mut extent = None;
        let mut beta_scale = None;
        let mut warnings = Vec::new();
        let mut values = Vec::new();
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad number {s:?}: {e}")))
        };
        for line in text.lines() {
            if let Some(meta) = line.strip_prefix('#') {
                let Some((key, val)) = meta.trim().split_once('=') else {
                    continue;
                };
                match key {
                    "resolution" => {
                        resolution = Some(
                            val.parse::<usize>()
                                .map_err(|e| Error::Parse(e.to_string()))?,
                        )
                    }
                    "extent" => extent = Some(num(val)?),
                    "beta_scale" => beta_scale = Some(num(val)?),
                    "warning" => warnings.push(val.to_string()),
                    _ => {}
                }
            } else if !line.trim().is_empty() {
                for cell in line.split(',') {
                    values.push(num(cell)?);
                }
            }
        }
        let missing = |k: &str| Error::Parse(format!("missing '# {k}=' header"));
        let resolution = resolution.ok_or_else(|| missing("resolution"))?;
        if values.len() != resolution * resolution {
            return Err(Error::Parse(format!(
                "expected {} values, found {}",
                resolution * resolution,
                values.len()
            )));
        }
        Ok(IntensityGrid {
            resolution,
            extent: extent.ok_or_else(|| missing("extent"))?,
            beta_scale: beta_scale.ok_or_else(|| missing("beta_scale"))?,
            values,
            warnings,
        })
    }

    /// 16-bit pixel levels under the given tone map.
    pub fn tone_mapped(&self, map: ToneMap) -> Vec<u16> {
        let max = self.max();
        if max <= 0.0 {
            return vec![0; self.values.len()];
        }
        match map {
            ToneMap::Linear => self
                .values
                .iter()
                .map(|&v| (65535.0 * v / max).round().clamp(0.0, 65535.0) as u16)
                .collect(),
            ToneMap::Log => {
                let floor = max * 1e-12;
                let lo = self
                    .values
                    .iter()
                    .map(|&v| v.max(floor))
                    .fold(max, f64::min)
                    .log10();
                let hi = max.log10();
                if hi <= lo {
                    return vec![65535; self.values.len()];
                }
                self.values
                    .iter()
                    .map(|&v| {
                        let l = v.max(floor).log10();
                        (65535.0 * (l - lo) / (hi - lo)).round().clamp(0.0, 65535.0) as u16
                    })
                    .collect()
            }
        }
    }

    /// Binary PGM, maxval 65535, big-endian samples.
    pub fn write_pgm(&self, w: &mut impl Write, map: ToneMap) -> io::Result<()> {
        write!(w, "P5\n{} {}\n65535\n", self.resolution, self.resolution)?;
        let mut bytes = Vec::with_capacity(2 * self.values.len());
        for px in self.tone_mapped(map) {
            bytes.extend_from_slice(&px.to_be_bytes());
        }
        w.write_all(&bytes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToneMap {
    Linear,
    Log,
}

/// Decoded 16-bit binary PGM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgmImage {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub pixels: Vec<u16>,
}

pub fn read_pgm(bytes: &[u8]) -> Result<PgmImage> {
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos < bytes.len() && bytes[pos] == b'#' {
            while pos < bytes.len() && bytes[pos] != b'\n' {
                pos += 1;
            }
            continue;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse("truncated PGM header".into()));
        }
        fields.push(String::from_utf8_lossy(&bytes[start..pos]).into_owned());
    }
    pos += 1;
    if fields[0] != "P5" {
        return Err(Error::Parse(format!(
            "expected P5 magic, found {}",
            fields[0]
        )));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| Error::Parse(format!("PGM header {s:?}: {e}")))
    };
    let (width, height, maxval) = (parse(&fields[1])?, parse(&fields[2])?, parse(&fields[3])?);
    if maxval != 65535 {
        return Err(Error::Parse(format!(
            "expected maxval 65535, found {maxval}"
        )));
    }
    let body = &bytes[pos.min(bytes.len())..];
    if body.len() != 2 * width * height {
        return Err(Error::Parse(format!(
            "expected {} data bytes, found {}",
            2 * width * height,
            body.len()
        )));
    }
    Ok(PgmImage {
        width,
        height,
        maxval: 65535,
        pixels: body
            .chunks(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]))
            .collect(),
    })
}

/// Evaluates `|phi(beta)|^2` at every pixel with `beta = (k / L) x`.
/// Bit-identical for identical configurations.
pub fn render_pattern(cfg: &DiffractionConfig) -> Result<IntensityGrid> {
    let warnings = cfg.validate()?;
    let kernel = ApertureKernel::new(&cfg.aperture);
    let n = cfg.resolution;
    let mut grid = IntensityGrid {
        resolution: n,
        extent: cfg.extent,
        beta_scale: cfg.beta_scale(),
        values: vec![0.0; n * n],
        warnings,
    };
    let coords: Vec<f64> = (0..n).map(|i| grid.coord(i) * grid.beta_scale).collect();
    grid.values
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(j, row)| {
            for (i, v) in row.iter_mut().enumerate() {
                *v = kernel.intensity(Vec2::new(coords[i], coords[j]));
            }
        });
    Ok(grid)
}

/// Mean intensity in one annulus of constant `|beta|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialBin {
    /// Shell-center `|beta|`.
    pub k: f64,
    pub mean: f64,
    pub count: usize,
}

/// Bins pixels by `|beta|` into `floor(sqrt(2) * resolution / 2)` shells
/// reaching the grid corners. Empty shells are omitted.
pub fn radial_average(grid: &IntensityGrid) -> Vec<RadialBin> {
    let n = grid.resolution;
    let shells = ((2f64.sqrt() * n as f64 / 2.0).floor() as usize).max(1);
    let reach = 2f64.sqrt() * grid.extent * grid.beta_scale;
    let width = reach / shells as f64;
    let mut sums = vec![0.0; shells];
    let mut counts = vec![0usize; shells];
    for j in 0..n {
        for i in 0..n {
            let b = grid.beta_at(i, j).norm();
            let s = ((b / width) as usize).min(shells - 1);
            sums[s] += grid.get(i, j);
            counts[s] += 1;
        }
    }
    (0..shells)
        .filter(|&s| counts[s] > 0)
        .map(|s| RadialBin {
            k: (s as f64 + 0.5) * width,
            mean: sums[s] / counts[s] as f64,
            count: counts[s],
        })
        .collect()
}

/// Radii of the first `count` dark rings.
///
/// Each local minimum of the radial profile brackets a ring; the bracket is
/// then bisected on the sign of the real amplitude along the ray.
pub fn dark_rings(profile: &[RadialBin], amplitude: impl Fn(f64) -> f64, count: usize) -> Vec<f64> {
    let mut rings = Vec::new();
    for i in 1..profile.len().saturating_sub(1) {
        if rings.len() == count {
            break;
        }
        let (prev, here, next) = (profile[i - 1].mean, profile[i].mean, profile[i + 1].mean);
        if !(here < prev && here <= next) {
            continue;
        }
        let (mut lo, mut hi) = (profile[i - 1].k, profile[i + 1].k);
        let flo = amplitude(lo);
        if flo * amplitude(hi) > 0.0 {
            continue;
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if amplitude(mid) * flo > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rings.push(0.5 * (lo + hi));
    }
    rings
}

/// Ball of `radius` centered at the origin:
/// `4 pi (sin kR - kR cos kR) / k^3`.
pub fn sphere_form_factor(radius: f64, k: f64) -> f64 {
    let x = k * radius;
    let r3 = radius.powi(3);
    if x.abs() < 1e-2 {
        let x2 = x * x;
        // 3 (sin x - x cos x) / x^3 = 1 - x^2/10 + x^4/280 - x^6/15120
        return 4.0 / 3.0 * PI * r3 * (1.0 - x2 / 10.0 + x2 * x2 / 280.0 - x2 * x2 * x2 / 15120.0);
    }
    4.0 * PI * r3 * (x.sin() - x * x.cos()) / (x * x * x)
}

/// Shape whose large-`k` intensity decay is measured.
#[derive(Debug, Clone, PartialEq)]
pub enum PorodShape {
    Polygon(Polygon),
    Polyhedron(Polyhedron),
    Disk(f64),
    Sphere(f64),
}

impl PorodShape {
    pub fn dimension(&self) -> usize {
        match self {
            PorodShape::Polygon(_) | PorodShape::Disk(_) => 2,
            PorodShape::Polyhedron(_) | PorodShape::Sphere(_) => 3,
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            PorodShape::Polygon(p) => p.diameter(),
            PorodShape::Polyhedron(p) => p.diameter(),
            PorodShape::Disk(r) | PorodShape::Sphere(r) => 2.0 * r,
        }
    }

    pub fn is_isotropic(&self) -> bool {
        matches!(self, PorodShape::Disk(_) | PorodShape::Sphere(_))
    }
}

enum ShapeKernel {
    Polygon(PolygonKernel),
    Polyhedron(PolyhedronKernel),
    Disk(f64),
    Sphere(f64),
}

impl ShapeKernel {
    fn new(shape: &PorodShape) -> Result<Self> {
        Ok(match shape {
            PorodShape::Polygon(p) => ShapeKernel::Polygon(PolygonKernel::new(p)),
            PorodShape::Polyhedron(p) => ShapeKernel::Polyhedron(PolyhedronKernel::new(p)?),
            PorodShape::Disk(r) => ShapeKernel::Disk(*r),
            PorodShape::Sphere(r) => ShapeKernel::Sphere(*r),
        })
    }

    /// `|phi(k d)|^2` for a unit direction `d`; 2D shapes use `d.x, d.y`.
    fn intensity(&self, k: f64, d: Vec3) -> f64 {
        match self {
            ShapeKernel::Polygon(p) => p.eval(Vec2::new(d.x, d.y) * k).norm_sqr(),
            ShapeKernel::Polyhedron(p) => p.eval(d * k).norm_sqr(),
            ShapeKernel::Disk(r) => disk_form_factor(*r, Wavevector2::new(k, 0.0)).intensity(),
            ShapeKernel::Sphere(r) => sphere_form_factor(*r, k).powi(2),
        }
    }
}

/// Least-squares fit of `ln I` against `ln k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PorodFit {
    pub k_range: (f64, f64),
    pub slope: f64,
    /// Intercept of `ln I` at `ln k = 0`.
    pub intercept: f64,
    pub slope_stderr: f64,
    pub samples: usize,
    /// Largest number of directions averaged at any single `k`.
    pub max_directions: usize,
    pub expected_slope: f64,
}

/// Smallest accepted `k_min * diameter`.
pub const POROD_MIN_KD: f64 = 20.0;
const WINDOW_SUBSAMPLES: usize = 8;
/// Directions scale as `(k d)^2` in 3D so that the facet-specular spikes
/// are resolved rather than aliased.
const SPHERE_DIRECTION_DENSITY: f64 = 0.2;
const CIRCLE_DIRECTION_DENSITY: f64 = 2.0;

/// Fibonacci lattice of `n` nearly uniform unit vectors.
pub fn fibonacci_sphere(n: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let t = golden * i as f64;
            Vec3::new(r * t.cos(), r * t.sin(), z)
        })
        .collect()
}

/// `n` uniform directions on the half circle; intensity is even in `beta`.
pub fn half_circle_directions(n: usize) -> Vec<Vec3> {
    (0..n)
        .map(|i| {
            let t = PI * (i as f64 + 0.5) / n as f64;
            Vec3::new(t.cos(), t.sin(), 0.0)
        })
        .collect()
}

fn check_porod_args(shape: &PorodShape, k_min: f64, k_max: f64, samples: usize) -> Result<()> {
    if !(k_min.is_finite() && k_max.is_finite() && k_min > 0.0 && k_min < k_max) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < k_min < k_max, got [{k_min}, {k_max}]"
        )));
    }
    if samples < 50 {
        return Err(Error::InvalidArgument(format!(
            "need at least 50 samples, got {samples}"
        )));
    }
    let kd = k_min * shape.diameter();
    if kd < POROD_MIN_KD {
        return Err(Error::Regime(format!(
            "k_min * diameter = {kd:.3} is below {POROD_MIN_KD}"
        )));
    }
    Ok(())
}

fn log_spaced(k_min: f64, k_max: f64, samples: usize) -> Vec<f64> {
    let (a, b) = (k_min.ln(), k_max.ln());
    (0..samples)
        .map(|s| (a + (b - a) * s as f64 / (samples - 1) as f64).exp())
        .collect()
}

/// Arithmetic mean of `f` over a window of one oscillation period
/// `2 pi / diameter` centered at `k`.
fn window_mean(k: f64, diameter: f64, f: impl Fn(f64) -> f64) -> f64 {
    let w = 2.0 * PI / diameter;
    let m = WINDOW_SUBSAMPLES as f64;
    (0..WINDOW_SUBSAMPLES)
        .map(|j| f(k + w * ((j as f64 + 0.5) / m - 0.5)))
        .sum::<f64>()
        / m
}

fn fit_log_log(ks: &[f64], is: &[f64]) -> Result<(f64, f64, f64)> {
    if let Some(i) = is.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(Error::Invariant(format!(
            "non-positive averaged intensity {} at k = {}",
            is[i], ks[i]
        )));
    }
    let n = ks.len() as f64;
    let x: Vec<f64> = ks.iter().map(|k| k.ln()).collect();
    let y: Vec<f64> = is.iter().map(|v| v.ln()).collect();
    let xm = x.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - xm).powi(2)).sum();
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - xm) * (b - ym)).sum();
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let ssr: f64 = x
        .iter()
        .zip(&y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok((slope, intercept, stderr))
}

/// Fits the decay exponent of the orientation-averaged intensity over
/// `samples` log-spaced `k` in `[k_min, k_max]`. Expected slope is
/// `-(D + 1)`.
///
/// At each `k` the intensity is averaged over at least `directions`
/// directions (more at large `k` for faceted shapes) and over one
/// oscillation period in `k`.
pub fn porod_slope(
    shape: &PorodShape,
    k_min: f64,
    k_max: f64,
    samples: usize,
    directions: usize,
) -> Result<PorodFit> {
    check_porod_args(shape, k_min, k_max, samples)?;
    if !shape.is_isotropic() && directions < 16 {
        return Err(Error::InvalidArgument(format!(
            "anisotropic shapes need at least 16 directions, got {directions}"
        )));
    }
    let kernel = ShapeKernel::new(shape)?;
    let diam = shape.diameter();
    let dim = shape.dimension();
    let ks = log_spaced(k_min, k_max, samples);
    let mut max_dirs = 1;
    let mut means = Vec::with_capacity(samples);
    for &k in &ks {
        let dirs = if shape.is_isotropic() {
            vec![Vec3::new(1.0, 0.0, 0.0)]
        } else if dim == 3 {
            let kd = (k + PI / diam) * diam;
            fibonacci_sphere(directions.max((SPHERE_DIRECTION_DENSITY * kd * kd).ceil() as usize))
        } else {
            let kd = (k + PI / diam) * diam;
            half_circle_directions(directions.max((CIRCLE_DIRECTION_DENSITY * kd).ceil() as usize))
        };
        max_dirs = max_dirs.max(dirs.len());
        let per_dir: Vec<f64> = dirs
            .par_iter()
            .map(|&d| window_mean(k, diam, |kk| kernel.intensity(kk, d)))
            .collect();
        means.push(pairwise_sum(per_dir) / dirs.len() as f64);
    }
    let (slope, intercept, slope_stderr) = fit_log_log(&ks, &means)?;
    Ok(PorodFit {
        k_range: (k_min, k_max),
        slope,
        intercept,
        slope_stderr,
        samples,
        max_directions: max_dirs,
        expected_slope: -(dim as f64 + 1.0),
    })
}

/// Same fit along a single fixed direction, without orientation averaging.
/// For faceted shapes along a facet normal this measures the specular
/// `k^-2` decay rather than the averaged law.
pub fn porod_slope_fixed_direction(
    shape: &PorodShape,
    direction: Vec3,
    k_min: f64,
    k_max: f64,
    samples: usize,
) -> Result<PorodFit> {
    check_porod_args(shape, k_min, k_max, samples)?;
    let norm = direction.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::InvalidArgument(
            "direction must be a nonzero vector".into(),
        ));
    }
    let d = direction * (1.0 / norm);
    let kernel = ShapeKernel::new(shape)?;
    let diam = shape.diameter();
    let ks = log_spaced(k_min, k_max, samples);
    let means: Vec<f64> = ks
        .iter()
        .map(|&k| window_mean(k, diam, |kk| kernel.intensity(kk, d)))
        .collect();
    let (slope, intercept, slope_stderr) = fit_log_log(&ks, &means)?;
    Ok(PorodFit {
        k_range: (k_min, k_max),
        slope,
        intercept,
        slope_stderr,
        samples,
        max_directions: 1,
        expected_slope: -(shape.dimension() as f64 + 1.0),
    })
}
