//! Closed-form Fourier transforms of shapes.
//!
//! `phi(beta) = integral_V exp(i beta . x) d^D x`. Gauss's law turns the
//! area integral over a polygon into a sum over its edges:
//!
//! ```text
//! phi = -(i / |beta|^2) sum_n (beta x l_n) exp(i beta . c_n) sinc(beta . l_n / 2)
//! ```
//!
//! with `l_n` the directed edges, `c_n` their midpoints and
//! `beta x l = beta_1 l_2 - beta_2 l_1 = -(beta_perp . l)` for
//! `beta_perp = (beta_2, -beta_1)`. With this sign a counterclockwise
//! polygon has positive transform at `beta = 0`. The
//! midpoint/sinc form removes the `0/0` at `beta . l_n = 0`. A polyhedron
//! reduces to a sum over its faces, each of which is a polygon transform in
//! the face plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{polyhedron_volume, signed_area, Polygon, Polyhedron, Vec2, Vec3};
use crate::moments::{signed_moments, MomentTable};
use crate::special::{airy_amplitude, binomial_table, sinc};

/// Below this value of `|beta| * diameter` the transform is summed from
/// the moment series instead of the edge sum.
pub const SERIES_SWITCH: f64 = 1e-3;
/// Total order of the small-`beta` moment series for polygons.
pub const SERIES_ORDER: usize = 8;

/// A 2D wavevector (inverse length).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Wavevector2 {
    pub x: f64,
    pub y: f64,
}

impl Wavevector2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Wavevector2 { x, y }
    }

    pub fn from_polar(magnitude: f64, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Wavevector2::new(magnitude * c, magnitude * s)
    }

    pub fn magnitude(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn direction(self) -> Option<Vec2> {
        let m = self.magnitude();
        (m > 0.0).then(|| Vec2::new(self.x / m, self.y / m))
    }

    /// `beta . epsilon = (beta_2, -beta_1)`.
    pub fn perp(self) -> Vec2 {
        Vec2::new(self.y, -self.x)
    }

    pub fn as_vec(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

impl From<Vec2> for Wavevector2 {
    fn from(v: Vec2) -> Self {
        Wavevector2::new(v.x, v.y)
    }
}

/// A 3D wavevector (inverse length).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Wavevector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Wavevector3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Wavevector3 { x, y, z }
    }

    pub fn magnitude(self) -> f64 {
        self.as_vec().norm()
    }

    pub fn direction(self) -> Option<Vec3> {
        let m = self.magnitude();
        (m > 0.0).then(|| self.as_vec() * (1.0 / m))
    }

    pub fn as_vec(self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }
}

impl From<Vec3> for Wavevector3 {
    fn from(v: Vec3) -> Self {
        Wavevector3::new(v.x, v.y, v.z)
    }
}

/// Complex form factor, serialized as `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FormFactorValue {
    pub re: f64,
    pub im: f64,
}

impl FormFactorValue {
    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `|phi|^2`, the scattered intensity.
    pub fn intensity(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl From<Complex64> for FormFactorValue {
    fn from(c: Complex64) -> Self {
        FormFactorValue { re: c.re, im: c.im }
    }
}

#[inline]
fn cis(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

/// Precomputed polygon data for repeated transform evaluation.
///
/// Coordinates are stored relative to the bounding-box center, and the
/// result is shifted back with a phase factor.
#[derive(Debug, Clone)]
pub struct PolygonKernel {
    center: Vec2,
    diameter: f64,
    area: f64,
    /// (edge vector, edge midpoint) in local coordinates.
    edges: Vec<(Vec2, Vec2)>,
    /// `series[n][p] = i^n/n! * C(n,p) * M_local(x^p y^(n-p))`.
    series: Vec<Vec<Complex64>>,
}

impl PolygonKernel {
    pub fn new(poly: &Polygon) -> Self {
        let center = poly.bbox_center();
        let local: Vec<Vec2> = poly.vertices().iter().map(|&v| v - center).collect();
        let n = local.len();
        let edges = (0..n)
            .map(|i| {
                let a = local[i];
                let b = local[(i + 1) % n];
                (b - a, (a + b) * 0.5)
            })
            .collect();
        // Closed loops always satisfy the moment relations; a failure here
        // would be an internal bug.
        let moments =
            signed_moments(&local, SERIES_ORDER).expect("moment relations are consistent");
        PolygonKernel {
            center,
            diameter: poly.diameter(),
            area: signed_area(poly),
            edges,
            series: series_coefficients(&moments, SERIES_ORDER),
        }
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn eval(&self, beta: Vec2) -> Complex64 {
        if beta.x == 0.0 && beta.y == 0.0 {
            return Complex64::new(self.area, 0.0);
        }
        if beta.norm() * self.diameter < SERIES_SWITCH {
            self.eval_moment_series(beta)
        } else {
            self.eval_edge_sum(beta)
        }
    }

    /// Edge-sum branch alone, valid for any nonzero `beta`.
    pub fn eval_edge_sum(&self, beta: Vec2) -> Complex64 {
        let b2 = beta.dot(beta);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(l, c) in &self.edges {
            let weight = beta.cross(l) * sinc(0.5 * beta.dot(l));
            acc += cis(beta.dot(c)) * weight;
        }
        // -(i / b2) * acc
        cis(beta.dot(self.center)) * Complex64::new(acc.im, -acc.re) / b2
    }

    /// Moment-series branch alone, accurate for small `|beta| * diameter`.
    pub fn eval_moment_series(&self, beta: Vec2) -> Complex64 {
        cis(beta.dot(self.center)) * eval_series(&self.series, beta)
    }
}

fn series_coefficients(m: &MomentTable, order: usize) -> Vec<Vec<Complex64>> {
    let binom = binomial_table(order);
    let mut i_pow = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    (0..=order)
        .map(|n| {
            if n > 0 {
                i_pow *= Complex64::new(0.0, 1.0);
                fact *= n as f64;
            }
            (0..=n)
                .map(|p| i_pow * (binom[n][p] / fact * m.get(p, n - p).expect("dense table")))
                .collect()
        })
        .collect()
}

/// `sum_n sum_p coeffs[n][p] beta_1^p beta_2^(n-p)`.
fn eval_series(coeffs: &[Vec<Complex64>], beta: Vec2) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for row in coeffs {
        let n = row.len() - 1;
        // Horner in the ratio is unstable when beta_2 = 0; use powers.
        for (p, &c) in row.iter().enumerate() {
            total += c * (beta.x.powi(p as i32) * beta.y.powi((n - p) as i32));
        }
    }
    total
}

/// Unnormalized characteristic function of a polygon at `beta`.
///
/// The sign follows the winding: at `beta = 0` the value is the signed
/// area. Uses the edge sum above and the degree-8 moment series when
/// `|beta| * diameter < 1e-3`.
pub fn polygon_form_factor(poly: &Polygon, beta: Wavevector2) -> FormFactorValue {
    PolygonKernel::new(poly).eval(beta.as_vec()).into()
}

/// Disk of `radius` centered at the origin: `pi R^2 * 2 J1(beta R) / (beta R)`.
/// For a disk centered at `x0` multiply by `exp(i beta . x0)`.
pub fn disk_form_factor(radius: f64, beta: Wavevector2) -> FormFactorValue {
    let x = beta.magnitude() * radius;
    FormFactorValue {
        re: std::f64::consts::PI * radius * radius * airy_amplitude(x),
        im: 0.0,
    }
}

/// Rectangle `[-a1, a1] x [-a2, a2]`: `4 a1 a2 sinc(beta_1 a1) sinc(beta_2 a2)`.
pub fn rect_form_factor(a1: f64, a2: f64, beta: Wavevector2) -> FormFactorValue {
    FormFactorValue {
        re: 4.0 * a1 * a2 * sinc(beta.x * a1) * sinc(beta.y * a2),
        im: 0.0,
    }
}

#[derive(Debug, Clone)]
struct FaceKernel {
    normal: Vec3,
    /// First face vertex, relative to the polyhedron reference point.
    origin: Vec3,
    u: Vec3,
    w: Vec3,
    planar: PolygonKernel,
}

/// Precomputed polyhedron data for repeated transform evaluation.
#[derive(Debug, Clone)]
pub struct PolyhedronKernel {
    reference: Vec3,
    diameter: f64,
    volume: f64,
    /// `integral (x - reference) dV`
    first: Vec3,
    /// `integral (x - reference)_i (x - reference)_j dV`
    second: [[f64; 3]; 3],
    faces: Vec<FaceKernel>,
}

impl PolyhedronKernel {
    pub fn new(p: &Polyhedron) -> Result<Self> {
        let reference = p.vertex_mean();
        let mut faces = Vec::with_capacity(p.faces().len());
        let mut first = Vec3::ZERO;
        let mut second = [[0.0; 3]; 3];
        for (fi, ring) in p.faces().iter().enumerate() {
            let info = p.face_info(fi);
            let pts: Vec<Vec3> = ring.iter().map(|&i| p.vertices()[i] - reference).collect();
            let origin = pts[0];
            let edge = pts[1] - pts[0];
            if edge.norm() == 0.0 || info.area == 0.0 {
                return Err(Error::Degenerate(format!("face {fi} has no usable frame")));
            }
            let u = edge.normalized();
            let w = info.normal.cross(u);
            let planar_pts: Vec<Vec2> = pts
                .iter()
                .map(|&q| Vec2::new((q - origin).dot(u), (q - origin).dot(w)))
                .collect();
            let planar = Polygon::new_allow_nonsimple(planar_pts)
                .map_err(|e| Error::Degenerate(format!("face {fi}: {e}")))?;
            faces.push(FaceKernel {
                normal: info.normal,
                origin,
                u,
                w,
                planar: PolygonKernel::new(&planar),
            });
            // signed cones from the reference point over a fan of the face
            for k in 1..pts.len() - 1 {
                let (a, b, c) = (pts[0], pts[k], pts[k + 1]);
                let vol = a.dot(b.cross(c)) / 6.0;
                let s = a + b + c;
                first = first + s * (vol / 4.0);
                let comp = |v: Vec3, i: usize| [v.x, v.y, v.z][i];
                for i in 0..3 {
                    for j in 0..3 {
                        let sum_pp = comp(a, i) * comp(a, j)
                            + comp(b, i) * comp(b, j)
                            + comp(c, i) * comp(c, j);
                        second[i][j] += vol / 20.0 * (sum_pp + comp(s, i) * comp(s, j));
                    }
                }
            }
        }
        Ok(PolyhedronKernel {
            reference,
            diameter: p.diameter(),
            volume: polyhedron_volume(p),
            first,
            second,
            faces,
        })
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Volume centroid.
    pub fn centroid(&self) -> Vec3 {
        self.reference + self.first * (1.0 / self.volume)
    }

    pub fn eval(&self, beta: Vec3) -> Complex64 {
        let b2 = beta.dot(beta);
        if b2 == 0.0 {
            return Complex64::new(self.volume, 0.0);
        }
        let local = if b2.sqrt() * self.diameter < SERIES_SWITCH {
            let b = [beta.x, beta.y, beta.z];
            let mut quad = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    quad += b[i] * self.second[i][j] * b[j];
                }
            }
            Complex64::new(self.volume - 0.5 * quad, beta.dot(self.first))
        } else {
            let mut acc = Complex64::new(0.0, 0.0);
            for f in &self.faces {
                let bn = beta.dot(f.normal);
                if bn == 0.0 {
                    continue;
                }
                let in_plane = Vec2::new(beta.dot(f.u), beta.dot(f.w));
                acc += cis(beta.dot(f.origin)) * f.planar.eval(in_plane) * bn;
            }
            // acc / (i b2)
            Complex64::new(acc.im, -acc.re) / b2
        };
        cis(beta.dot(self.reference)) * local
    }
}

/// Unnormalized characteristic function of a closed polyhedron, reduced to
/// a sum of planar polygon transforms over its faces.
pub fn polyhedron_form_factor(p: &Polyhedron, beta: Wavevector3) -> Result<FormFactorValue> {
    Ok(PolyhedronKernel::new(p)?.eval(beta.as_vec()).into())
}

/// Result of [`series_consistency`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesReport {
    pub order: usize,
    /// `(t, |phi(t beta_hat) - series| / |area|)` for each probe magnitude.
    pub discrepancies: Vec<(f64, f64)>,
    pub worst: f64,
}

/// Probe magnitudes used by [`series_consistency`], in units of 1/diameter.
pub const SERIES_PROBES: [f64; 3] = [1e-2, 2e-2, 5e-2];

/// Compares the closed-form transform along `beta_hat` with the moment
/// series (moments about the origin) truncated at `order`.
pub fn series_consistency(poly: &Polygon, beta_hat: Vec2, order: usize) -> Result<SeriesReport> {
    if order > SERIES_ORDER {
        return Err(Error::InvalidArgument(format!(
            "order {order} exceeds {SERIES_ORDER}"
        )));
    }
    let norm = beta_hat.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::InvalidArgument(
            "direction must be a nonzero vector".into(),
        ));
    }
    let dir = beta_hat * (1.0 / norm);
    let kernel = PolygonKernel::new(poly);
    let moments = signed_moments(poly.vertices(), order)?;
    let coeffs = series_coefficients(&moments, order);
    let area = kernel.area().abs();
    let diameter = kernel.diameter();
    let discrepancies: Vec<(f64, f64)> = SERIES_PROBES
        .iter()
        .map(|&s| {
            let t = s / diameter;
            let beta = dir * t;
            let exact = kernel.eval(beta);
            let approx = eval_series(&coeffs, beta);
            (t, (exact - approx).norm() / area)
        })
        .collect();
    let worst = discrepancies.iter().map(|d| d.1).fold(0.0, f64::max);
    Ok(SeriesReport {
        order,
        discrepancies,
        worst,
    })
}
