//! Smooth-curve identities checked numerically: the area of a sampled
//! closed curve, the planar Stokes law for vector fields, and the
//! isoperimetric inequality.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{signed_area, Polygon, SampledCurve, Vec2};
use crate::oracle::{integrate_triangle, pairwise_sum, triangulate};
use crate::special::GaussLegendre;

type PointMap<T> = Arc<dyn Fn(Vec2) -> T + Send + Sync>;

/// A planar vector field together with its scalar curl
/// `d F_y / dx - d F_x / dy`.
///
/// Both callables may be invoked from several threads at once.
#[derive(Clone)]
pub struct VectorField2D {
    field: PointMap<Vec2>,
    curl: PointMap<f64>,
}

impl fmt::Debug for VectorField2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("VectorField2D { .. }")
    }
}

const CURL_PROBES: usize = 10;
const CURL_TOLERANCE: f64 = 1e-5;

impl VectorField2D {
    /// Rejects the pair unless `curl` matches central differences of `field`
    /// at ten pseudo-random points of `[-1, 1]^2`.
    pub fn new(
        field: impl Fn(Vec2) -> Vec2 + Send + Sync + 'static,
        curl: impl Fn(Vec2) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let vf = VectorField2D {
            field: Arc::new(field),
            curl: Arc::new(curl),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
        let h = 1e-5;
        for _ in 0..CURL_PROBES {
            let p = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let dfy_dx =
                (vf.eval(p + Vec2::new(h, 0.0)).y - vf.eval(p - Vec2::new(h, 0.0)).y) / (2.0 * h);
            let dfx_dy =
                (vf.eval(p + Vec2::new(0.0, h)).x - vf.eval(p - Vec2::new(0.0, h)).x) / (2.0 * h);
            let fd = dfy_dx - dfx_dy;
            let analytic = vf.curl_at(p);
            if (fd - analytic).abs() > CURL_TOLERANCE * (1.0 + analytic.abs()) {
                return Err(Error::InvalidArgument(format!(
                    "curl disagrees with finite differences at ({:.4}, {:.4}): {analytic} vs {fd}",
                    p.x, p.y
                )));
            }
        }
        Ok(vf)
    }

    pub fn eval(&self, p: Vec2) -> Vec2 {
        (self.field)(p)
    }

    pub fn curl_at(&self, p: Vec2) -> f64 {
        (self.curl)(p)
    }
}

/// A term `coef * x^a * y^b`.
pub type Monomial = (f64, i32, i32);

/// Polynomial field whose curl is derived symbolically.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialField {
    pub name: &'static str,
    pub fx: Vec<Monomial>,
    pub fy: Vec<Monomial>,
}

fn eval_poly(terms: &[Monomial], p: Vec2) -> f64 {
    terms
        .iter()
        .map(|&(c, a, b)| c * p.x.powi(a) * p.y.powi(b))
        .sum()
}

impl PolynomialField {
    pub fn degree(&self) -> i32 {
        self.fx
            .iter()
            .chain(&self.fy)
            .map(|&(_, a, b)| a + b)
            .max()
            .unwrap_or(0)
    }

    /// Terms of `d F_y / dx - d F_x / dy`.
    pub fn curl_terms(&self) -> Vec<Monomial> {
        let mut out = Vec::new();
        for &(c, a, b) in &self.fy {
            if a > 0 {
                out.push((c * a as f64, a - 1, b));
            }
        }
        for &(c, a, b) in &self.fx {
            if b > 0 {
                out.push((-c * b as f64, a, b - 1));
            }
        }
        out
    }

    pub fn to_field(&self) -> Result<VectorField2D> {
        let (fx, fy, curl) = (self.fx.clone(), self.fy.clone(), self.curl_terms());
        VectorField2D::new(
            move |p| Vec2::new(eval_poly(&fx, p), eval_poly(&fy, p)),
            move |p| eval_poly(&curl, p),
        )
    }
}

/// Eight polynomial fields of degree at most six.
pub fn polynomial_field_library() -> Vec<PolynomialField> {
    let f = |name, fx: &[Monomial], fy: &[Monomial]| PolynomialField {
        name,
        fx: fx.to_vec(),
        fy: fy.to_vec(),
    };
    vec![
        f("rotation", &[(-1.0, 0, 1)], &[(1.0, 1, 0)]),
        f("constant", &[(1.5, 0, 0)], &[(-0.7, 0, 0)]),
        f("shear_quadratic", &[], &[(1.0, 2, 0)]),
        f("cubic_mixed", &[(1.0, 1, 2)], &[(1.0, 3, 1)]),
        f("quartic_quintic", &[(1.0, 0, 4)], &[(1.0, 5, 0)]),
        f("quintic_mixed", &[(1.0, 2, 3)], &[(-1.0, 1, 4)]),
        f(
            "gradient_sextic",
            &[(1.0, 6, 0), (2.0, 1, 1)],
            &[(1.0, 0, 6), (1.0, 2, 0)],
        ),
        f(
            "sextic_dense",
            &[(-1.0, 0, 5), (1.0, 3, 0), (0.5, 2, 4)],
            &[(1.0, 4, 2), (1.0, 0, 1), (-0.25, 3, 3)],
        ),
    ]
}

/// Shoelace sum over the samples: the area enclosed by the polygonal
/// interpolant, signed by the traversal direction.
pub fn curve_area(curve: &SampledCurve) -> f64 {
    let p = curve.points();
    let n = p.len();
    0.5 * (0..n).map(|i| p[i].cross(p[(i + 1) % n])).sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StokesReport {
    /// Area integral of the curl.
    pub lhs: f64,
    /// Circulation around the boundary.
    pub rhs: f64,
    pub abs_gap: f64,
}

const STOKES_MAX_STEPS: usize = 20;
const EDGE_NODES: usize = 16;

/// Compares the area integral of the curl with the boundary circulation.
/// Both sides carry the sign of the polygon's orientation.
pub fn stokes_check(field: &VectorField2D, poly: &Polygon) -> Result<StokesReport> {
    let tri = triangulate(poly)?;
    let area_integral = |n: usize| {
        let gl = GaussLegendre::new(n);
        let parts = tri
            .triangles()
            .iter()
            .map(|t| integrate_triangle(t, &gl, |x| field.curl_at(x)))
            .collect();
        pairwise_sum(parts) * tri.orientation()
    };
    let mut prev = area_integral(2);
    let mut lhs = None;
    for step in 1..=STOKES_MAX_STEPS {
        let next = area_integral(2 + step);
        if (next - prev).abs() <= 1e-13 * (1.0 + next.abs()) {
            lhs = Some(next);
            break;
        }
        prev = next;
    }
    let lhs = lhs.ok_or_else(|| Error::QuadratureFailed {
        coarse: prev,
        fine: area_integral(2 + STOKES_MAX_STEPS + 1),
    })?;

    let gl = GaussLegendre::new(EDGE_NODES);
    let rhs = pairwise_sum(
        poly.edges()
            .map(|(a, b)| {
                let l = b - a;
                gl.on_interval(0.0, 1.0)
                    .map(|(t, w)| w * field.eval(a + l * t).dot(l))
                    .sum::<f64>()
            })
            .collect(),
    );
    Ok(StokesReport {
        lhs,
        rhs,
        abs_gap: (lhs - rhs).abs(),
    })
}

/// A closed planar boundary with an enclosed area and a length.
pub trait ClosedCurve {
    fn enclosed_area(&self) -> f64;
    fn boundary_length(&self) -> f64;
}

impl ClosedCurve for Polygon {
    fn enclosed_area(&self) -> f64 {
        signed_area(self).abs()
    }

    fn boundary_length(&self) -> f64 {
        self.perimeter()
    }
}

impl ClosedCurve for SampledCurve {
    fn enclosed_area(&self) -> f64 {
        curve_area(self).abs()
    }

    fn boundary_length(&self) -> f64 {
        self.length()
    }
}

/// `4 pi A / L^2`, which is at most one and equals one only for a circle.
pub fn isoperimetric_ratio<C: ClosedCurve + ?Sized>(c: &C) -> Result<f64> {
    let len = c.boundary_length();
    if len <= 0.0 || !len.is_finite() {
        return Err(Error::Degenerate("zero perimeter".into()));
    }
    let q = 4.0 * PI * c.enclosed_area() / (len * len);
    if q > 1.0 + 1e-12 {
        return Err(Error::Invariant(format!(
            "isoperimetric ratio {q} exceeds 1"
        )));
    }
    Ok(q)
}
