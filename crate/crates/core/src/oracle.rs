//! Brute-force ground truth for the closed-form paths: ear-clipping
//! triangulation with exact monomial integrals, and tensor Gauss-Legendre
//! quadrature of plane waves over triangles, tetrahedra, disks and balls.
//!
//! No closed-form transform or moment routine is used here; only the
//! value and wavevector types are shared.

use std::f64::consts::PI;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geom::{polyhedron_volume, signed_area, Polygon, Polyhedron, Vec2, Vec3};
use crate::special::{binomial_table, GaussLegendre};
use crate::xform::{FormFactorValue, Wavevector2, Wavevector3};

/// Largest `|beta| * diameter` accepted by the plane-wave quadratures.
pub const MAX_OSCILLATION: f64 = 200.0;
const TARGET: f64 = 1e-9;
const MAX_ESCALATIONS: usize = 6;

/// Counterclockwise triangles covering a polygon.
#[derive(Debug, Clone)]
pub struct Triangulation {
    triangles: Vec<[Vec2; 3]>,
    /// +1 when the source polygon was counterclockwise, -1 otherwise.
    orientation: f64,
}

impl Triangulation {
    pub fn triangles(&self) -> &[[Vec2; 3]] {
        &self.triangles
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    pub fn area(&self) -> f64 {
        pairwise_sum(self.triangles.iter().map(triangle_area).collect())
    }

    /// `integral x^a y^b dA` over the covered region.
    pub fn monomial_integral(&self, a: usize, b: usize) -> f64 {
        pairwise_sum(
            self.triangles
                .iter()
                .map(|t| monomial_integral_triangle(t, a, b))
                .collect(),
        )
    }
}

fn triangle_area(t: &[Vec2; 3]) -> f64 {
    0.5 * (t[1] - t[0]).cross(t[2] - t[0])
}

/// Sum with a balanced binary tree so the result does not depend on how
/// the work was split.
pub fn pairwise_sum<T: Copy + Add<Output = T> + Default>(mut v: Vec<T>) -> T {
    if v.is_empty() {
        return T::default();
    }
    while v.len() > 1 {
        let mut next = Vec::with_capacity(v.len().div_ceil(2));
        for pair in v.chunks(2) {
            next.push(if pair.len() == 2 {
                pair[0] + pair[1]
            } else {
                pair[0]
            });
        }
        v = next;
    }
    v[0]
}

/// Ear clipping with a strict convexity test. Vertices collinear with
/// their neighbours (area below 1e-12 of diameter squared) are dropped
/// without emitting a triangle.
pub fn triangulate(poly: &Polygon) -> Result<Triangulation> {
    let pts = poly.vertices();
    let orientation = if signed_area(poly) >= 0.0 { 1.0 } else { -1.0 };
    let mut ring: Vec<usize> = (0..pts.len()).collect();
    if orientation < 0.0 {
        ring.reverse();
    }
    let diam = poly.diameter();
    let tol = 1e-12 * diam * diam;
    let orient = |a: Vec2, b: Vec2, c: Vec2| (b - a).cross(c - a);
    let mut triangles = Vec::with_capacity(pts.len().saturating_sub(2));

    while ring.len() > 3 {
        let m = ring.len();
        let mut clipped = false;
        for k in 0..m {
            let (ip, ic, inx) = (ring[(k + m - 1) % m], ring[k], ring[(k + 1) % m]);
            let (p, c, nx) = (pts[ip], pts[ic], pts[inx]);
            let turn = orient(p, c, nx);
            if turn.abs() <= tol {
                ring.remove(k);
                clipped = true;
                break;
            }
            if turn < 0.0 {
                continue;
            }
            let blocked = ring.iter().any(|&iq| {
                if iq == ip || iq == ic || iq == inx {
                    return false;
                }
                let q = pts[iq];
                if q == p || q == c || q == nx {
                    return false;
                }
                orient(p, c, q) >= -tol && orient(c, nx, q) >= -tol && orient(nx, p, q) >= -tol
            });
            if !blocked {
                triangles.push([p, c, nx]);
                ring.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            return Err(Error::InvalidPolygon(
                crate::error::Defect::EdgesIntersect {
                    first: ring[0],
                    second: ring[ring.len() - 1],
                },
            ));
        }
    }
    let last = [pts[ring[0]], pts[ring[1]], pts[ring[2]]];
    if triangle_area(&last).abs() > tol {
        triangles.push(last);
    }
    Ok(Triangulation {
        triangles,
        orientation,
    })
}

/// Coefficients of `(c0 + c1 u + c2 w)^k` indexed `[i][j]` for `u^i w^j`.
fn affine_power(c0: f64, c1: f64, c2: f64, k: usize) -> Vec<Vec<f64>> {
    let mut poly = vec![vec![0.0; k + 1]; k + 1];
    poly[0][0] = 1.0;
    for step in 0..k {
        let mut next = vec![vec![0.0; k + 1]; k + 1];
        for i in 0..=step {
            for j in 0..=step - i {
                let v = poly[i][j];
                if v == 0.0 {
                    continue;
                }
                next[i][j] += v * c0;
                next[i + 1][j] += v * c1;
                next[i][j + 1] += v * c2;
            }
        }
        poly = next;
    }
    poly
}

/// Exact `integral_tri x^a y^b dA` (unsigned region integral).
///
/// Maps the triangle affinely onto the reference triangle, expands the
/// monomial and uses `integral u^p w^q = p! q! / (p + q + 2)!`.
pub fn monomial_integral_triangle(tri: &[Vec2; 3], a: usize, b: usize) -> f64 {
    let e1 = tri[1] - tri[0];
    let e2 = tri[2] - tri[0];
    let jac = e1.cross(e2).abs();
    let px = affine_power(tri[0].x, e1.x, e2.x, a);
    let py = affine_power(tri[0].y, e1.y, e2.y, b);
    let deg = a + b;
    let binom = binomial_table(deg);
    let mut sum = 0.0;
    for i1 in 0..=a {
        for j1 in 0..=a - i1 {
            let cx = px[i1][j1];
            if cx == 0.0 {
                continue;
            }
            for i2 in 0..=b {
                for j2 in 0..=b - i2 {
                    let cy = py[i2][j2];
                    if cy == 0.0 {
                        continue;
                    }
                    let (p, q) = (i1 + i2, j1 + j2);
                    // p! q! / (p+q+2)! = 1 / (C(p+q, p) (p+q+1) (p+q+2))
                    let r = 1.0 / (binom[p + q][p] * ((p + q + 1) * (p + q + 2)) as f64);
                    sum += cx * cy * r;
                }
            }
        }
    }
    sum * jac
}

/// `integral z^m dA` with `z = x + i y`, from exact real monomials.
pub fn complex_monomial_integral(t: &Triangulation, m: usize) -> Complex64 {
    let binom = binomial_table(m);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut ipow = Complex64::new(1.0, 0.0);
    for j in 0..=m {
        acc += ipow * (binom[m][j] * t.monomial_integral(m - j, j));
        ipow *= Complex64::new(0.0, 1.0);
    }
    acc
}

/// `integral h''(z) dA` for `h(z) = sum_k coeffs[k] z^k`, signed by the
/// polygon's orientation.
pub fn second_derivative_integral(poly: &Polygon, coeffs: &[Complex64]) -> Result<Complex64> {
    let t = triangulate(poly)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in coeffs.iter().enumerate().skip(2) {
        acc += c * (k * (k - 1)) as f64 * complex_monomial_integral(&t, k - 2);
    }
    Ok(acc * t.orientation())
}

/// Collapsed tensor Gauss rule with `n` points per axis over a triangle.
/// The result carries the sign of the triangle's orientation.
pub fn integrate_triangle<T>(tri: &[Vec2; 3], gl: &GaussLegendre, f: impl Fn(Vec2) -> T) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T> + Default,
{
    let e1 = tri[1] - tri[0];
    let e2 = tri[2] - tri[0];
    let det = e1.cross(e2);
    let mut acc = T::default();
    for (s, ws) in gl.on_interval(0.0, 1.0) {
        let mut inner = T::default();
        for (t, wt) in gl.on_interval(0.0, 1.0) {
            let x = tri[0] + e1 * s + e2 * ((1.0 - s) * t);
            inner = inner + f(x) * wt;
        }
        acc = acc + inner * (ws * (1.0 - s));
    }
    acc * det
}

fn escalate<F>(mut at_level: F) -> Result<Complex64>
where
    F: FnMut(usize) -> (Complex64, f64),
{
    let (mut coarse, _) = at_level(0);
    for level in 1..=MAX_ESCALATIONS {
        let (fine, scale) = at_level(level);
        if (fine - coarse).norm() <= TARGET * scale {
            return Ok(fine);
        }
        coarse = fine;
        if level == MAX_ESCALATIONS {
            let (last, _) = at_level(level + 1);
            return Err(Error::QuadratureFailed {
                coarse: coarse.norm(),
                fine: last.norm(),
            });
        }
    }
    unreachable!()
}

fn check_oscillation(beta: f64, diameter: f64) -> Result<()> {
    if beta * diameter > MAX_OSCILLATION {
        return Err(Error::InvalidArgument(format!(
            "|beta| * diameter = {:.1} exceeds the quadrature limit {MAX_OSCILLATION}",
            beta * diameter
        )));
    }
    Ok(())
}

/// Plane-wave integral over a polygon by triangulated Gauss quadrature.
/// Signed like the closed form: clockwise polygons give the negative.
pub fn quad_polygon_form_factor(poly: &Polygon, beta: Wavevector2) -> Result<FormFactorValue> {
    let b = beta.as_vec();
    check_oscillation(b.norm(), poly.diameter())?;
    let tri = triangulate(poly)?;
    let area = tri.area();
    let bases: Vec<usize> = tri
        .triangles()
        .iter()
        .map(|t| {
            let e = (0..3)
                .map(|i| (t[(i + 1) % 3] - t[i]).norm())
                .fold(0.0, f64::max);
            (b.norm() * e / 2.0).ceil() as usize + 8
        })
        .collect();
    let value = escalate(|level| {
        let parts = tri
            .triangles()
            .iter()
            .zip(&bases)
            .map(|(t, &base)| {
                let gl = GaussLegendre::new(base + 8 * level);
                integrate_triangle(t, &gl, |x| {
                    let (s, c) = b.dot(x).sin_cos();
                    Complex64::new(c, s)
                })
            })
            .collect();
        (pairwise_sum(parts), area)
    })?;
    Ok((value * tri.orientation()).into())
}

/// Plane-wave integral over a polyhedron: signed tetrahedra fanned from the
/// volume centroid over each face, collapsed tensor Gauss rules on each.
pub fn quad_polyhedron_form_factor(p: &Polyhedron, beta: Wavevector3) -> Result<FormFactorValue> {
    let b = beta.as_vec();
    check_oscillation(b.norm(), p.diameter())?;
    let apex = solid_centroid(p);
    let mut tets = Vec::new();
    for ring in p.faces() {
        for k in 1..ring.len() - 1 {
            let v = p.vertices();
            tets.push([apex, v[ring[0]], v[ring[k]], v[ring[k + 1]]]);
        }
    }
    let volume = polyhedron_volume(p);
    let bases: Vec<usize> = tets
        .iter()
        .map(|t| {
            let mut e: f64 = 0.0;
            for i in 0..4 {
                for j in i + 1..4 {
                    e = e.max((t[i] - t[j]).norm());
                }
            }
            (b.norm() * e / 2.0).ceil() as usize + 6
        })
        .collect();
    let value = escalate(|level| {
        let parts = tets
            .iter()
            .zip(&bases)
            .map(|(t, &base)| {
                let gl = GaussLegendre::new(base + 6 * level);
                integrate_tetrahedron(t, &gl, |x| {
                    let (s, c) = b.dot(x).sin_cos();
                    Complex64::new(c, s)
                })
            })
            .collect();
        (pairwise_sum(parts), volume)
    })?;
    Ok(value.into())
}

/// Signed collapsed tensor Gauss rule over a tetrahedron.
pub fn integrate_tetrahedron(
    t: &[Vec3; 4],
    gl: &GaussLegendre,
    f: impl Fn(Vec3) -> Complex64,
) -> Complex64 {
    let e1 = t[1] - t[0];
    let e2 = t[2] - t[0];
    let e3 = t[3] - t[0];
    let det = e1.dot(e2.cross(e3));
    let mut acc = Complex64::new(0.0, 0.0);
    for (s, ws) in gl.on_interval(0.0, 1.0) {
        for (u, wu) in gl.on_interval(0.0, 1.0) {
            let mut inner = Complex64::new(0.0, 0.0);
            for (r, wr) in gl.on_interval(0.0, 1.0) {
                let x = t[0] + e1 * s + e2 * ((1.0 - s) * u) + e3 * ((1.0 - s) * (1.0 - u) * r);
                inner += f(x) * wr;
            }
            acc += inner * (ws * wu * (1.0 - s) * (1.0 - s) * (1.0 - u));
        }
    }
    acc * det
}

fn solid_centroid(p: &Polyhedron) -> Vec3 {
    let o = p.vertex_mean();
    let mut moment = Vec3::ZERO;
    let mut vol = 0.0;
    for ring in p.faces() {
        let v = p.vertices();
        for k in 1..ring.len() - 1 {
            let (a, b, c) = (v[ring[0]] - o, v[ring[k]] - o, v[ring[k + 1]] - o);
            let dv = a.dot(b.cross(c)) / 6.0;
            vol += dv;
            moment = moment + (a + b + c) * (dv / 4.0);
        }
    }
    o + moment * (1.0 / vol)
}

/// Plane-wave integral over a disk of `radius` centered at the origin, in
/// polar coordinates.
pub fn quad_disk_form_factor(radius: f64, beta: Wavevector2) -> Result<FormFactorValue> {
    let b = beta.as_vec();
    let kr = b.norm() * radius;
    check_oscillation(b.norm(), 2.0 * radius)?;
    let area = PI * radius * radius;
    let value = escalate(|level| {
        let gr = GaussLegendre::new((kr / 2.0).ceil() as usize + 12 + 8 * level);
        let gt = GaussLegendre::new(kr.ceil() as usize + 16 + 8 * level);
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, wr) in gr.on_interval(0.0, radius) {
            let mut ring = Complex64::new(0.0, 0.0);
            for (t, wt) in gt.on_interval(0.0, 2.0 * PI) {
                let (s, c) = (r * (b.x * t.cos() + b.y * t.sin())).sin_cos();
                ring += Complex64::new(c, s) * wt;
            }
            acc += ring * (wr * r);
        }
        (acc, area)
    })?;
    Ok(value.into())
}

/// Plane-wave integral over a ball of `radius` centered at the origin, in
/// spherical coordinates.
pub fn quad_ball_form_factor(radius: f64, beta: Wavevector3) -> Result<FormFactorValue> {
    let b = beta.as_vec();
    let kr = b.norm() * radius;
    check_oscillation(b.norm(), 2.0 * radius)?;
    let volume = 4.0 / 3.0 * PI * radius.powi(3);
    let value = escalate(|level| {
        let gr = GaussLegendre::new((kr / 2.0).ceil() as usize + 10 + 6 * level);
        let gm = GaussLegendre::new((kr / 2.0).ceil() as usize + 10 + 6 * level);
        let gp = GaussLegendre::new(kr.ceil() as usize + 12 + 6 * level);
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, wr) in gr.on_interval(0.0, radius) {
            for (mu, wm) in gm.on_interval(-1.0, 1.0) {
                let st = (1.0 - mu * mu).sqrt();
                let mut shell = Complex64::new(0.0, 0.0);
                for (ph, wp) in gp.on_interval(0.0, 2.0 * PI) {
                    let x = Vec3::new(r * st * ph.cos(), r * st * ph.sin(), r * mu);
                    let (s, c) = b.dot(x).sin_cos();
                    shell += Complex64::new(c, s) * wp;
                }
                acc += shell * (wr * wm * r * r);
            }
        }
        (acc, volume)
    })?;
    Ok(value.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: &[[f64; 2]]) -> Polygon {
        Polygon::from_points(p).unwrap()
    }

    #[test]
    fn triangulation_examples() {
        let quad = poly(&[[0.0, 0.0], [2.0, 0.2], [1.8, 1.5], [-0.1, 1.0]]);
        let t = triangulate(&quad).unwrap();
        assert_eq!(t.triangles().len(), 2);
        assert!((t.area() - signed_area(&quad)).abs() < 1e-14);

        let sq = poly(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let t = triangulate(&sq).unwrap();
        assert!(t
            .triangles()
            .iter()
            .all(|tr| (triangle_area(tr) - 0.5).abs() < 1e-15));

        let ell = poly(&[
            [0.0, 0.0],
            [2.0, 0.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ]);
        let t = triangulate(&ell).unwrap();
        assert_eq!(t.triangles().len(), 4);
        assert!((t.area() - 3.0).abs() < 1e-14);
        assert!(t.triangles().iter().all(|tr| triangle_area(tr) > 0.0));
    }

    #[test]
    fn triangulation_of_clockwise_and_collinear() {
        let ell = poly(&[
            [0.0, 0.0],
            [0.0, 2.0],
            [1.0, 2.0],
            [1.0, 1.0],
            [2.0, 1.0],
            [2.0, 0.0],
        ]);
        let t = triangulate(&ell).unwrap();
        assert_eq!(t.orientation(), -1.0);
        assert!((t.area() - 3.0).abs() < 1e-14);
        let col = poly(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [2.0, 1.0], [0.0, 1.0]]);
        assert!((triangulate(&col).unwrap().area() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn reference_triangle_monomials() {
        let tri = [
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ];
        assert!((monomial_integral_triangle(&tri, 0, 0) - 0.5).abs() < 1e-16);
        assert!((monomial_integral_triangle(&tri, 1, 1) - 1.0 / 24.0).abs() < 1e-16);
        // x^3 y^2: 3! 2! / 7! = 12 / 5040
        assert!((monomial_integral_triangle(&tri, 3, 2) - 12.0 / 5040.0).abs() < 1e-16);
        let moved = [
            Vec2::new(3.0, 1.0),
            Vec2::new(5.0, 1.5),
            Vec2::new(3.5, 4.0),
        ];
        let area = triangle_area(&moved);
        let cx = (3.0 + 5.0 + 3.5) / 3.0;
        assert!((monomial_integral_triangle(&moved, 1, 0) - area * cx).abs() < 1e-13);
    }

    #[test]
    fn plane_wave_quadrature_examples() {
        let sq = poly(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        let v = quad_polygon_form_factor(&sq, Wavevector2::new(0.0, 0.0)).unwrap();
        assert!((v.re - 1.0).abs() < 1e-14 && v.im.abs() < 1e-14);
        let centered = Polygon::rectangle(0.5, 0.5).unwrap();
        let v = quad_polygon_form_factor(&centered, Wavevector2::new(3.0, 0.0)).unwrap();
        assert!((v.re - 2.0 * 1.5f64.sin() / 3.0).abs() < 1e-12);
        assert!((v.re - 0.66500).abs() < 1e-5);
        assert!(quad_polygon_form_factor(&sq, Wavevector2::new(300.0, 0.0)).is_err());
    }

    #[test]
    fn tetrahedron_and_ball_volumes() {
        let tet = Polyhedron::tetrahedron(
            Vec3::ZERO,
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        )
        .unwrap();
        let v = quad_polyhedron_form_factor(&tet, Wavevector3::default()).unwrap();
        assert!((v.re - 1.0 / 6.0).abs() < 1e-14);
        let ball = quad_ball_form_factor(2.0, Wavevector3::default()).unwrap();
        assert!((ball.re - 32.0 / 3.0 * PI).abs() < 1e-11);
        let disk = quad_disk_form_factor(1.5, Wavevector2::default()).unwrap();
        assert!((disk.re - PI * 2.25).abs() < 1e-12);
    }

    #[test]
    fn pairwise_is_exact_on_integers() {
        let v: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(v), 500_500.0);
        assert_eq!(pairwise_sum::<f64>(vec![]), 0.0);
    }
}
