//! Condensed invariant suites runnable outside the test harness.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geom::{
    edge_closure, face_area_normal_sum, parallelepiped_volume, signed_area, total_turning,
    triple_product, turning_number, Polyhedron, Vec2, Vec3,
};
use crate::identities::{isoperimetric_ratio, polynomial_field_library, stokes_check};
use crate::moments::{davis_sum, moments_from_vertices, ComplexPolygon};
use crate::oracle::{
    quad_disk_form_factor, quad_polygon_form_factor, second_derivative_integral, triangulate,
};
use crate::random::{convex_polyhedron, star_polygon};
use crate::xform::{
    disk_form_factor, polygon_form_factor, rect_form_factor, series_consistency, Wavevector2,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Geom,
    Xform,
    Moments,
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Geom, Suite::Xform, Suite::Moments, Suite::Identities];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geom => "geom",
            Suite::Xform => "xform",
            Suite::Moments => "moments",
            Suite::Identities => "identities",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed error, in the units of the check's tolerance.
    pub worst: f64,
    pub tolerance: f64,
}

/// Runs one suite with a fixed seed.
pub fn run_suite(suite: Suite) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00c0_ffee ^ suite as u64);
    let mut out = Vec::new();
    let mut push = |name, worst: f64, tolerance: f64| {
        out.push(Check {
            suite: suite.name(),
            name,
            passed: worst <= tolerance,
            worst,
            tolerance,
        })
    };
    match suite {
        Suite::Geom => {
            let mut closure: f64 = 0.0;
            let mut turning: f64 = 0.0;
            for _ in 0..200 {
                let n = rng.random_range(3..=20);
                let p = star_polygon(&mut rng, n, 1.0, 1.0);
                closure = closure.max(edge_closure(&p).norm() / p.diameter());
                let ok = turning_number(&p) == 1 && turning_number(&p.reversed()) == -1;
                let gap = (total_turning(&p) - 2.0 * PI).abs();
                turning = turning.max(if ok { gap } else { f64::INFINITY });
            }
            push("edge_closure", closure, 1e-15);
            push("turning_number", turning, 1e-9);

            let mut normals: f64 = 0.0;
            let mut shapes = vec![Polyhedron::cuboid(Vec3::ZERO, Vec3::new(0.5, 0.5, 0.5))];
            shapes.extend((0..20).map(|_| convex_polyhedron(&mut rng)));
            for s in &shapes {
                normals = normals.max(face_area_normal_sum(s).norm() / s.surface_area());
            }
            push("face_area_normal_sum", normals, 1e-12);

            let mut gram: f64 = 0.0;
            for _ in 0..200 {
                let mut v = || {
                    Vec3::new(
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    )
                };
                let (a, b, c) = (v(), v(), v());
                let scale = a.norm() * b.norm() * c.norm();
                gram = gram.max(
                    (parallelepiped_volume(a, b, c) - triple_product(a, b, c).abs()).abs() / scale,
                );
            }
            push("gram_vs_triple_product", gram, 1e-12);
        }
        Suite::Xform => {
            let mut worst: f64 = 0.0;
            for _ in 0..20 {
                let n = rng.random_range(3..=12);
                let p = star_polygon(&mut rng, n, 1.0, 1.0);
                let area = signed_area(&p);
                for _ in 0..5 {
                    let b = Wavevector2::from_polar(
                        rng.random_range(0.0..50.0) / p.diameter(),
                        rng.random_range(0.0..2.0 * PI),
                    );
                    let quad = match quad_polygon_form_factor(&p, b) {
                        Ok(q) => q.to_complex(),
                        Err(_) => {
                            worst = f64::INFINITY;
                            continue;
                        }
                    };
                    worst =
                        worst.max((polygon_form_factor(&p, b).to_complex() - quad).norm() / area);
                }
            }
            push("polygon_vs_quadrature", worst, 1e-8);

            let (a1, a2) = (0.7, 1.3);
            let rect = crate::geom::Polygon::rectangle(a1, a2).expect("positive half-widths");
            let mut worst: f64 = 0.0;
            for i in -8i32..8 {
                for j in -8i32..8 {
                    // half-zero spacing hits beta_k = 0 and every sinc zero
                    let b = Wavevector2::new(PI / a1 * i as f64 / 2.0, PI / a2 * j as f64 / 2.0);
                    let got = polygon_form_factor(&rect, b).to_complex();
                    let on_zero = (i != 0 && i % 2 == 0) || (j != 0 && j % 2 == 0);
                    worst = worst.max(if on_zero {
                        got.norm() / (4.0 * a1 * a2)
                    } else {
                        let exact = rect_form_factor(a1, a2, b).re;
                        (got - exact).norm() / exact.abs()
                    });
                }
            }
            push("rectangle_sinc_product", worst, 1e-12);

            let mut worst: f64 = 0.0;
            for s in 0..10 {
                let b = Wavevector2::from_polar(20.0 * s as f64 / 9.0, 0.3);
                let a = disk_form_factor(1.0, b).re;
                let q = quad_disk_form_factor(1.0, b)
                    .map(|v| v.re)
                    .unwrap_or(f64::INFINITY);
                worst = worst.max((a - q).abs() / PI);
            }
            push("disk_vs_quadrature", worst, 1e-6);

            let mut worst: f64 = 0.0;
            for _ in 0..10 {
                let n = rng.random_range(3..=12);
                let p = star_polygon(&mut rng, n, 1.0, 0.0);
                let dir = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                let r = series_consistency(&p, dir, 6)
                    .map(|r| r.discrepancies[0].1)
                    .unwrap_or(f64::INFINITY);
                worst = worst.max(r);
            }
            push("series_order6", worst, 1e-8);
        }
        Suite::Moments => {
            let mut worst: f64 = 0.0;
            for _ in 0..20 {
                let n = rng.random_range(3..=12);
                let p = star_polygon(&mut rng, n, 1.0, 1.0);
                let (Ok(table), Ok(tri)) = (moments_from_vertices(&p, 8), triangulate(&p)) else {
                    worst = f64::INFINITY;
                    continue;
                };
                let (v, d) = (table.area(), p.diameter());
                for (a, b, m) in table.iter() {
                    let gap =
                        (m - tri.monomial_integral(a, b)).abs() / (v * d.powi((a + b) as i32));
                    worst = worst.max(gap);
                }
            }
            push("moments_vs_triangulation", worst, 1e-10);

            let mut worst: f64 = 0.0;
            for _ in 0..10 {
                let n = rng.random_range(3..=12);
                let p = star_polygon(&mut rng, n, 1.0, 1.0);
                let coeffs: Vec<Complex64> = (0..=8)
                    .map(|_| {
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    })
                    .collect();
                let got = davis_sum(&ComplexPolygon::from(&p), &coeffs);
                let want = second_derivative_integral(&p, &coeffs);
                worst = match (got, want) {
                    (Ok(g), Ok(w)) => worst.max((g - w).norm() / w.norm().max(1e-300)),
                    _ => f64::INFINITY,
                };
            }
            push("davis_vs_surface_integral", worst, 1e-8);
        }
        Suite::Identities => {
            let fields: Vec<_> = polynomial_field_library()
                .iter()
                .filter_map(|f| f.to_field().ok())
                .collect();
            let mut worst: f64 = if fields.len() == 8 {
                0.0
            } else {
                f64::INFINITY
            };
            for _ in 0..5 {
                let n = rng.random_range(3..=12);
                let p = star_polygon(&mut rng, n, 1.0, 0.5);
                for f in &fields {
                    worst = match stokes_check(f, &p) {
                        Ok(r) => worst.max(r.abs_gap / (1.0 + r.lhs.abs())),
                        Err(_) => f64::INFINITY,
                    };
                }
            }
            push("stokes", worst, 1e-8);

            let mut worst = f64::NEG_INFINITY;
            for _ in 0..500 {
                let n = rng.random_range(3..=30);
                let p = star_polygon(&mut rng, n, 1.0, 1.0);
                worst = worst.max(isoperimetric_ratio(&p).unwrap_or(f64::INFINITY) - 1.0);
            }
            push("isoperimetric_bound", worst.max(0.0), 1e-12);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes() {
        for s in Suite::ALL {
            for c in run_suite(s) {
                assert!(c.passed, "{c:?}");
            }
        }
    }
}
