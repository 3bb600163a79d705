//! End-to-end acceptance criteria. Each criterion prints one line with its
//! verdict, worst observed error and runtime; the process fails if any
//! criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use shapeft::geom::{
    edge_closure, face_area_normal_sum, parallelepiped_volume, signed_area, total_turning,
    triple_product, turning_number, Polygon, Polyhedron, Vec2, Vec3,
};
use shapeft::identities::{isoperimetric_ratio, polynomial_field_library, stokes_check};
use shapeft::moments::{davis_sum, moments_from_vertices, ComplexPolygon};
use shapeft::oracle::{
    quad_disk_form_factor, quad_polygon_form_factor, second_derivative_integral, triangulate,
};
use shapeft::random::{convex_polyhedron, star_polygon};
use shapeft::scatter::{
    dark_rings, porod_slope, radial_average, render_pattern, Aperture, DiffractionConfig,
    PorodShape,
};
use shapeft::special::{bessel_j1, bessel_j1_zero};
use shapeft::xform::{
    disk_form_factor, polygon_form_factor, rect_form_factor, series_consistency, Wavevector2,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn within(worst: f64, tol: f64, what: &str) -> Outcome {
    Outcome {
        passed: worst <= tol,
        detail: format!("{what} {worst:.3e} (limit {tol:.0e})"),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn polygon_oracle_equivalence() -> Outcome {
    let mut r = rng(1);
    let cases: Vec<(Polygon, Vec<Wavevector2>)> = (0..200)
        .map(|_| {
            let n = r.random_range(3..=12);
            let p = {
                let s = r.random_range(0.2..3.0);
                star_polygon(&mut r, n, s, 2.0)
            };
            let d = p.diameter();
            let betas = (0..20)
                .map(|_| {
                    Wavevector2::from_polar(
                        r.random_range(0.0..50.0) / d,
                        r.random_range(0.0..2.0 * PI),
                    )
                })
                .collect();
            (p, betas)
        })
        .collect();
    let worst = cases
        .par_iter()
        .map(|(p, betas)| {
            let area = signed_area(p).abs();
            betas
                .iter()
                .map(|&b| match quad_polygon_form_factor(p, b) {
                    Ok(q) => {
                        (polygon_form_factor(p, b).to_complex() - q.to_complex()).norm() / area
                    }
                    Err(_) => f64::INFINITY,
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    within(worst, 1e-8, "max |analytic - quadrature| / area")
}

fn rectangle_sinc_product() -> Outcome {
    let (a1, a2) = (0.8, 0.45);
    let rect = Polygon::rectangle(a1, a2).unwrap();
    let area = 4.0 * a1 * a2;
    let mut worst: f64 = 0.0;
    let mut at_zeros: f64 = 0.0;
    let mut edge_aligned = 0;
    for i in 0..64 {
        for j in 0..64 {
            // quarter-zero spacing puts rows and columns on beta_k = 0 and on
            // every sinc zero
            let (si, sj) = (i - 32, j - 32);
            let b = Wavevector2::new(PI / a1 * si as f64 / 4.0, PI / a2 * sj as f64 / 4.0);
            if si == 0 || sj == 0 {
                edge_aligned += 1;
            }
            let exact = rect_form_factor(a1, a2, b).re;
            let got = polygon_form_factor(&rect, b).to_complex();
            let analytic_zero = (si != 0 && si % 4 == 0) || (sj != 0 && sj % 4 == 0);
            if analytic_zero {
                // relative error is undefined where the product vanishes
                at_zeros = at_zeros.max(got.norm() / area);
            } else {
                worst = worst.max((got - exact).norm() / exact.abs());
            }
        }
    }
    let mut o = within(worst.max(at_zeros), 1e-12, "max relative error");
    o.detail.push_str(&format!(
        " ({at_zeros:.1e} of the area at sinc zeros), {edge_aligned} edge-aligned wavevectors"
    ));
    o
}

fn airy_pattern() -> Outcome {
    let radius = 1.3;
    let area = PI * radius * radius;
    let worst = (0..50)
        .into_par_iter()
        .map(|s| {
            let b = Wavevector2::from_polar(20.0 / radius * s as f64 / 49.0, 0.7);
            let analytic = disk_form_factor(radius, b).to_complex();
            match quad_disk_form_factor(radius, b) {
                Ok(q) => (analytic - q.to_complex()).norm() / area,
                Err(_) => f64::INFINITY,
            }
        })
        .reduce(|| 0.0, f64::max);
    let cfg = DiffractionConfig {
        wavelength: 0.5,
        distance: 1000.0,
        extent: 2000.0,
        resolution: 512,
        aperture: Aperture::Disk { radius },
    };
    let grid = render_pattern(&cfg).unwrap();
    let rings = dark_rings(&radial_average(&grid), |b| bessel_j1(b * radius), 1);
    let ring = rings.first().map(|b| b * radius).unwrap_or(f64::NAN);
    let ring_err = (ring - 3.8317).abs();
    Outcome {
        passed: worst <= 1e-6 && ring_err <= 1e-3,
        detail: format!(
            "quadrature gap / area {worst:.3e} (limit 1e-6), first dark ring beta R = {ring:.6} (j1,1 = {:.6})",
            bessel_j1_zero(1)
        ),
    }
}

fn moments_vs_triangulation() -> Outcome {
    let mut r = rng(4);
    let polys: Vec<Polygon> = (0..100)
        .map(|_| {
            let n = r.random_range(3..=12);
            // offsets comparable to the size keep |x| / diameter of order one,
            // where normalizing by diameter^(a+b) is meaningful
            let s = r.random_range(0.2..3.0);
            star_polygon(&mut r, n, s, s)
        })
        .collect();
    let worst = polys
        .par_iter()
        .map(|p| {
            let (Ok(table), Ok(tri)) = (moments_from_vertices(p, 8), triangulate(p)) else {
                return f64::INFINITY;
            };
            let (v, d) = (table.area(), p.diameter());
            table
                .iter()
                .map(|(a, b, m)| {
                    (m - tri.monomial_integral(a, b)).abs() / (v * d.powi((a + b) as i32))
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    within(worst, 1e-10, "max scale-normalized error")
}

fn davis_formula() -> Outcome {
    let mut r = rng(5);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = r.random_range(3..=12);
        let p = {
            let s = r.random_range(0.3..2.0);
            star_polygon(&mut r, n, s, 1.0)
        };
        let degree = r.random_range(2..=8);
        let coeffs: Vec<Complex64> = (0..=degree)
            .map(|_| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
            .collect();
        let got = davis_sum(&ComplexPolygon::from(&p), &coeffs);
        let want = second_derivative_integral(&p, &coeffs);
        worst = match (got, want) {
            (Ok(g), Ok(w)) => worst.max((g - w).norm() / w.norm()),
            _ => f64::INFINITY,
        };
    }
    within(worst, 1e-8, "max relative error")
}

fn porod_exponents() -> Outcome {
    let sphere = porod_slope(&PorodShape::Sphere(1.0), 30.0, 300.0, 60, 1);
    let disk = porod_slope(&PorodShape::Disk(1.0), 30.0, 300.0, 60, 1);
    let cube = porod_slope(
        &PorodShape::Polyhedron(Polyhedron::cuboid(Vec3::ZERO, Vec3::new(0.5, 0.5, 0.5))),
        30.0,
        300.0,
        60,
        128,
    );
    let slope = |f: &shapeft::Result<shapeft::scatter::PorodFit>| {
        f.as_ref().map(|f| f.slope).unwrap_or(f64::NAN)
    };
    let (s, d, c) = (slope(&sphere), slope(&disk), slope(&cube));
    Outcome {
        passed: (s + 4.0).abs() <= 0.1 && (d + 3.0).abs() <= 0.15 && (c + 4.0).abs() <= 0.3,
        detail: format!(
            "sphere {s:.4} (-4 +/- 0.1), disk {d:.4} (-3 +/- 0.15), cube {c:.4} (-4 +/- 0.3)"
        ),
    }
}

fn umlaufsatz() -> Outcome {
    let mut r = rng(7);
    let mut wrong = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n = r.random_range(3..=60);
        let p = star_polygon(&mut r, n, 1.0, 1.0);
        let q = p.reversed();
        if turning_number(&p) != 1 || turning_number(&q) != -1 {
            wrong += 1;
        }
        worst = worst.max((total_turning(&p) - 2.0 * PI).abs());
        worst = worst.max((total_turning(&q) + 2.0 * PI).abs());
    }
    Outcome {
        passed: wrong == 0 && worst < 1e-9,
        detail: format!(
            "{wrong} wrong turning numbers, max |sum angles - 2 pi n| {worst:.3e} (limit 1e-9)"
        ),
    }
}

fn boundary_of_boundary() -> Outcome {
    let mut r = rng(8);
    let mut worst2: f64 = 0.0;
    for _ in 0..1000 {
        let n = r.random_range(3..=40);
        let p = star_polygon(&mut r, n, 1.0, 1.0);
        worst2 = worst2.max(edge_closure(&p).norm() / p.diameter());
    }
    let mut shapes = vec![
        Polyhedron::cuboid(Vec3::ZERO, Vec3::new(0.5, 0.5, 0.5)),
        Polyhedron::tetrahedron(
            Vec3::ZERO,
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        )
        .unwrap(),
    ];
    shapes.extend((0..20).map(|_| convex_polyhedron(&mut r)));
    let worst3 = shapes
        .iter()
        .map(|s| face_area_normal_sum(s).norm() / s.surface_area())
        .fold(0.0, f64::max);
    Outcome {
        passed: worst2 <= 1e-15 && worst3 <= 1e-12,
        detail: format!(
            "edge sum / diameter {worst2:.3e} (limit 1e-15), face normal sum / area {worst3:.3e} (limit 1e-12)"
        ),
    }
}

fn stokes() -> Outcome {
    let mut r = rng(9);
    let fields: Vec<_> = polynomial_field_library()
        .iter()
        .map(|f| f.to_field().unwrap())
        .collect();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = r.random_range(3..=12);
        let p = star_polygon(&mut r, n, 1.0, 0.5);
        for f in &fields {
            worst = match stokes_check(f, &p) {
                Ok(s) => worst.max(s.abs_gap / (1.0 + s.lhs.abs())),
                Err(_) => f64::INFINITY,
            };
        }
    }
    within(worst, 1e-8, "max |lhs - rhs| / (1 + |lhs|)")
}

fn isoperimetric() -> Outcome {
    let mut r = rng(10);
    let mut max_q: f64 = 0.0;
    for _ in 0..10_000 {
        let n = r.random_range(3..=40);
        let p = star_polygon(&mut r, n, 1.0, 1.0);
        max_q = max_q.max(isoperimetric_ratio(&p).unwrap_or(f64::INFINITY));
    }
    let mut monotone = true;
    let mut worst: f64 = 0.0;
    let mut prev = 0.0;
    for n in 3..=64 {
        let q = isoperimetric_ratio(&Polygon::regular(n, 1.0).unwrap()).unwrap();
        let t = PI / n as f64;
        worst = worst.max((q - t / t.tan()).abs());
        monotone &= q > prev;
        prev = q;
    }
    Outcome {
        passed: max_q <= 1.0 && monotone && worst <= 1e-12,
        detail: format!(
            "max Q {max_q:.6}, regular N-gons monotone {monotone}, max |Q - (pi/N)/tan(pi/N)| {worst:.3e} (limit 1e-12)"
        ),
    }
}

fn volume_determinants() -> Outcome {
    let mut r = rng(11);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let mut v = || {
            Vec3::new(
                r.random_range(-1.0..1.0),
                r.random_range(-1.0..1.0),
                r.random_range(-1.0..1.0),
            )
        };
        let (a, b, c) = (v(), v(), v());
        let t = triple_product(a, b, c).abs();
        worst = worst.max((parallelepiped_volume(a, b, c) - t).abs() / t);
    }
    within(worst, 1e-12, "max relative error")
}

fn series_consistency_order6() -> Outcome {
    let mut r = rng(12);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let n = r.random_range(3..=12);
        let p = {
            let s = r.random_range(0.3..3.0);
            star_polygon(&mut r, n, s, 2.0)
        };
        let dir = Vec2::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
        worst = match series_consistency(&p, dir, 6) {
            Ok(rep) => worst.max(rep.discrepancies[0].1),
            Err(_) => f64::INFINITY,
        };
    }
    within(worst, 1e-8, "max discrepancy / area at t * diameter = 1e-2")
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "polygon transform vs quadrature",
            Duration::from_secs(60),
            polygon_oracle_equivalence,
        ),
        (
            "rectangle sinc product",
            Duration::from_secs(1),
            rectangle_sinc_product,
        ),
        (
            "Airy pattern and first dark ring",
            Duration::from_secs(30),
            airy_pattern,
        ),
        (
            "moments vs triangulation",
            Duration::from_secs(30),
            moments_vs_triangulation,
        ),
        ("Davis vertex sum", Duration::from_secs(30), davis_formula),
        ("Porod exponents", Duration::from_secs(120), porod_exponents),
        ("turning number", Duration::from_secs(5), umlaufsatz),
        (
            "boundary of a boundary",
            Duration::from_secs(5),
            boundary_of_boundary,
        ),
        ("planar Stokes law", Duration::from_secs(30), stokes),
        (
            "isoperimetric inequality",
            Duration::from_secs(10),
            isoperimetric,
        ),
        (
            "volume determinants",
            Duration::from_secs(1),
            volume_determinants,
        ),
        (
            "series consistency",
            Duration::from_secs(5),
            series_consistency_order6,
        ),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let passed = outcome.passed && in_time;
        if !passed {
            failures += 1;
        }
        println!(
            "[{}] {:>2}. {name}: {}; {:.2}s of {}s{}",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { " (over budget)" }
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
