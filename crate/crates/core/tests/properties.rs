use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shapeft::geom::{
    edge_closure, face_area_normal_sum, parallelepiped_volume, signed_area, triple_product,
    turning_number, Polygon, Polyhedron, Vec2, Vec3,
};
use shapeft::identities::isoperimetric_ratio;
use shapeft::moments::{complex_moments, davis_sum, moments_from_vertices, ComplexPolygon};
use shapeft::oracle::{quad_polygon_form_factor, quad_polyhedron_form_factor, triangulate};
use shapeft::random::{convex_polyhedron, star_polygon, tetrahedron};
use shapeft::scatter::{
    porod_slope, render_pattern, sphere_form_factor, Aperture, DiffractionConfig, PorodShape,
};
use shapeft::xform::{
    polygon_form_factor, polyhedron_form_factor, rect_form_factor, PolygonKernel, Wavevector2,
    Wavevector3,
};

fn polygon(seed: u64, n: usize) -> Polygon {
    star_polygon(&mut ChaCha8Rng::seed_from_u64(seed), n, 1.0, 1.0)
}

fn arb_polygon() -> impl Strategy<Value = Polygon> {
    (any::<u64>(), 3usize..=12).prop_map(|(s, n)| polygon(s, n))
}

fn arb_vec2(r: f64) -> impl Strategy<Value = Vec2> {
    (-r..r, -r..r).prop_map(|(x, y)| Vec2::new(x, y))
}

fn arb_vec3(r: f64) -> impl Strategy<Value = Vec3> {
    (-r..r, -r..r, -r..r).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

proptest! {
    #[test]
    fn area_is_rigid_motion_invariant_and_scales_quadratically(
        p in arb_polygon(), d in arb_vec2(5.0), angle in 0.0..2.0 * PI, s in 0.1f64..10.0
    ) {
        let a = signed_area(&p);
        prop_assert!((signed_area(&p.translated(d)) - a).abs() <= 1e-12 * a.abs() * (1.0 + d.norm()));
        prop_assert!((signed_area(&p.rotated(angle)) - a).abs() <= 1e-12 * a.abs());
        prop_assert!((signed_area(&p.scaled(s)) - s * s * a).abs() <= 1e-12 * s * s * a.abs());
    }

    #[test]
    fn reversal_negates_area_and_turning(p in arb_polygon()) {
        let q = p.reversed();
        prop_assert!((signed_area(&q) + signed_area(&p)).abs() <= 1e-15 * signed_area(&p).abs());
        prop_assert_eq!(turning_number(&p), 1);
        prop_assert_eq!(turning_number(&q), -1);
        prop_assert!(edge_closure(&p).norm() <= 1e-15 * p.diameter());
    }

    #[test]
    fn gram_volume_matches_triple_product(a in arb_vec3(1.0), b in arb_vec3(1.0), c in arb_vec3(1.0)) {
        let t = triple_product(a, b, c).abs();
        prop_assert!((parallelepiped_volume(a, b, c) - t).abs() <= 1e-12 * a.norm() * b.norm() * c.norm());
    }

    #[test]
    fn closed_surfaces_have_zero_normal_sum(seed in any::<u64>()) {
        let p = convex_polyhedron(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(face_area_normal_sum(&p).norm() <= 1e-12 * p.surface_area());
    }

    #[test]
    fn transform_is_conjugate_symmetric(p in arb_polygon(), b in arb_vec2(40.0)) {
        let plus = polygon_form_factor(&p, b.into()).to_complex();
        let minus = polygon_form_factor(&p, (-b).into()).to_complex();
        prop_assert!((minus - plus.conj()).norm() <= 1e-15 * signed_area(&p).abs());
    }

    #[test]
    fn translation_multiplies_by_a_phase(p in arb_polygon(), b in arb_vec2(20.0), d in arb_vec2(3.0)) {
        let base = polygon_form_factor(&p, b.into()).to_complex();
        let moved = polygon_form_factor(&p.translated(d), b.into()).to_complex();
        let phase = Complex64::from_polar(1.0, b.dot(d));
        prop_assert!((moved - phase * base).norm() <= 1e-12 * signed_area(&p).abs());
    }

    #[test]
    fn transform_is_bounded_by_the_area(p in arb_polygon(), b in arb_vec2(60.0)) {
        let a = signed_area(&p).abs();
        prop_assert!(polygon_form_factor(&p, b.into()).abs() <= a * (1.0 + 1e-12));
    }

    #[test]
    fn branches_agree_across_the_series_switch(p in arb_polygon(), t in 5e-4f64..5e-3, angle in 0.0..2.0 * PI) {
        let k = PolygonKernel::new(&p);
        let b = Vec2::new(angle.cos(), angle.sin()) * (t / k.diameter());
        let gap = (k.eval_edge_sum(b) - k.eval_moment_series(b)).norm();
        prop_assert!(gap <= 1e-9 * k.area().abs(), "gap {gap:e}");
    }

    #[test]
    fn rectangle_matches_sinc_product(a1 in 0.1f64..3.0, a2 in 0.1f64..3.0, b in arb_vec2(30.0), axis in 0usize..3) {
        let b = match axis {
            0 => Wavevector2::new(b.x, 0.0),
            1 => Wavevector2::new(0.0, b.y),
            _ => Wavevector2::new(b.x, b.y),
        };
        let exact = rect_form_factor(a1, a2, b).re;
        let got = polygon_form_factor(&Polygon::rectangle(a1, a2).unwrap(), b).to_complex();
        prop_assert!((got - exact).norm() <= 1e-12 * exact.abs().max(1e-4 * a1 * a2));
    }

    #[test]
    fn triangulation_area_matches_shoelace(p in arb_polygon()) {
        let t = triangulate(&p).unwrap();
        prop_assert!(t.triangles().len() <= p.len() - 2);
        prop_assert!((t.area() - signed_area(&p)).abs() <= 1e-12 * signed_area(&p));
    }

    #[test]
    fn moments_obey_the_binomial_shift(p in arb_polygon(), d in arb_vec2(1.0)) {
        let m = moments_from_vertices(&p, 6).unwrap();
        let moved = moments_from_vertices(&p.translated(d), 6).unwrap();
        let tri = triangulate(&p.translated(d)).unwrap();
        let scale = m.area() * (p.diameter() + d.norm()).powi(6).max(1.0);
        for (a, b, v) in moved.iter() {
            let mut shifted = 0.0;
            for i in 0..=a {
                for j in 0..=b {
                    shifted += binom(a, i) * binom(b, j) * d.x.powi((a - i) as i32) * d.y.powi((b - j) as i32)
                        * m.get(i, j).unwrap();
                }
            }
            prop_assert!((v - shifted).abs() <= 1e-10 * scale, "({a},{b})");
            prop_assert!((tri.monomial_integral(a, b) - shifted).abs() <= 1e-10 * scale, "oracle ({a},{b})");
        }
    }

    #[test]
    fn davis_sum_relabels_and_reverses(p in arb_polygon(), k in 0usize..12, c in prop::collection::vec(-1.0f64..1.0, 2..=18)) {
        let coeffs: Vec<Complex64> = c.chunks(2).map(|w| Complex64::new(w[0], *w.get(1).unwrap_or(&0.0))).collect();
        let base = davis_sum(&ComplexPolygon::from(&p), &coeffs).unwrap();
        let relabeled = davis_sum(&ComplexPolygon::from(&p.rotated_labels(k)), &coeffs).unwrap();
        let reversed = davis_sum(&ComplexPolygon::from(&p.reversed()), &coeffs).unwrap();
        let tol = 1e-10 * (1.0 + base.norm());
        prop_assert!((relabeled - base).norm() <= tol);
        prop_assert!((reversed + base).norm() <= tol);
    }

    #[test]
    fn complex_moments_match_real_moments(p in arb_polygon()) {
        let tau = complex_moments(&ComplexPolygon::from(&p), 8).unwrap();
        let m = moments_from_vertices(&p, 6).unwrap();
        for (idx, t) in tau.iter().enumerate() {
            let k = idx + 2;
            let mut want = Complex64::new(0.0, 0.0);
            for j in 0..=k - 2 {
                want += Complex64::i().powu(j as u32) * binom(k - 2, j) * m.get(k - 2 - j, j).unwrap();
            }
            want *= (k * (k - 1)) as f64;
            prop_assert!((t - want).norm() <= 1e-9 * want.norm().max(m.area()), "k={k}");
        }
    }

    #[test]
    fn isoperimetric_ratio_is_at_most_one(p in arb_polygon()) {
        prop_assert!(isoperimetric_ratio(&p).unwrap() <= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polygon_transform_matches_quadrature(p in arb_polygon(), b in arb_vec2(1.0)) {
        let b = b * (50.0 / p.diameter() / 2f64.sqrt());
        let q = quad_polygon_form_factor(&p, b.into()).unwrap().to_complex();
        let a = polygon_form_factor(&p, b.into()).to_complex();
        prop_assert!((a - q).norm() <= 1e-8 * signed_area(&p).abs());
    }

    #[test]
    fn tetrahedron_transform_matches_quadrature(seed in any::<u64>(), b in arb_vec3(1.0)) {
        let t = tetrahedron(&mut ChaCha8Rng::seed_from_u64(seed));
        let b = b * (20.0 / 3f64.sqrt());
        let q = quad_polyhedron_form_factor(&t, b.into()).unwrap().to_complex();
        let a = polyhedron_form_factor(&t, b.into()).unwrap().to_complex();
        prop_assert!((a - q).norm() <= 1e-6 * q.norm().max(1e-3));
    }

    #[test]
    fn convex_polyhedron_transform_matches_quadrature(seed in any::<u64>(), b in arb_vec3(1.0)) {
        let p = convex_polyhedron(&mut ChaCha8Rng::seed_from_u64(seed));
        let b = b * (10.0 / p.diameter());
        let q = quad_polyhedron_form_factor(&p, b.into()).unwrap().to_complex();
        let a = polyhedron_form_factor(&p, b.into()).unwrap().to_complex();
        let v = quad_polyhedron_form_factor(&p, Wavevector3::default()).unwrap().re;
        prop_assert!((a - q).norm() <= 1e-8 * v);
    }

    #[test]
    fn render_is_a_pure_pixel_map(seed in any::<u64>(), pixels in prop::collection::vec((0usize..64, 0usize..64), 100)) {
        let tri = polygon(seed, 3);
        let cfg = DiffractionConfig {
            wavelength: 0.5,
            distance: 1000.0,
            extent: 500.0,
            resolution: 64,
            aperture: Aperture::Polygon(tri.clone()),
        };
        let g = render_pattern(&cfg).unwrap();
        for (i, j) in pixels {
            prop_assert_eq!(g.get(i, j), polygon_form_factor(&tri, g.beta_at(i, j).into()).intensity());
        }
    }
}

#[test]
fn quadrature_at_zero_gives_measure() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let p = star_polygon(&mut rng, 9, 1.0, 1.0);
        let q = quad_polygon_form_factor(&p, Wavevector2::default()).unwrap();
        assert!((q.re - signed_area(&p)).abs() <= 1e-12 * signed_area(&p));
        let t = convex_polyhedron(&mut rng);
        let v = polyhedron_form_factor(&t, Wavevector3::default())
            .unwrap()
            .re;
        let q = quad_polyhedron_form_factor(&t, Wavevector3::default())
            .unwrap()
            .re;
        assert!((q - v).abs() <= 1e-12 * v);
    }
}

#[test]
fn triangulation_handles_many_polygons() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let p = star_polygon(&mut rng, 40, 1.0, 1.0);
        let t = triangulate(&p).unwrap();
        assert!((t.area() - signed_area(&p)).abs() <= 1e-12 * signed_area(&p));
    }
}

#[test]
fn sphere_transform_matches_ball_quadrature() {
    for k in [0.5, 3.0, 10.0, 25.0] {
        let q = shapeft::oracle::quad_ball_form_factor(
            1.2,
            Wavevector3::new(0.3 * k, -0.5 * k, 0.812 * k),
        )
        .unwrap();
        let kk = Vec3::new(0.3 * k, -0.5 * k, 0.812 * k).norm();
        assert!(
            (sphere_form_factor(1.2, kk) - q.re).abs() <= 1e-9 * 4.0 * PI,
            "k={k}"
        );
        assert!(q.im.abs() <= 1e-9);
    }
}

#[test]
fn sphere_slope_is_scale_invariant() {
    let a = porod_slope(&PorodShape::Sphere(1.0), 30.0, 300.0, 60, 1).unwrap();
    let b = porod_slope(&PorodShape::Sphere(2.5), 12.0, 120.0, 60, 1).unwrap();
    assert!((a.slope - b.slope).abs() <= a.slope_stderr.max(b.slope_stderr));
}

#[test]
fn cube_along_a_face_normal_decays_like_a_facet() {
    let cube = PorodShape::Polyhedron(Polyhedron::cuboid(Vec3::ZERO, Vec3::new(0.5, 0.5, 0.5)));
    let fit = shapeft::scatter::porod_slope_fixed_direction(
        &cube,
        Vec3::new(0.0, 0.0, 1.0),
        30.0,
        300.0,
        60,
    )
    .unwrap();
    assert!((fit.slope + 2.0).abs() < 0.1, "{fit:?}");
}

#[test]
fn doubling_the_detector_captures_little_more_energy() {
    let cfg = DiffractionConfig {
        wavelength: 0.5,
        distance: 1000.0,
        extent: 2000.0,
        resolution: 512,
        aperture: Aperture::Disk { radius: 1.0 },
    };
    let near = render_pattern(&cfg).unwrap().captured_energy();
    let wide = render_pattern(&DiffractionConfig {
        extent: 4000.0,
        ..cfg
    })
    .unwrap()
    .captured_energy();
    assert!((wide - near).abs() / near < 0.05, "{near} vs {wide}");
}
