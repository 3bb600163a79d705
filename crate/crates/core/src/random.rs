//! Seeded generators of random test shapes.

use std::f64::consts::PI;

use rand::Rng;

use crate::geom::{Polygon, Polyhedron, Vec2, Vec3};

/// Star-shaped counterclockwise polygon with `n` vertices: angles jittered
/// inside equal sectors, radii in `[0.3, 1]`, then scaled by `scale` and
/// shifted by up to `offset` along each axis.
pub fn star_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64, offset: f64) -> Polygon {
    let phase = rng.random_range(0.0..2.0 * PI);
    let shift = if offset > 0.0 {
        Vec2::new(
            rng.random_range(-offset..offset),
            rng.random_range(-offset..offset),
        )
    } else {
        Vec2::ZERO
    };
    let pts = (0..n)
        .map(|k| {
            let t = phase + 2.0 * PI * (k as f64 + 0.1 + 0.8 * rng.random::<f64>()) / n as f64;
            let r = scale * rng.random_range(0.3..1.0);
            Vec2::new(r * t.cos(), r * t.sin()) + shift
        })
        .collect();
    Polygon::new(pts).expect("star-shaped construction is simple")
}

/// Convex counterclockwise polygon inscribed in an ellipse.
pub fn convex_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Polygon {
    let (a, b) = (rng.random_range(0.5..1.5), rng.random_range(0.5..1.5));
    let phase = rng.random_range(0.0..2.0 * PI);
    let pts = (0..n)
        .map(|k| {
            let t = phase + 2.0 * PI * (k as f64 + 0.1 + 0.8 * rng.random::<f64>()) / n as f64;
            Vec2::new(a * t.cos(), b * t.sin())
        })
        .collect();
    Polygon::new(pts).expect("points on an ellipse in angular order are convex")
}

/// Uniformly distributed rotation matrix from a random unit quaternion.
pub fn rotation<R: Rng + ?Sized>(rng: &mut R) -> [[f64; 3]; 3] {
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let (w, x, y, z) = (
        a * (2.0 * PI * u2).sin(),
        a * (2.0 * PI * u2).cos(),
        b * (2.0 * PI * u3).sin(),
        b * (2.0 * PI * u3).cos(),
    );
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - z * w),
            2.0 * (x * z + y * w),
        ],
        [
            2.0 * (x * y + z * w),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - x * w),
        ],
        [
            2.0 * (x * z - y * w),
            2.0 * (y * z + x * w),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

fn lift(v: Vec2, z: f64) -> Vec3 {
    Vec3::new(v.x, v.y, z)
}

/// Random convex polyhedron: either a bipyramid over a convex polygon or an
/// oblique prism, randomly rotated and translated.
pub fn convex_polyhedron<R: Rng + ?Sized>(rng: &mut R) -> Polyhedron {
    let n = rng.random_range(3..=8);
    let base = convex_polygon(rng, n);
    let ring = base.vertices();
    let mut vertices: Vec<Vec3> = ring.iter().map(|&v| lift(v, 0.0)).collect();
    let mut faces = Vec::new();
    if rng.random_bool(0.5) {
        // Apexes sit above and below a point well inside the base.
        let inner = |rng: &mut R| {
            let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.0)).collect();
            let total: f64 = w.iter().sum();
            ring.iter()
                .zip(&w)
                .fold(Vec2::ZERO, |acc, (&v, &wi)| acc + v * (wi / total))
        };
        let top = lift(inner(rng), rng.random_range(0.4..1.5));
        let bottom = lift(inner(rng), -rng.random_range(0.4..1.5));
        vertices.push(top);
        vertices.push(bottom);
        for i in 0..n {
            let j = (i + 1) % n;
            faces.push(vec![i, j, n]);
            faces.push(vec![j, i, n + 1]);
        }
    } else {
        let lean = Vec2::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5));
        let h = rng.random_range(0.4..1.5);
        vertices.extend(ring.iter().map(|&v| lift(v + lean, h)));
        faces.push((0..n).rev().collect());
        faces.push((n..2 * n).collect());
        for i in 0..n {
            let j = (i + 1) % n;
            faces.push(vec![i, j, n + j, n + i]);
        }
    }
    let m = rotation(rng);
    let shift = Vec3::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    );
    Polyhedron::new(vertices, faces)
        .expect("bipyramids and prisms over convex bases are closed and convex")
        .rotated(m)
        .translated(shift)
}

/// Tetrahedron with vertices in `[-1, 1]^3` and volume at least 0.02.
pub fn tetrahedron<R: Rng + ?Sized>(rng: &mut R) -> Polyhedron {
    let mut point = || {
        Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
    };
    loop {
        let (a, b, c, d) = (point(), point(), point(), point());
        if ((b - a).dot((c - a).cross(d - a)) / 6.0).abs() < 0.02 {
            continue;
        }
        if let Ok(t) = Polyhedron::tetrahedron(a, b, c, d) {
            return t;
        }
    }
}
