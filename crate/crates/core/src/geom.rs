//! Polygons, polyhedra and sampled curves, with the purely geometric
//! identities that follow from the divergence theorem: signed area, edge
//! closure, turning number and Gram-determinant areas and volumes.
//!
//! Counterclockwise winding is positive throughout. Constructors validate
//! but never reorder vertices.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Defect, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self * (1.0 / self.norm())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        [v.x, v.y, v.z]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Largest pairwise distance in a point set.
fn point_diameter<T: Copy>(points: &[T], dist: impl Fn(T, T) -> f64) -> f64 {
    let mut d: f64 = 0.0;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            d = d.max(dist(p, q));
        }
    }
    d
}

/// A polygon given by its ordered vertices; the closing edge from the last
/// vertex back to the first is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    /// Builds a simple polygon, rejecting duplicate consecutive vertices and
    /// crossing edges.
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        match validate_simple(&vertices) {
            Validity::Ok => Ok(Polygon { vertices }),
            Validity::Defect(d) => Err(Error::InvalidPolygon(d)),
        }
    }

    /// Builds a possibly self-intersecting polygon. Zero-length edges are
    /// still rejected; nothing else about the vertex order is checked.
    pub fn new_allow_nonsimple(vertices: Vec<Vec2>) -> Result<Self> {
        if let Some(d) = basic_defect(&vertices) {
            return Err(Error::InvalidPolygon(d));
        }
        Ok(Polygon { vertices })
    }

    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        Polygon::new(points.iter().copied().map(Vec2::from).collect())
    }

    /// Regular `n`-gon inscribed in a circle of `radius`, counterclockwise.
    pub fn regular(n: usize, radius: f64) -> Result<Self> {
        let verts = (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                Vec2::new(radius * t.cos(), radius * t.sin())
            })
            .collect();
        Polygon::new(verts)
    }

    /// Axis-aligned rectangle `[-a1, a1] x [-a2, a2]`, counterclockwise.
    pub fn rectangle(a1: f64, a2: f64) -> Result<Self> {
        Polygon::new(vec![
            Vec2::new(a1, a2),
            Vec2::new(-a1, a2),
            Vec2::new(-a1, -a2),
            Vec2::new(a1, -a2),
        ])
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(start, end)` pairs, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn reversed(&self) -> Polygon {
        let mut v = self.vertices.clone();
        v.reverse();
        Polygon { vertices: v }
    }

    pub fn translated(&self, d: Vec2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| v + d).collect(),
        }
    }

    /// Uniform scaling about the origin (`s > 0`).
    pub fn scaled(&self, s: f64) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn rotated(&self, angle: f64) -> Polygon {
        let (s, c) = angle.sin_cos();
        Polygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vec2::new(c * v.x - s * v.y, s * v.x + c * v.y))
                .collect(),
        }
    }

    /// Cyclic relabeling: vertex `k` becomes vertex 0.
    pub fn rotated_labels(&self, k: usize) -> Polygon {
        let mut v = self.vertices.clone();
        let n = v.len();
        v.rotate_left(k % n);
        Polygon { vertices: v }
    }

    pub fn diameter(&self) -> f64 {
        point_diameter(&self.vertices, |a, b| (a - b).norm())
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| (b - a).norm()).sum()
    }

    /// Center of the axis-aligned bounding box.
    pub fn bbox_center(&self) -> Vec2 {
        let (lo, hi) = bbox2(&self.vertices);
        (lo + hi) * 0.5
    }

    pub fn is_ccw(&self) -> bool {
        signed_area(self) > 0.0
    }
}

fn bbox2(points: &[Vec2]) -> (Vec2, Vec2) {
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

/// Outcome of [`validate_simple`].
#[derive(Debug, Clone, PartialEq)]
pub enum Validity {
    Ok,
    Defect(Defect),
}

impl Validity {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validity::Ok)
    }
}

fn basic_defect(v: &[Vec2]) -> Option<Defect> {
    if v.len() < 3 {
        return Some(Defect::TooFewVertices { count: v.len() });
    }
    if let Some(index) = v.iter().position(|p| !p.is_finite()) {
        return Some(Defect::NonFinite { index });
    }
    let n = v.len();
    (0..n)
        .find(|&i| v[i] == v[(i + 1) % n])
        .map(|index| Defect::DuplicateVertex { index })
}

/// Checks that a vertex list describes a simple polygon.
///
/// O(N^2) segment tests. Adjacent edges may touch only at their shared
/// vertex; the intersection tolerance is 1e-12 of the bounding-box diagonal.
pub fn validate_simple(v: &[Vec2]) -> Validity {
    if let Some(d) = basic_defect(v) {
        return Validity::Defect(d);
    }
    let n = v.len();
    let (lo, hi) = bbox2(v);
    let tol = 1e-12 * (hi - lo).norm();
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (v[j], v[(j + 1) % n]);
            let adjacent_next = j == i + 1;
            let adjacent_prev = i == 0 && j == n - 1;
            let hit = if adjacent_next {
                // share b == c; they must not fold back over each other
                overlap_beyond_shared(a, b, d, tol)
            } else if adjacent_prev {
                overlap_beyond_shared(b, a, c, tol)
            } else {
                segments_intersect(a, b, c, d, tol)
            };
            if hit {
                return Validity::Defect(Defect::EdgesIntersect {
                    first: i,
                    second: j,
                });
            }
        }
    }
    Validity::Ok
}

/// Edges `p -> s` and `s -> q` share `s`. True when they overlap along a
/// segment of positive length (a spike folding back on itself).
fn overlap_beyond_shared(p: Vec2, s: Vec2, q: Vec2, tol: f64) -> bool {
    let u = p - s;
    let w = q - s;
    let cross = u.cross(w);
    if cross.abs() > tol * (u.norm() + w.norm()) {
        return false;
    }
    u.dot(w) > 0.0
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Vec2, b: Vec2, p: Vec2, tol: f64) -> bool {
    p.x >= a.x.min(b.x) - tol
        && p.x <= a.x.max(b.x) + tol
        && p.y >= a.y.min(b.y) - tol
        && p.y <= a.y.max(b.y) + tol
}

fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2, tol: f64) -> bool {
    let scale_ab = (b - a).norm().max(f64::MIN_POSITIVE);
    let scale_cd = (d - c).norm().max(f64::MIN_POSITIVE);
    // orientation values normalized to distances
    let d1 = orient(c, d, a) / scale_cd;
    let d2 = orient(c, d, b) / scale_cd;
    let d3 = orient(a, b, c) / scale_ab;
    let d4 = orient(a, b, d) / scale_ab;
    let strict = |x: f64| {
        if x > tol {
            1
        } else if x < -tol {
            -1
        } else {
            0
        }
    };
    let (s1, s2, s3, s4) = (strict(d1), strict(d2), strict(d3), strict(d4));
    if s1 * s2 < 0 && s3 * s4 < 0 {
        return true;
    }
    (s1 == 0 && on_segment(c, d, a, tol))
        || (s2 == 0 && on_segment(c, d, b, tol))
        || (s3 == 0 && on_segment(a, b, c, tol))
        || (s4 == 0 && on_segment(a, b, d, tol))
}

/// Shoelace area, positive for counterclockwise winding.
pub fn signed_area(poly: &Polygon) -> f64 {
    0.5 * poly.edges().map(|(a, b)| a.cross(b)).sum::<f64>()
}

/// Sum of the directed edge vectors. Zero for any closed polygon; computed
/// anyway as a check on the edge indexing.
pub fn edge_closure(poly: &Polygon) -> Vec2 {
    poly.edges().fold(Vec2::ZERO, |acc, (a, b)| acc + (b - a))
}

/// Sum of the signed exterior angles between consecutive edges, in radians.
pub fn total_turning(poly: &Polygon) -> f64 {
    let v = poly.vertices();
    let n = v.len();
    (0..n)
        .map(|i| {
            let l0 = v[(i + 1) % n] - v[i];
            let l1 = v[(i + 2) % n] - v[(i + 1) % n];
            l0.cross(l1).atan2(l0.dot(l1))
        })
        .sum()
}

/// Number of full turns made by the edge direction over one circuit:
/// +1 for a simple counterclockwise polygon, -1 for clockwise.
pub fn turning_number(poly: &Polygon) -> i32 {
    (total_turning(poly) / (2.0 * PI)).round() as i32
}

/// Area of the parallelogram spanned by `t1` and `t2` from the Gram
/// determinant, `sqrt(|det[t_i . t_j]|)`. Works in any dimension.
pub fn gram_area_element<const D: usize>(t1: [f64; D], t2: [f64; D]) -> f64 {
    let dot = |a: &[f64; D], b: &[f64; D]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let g11 = dot(&t1, &t1);
    let g12 = dot(&t1, &t2);
    let g22 = dot(&t2, &t2);
    (g11 * g22 - g12 * g12).abs().sqrt()
}

/// `a1 . (a2 x a3)`.
pub fn triple_product(a1: Vec3, a2: Vec3, a3: Vec3) -> f64 {
    a1.dot(a2.cross(a3))
}

/// Volume of the parallelepiped spanned by three vectors, the square root
/// of the Gram determinant `det[a_i . a_j]`.
///
/// The determinant is taken as the squared product of the Gram-Schmidt
/// norms (a QR factorization of the Gram matrix's factor), which keeps full
/// relative accuracy for nearly coplanar triples where forming
/// `det[a_i . a_j]` directly leaves only the square root of rounding error.
pub fn parallelepiped_volume(a1: Vec3, a2: Vec3, a3: Vec3) -> f64 {
    let reject = |v: Vec3, basis: &[Vec3]| {
        let mut r = v;
        // second pass restores orthogonality lost to cancellation
        for _ in 0..2 {
            for q in basis {
                r = r - *q * r.dot(*q);
            }
        }
        r
    };
    let n1 = a1.norm();
    if n1 == 0.0 {
        return 0.0;
    }
    let q1 = a1 * (1.0 / n1);
    let r2 = reject(a2, &[q1]);
    let n2 = r2.norm();
    if n2 == 0.0 {
        return 0.0;
    }
    let q2 = r2 * (1.0 / n2);
    n1 * n2 * reject(a3, &[q1, q2]).norm()
}

/// Gram-form volume, cross-checked against `|a1 . (a2 x a3)|` to
/// 1e-12 of `|a1| |a2| |a3|`.
pub fn parallelepiped_volume_checked(a1: Vec3, a2: Vec3, a3: Vec3) -> Result<f64> {
    let gram = parallelepiped_volume(a1, a2, a3);
    let triple = triple_product(a1, a2, a3).abs();
    let scale = a1.norm() * a2.norm() * a3.norm();
    if (gram - triple).abs() > 1e-12 * scale {
        return Err(Error::Invariant(format!(
            "Gram volume {gram:e} disagrees with triple product {triple:e}"
        )));
    }
    Ok(gram)
}

/// A closed polyhedral surface. Faces are vertex-index rings wound
/// counterclockwise when seen from outside.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyhedron {
    vertices: Vec<Vec3>,
    faces: Vec<Vec<usize>>,
}

/// Per-face data derived once at construction.
#[derive(Debug, Clone, Copy)]
pub struct FaceInfo {
    pub normal: Vec3,
    pub area: f64,
    pub centroid: Vec3,
}

impl Polyhedron {
    /// Validates face sizes, planarity (1e-9 of the diameter), closure (every
    /// edge used once in each direction) and positive enclosed volume.
    pub fn new(vertices: Vec<Vec3>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidPolyhedron(m));
        if vertices.len() < 4 {
            return bad(format!("need at least 4 vertices, got {}", vertices.len()));
        }
        if faces.len() < 4 {
            return bad(format!("need at least 4 faces, got {}", faces.len()));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return bad(format!("vertex {i} is not finite"));
        }
        let diam = point_diameter(&vertices, |a, b| (a - b).norm());
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return bad(format!("face {fi} has fewer than 3 vertices"));
            }
            if let Some(&i) = face.iter().find(|&&i| i >= vertices.len()) {
                return bad(format!("face {fi} references missing vertex {i}"));
            }
            for k in 0..face.len() {
                let e = (face[k], face[(k + 1) % face.len()]);
                if e.0 == e.1 {
                    return bad(format!("face {fi} repeats vertex {}", e.0));
                }
                if directed.insert(e, fi).is_some() {
                    return bad(format!(
                        "directed edge {}->{} used by more than one face",
                        e.0, e.1
                    ));
                }
            }
        }
        for &(a, b) in directed.keys() {
            if !directed.contains_key(&(b, a)) {
                return bad(format!("edge {a}-{b} is not shared by two faces"));
            }
        }
        let p = Polyhedron { vertices, faces };
        for fi in 0..p.faces.len() {
            let info = p.face_info(fi);
            if info.area <= 1e-14 * diam * diam {
                return bad(format!("face {fi} has zero area"));
            }
            for &i in &p.faces[fi] {
                let off = (p.vertices[i] - info.centroid).dot(info.normal).abs();
                if off > 1e-9 * diam {
                    return bad(format!(
                        "face {fi} is not planar (vertex {i} off by {off:e})"
                    ));
                }
            }
        }
        if polyhedron_volume(&p) <= 0.0 {
            return bad("enclosed volume is not positive; faces may be wound inward".into());
        }
        Ok(p)
    }

    /// Axis-aligned box centered at `center` with the given half-widths.
    pub fn cuboid(center: Vec3, half: Vec3) -> Self {
        let (hx, hy, hz) = (half.x, half.y, half.z);
        let mut v = Vec::with_capacity(8);
        for &z in &[-hz, hz] {
            for &y in &[-hy, hy] {
                for &x in &[-hx, hx] {
                    v.push(center + Vec3::new(x, y, z));
                }
            }
        }
        // index = ix + 2 iy + 4 iz
        let faces = vec![
            vec![0, 2, 3, 1], // z-
            vec![4, 5, 7, 6], // z+
            vec![0, 1, 5, 4], // y-
            vec![2, 6, 7, 3], // y+
            vec![0, 4, 6, 2], // x-
            vec![1, 3, 7, 5], // x+
        ];
        Polyhedron::new(v, faces).expect("cuboid construction is valid")
    }

    /// Tetrahedron on four points, wound outward regardless of input order.
    pub fn tetrahedron(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> Result<Self> {
        let (b, c) = if triple_product(b - a, c - a, d - a) < 0.0 {
            (c, b)
        } else {
            (b, c)
        };
        Polyhedron::new(
            vec![a, b, c, d],
            vec![vec![0, 2, 1], vec![0, 1, 3], vec![1, 2, 3], vec![0, 3, 2]],
        )
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_vertices(&self, f: usize) -> impl Iterator<Item = Vec3> + '_ {
        self.faces[f].iter().map(move |&i| self.vertices[i])
    }

    /// Unit outward normal (Newell's method), area and vertex centroid.
    pub fn face_info(&self, f: usize) -> FaceInfo {
        let ring = &self.faces[f];
        let m = ring.len();
        let mut newell = Vec3::ZERO;
        let mut centroid = Vec3::ZERO;
        for k in 0..m {
            let a = self.vertices[ring[k]];
            let b = self.vertices[ring[(k + 1) % m]];
            newell = newell + a.cross(b);
            centroid = centroid + a;
        }
        let twice_area = newell.norm();
        let normal = if twice_area > 0.0 {
            newell * (1.0 / twice_area)
        } else {
            Vec3::ZERO
        };
        FaceInfo {
            normal,
            area: 0.5 * twice_area,
            centroid: centroid * (1.0 / m as f64),
        }
    }

    pub fn diameter(&self) -> f64 {
        point_diameter(&self.vertices, |a, b| (a - b).norm())
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_info(f).area).sum()
    }

    pub fn vertex_mean(&self) -> Vec3 {
        let s = self.vertices.iter().fold(Vec3::ZERO, |a, &v| a + v);
        s * (1.0 / self.vertices.len() as f64)
    }

    pub fn translated(&self, d: Vec3) -> Polyhedron {
        Polyhedron {
            vertices: self.vertices.iter().map(|&v| v + d).collect(),
            faces: self.faces.clone(),
        }
    }

    /// Applies a rotation given as a row-major orthogonal matrix with
    /// determinant +1.
    pub fn rotated(&self, m: [[f64; 3]; 3]) -> Polyhedron {
        let apply = |v: Vec3| {
            Vec3::new(
                m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
            )
        };
        Polyhedron {
            vertices: self.vertices.iter().map(|&v| apply(v)).collect(),
            faces: self.faces.clone(),
        }
    }
}

/// Enclosed volume from the divergence theorem,
/// `(1/3) sum_f (x_f . n_f) area_f`.
pub fn polyhedron_volume(p: &Polyhedron) -> f64 {
    // Measure positions from the vertex mean to limit cancellation.
    let origin = p.vertex_mean();
    (0..p.faces().len())
        .map(|f| {
            let info = p.face_info(f);
            (info.centroid - origin).dot(info.normal) * info.area
        })
        .sum::<f64>()
        / 3.0
}

/// `sum_f area_f n_f`; zero for every closed surface.
pub fn face_area_normal_sum(p: &Polyhedron) -> Vec3 {
    (0..p.faces().len()).fold(Vec3::ZERO, |acc, f| {
        let info = p.face_info(f);
        acc + info.normal * info.area
    })
}

/// Points sampled along a closed curve; the closing segment is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    points: Vec<Vec2>,
}

impl SampledCurve {
    pub fn new(points: Vec<Vec2>) -> Result<Self> {
        if points.len() < 8 {
            return Err(Error::InvalidArgument(format!(
                "a sampled curve needs at least 8 points, got {}",
                points.len()
            )));
        }
        if points.first() == points.last() {
            return Err(Error::InvalidArgument(
                "first and last sample coincide; closure is implicit".into(),
            ));
        }
        Ok(SampledCurve { points })
    }

    /// `n` equally spaced samples on a counterclockwise circle.
    pub fn circle(radius: f64, n: usize) -> Result<Self> {
        SampledCurve::new(
            (0..n)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / n as f64;
                    Vec2::new(radius * t.cos(), radius * t.sin())
                })
                .collect(),
        )
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn reversed(&self) -> SampledCurve {
        let mut p = self.points.clone();
        p.reverse();
        SampledCurve { points: p }
    }

    pub fn length(&self) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| (self.points[(i + 1) % n] - self.points[i]).norm())
            .sum()
    }
}
