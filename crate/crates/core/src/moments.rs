//! Polygon moments computed directly from the vertices, plus the Davis
//! vertex sum in the complex plane.
//!
//! The moment relations come from matching powers of the wavevector between
//! the moment series of the Fourier transform and the Taylor expansion of
//! the closed-form edge sum. Multiplying the edge sum by `|beta|^2` and
//! collecting the coefficient of `beta_1^a beta_2^b` (with `m = a + b`) gives
//!
//! ```text
//! C(m-2, a-2) M(x^(a-2) y^b) + C(m-2, a) M(x^a y^(b-2))
//!     = 1/(m (m-1)) * sum_edges [ l_y * S[a-1] - l_x * S[a] ]
//! ```
//!
//! where `S[i]` is the coefficient of `beta_1^i beta_2^(m-1-i)` in
//! `sum_{p<m} A^(m-1-p) B^p`, `A = beta . v_next`, `B = beta . v`, and terms
//! with a negative exponent drop out. Writing `w[c] = C(n, c) M(x^c y^(n-c))`
//! for total order `n = m - 2` turns each relation into `w[a-2] + w[a] = r_a`.
//! Every parity chain has one more relation than unknowns; the chain is
//! solved from both ends and the left-over relation is checked.
//!
//! The commonly printed form of this relation mixes up some
//! symbols (an `x`/`y` swap and a repeated `x_2` factor); the form above is
//! re-derived and verified against exact triangulation integrals in
//! `oracle`.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geom::{signed_area, Polygon, Vec2};
use crate::special::binomial_table;

/// Highest total order accepted by [`moments_from_vertices`].
pub const MAX_MOMENT_ORDER: usize = 16;

/// Dense table of unnormalized moments `M(x^a y^b)` for `a + b <= max_order`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    max_order: usize,
    values: Vec<f64>,
}

#[inline]
fn slot(a: usize, b: usize) -> usize {
    let n = a + b;
    n * (n + 1) / 2 + a
}

impl MomentTable {
    fn zeros(max_order: usize) -> Self {
        MomentTable {
            max_order,
            values: vec![0.0; slot(0, max_order + 1)],
        }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn get(&self, a: usize, b: usize) -> Result<f64> {
        if a + b > self.max_order {
            return Err(Error::MissingMoment { a, b });
        }
        Ok(self.values[slot(a, b)])
    }

    /// Area, i.e. `M(1)`.
    pub fn area(&self) -> f64 {
        self.values[0]
    }

    /// `M(x^a y^b) / M(1)`.
    pub fn normalized(&self, a: usize, b: usize) -> Result<f64> {
        Ok(self.get(a, b)? / self.area())
    }

    /// Iterates `(a, b, value)` in increasing total order, then increasing `a`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.max_order)
            .flat_map(move |n| (0..=n).map(move |a| (a, n - a, self.values[slot(a, n - a)])))
    }

    fn set(&mut self, a: usize, b: usize, v: f64) {
        self.values[slot(a, b)] = v;
    }

    fn scaled(mut self, s: f64) -> Self {
        for v in &mut self.values {
            *v *= s;
        }
        self
    }
}

#[derive(Serialize, Deserialize)]
struct MomentEntry {
    a: usize,
    b: usize,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct MomentTableJson {
    max_order: usize,
    moments: Vec<MomentEntry>,
}

impl Serialize for MomentTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MomentTableJson {
            max_order: self.max_order,
            moments: self
                .iter()
                .map(|(a, b, value)| MomentEntry { a, b, value })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MomentTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MomentTableJson::deserialize(d)?;
        if raw.max_order > 64 {
            return Err(D::Error::custom("max_order too large"));
        }
        let mut table = MomentTable::zeros(raw.max_order);
        let mut seen = vec![false; table.values.len()];
        for e in raw.moments {
            if e.a + e.b > raw.max_order {
                return Err(D::Error::custom(format!(
                    "moment ({}, {}) exceeds max_order",
                    e.a, e.b
                )));
            }
            let k = slot(e.a, e.b);
            table.values[k] = e.value;
            seen[k] = true;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            let (a, b) = table
                .iter()
                .nth(k)
                .map(|(a, b, _)| (a, b))
                .unwrap_or((0, 0));
            return Err(D::Error::custom(format!("moment ({a}, {b}) missing")));
        }
        Ok(table)
    }
}

/// Moments weighted by orientation: for a clockwise vertex list every entry
/// comes out negated. Works for any closed vertex loop, simple or not.
pub(crate) fn signed_moments(vertices: &[Vec2], max_order: usize) -> Result<MomentTable> {
    let n_edges = vertices.len();
    let top = max_order + 2;
    let binom = binomial_table(top);

    // For each relation total degree m (2..=top) keep rhs and a magnitude
    // scale for every a in 0..=m.
    let mut rhs: Vec<Vec<f64>> = (0..=top).map(|m| vec![0.0; m + 1]).collect();
    let mut mag: Vec<Vec<f64>> = (0..=top).map(|m| vec![0.0; m + 1]).collect();

    for e in 0..n_edges {
        let v = vertices[e];
        let vn = vertices[(e + 1) % n_edges];
        let l = vn - v;
        // s[i]: coefficient of beta_1^i in S_k(A, B), homogeneous degree k
        // bpow[i]: coefficient of beta_1^i in B^k
        let mut s = vec![1.0];
        let mut bpow = vec![1.0];
        for m in 2..=top {
            let k = m - 1;
            // S_k = A * S_{k-1} + B^k, B^k = B * B^{k-1}
            let mut next_b = vec![0.0; k + 1];
            let mut next_s = vec![0.0; k + 1];
            for i in 0..=k {
                let lo_b = if i >= 1 { bpow[i - 1] * v.x } else { 0.0 };
                let hi_b = if i < k { bpow[i] * v.y } else { 0.0 };
                next_b[i] = lo_b + hi_b;
                let lo_s = if i >= 1 { s[i - 1] * vn.x } else { 0.0 };
                let hi_s = if i < k { s[i] * vn.y } else { 0.0 };
                next_s[i] = lo_s + hi_s + next_b[i];
            }
            s = next_s;
            bpow = next_b;
            for a in 0..=m {
                let t_y = if a >= 1 { l.y * s[a - 1] } else { 0.0 };
                let t_x = if a < m { l.x * s[a] } else { 0.0 };
                rhs[m][a] += t_y - t_x;
                mag[m][a] += t_y.abs() + t_x.abs();
            }
        }
    }

    let mut table = MomentTable::zeros(max_order);
    for n in 0..=max_order {
        let m = n + 2;
        let norm = 1.0 / (m * (m - 1)) as f64;
        let r: Vec<f64> = rhs[m].iter().map(|x| x * norm).collect();
        let scale = mag[m].iter().cloned().fold(0.0, f64::max) * norm;
        let mut w = vec![0.0; n + 1];
        for parity in 0..2 {
            let unknowns: Vec<usize> = (parity..=n).step_by(2).collect();
            let k = unknowns.len();
            // relations r_j = parity + 2j, j = 0..=k, linking unknowns j-1 and j
            let split = k.div_ceil(2);
            for j in 0..split {
                let c = unknowns[j];
                let prev = if j > 0 { w[unknowns[j - 1]] } else { 0.0 };
                w[c] = r[parity + 2 * j] - prev;
            }
            for j in (split..k).rev() {
                let c = unknowns[j];
                let next = if j + 1 < k { w[unknowns[j + 1]] } else { 0.0 };
                w[c] = r[parity + 2 * (j + 1)] - next;
            }
            // left-over relation r_split
            let a = parity + 2 * split;
            if a <= m {
                let lo = if split >= 1 {
                    w[unknowns[split - 1]]
                } else {
                    0.0
                };
                let hi = if split < k { w[unknowns[split]] } else { 0.0 };
                let residual = (lo + hi - r[a]).abs();
                let tolerance = 1e-10 * (scale + lo.abs() + hi.abs()).max(f64::MIN_POSITIVE);
                if residual > tolerance {
                    return Err(Error::InconsistentMoments {
                        order: n,
                        residual,
                        tolerance,
                    });
                }
            }
        }
        for c in 0..=n {
            table.set(c, n - c, w[c] / binom[n][c]);
        }
    }
    Ok(table)
}

/// Unnormalized moments `M(x^a y^b)` of the region bounded by the polygon,
/// for every `a + b <= max_order`, computed from the vertices alone.
///
/// Entries are orientation independent: `M(1)` is the absolute area.
pub fn moments_from_vertices(poly: &Polygon, max_order: usize) -> Result<MomentTable> {
    if max_order > MAX_MOMENT_ORDER {
        return Err(Error::InvalidArgument(format!(
            "max_order {max_order} exceeds {MAX_MOMENT_ORDER}"
        )));
    }
    let table = signed_moments(poly.vertices(), max_order)?;
    let sign = if table.area() < 0.0 { -1.0 } else { 1.0 };
    Ok(table.scaled(sign))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FirstMoments {
    /// Signed area (positive for counterclockwise polygons).
    pub area: f64,
    /// `M(x)` and `M(y)`, carrying the same orientation sign as `area`.
    pub mx: f64,
    pub my: f64,
    pub centroid: Vec2,
}

/// Area, first moments and centroid from explicit edge sums.
pub fn first_moments(poly: &Polygon) -> Result<FirstMoments> {
    let area = signed_area(poly);
    if area == 0.0 {
        return Err(Error::Degenerate("polygon has zero area".into()));
    }
    let mut mx = 0.0;
    let mut my = 0.0;
    for (a, b) in poly.edges() {
        mx += (b.y - a.y) * (b.x * b.x + a.x * a.x + b.x * a.x);
        my -= (b.x - a.x) * (b.y * b.y + a.y * a.y + b.y * a.y);
    }
    mx /= 6.0;
    my /= 6.0;
    Ok(FirstMoments {
        area,
        mx,
        my,
        centroid: Vec2::new(mx / area, my / area),
    })
}

/// Polygon vertices viewed as complex numbers `z = x + i y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolygon {
    z: Vec<Complex64>,
}

impl From<&Polygon> for ComplexPolygon {
    fn from(p: &Polygon) -> Self {
        ComplexPolygon {
            z: p.vertices()
                .iter()
                .map(|v| Complex64::new(v.x, v.y))
                .collect(),
        }
    }
}

impl ComplexPolygon {
    pub fn vertices(&self) -> &[Complex64] {
        &self.z
    }

    /// Vertex weights of the Davis sum, depending on the geometry only.
    pub fn davis_weights(&self) -> Vec<Complex64> {
        let n = self.z.len();
        let half_i = Complex64::new(0.0, 0.5);
        (0..n)
            .map(|k| {
                let prev = self.z[(k + n - 1) % n];
                let cur = self.z[k];
                let next = self.z[(k + 1) % n];
                let incoming = (prev.conj() - cur.conj()) / (prev - cur);
                let outgoing = (cur.conj() - next.conj()) / (cur - next);
                half_i * (incoming - outgoing)
            })
            .collect()
    }
}

/// Highest polynomial degree accepted by [`davis_sum`].
pub const MAX_DAVIS_DEGREE: usize = 32;

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// `integral_V h''(z) dx dy` for a polynomial `h` with coefficients
/// `coeffs[k]` of `z^k`, evaluated as a weighted sum of `h` at the vertices.
/// Positive orientation (counterclockwise) gives the plain integral.
pub fn davis_sum(cp: &ComplexPolygon, coeffs: &[Complex64]) -> Result<Complex64> {
    if coeffs.len() > MAX_DAVIS_DEGREE + 1 {
        return Err(Error::InvalidArgument(format!(
            "polynomial degree {} exceeds {MAX_DAVIS_DEGREE}",
            coeffs.len() - 1
        )));
    }
    Ok(cp
        .davis_weights()
        .iter()
        .zip(cp.vertices())
        .map(|(&w, &z)| w * horner(coeffs, z))
        .sum())
}

/// `tau_k = k (k-1) integral_V z^(k-2) dx dy` for `k = 2..=k_max`.
pub fn complex_moments(cp: &ComplexPolygon, k_max: usize) -> Result<Vec<Complex64>> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be at least 2".into()));
    }
    let w = cp.davis_weights();
    Ok((2..=k_max)
        .map(|k| {
            w.iter()
                .zip(cp.vertices())
                .map(|(&w, &z)| w * z.powu(k as u32))
                .sum()
        })
        .collect())
}
