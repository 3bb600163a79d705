//! Special functions and quadrature nodes used throughout the crate.

use std::f64::consts::PI;

/// `sin(x) / x`, with a Taylor fallback near the removable singularity.
#[inline]
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Bessel function of the first kind, order one.
///
/// Ascending power series for `|x| <= 12`, Hankel asymptotic expansion
/// beyond. Absolute error stays below 1e-10 over the real line.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= 12.0 {
        j1_series(ax)
    } else {
        j1_hankel(ax)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

fn j1_series(x: f64) -> f64 {
    let h = 0.5 * x;
    let h2 = h * h;
    let mut term = h;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        term *= -h2 / ((k + 1.0) * (k + 2.0));
        sum += term;
        k += 1.0;
        if k > h && term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        if k > 200.0 {
            break;
        }
    }
    sum
}

fn j1_hankel(x: f64) -> f64 {
    // a_k(1) = prod_{j=1..k} (4 - (2j-1)^2) / (k! 8^k)
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a: f64 = 1.0;
    let mut last = f64::INFINITY;
    let inv_x = 1.0 / x;
    let mut xpow = 1.0;
    for k in 0..60 {
        let term = a * xpow;
        if term.abs() > last {
            break;
        }
        last = term.abs();
        // (-1)^{floor(k/2)} alternation within each of P and Q.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if last < 1e-17 {
            break;
        }
        let odd = (2 * k + 1) as f64;
        a *= (4.0 - odd * odd) / ((k + 1) as f64 * 8.0);
        xpow *= inv_x;
    }
    let chi = x - 0.75 * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// The Airy amplitude `2 J1(x) / x`, equal to 1 at the origin.
pub fn airy_amplitude(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 8.0
    } else {
        2.0 * bessel_j1(x) / x
    }
}

/// Locates the `n`-th positive zero of J1 (n >= 1) by bracketing near
/// McMahon's estimate and bisecting.
pub fn bessel_j1_zero(n: usize) -> f64 {
    assert!(n >= 1, "zeros are numbered from 1");
    let beta = (n as f64 + 0.25) * PI;
    let guess = beta - 3.0 / (8.0 * beta);
    let (mut lo, mut hi) = (guess - 0.3, guess + 0.3);
    let flo = bessel_j1(lo);
    debug_assert!(flo * bessel_j1(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if bessel_j1(mid) * flo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (pn, pn1) = legendre_pair(n, x);
                dp = nf * (x * pn - pn1) / (x * x - 1.0);
                let dx = pn / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (pn, pn1) = legendre_pair(n, x);
            dp = if pn.is_finite() {
                nf * (x * pn - pn1) / (x * x - 1.0)
            } else {
                dp
            };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

/// Returns `(P_n(x), P_{n-1}(x))`.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// Pascal's triangle in floating point, rows `0..=max`.
pub(crate) fn binomial_table(max: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let mut row = vec![1.0; n + 1];
        for k in 1..n {
            row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    /// J1(x) = (1/pi) * integral_0^pi cos(t - x sin t) dt. The integrand
    /// is smooth and periodic so the trapezoid rule converges geometrically.
    fn j1_integral(x: f64) -> f64 {
        let n = 400 + 4 * x.abs() as usize;
        let h = PI / n as f64;
        let mut s = 0.0;
        for k in 0..=n {
            let t = k as f64 * h;
            let w = if k == 0 || k == n { 0.5 } else { 1.0 };
            s += w * (t - x * t.sin()).cos();
        }
        s * h / PI
    }

    fn j1_series_64(x: f64) -> f64 {
        let h = 0.5 * x;
        let mut term = h;
        let mut sum = term;
        for k in 0..64 {
            let kf = k as f64;
            term *= -h * h / ((kf + 1.0) * (kf + 2.0));
            sum += term;
        }
        sum
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!((sinc(PI)).abs() < 1e-16);
        let x = 5e-5;
        assert!((sinc(x) - x.sin() / x).abs() < 2e-16);
    }

    #[test]
    fn j1_matches_series_on_small_arguments() {
        for i in 0..1000 {
            let x = -12.0 + 24.0 * i as f64 / 999.0;
            let d = (bessel_j1(x) - j1_series_64(x)).abs();
            assert!(d < 1e-12, "x={x} d={d}");
        }
    }

    #[test]
    fn j1_matches_integral_representation() {
        for i in 0..1000 {
            let x = 0.05 + 80.0 * i as f64 / 999.0;
            let d = (bessel_j1(x) - j1_integral(x)).abs();
            assert!(d < 1e-10, "x={x} d={d}");
        }
    }

    #[test]
    fn j1_zeros() {
        assert!((bessel_j1_zero(1) - 3.831_705_970_207_512).abs() < 1e-12);
        assert!((bessel_j1_zero(2) - 7.015_586_669_815_619).abs() < 1e-12);
        assert!((bessel_j1_zero(5) - 16.470_630_050_877_63).abs() < 1e-9);
    }

    #[test]
    fn airy_limit() {
        assert_eq!(airy_amplitude(0.0), 1.0);
        assert!((airy_amplitude(1e-3) - 2.0 * bessel_j1(1e-3) / 1e-3).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in 1..40 {
            let gl = GaussLegendre::new(n);
            let wsum: f64 = gl.weights.iter().sum();
            assert!((wsum - 2.0).abs() < 1e-13, "n={n}");
            // exact for degree 2n-1
            let deg = 2 * n - 2;
            let approx: f64 = gl
                .nodes
                .iter()
                .zip(&gl.weights)
                .map(|(x, w)| w * x.powi(deg as i32))
                .sum();
            let exact = 2.0 / (deg as f64 + 1.0);
            assert!((approx - exact).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn binomials() {
        let t = binomial_table(20);
        assert_eq!(t[5][2], 10.0);
        assert_eq!(t[20][10], 184_756.0);
    }
}
