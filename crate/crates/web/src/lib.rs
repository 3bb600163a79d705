//! Browser bindings: diffraction images, transform profiles along a ray and
//! intensity-decay fits.
//!
//! Apertures are named by `kind` with flat numeric `params`:
//! `"polygon"` takes `x0, y0, x1, y1, ...`, `"disk"` takes `radius` and
//! `"rect"` takes half-widths `a1, a2`.

use std::f64::consts::PI;

use shapeft::geom::{Polygon, Vec2};
use shapeft::scatter::{
    porod_slope, render_pattern, Aperture, DiffractionConfig, PorodShape, ToneMap,
};
use shapeft::xform::{disk_form_factor, polygon_form_factor, rect_form_factor, Wavevector2};
use shapeft::{Error, Result};
use wasm_bindgen::prelude::*;

/// Dark-to-bright palette stops for intensity images.
const PALETTE: [[f64; 3]; 5] = [
    [0.0, 0.0, 4.0],
    [87.0, 16.0, 110.0],
    [188.0, 55.0, 84.0],
    [249.0, 142.0, 9.0],
    [252.0, 255.0, 164.0],
];

fn polygon_from_flat(xy: &[f64]) -> Result<Polygon> {
    if !xy.len().is_multiple_of(2) {
        return Err(Error::InvalidArgument(
            "polygon coordinates must come in x, y pairs".into(),
        ));
    }
    Polygon::new(xy.chunks(2).map(|c| Vec2::new(c[0], c[1])).collect())
}

fn aperture(kind: &str, params: &[f64]) -> Result<Aperture> {
    match (kind, params) {
        ("polygon", xy) => Ok(Aperture::Polygon(polygon_from_flat(xy)?)),
        ("disk", &[radius]) => Ok(Aperture::Disk { radius }),
        ("rect", &[a1, a2]) => Ok(Aperture::Rect { a1, a2 }),
        _ => Err(Error::InvalidArgument(format!(
            "unknown aperture {kind:?} with {} parameters",
            params.len()
        ))),
    }
}

fn color(level: u16) -> [u8; 4] {
    let t = level as f64 / 65535.0 * (PALETTE.len() - 1) as f64;
    let i = (t.floor() as usize).min(PALETTE.len() - 2);
    let f = t - i as f64;
    let mix = |c: usize| (PALETTE[i][c] * (1.0 - f) + PALETTE[i + 1][c] * f).round() as u8;
    [mix(0), mix(1), mix(2), 255]
}

/// RGBA image of `|phi|^2` over `[-beta_extent, beta_extent]^2`, top row at
/// the largest `beta_y`.
pub fn diffraction_pixels(
    kind: &str,
    params: &[f64],
    beta_extent: f64,
    res: usize,
    log: bool,
) -> Result<Vec<u8>> {
    // unit wavenumber over unit distance makes screen position equal beta
    let grid = render_pattern(&DiffractionConfig {
        wavelength: 2.0 * PI,
        distance: 1.0,
        extent: beta_extent,
        resolution: res,
        aperture: aperture(kind, params)?,
    })?;
    let levels = grid.tone_mapped(if log { ToneMap::Log } else { ToneMap::Linear });
    Ok(levels
        .chunks(res)
        .rev()
        .flat_map(|row| row.iter().flat_map(|&l| color(l)))
        .collect())
}

/// `|phi|` at `n` evenly spaced points of `[0, beta_max]` along `angle`.
pub fn transform_profile(
    kind: &str,
    params: &[f64],
    angle: f64,
    beta_max: f64,
    n: usize,
) -> Result<Vec<f64>> {
    if n < 2 || !(beta_max > 0.0 && beta_max.is_finite()) {
        return Err(Error::InvalidArgument(
            "need n >= 2 and a positive beta_max".into(),
        ));
    }
    let ap = aperture(kind, params)?;
    Ok((0..n)
        .map(|i| {
            let b = Wavevector2::from_polar(beta_max * i as f64 / (n - 1) as f64, angle);
            match &ap {
                Aperture::Polygon(p) => polygon_form_factor(p, b).abs(),
                Aperture::Disk { radius } => disk_form_factor(*radius, b).abs(),
                Aperture::Rect { a1, a2 } => rect_form_factor(*a1, *a2, b).abs(),
            }
        })
        .collect())
}

/// Orientation-averaged decay fit between `kd_min` and `kd_max` in units of
/// the inverse diameter: `[slope, slope_stderr, expected_slope]`.
pub fn decay_fit(kind: &str, params: &[f64], kd_min: f64, kd_max: f64) -> Result<Vec<f64>> {
    let shape = match aperture(kind, params)? {
        Aperture::Polygon(p) => PorodShape::Polygon(p),
        Aperture::Disk { radius } => PorodShape::Disk(radius),
        Aperture::Rect { a1, a2 } => PorodShape::Polygon(Polygon::rectangle(a1, a2)?),
    };
    let d = shape.diameter();
    let fit = porod_slope(&shape, kd_min / d, kd_max / d, 50, 32)?;
    Ok(vec![fit.slope, fit.slope_stderr, fit.expected_slope])
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn diffraction_rgba(
    kind: &str,
    params: &[f64],
    beta_extent: f64,
    res: usize,
    log: bool,
) -> std::result::Result<Vec<u8>, JsError> {
    diffraction_pixels(kind, params, beta_extent, res, log).map_err(js)
}

#[wasm_bindgen]
pub fn transform_abs(
    kind: &str,
    params: &[f64],
    angle: f64,
    beta_max: f64,
    n: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    transform_profile(kind, params, angle, beta_max, n).map_err(js)
}

#[wasm_bindgen]
pub fn decay_slope(
    kind: &str,
    params: &[f64],
    kd_min: f64,
    kd_max: f64,
) -> std::result::Result<Vec<f64>, JsError> {
    decay_fit(kind, params, kd_min, kd_max).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_has_bright_center() {
        let px = diffraction_pixels("disk", &[1.0], 10.0, 33, false).unwrap();
        assert_eq!(px.len(), 33 * 33 * 4);
        let center = (16 * 33 + 16) * 4;
        assert_eq!(&px[center..center + 4], &[252, 255, 164, 255]);
        assert_eq!(px[3], 255);
    }

    #[test]
    fn image_top_row_is_largest_beta_y() {
        // intensity is only inversion symmetric, so a triangle tells
        // (-x, +y) apart from (-x, -y)
        let tri = [0.0, 0.0, 1.0, 0.0, 0.0, 2.0];
        let px = diffraction_pixels("polygon", &tri, 8.0, 16, true).unwrap();
        let grid = render_pattern(&DiffractionConfig {
            wavelength: 2.0 * PI,
            distance: 1.0,
            extent: 8.0,
            resolution: 16,
            aperture: aperture("polygon", &tri).unwrap(),
        })
        .unwrap();
        let levels = grid.tone_mapped(ToneMap::Log);
        assert_eq!(&px[..4], &color(levels[15 * 16]));
    }

    #[test]
    fn profile_starts_at_area() {
        let sq = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let p = transform_profile("polygon", &sq, 0.3, 20.0, 5).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-15);
        let r = transform_profile("rect", &[0.5, 0.5], 0.3, 20.0, 5).unwrap();
        for (a, b) in p.iter().zip(&r) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn disk_decay_is_cubic() {
        let f = decay_fit("disk", &[1.0], 40.0, 400.0).unwrap();
        assert!((f[0] + 3.0).abs() < 0.05, "{f:?}");
        assert_eq!(f[2], -3.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(aperture("hexagon", &[1.0]).is_err());
        assert!(aperture("polygon", &[0.0, 0.0, 1.0]).is_err());
        assert!(decay_fit("disk", &[1.0], 1.0, 100.0).is_err());
    }
}
