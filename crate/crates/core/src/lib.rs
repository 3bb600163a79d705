//! Closed-form Fourier transforms, moments and scattering patterns of
//! polygons and polyhedra, each cross-checked against brute-force
//! quadrature.
//!
//! ```
//! use shapeft::geom::Polygon;
//! use shapeft::xform::{polygon_form_factor, Wavevector2};
//!
//! let square = Polygon::rectangle(0.5, 0.5).unwrap();
//! let phi = polygon_form_factor(&square, Wavevector2::new(3.0, 0.0));
//! assert!((phi.re - 2.0 * 1.5f64.sin() / 3.0).abs() < 1e-14);
//! ```

// Numeric kernels index several arrays with one counter.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod geom;
pub mod identities;
pub mod io;
pub mod moments;
pub mod oracle;
pub mod random;
pub mod scatter;
pub mod special;
pub mod verify;
pub mod xform;

pub use error::{Defect, Error, Result};
