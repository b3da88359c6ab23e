//! Diffraction of orbital-angular-momentum (OAM) entangled photon pairs on
//! angular apertures.
//!
//! The crate is organised bottom-up:
//!
//! * [`field`]: sampled transverse fields, Laguerre-Gaussian modes, inner products.
//! * [`aperture`]: the Gaussian-in-angle, super-Gaussian-in-radius transmission mask.
//! * [`propagation`]: paraxial angular-spectrum propagation.
//! * [`oam`]: angular densities, OAM spectra, intelligent states, the
//!   angle/angular-momentum uncertainty relation and spectrum fitting.
//! * [`entanglement`]: biphoton mutual overlap and concurrence, numeric and closed form.
//! * [`runner`]: sweep configuration, result files, figures and the validation suite.
//!
//! ```
//! use oamlab::entanglement::{concurrence_from_overlap, overlap_analytic, universal_concurrence};
//! use oamlab::oam::delta_phi_of_lambda;
//!
//! let lambda = 25.0;
//! let b = overlap_analytic(lambda, 5);
//! let c = concurrence_from_overlap(b).unwrap();
//! let approx = universal_concurrence(5, delta_phi_of_lambda(lambda));
//! assert!((c - approx).abs() < 1e-3);
//! ```

pub mod aperture;
pub mod entanglement;
pub mod error;
pub mod field;
pub mod oam;
pub mod polar;
pub mod propagation;
pub mod quadrature;
pub mod runner;
pub mod special;
pub mod svg;

pub use error::{Error, Result};
pub use num_complex::Complex64;
