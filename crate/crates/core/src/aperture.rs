//! Angular aperture: a Gaussian in the azimuthal angle times a radial
//! super-Gaussian,
//!
//! ```text
//! t(rho, phi) = (lambda/pi)^(1/4) / sqrt(erf(pi sqrt(lambda)))
//!               * exp(-lambda phi^2 / 2) * exp(-(rho/a)^(2m))
//! ```
//!
//! with `phi = atan2(y, x)` in `(-pi, pi]`. The screen sits at the beam waist,
//! centered on the beam axis.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{normalize, total_power, ScalarField};
use crate::special::erf;

pub const LAMBDA_MIN: f64 = 1e-4;
pub const LAMBDA_MAX: f64 = 1e4;
pub const DEFAULT_POWER: u32 = 12;
/// Default super-Gaussian radius in units of the beam waist.
pub const DEFAULT_RADIUS_IN_WAISTS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AngularAperture {
    lambda_width: f64,
    radius: f64,
    power: u32,
}

impl AngularAperture {
    pub fn new(lambda_width: f64, radius: f64, power: u32) -> Result<Self> {
        if !(LAMBDA_MIN..=LAMBDA_MAX).contains(&lambda_width) {
            return Err(Error::InvalidArgument(format!(
                "aperture lambda {lambda_width} outside [{LAMBDA_MIN:e}, {LAMBDA_MAX:e}]"
            )));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "aperture radius {radius} must be positive"
            )));
        }
        if power == 0 {
            return Err(Error::InvalidArgument("super-Gaussian power must be >= 1".into()));
        }
        Ok(Self {
            lambda_width,
            radius,
            power,
        })
    }

    /// Aperture with `a = 3w` and `m = 12`.
    pub fn for_waist(lambda_width: f64, waist: f64) -> Result<Self> {
        Self::new(lambda_width, DEFAULT_RADIUS_IN_WAISTS * waist, DEFAULT_POWER)
    }

    pub fn lambda_width(&self) -> f64 {
        self.lambda_width
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// Prefactor `(lambda/pi)^(1/4) / sqrt(erf(pi sqrt(lambda)))`, the value
    /// of `t` on the axis `phi = 0` well inside the radius.
    pub fn peak(&self) -> f64 {
        let l = self.lambda_width;
        (l / PI).powf(0.25) / erf(PI * l.sqrt()).sqrt()
    }

    #[inline]
    fn profile(&self, peak: f64, x: f64, y: f64) -> f64 {
        let phi = y.atan2(x);
        let rho = x.hypot(y) / self.radius;
        let radial = rho.powi(2 * self.power as i32);
        peak * (-0.5 * self.lambda_width * phi * phi - radial).exp()
    }

    pub fn transmission(&self, x: f64, y: f64) -> f64 {
        self.profile(self.peak(), x, y)
    }

    /// Multiplies `field` by the transmission and renormalizes to unit power.
    ///
    /// The returned fraction is the power passed by the passive screen
    /// `t / t_peak` relative to the input power. The prefactor of `t` makes
    /// the unscaled product's power independent of `lambda`, so it carries
    /// no information about how much light the aperture blocks.
    pub fn apply(&self, field: &ScalarField) -> Result<(ScalarField, f64)> {
        let input_power = total_power(field);
        if !(input_power > 0.0) {
            return Err(Error::ZeroPower);
        }
        let grid = *field.grid();
        let n = grid.n();
        let coords = grid.coords();
        let peak = self.peak();
        let mut out = field.clone();
        out.samples_mut()
            .par_chunks_mut(n)
            .enumerate()
            .for_each(|(j, row)| {
                let y = coords[j];
                for (i, s) in row.iter_mut().enumerate() {
                    *s *= self.profile(peak, coords[i], y);
                }
            });
        let transmitted = total_power(&out);
        if !(transmitted > 0.0) {
            return Err(Error::ZeroPower);
        }
        let fraction = transmitted / (peak * peak * input_power);
        Ok((normalize(&out)?, fraction))
    }
}

/// Convenience wrapper for [`AngularAperture::apply`].
pub fn apply_aperture(field: &ScalarField, aperture: &AngularAperture) -> Result<(ScalarField, f64)> {
    aperture.apply(field)
}
