//! Biphoton overlap and concurrence.
//!
//! A Bell state `(|l0>|-l0> + |-l0>|l0>)/sqrt(2)` sent through identical
//! angular apertures maps onto `|psi+>|psi->  + |psi->|psi+>`. The diffracted
//! images are no longer orthogonal; their mutual overlap
//! `b = <psi- | psi+>` fixes the concurrence `C = (1 - b^2) / (1 + b^2)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::aperture::AngularAperture;
use crate::error::{Error, Result};
use crate::field::{
    inner_product, lg_mode, GridSpec, LgModeSpec, ScalarField, DEFAULT_WAVENUMBER, EDGE_AMPLITUDE_LIMIT,
};
use crate::oam::delta_phi_of_lambda;
use crate::propagation::{propagate, PropagatorSpec};
use crate::quadrature::{integrate_with_breaks, Tolerance};
use crate::special::{erf, scaled_erf_real_part};

/// Largest tolerated `|Im b|` before the run is rejected.
pub const IMAG_OVERLAP_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct BiphotonRunSpec {
    l0: i32,
    aperture: AngularAperture,
    grid: GridSpec,
    waist: f64,
    wavenumber: f64,
    distance: f64,
}

impl BiphotonRunSpec {
    pub fn new(l0: i32, aperture: AngularAperture, grid: GridSpec, waist: f64) -> Result<Self> {
        if l0 < 1 {
            return Err(Error::InvalidArgument(format!("l0 must be >= 1, got {l0}")));
        }
        Self::build(l0, aperture, grid, waist)
    }

    /// `l0 = 0`: both photons carry the same mode, so the pair is a product state.
    pub fn product_state_control(aperture: AngularAperture, grid: GridSpec, waist: f64) -> Result<Self> {
        Self::build(0, aperture, grid, waist)
    }

    fn build(l0: i32, aperture: AngularAperture, grid: GridSpec, waist: f64) -> Result<Self> {
        if !(waist > 0.0 && waist.is_finite()) {
            return Err(Error::InvalidArgument(format!("waist {waist} must be positive")));
        }
        Ok(Self {
            l0,
            aperture,
            grid,
            waist,
            wavenumber: DEFAULT_WAVENUMBER,
            distance: 0.0,
        })
    }

    pub fn with_wavenumber(mut self, wavenumber: f64) -> Result<Self> {
        if !(wavenumber > 0.0 && wavenumber.is_finite()) {
            return Err(Error::InvalidArgument(format!("wavenumber {wavenumber} must be positive")));
        }
        self.wavenumber = wavenumber;
        Ok(self)
    }

    /// Propagates both diffracted photons over `distance` before the overlap.
    pub fn with_distance(mut self, distance: f64) -> Result<Self> {
        PropagatorSpec::new(distance)?;
        self.distance = distance;
        Ok(self)
    }

    pub fn l0(&self) -> i32 {
        self.l0
    }

    pub fn aperture(&self) -> &AngularAperture {
        &self.aperture
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn waist(&self) -> f64 {
        self.waist
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementResult {
    pub l0: i32,
    pub lambda: f64,
    /// Aperture angular width from the closed form, not measured on the field.
    pub delta_phi: f64,
    pub b_numeric: f64,
    pub b_analytic: f64,
    pub b_gaussian: f64,
    pub concurrence: f64,
    pub concurrence_universal: f64,
    pub transmitted_fraction: f64,
}

/// Renormalized diffracted images `(psi+, psi-)` of `u_{+l0}` and `u_{-l0}`,
/// propagated over the run distance, and the passive transmitted fraction.
pub fn diffracted_pair(spec: &BiphotonRunSpec) -> Result<(ScalarField, ScalarField, f64)> {
    let mode = LgModeSpec::new(spec.l0, spec.waist)?.with_wavenumber(spec.wavenumber);
    let (plus, fraction) = spec.aperture.apply(&lg_mode(&spec.grid, &mode))?;
    let (minus, _) = spec
        .aperture
        .apply(&lg_mode(&spec.grid, &LgModeSpec { l0: -spec.l0, ..mode }))?;
    let edge = plus.edge_max() / plus.peak();
    if edge > EDGE_AMPLITUDE_LIMIT {
        log::warn!("diffracted field reaches the grid edge (relative amplitude {edge:.2e})");
    }
    if spec.distance == 0.0 {
        return Ok((plus, minus, fraction));
    }
    let prop = PropagatorSpec::new(spec.distance)?;
    Ok((propagate(&plus, &prop), propagate(&minus, &prop), fraction))
}

/// Signed real overlap `Re <psi-|psi+>`, rejecting a non-negligible imaginary part.
pub fn real_overlap(minus: &ScalarField, plus: &ScalarField) -> Result<f64> {
    let b = inner_product(minus, plus)?;
    if b.im.abs() > IMAG_OVERLAP_LIMIT {
        return Err(Error::SymmetryViolation { imag: b.im });
    }
    Ok(b.re)
}

pub fn run_biphoton(spec: &BiphotonRunSpec) -> Result<EntanglementResult> {
    let (plus, minus, fraction) = diffracted_pair(spec)?;
    let b_numeric = real_overlap(&minus, &plus)?;
    let lambda = spec.aperture.lambda_width();
    let delta_phi = delta_phi_of_lambda(lambda);
    Ok(EntanglementResult {
        l0: spec.l0,
        lambda,
        delta_phi,
        b_numeric,
        b_analytic: overlap_analytic(lambda, spec.l0),
        b_gaussian: overlap_gaussian_approx(lambda, spec.l0),
        concurrence: concurrence_from_overlap(b_numeric)?,
        concurrence_universal: universal_concurrence(spec.l0, delta_phi),
        transmitted_fraction: fraction,
    })
}

/// Closed-form overlap of two intelligent states with mean OAM `+-l0`:
/// `b = exp(-l0^2/lambda) Re erf((pi lambda + i l0)/sqrt(lambda)) / erf(pi sqrt(lambda))`.
pub fn overlap_analytic(lambda: f64, l0: i32) -> f64 {
    let s = lambda.sqrt();
    scaled_erf_real_part(PI * s, l0 as f64 / s) / erf(PI * s)
}

/// The same overlap by adaptive quadrature of
/// `sqrt(lambda/pi) / erf(pi sqrt(lambda)) int_{-pi}^{pi} cos(2 l0 phi) exp(-lambda phi^2) dphi`.
pub fn overlap_quadrature(lambda: f64, l0: i32) -> Result<f64> {
    let freq = 2.0 * l0 as f64;
    let sigma = 1.0 / (2.0 * lambda).sqrt();
    let mut breaks: Vec<f64> = [sigma, 2.0 * sigma, 4.0 * sigma, 8.0 * sigma]
        .into_iter()
        .filter(|&b| b < PI)
        .collect();
    if freq > 0.0 {
        breaks.extend((1..(freq as usize)).map(|k| k as f64 * PI / freq));
        breaks.sort_by(f64::total_cmp);
    }
    let tol = Tolerance {
        abs: 1e-15,
        rel: 1e-13,
        max_intervals: 4000,
    };
    let half = integrate_with_breaks(|p| (freq * p).cos() * (-lambda * p * p).exp(), 0.0, PI, &breaks, tol)?;
    Ok((lambda / PI).sqrt() / erf(PI * lambda.sqrt()) * 2.0 * half)
}

/// `b ~ exp(-2 (l0 dphi)^2)` with `dphi` the aperture width.
pub fn overlap_gaussian_approx(lambda: f64, l0: i32) -> f64 {
    let x = l0 as f64 * delta_phi_of_lambda(lambda);
    (-2.0 * x * x).exp()
}

/// `C = (1 - b^2) / (1 + b^2)`; only `b^2` enters.
pub fn concurrence_from_overlap(b: f64) -> Result<f64> {
    if !b.is_finite() || b.abs() > 1.0 + 1e-9 {
        return Err(Error::Domain(format!("overlap {b} outside [-1, 1]")));
    }
    let b2 = (b * b).min(1.0);
    Ok((1.0 - b2) / (1.0 + b2))
}

/// `C ~ tanh(2 l0^2 dphi^2)`.
pub fn universal_concurrence(l0: i32, delta_phi: f64) -> f64 {
    let x = l0 as f64 * delta_phi;
    (2.0 * x * x).tanh()
}

/// Concurrence of the entangled coherent state
/// `|alpha>|-alpha> + |-alpha>|alpha>`, computed from its two-qubit
/// coefficients in the orthonormalized basis `{|alpha>, |alpha_perp>}`:
/// `2s|00> + r|01> + r|10>` with `s = <alpha|-alpha> = exp(-2 alpha^2)` and
/// `r = sqrt(1 - s^2)`.
pub fn coherent_state_concurrence(alpha: f64) -> f64 {
    let s = (-2.0 * alpha * alpha).exp();
    let r2 = -(-4.0 * alpha * alpha).exp_m1();
    let (c00, c01, c10, c11) = (2.0 * s, r2.sqrt(), r2.sqrt(), 0.0);
    let norm = c00 * c00 + c01 * c01 + c10 * c10 + c11 * c11;
    2.0 * (c00 * c11 - c01 * c10).abs() / norm
}

/// Tolerance of the coherent-state identity check.
pub const COHERENT_IDENTITY_TOL: f64 = 1e-12;

/// Coherent-state concurrence at `|alpha|`, checked against the universal law
/// with `l0 dphi = alpha`.
pub fn coherent_state_identity_check(alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} must be >= 0")));
    }
    let c = coherent_state_concurrence(alpha);
    let universal = universal_concurrence(1, alpha);
    if (c - universal).abs() > COHERENT_IDENTITY_TOL {
        return Err(Error::Domain(format!(
            "coherent-state concurrence {c} differs from tanh(2 alpha^2) = {universal}"
        )));
    }
    Ok(c)
}

/// Location of the minimum of the closed-form overlap over `lambda`, as
/// `(lambda, dphi, b)`. Searched by golden section in `log lambda` on
/// `[1e-3, 1e3]`.
pub fn overlap_minimum(l0: i32) -> Result<(f64, f64, f64)> {
    let f = |x: f64| overlap_analytic(x.exp(), l0);
    let (lo, hi) = (1e-3f64.ln(), 1e3f64.ln());
    let count = 241;
    let xs: Vec<f64> = (0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect();
    let best = (0..count)
        .min_by(|&a, &b| f(xs[a]).total_cmp(&f(xs[b])))
        .expect("non-empty scan");
    if best == 0 || best == count - 1 {
        return Err(Error::NoBracket);
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (xs[best - 1], xs[best + 1]);
    while b - a > 1e-12 {
        let c = b - inv_phi * (b - a);
        let d = a + inv_phi * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let lambda = (0.5 * (a + b)).exp();
    Ok((lambda, delta_phi_of_lambda(lambda), overlap_analytic(lambda, l0)))
}
