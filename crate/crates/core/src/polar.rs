//! Resampling of Cartesian fields onto a polar grid.
//!
//! Interpolation uses Keys' cubic convolution kernel (`a = -1/2`), which
//! reproduces quadratics exactly and has third-order error. Radii follow the
//! midpoint rule on `[0, r_max]`; azimuths are offset by half a sample,
//! `phi_j = -pi + (j + 1/2) 2pi / n_phi`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{GridSpec, ScalarField};

pub const DEFAULT_N_PHI: usize = 1024;

#[inline]
fn keys(t: f64) -> f64 {
    let t = t.abs();
    if t <= 1.0 {
        (1.5 * t - 2.5) * t * t + 1.0
    } else if t < 2.0 {
        ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0
    } else {
        0.0
    }
}

/// Cubic-convolution interpolation of `field` at `(x, y)`. The point must lie
/// at least `1.5 * step` inside the outermost sample.
#[inline]
pub fn interpolate(field: &ScalarField, x: f64, y: f64) -> Complex64 {
    let grid = field.grid();
    let n = grid.n();
    let step = grid.step();
    let u = (x + grid.half_width()) / step - 0.5;
    let v = (y + grid.half_width()) / step - 0.5;
    let i0 = u.floor() as isize;
    let j0 = v.floor() as isize;
    let mut wx = [0.0; 4];
    let mut wy = [0.0; 4];
    for k in 0..4 {
        wx[k] = keys(u - (i0 - 1 + k as isize) as f64);
        wy[k] = keys(v - (j0 - 1 + k as isize) as f64);
    }
    let samples = field.samples();
    let mut acc = Complex64::new(0.0, 0.0);
    for (b, &wyb) in wy.iter().enumerate() {
        let j = (j0 - 1 + b as isize) as usize;
        let row = &samples[j * n..(j + 1) * n];
        let mut line = Complex64::new(0.0, 0.0);
        for (a, &wxa) in wx.iter().enumerate() {
            line += row[(i0 - 1 + a as isize) as usize] * wxa;
        }
        acc += line * wyb;
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    n_rho: usize,
    n_phi: usize,
    r_max: f64,
}

impl PolarGrid {
    /// Largest radius whose interpolation stencil stays on `grid`.
    pub fn max_radius(grid: &GridSpec) -> f64 {
        grid.half_width() - 2.0 * grid.step()
    }

    pub fn new(grid: &GridSpec, n_rho: usize, n_phi: usize, r_max: f64) -> Result<Self> {
        let limit = Self::max_radius(grid);
        if r_max > limit {
            return Err(Error::InterpolationOutOfRange {
                radius: r_max,
                limit,
            });
        }
        if n_rho == 0 || n_phi < 4 || !(r_max > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "polar grid needs n_rho >= 1, n_phi >= 4 and r_max > 0 (got {n_rho}, {n_phi}, {r_max})"
            )));
        }
        Ok(Self { n_rho, n_phi, r_max })
    }

    /// `n/2` radii out to the largest interpolable radius.
    pub fn covering(grid: &GridSpec, n_phi: usize) -> Result<Self> {
        Self::new(grid, grid.n() / 2, n_phi, Self::max_radius(grid))
    }

    pub fn n_rho(&self) -> usize {
        self.n_rho
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn d_rho(&self) -> f64 {
        self.r_max / self.n_rho as f64
    }

    pub fn d_phi(&self) -> f64 {
        2.0 * PI / self.n_phi as f64
    }

    pub fn radii(&self) -> Vec<f64> {
        let dr = self.d_rho();
        (0..self.n_rho).map(|i| (i as f64 + 0.5) * dr).collect()
    }

    pub fn angles(&self) -> Vec<f64> {
        let dp = self.d_phi();
        (0..self.n_phi).map(|j| -PI + (j as f64 + 0.5) * dp).collect()
    }
}

/// Field values on a polar grid, one row of `n_phi` samples per radius.
#[derive(Debug, Clone)]
pub struct PolarSamples {
    pub grid: PolarGrid,
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl PolarSamples {
    pub fn ring(&self, i: usize) -> &[Complex64] {
        let m = self.grid.n_phi;
        &self.values[i * m..(i + 1) * m]
    }
}

pub fn resample(field: &ScalarField, polar: &PolarGrid) -> Result<PolarSamples> {
    let limit = PolarGrid::max_radius(field.grid());
    if polar.r_max > limit {
        return Err(Error::InterpolationOutOfRange {
            radius: polar.r_max,
            limit,
        });
    }
    let radii = polar.radii();
    let angles = polar.angles();
    let trig: Vec<(f64, f64)> = angles.iter().map(|a| (a.cos(), a.sin())).collect();
    let mut values = vec![Complex64::new(0.0, 0.0); polar.n_rho * polar.n_phi];
    values
        .par_chunks_mut(polar.n_phi)
        .zip(radii.par_iter())
        .for_each(|(ring, &r)| {
            for (v, &(c, s)) in ring.iter_mut().zip(&trig) {
                *v = interpolate(field, r * c, r * s);
            }
        });
    Ok(PolarSamples {
        grid: polar.clone(),
        radii,
        angles,
        values,
    })
}
