//! Paraxial angular-spectrum propagation,
//! `psi(z) = F^-1 { T(kappa, z) F[psi(0)] }` with
//! `T(kappa, z) = exp(i k z - i kappa^2 z / 2k)`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::field::{GridSpec, ScalarField};

#[derive(Clone)]
struct PlanPair {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

/// Thread-safe FFT plan store keyed by transform length.
fn plans(n: usize) -> PlanPair {
    static STORE: OnceLock<Mutex<(FftPlanner<f64>, HashMap<usize, PlanPair>)>> = OnceLock::new();
    let store = STORE.get_or_init(|| Mutex::new((FftPlanner::new(), HashMap::new())));
    let mut guard = store.lock().unwrap_or_else(|e| e.into_inner());
    let (planner, cache) = &mut *guard;
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let pair = PlanPair {
        forward: planner.plan_fft_forward(n),
        inverse: planner.plan_fft_inverse(n),
    };
    cache.insert(n, pair.clone());
    pair
}

/// One-dimensional FFT plan of length `n` from the shared store.
pub fn fft_plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let p = plans(n);
    if inverse {
        p.inverse
    } else {
        p.forward
    }
}

fn transform_rows(data: &mut [Complex64], n: usize, fft: &Arc<dyn Fft<f64>>) {
    data.par_chunks_mut(n * 16).for_each(|block| {
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for row in block.chunks_mut(n) {
            fft.process_with_scratch(row, &mut scratch);
        }
    });
}

fn transpose(data: &[Complex64], out: &mut [Complex64], n: usize) {
    out.par_chunks_mut(n).enumerate().for_each(|(r, row)| {
        for (c, v) in row.iter_mut().enumerate() {
            *v = data[c * n + r];
        }
    });
}

/// In-place 2-D DFT of an `n x n` row-major array. The inverse transform is
/// scaled by `1/n^2`, so a forward/inverse pair is the identity.
pub fn fft2(data: &mut [Complex64], n: usize, inverse: bool) {
    assert_eq!(data.len(), n * n, "fft2 expects an n x n array");
    let fft = fft_plan(n, inverse);
    let mut tmp = vec![Complex64::new(0.0, 0.0); n * n];
    transform_rows(data, n, &fft);
    transpose(data, &mut tmp, n);
    transform_rows(&mut tmp, n, &fft);
    transpose(&tmp, data, n);
    if inverse {
        let scale = 1.0 / (n * n) as f64;
        data.par_iter_mut().for_each(|v| *v *= scale);
    }
}

/// Angular spatial frequencies `2 pi f` of an `n`-point axis with the given
/// sample spacing, in FFT order.
pub fn spatial_frequencies(n: usize, step: f64) -> Vec<f64> {
    let dk = 2.0 * PI / (n as f64 * step);
    (0..n)
        .map(|i| {
            let m = if i < n / 2 { i as i64 } else { i as i64 - n as i64 };
            m as f64 * dk
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorSpec {
    distance: f64,
    pad_factor: usize,
}

impl PropagatorSpec {
    pub fn new(distance: f64) -> Result<Self> {
        if !(distance >= 0.0 && distance.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "propagation distance {distance} must be >= 0"
            )));
        }
        Ok(Self {
            distance,
            pad_factor: 1,
        })
    }

    /// Zero-pads the field by the given factor (1 or 2) before transforming.
    pub fn with_padding(mut self, pad_factor: usize) -> Result<Self> {
        if !matches!(pad_factor, 1 | 2) {
            return Err(Error::InvalidArgument(format!(
                "pad factor {pad_factor} must be 1 or 2"
            )));
        }
        self.pad_factor = pad_factor;
        Ok(self)
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }

    pub fn pad_factor(&self) -> usize {
        self.pad_factor
    }

    /// Largest change of the quadratic spectral phase between adjacent
    /// spectral samples (at the Nyquist frequency), in radians.
    pub fn max_phase_step(&self, grid: &GridSpec, wavenumber: f64) -> f64 {
        let n = grid.n() * self.pad_factor;
        let step = grid.step();
        let kappa_max = PI / step;
        let dk = 2.0 * PI / (n as f64 * step);
        kappa_max * dk * self.distance / wavenumber
    }

    pub fn satisfies_sampling(&self, grid: &GridSpec, wavenumber: f64) -> bool {
        self.max_phase_step(grid, wavenumber) < PI
    }
}

/// Transfer function `T(kappa, z) = exp(ikz) exp(-i kappa^2 z / 2k)`. The
/// carrier and diffraction phases are kept as separate factors since `kz` is
/// typically ~1e7 rad and would swamp the diffraction phase in one sum.
pub fn transfer(kappa_sq: f64, distance: f64, wavenumber: f64) -> Complex64 {
    carrier(distance, wavenumber) * diffraction_phase(kappa_sq, distance, wavenumber)
}

fn carrier(distance: f64, wavenumber: f64) -> Complex64 {
    Complex64::from_polar(1.0, wavenumber * distance)
}

fn diffraction_phase(kappa_sq: f64, distance: f64, wavenumber: f64) -> Complex64 {
    Complex64::from_polar(1.0, -kappa_sq * distance / (2.0 * wavenumber))
}

/// Multiplies the spectrum of `field` by `transfer(kappa^2)` on the
/// (optionally padded) grid and returns the cropped result.
pub fn apply_transfer<T>(field: &ScalarField, pad_factor: usize, transfer: T) -> ScalarField
where
    T: Fn(f64, f64) -> Complex64 + Sync,
{
    let grid = *field.grid();
    let n = grid.n();
    let big = n * pad_factor;
    let offset = (big - n) / 2;
    let mut data = if pad_factor == 1 {
        field.samples().to_vec()
    } else {
        let mut d = vec![Complex64::new(0.0, 0.0); big * big];
        for (j, row) in field.samples().chunks(n).enumerate() {
            d[(j + offset) * big + offset..(j + offset) * big + offset + n].copy_from_slice(row);
        }
        d
    };
    fft2(&mut data, big, false);
    let kappa = spatial_frequencies(big, grid.step());
    data.par_chunks_mut(big).enumerate().for_each(|(j, row)| {
        let ky = kappa[j];
        for (i, v) in row.iter_mut().enumerate() {
            *v *= transfer(kappa[i], ky);
        }
    });
    fft2(&mut data, big, true);
    let samples = if pad_factor == 1 {
        data
    } else {
        let mut s = Vec::with_capacity(n * n);
        for j in 0..n {
            s.extend_from_slice(&data[(j + offset) * big + offset..(j + offset) * big + offset + n]);
        }
        s
    };
    ScalarField::new(grid, field.wavenumber(), samples).expect("grid unchanged")
}

/// Propagates `field` over `spec.distance()`. Logs a warning when the
/// spectral phase is undersampled.
pub fn propagate(field: &ScalarField, spec: &PropagatorSpec) -> ScalarField {
    let k = field.wavenumber();
    let z = spec.distance;
    if z == 0.0 {
        return field.clone();
    }
    if !spec.satisfies_sampling(field.grid(), k) {
        log::warn!(
            "spectral phase step {:.3} rad exceeds pi at z={z}; propagated field will wrap around the grid",
            spec.max_phase_step(field.grid(), k)
        );
    }
    let carrier = carrier(z, k);
    apply_transfer(field, spec.pad_factor, |kx, ky| carrier * diffraction_phase(kx * kx + ky * ky, z, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{lg_mode, rayleigh_length, total_power, GridSpec, LgModeSpec};

    fn max_diff(a: &ScalarField, b: &ScalarField) -> f64 {
        a.samples()
            .iter()
            .zip(b.samples())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn fft_round_trip_preserves_power() {
        let g = GridSpec::new(128, 4.0).unwrap();
        let f = lg_mode(&g, &LgModeSpec::new(2, 1.0).unwrap());
        let mut d = f.samples().to_vec();
        fft2(&mut d, 128, false);
        let spectral: f64 = d.iter().map(|v| v.norm_sqr()).sum::<f64>() / (128.0 * 128.0);
        let spatial: f64 = f.samples().iter().map(|v| v.norm_sqr()).sum();
        assert!((spectral - spatial).abs() < 1e-10 * spatial);
        fft2(&mut d, 128, true);
        let back = ScalarField::new(g, f.wavenumber(), d).unwrap();
        assert!(max_diff(&back, &f) < 1e-12);
    }

    #[test]
    fn zero_distance_is_identity() {
        let g = GridSpec::new(128, 4.0).unwrap();
        let f = lg_mode(&g, &LgModeSpec::new(1, 1.0).unwrap());
        let out = propagate(&f, &PropagatorSpec::new(0.0).unwrap());
        assert_eq!(out, f);
        // the transform path itself is an identity to round-off
        let through = apply_transfer(&f, 1, |_, _| Complex64::new(1.0, 0.0));
        assert!(max_diff(&through, &f) < 1e-12);
    }

    #[test]
    fn frequencies_follow_fft_order() {
        let k = spatial_frequencies(8, 0.5);
        let dk = 2.0 * PI / 4.0;
        assert_eq!(k[0], 0.0);
        assert!((k[1] - dk).abs() < 1e-15);
        assert!((k[4] + 4.0 * dk).abs() < 1e-15);
        assert!((k[7] + dk).abs() < 1e-15);
    }

    #[test]
    fn unitary_and_semigroup() {
        let g = GridSpec::new(128, 4.0).unwrap();
        let f = lg_mode(&g, &LgModeSpec::new(3, 1.0).unwrap());
        let zr = rayleigh_length(f.wavenumber(), 1.0);
        let a = propagate(&f, &PropagatorSpec::new(0.25 * zr).unwrap());
        let ab = propagate(&a, &PropagatorSpec::new(0.5 * zr).unwrap());
        let direct = propagate(&f, &PropagatorSpec::new(0.75 * zr).unwrap());
        assert!((total_power(&a) - 1.0).abs() < 1e-10);
        assert!(max_diff(&ab, &direct) < 1e-10);
    }

    #[test]
    fn gaussian_width_grows_by_sqrt2_over_one_rayleigh_length() {
        let g = GridSpec::new(256, 6.0).unwrap();
        let w = 1.0;
        let f = lg_mode(&g, &LgModeSpec::new(0, w).unwrap());
        let zr = rayleigh_length(f.wavenumber(), w);
        let out = propagate(&f, &PropagatorSpec::new(zr).unwrap());
        let second_moment = |h: &ScalarField| {
            let c = g.coords();
            let n = g.n();
            let mut s = 0.0;
            for j in 0..n {
                for i in 0..n {
                    s += (c[i] * c[i] + c[j] * c[j]) * h.at(i, j).norm_sqr();
                }
            }
            s * g.step() * g.step()
        };
        let ratio = (second_moment(&out) / second_moment(&f)).sqrt();
        assert!((ratio - 2f64.sqrt()).abs() < 1e-6, "ratio {ratio}");
    }

    #[test]
    fn padding_agrees_when_field_stays_inside() {
        let g = GridSpec::new(128, 6.0).unwrap();
        let f = lg_mode(&g, &LgModeSpec::new(1, 1.0).unwrap());
        let z = 0.2 * rayleigh_length(f.wavenumber(), 1.0);
        let plain = propagate(&f, &PropagatorSpec::new(z).unwrap());
        let padded = propagate(&f, &PropagatorSpec::new(z).unwrap().with_padding(2).unwrap());
        assert!(max_diff(&plain, &padded) < 1e-8);
        assert!(PropagatorSpec::new(z).unwrap().with_padding(3).is_err());
    }

    #[test]
    fn sampling_constraint() {
        let g = GridSpec::new(512, 4.0).unwrap();
        let k = 1e4;
        let zr = rayleigh_length(k, 1.0);
        assert!(PropagatorSpec::new(0.01 * zr).unwrap().satisfies_sampling(&g, k));
        assert!(!PropagatorSpec::new(zr).unwrap().satisfies_sampling(&g, k));
        assert!(PropagatorSpec::new(-1.0).is_err());
    }
}
