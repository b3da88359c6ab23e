//! Angular and OAM probability densities, intelligent states and the
//! angle/angular-momentum uncertainty relation
//! `dphi * dl >= |1 - 2 pi P(pi)| / 2` on the interval `phi in [-pi, pi]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::polar::{resample, PolarGrid, PolarSamples, DEFAULT_N_PHI};
use crate::propagation::fft_plan;
use crate::quadrature::{integrate_with_breaks, Tolerance};
use crate::special::erf;

pub const MIN_N_PHI: usize = 256;
/// Spectrum mass below `1 - MASS_DEFICIT_LIMIT` is reported as a warning.
pub const MASS_DEFICIT_LIMIT: f64 = 1e-4;

/// Probability density `P(phi)` sampled at `phi_j = -pi + (j + 1/2) dphi`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularDensity {
    probs: Vec<f64>,
}

impl AngularDensity {
    /// Normalizes the samples to unit integral.
    pub fn from_samples(mut probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 4 {
            return Err(Error::InvalidArgument("angular density needs at least 4 samples".into()));
        }
        if probs.iter().any(|p| !(*p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidArgument("angular density must be finite and non-negative".into()));
        }
        let d_phi = 2.0 * PI / probs.len() as f64;
        let total: f64 = probs.iter().sum::<f64>() * d_phi;
        if !(total > 0.0) {
            return Err(Error::ZeroPower);
        }
        probs.iter_mut().for_each(|p| *p /= total);
        Ok(Self { probs })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(n_phi: usize, f: F) -> Result<Self> {
        let d = 2.0 * PI / n_phi as f64;
        Self::from_samples((0..n_phi).map(|j| f(-PI + (j as f64 + 0.5) * d)).collect())
    }

    pub fn uniform(n_phi: usize) -> Result<Self> {
        Self::from_fn(n_phi, |_| 1.0)
    }

    pub fn n_phi(&self) -> usize {
        self.probs.len()
    }

    pub fn d_phi(&self) -> f64 {
        2.0 * PI / self.probs.len() as f64
    }

    pub fn angles(&self) -> Vec<f64> {
        let d = self.d_phi();
        (0..self.n_phi()).map(|j| -PI + (j as f64 + 0.5) * d).collect()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn integral(&self) -> f64 {
        self.probs.iter().sum::<f64>() * self.d_phi()
    }

    pub fn mean(&self) -> f64 {
        let d = self.d_phi();
        self.angles().iter().zip(&self.probs).map(|(a, p)| a * p).sum::<f64>() * d
    }

    /// Variance on the fixed interval `[-pi, pi]`, without re-centering.
    pub fn variance(&self) -> f64 {
        let d = self.d_phi();
        let mean = self.mean();
        let second: f64 = self.angles().iter().zip(&self.probs).map(|(a, p)| a * a * p).sum::<f64>() * d;
        (second - mean * mean).max(0.0)
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    /// `P(pi)`: average of the samples nearest `-pi` and `+pi`.
    pub fn boundary_density(&self) -> f64 {
        0.5 * (self.probs[0] + self.probs[self.probs.len() - 1])
    }
}

/// Discrete OAM distribution `P(l)` for `l` in `[l_min, l_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OamSpectrum {
    l_min: i32,
    probs: Vec<f64>,
}

impl OamSpectrum {
    pub fn new(l_min: i32, probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidArgument("empty OAM spectrum".into()));
        }
        if probs.iter().any(|p| !(*p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidArgument("OAM probabilities must be finite and non-negative".into()));
        }
        Ok(Self { l_min, probs })
    }

    pub fn l_min(&self) -> i32 {
        self.l_min
    }

    pub fn l_max(&self) -> i32 {
        self.l_min + self.probs.len() as i32 - 1
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, l: i32) -> f64 {
        if l < self.l_min || l > self.l_max() {
            0.0
        } else {
            self.probs[(l - self.l_min) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.probs.iter().enumerate().map(move |(k, &p)| (self.l_min + k as i32, p))
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(l, p)| l as f64 * p).sum::<f64>() / self.total()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        let second = self.iter().map(|(l, p)| (l as f64).powi(2) * p).sum::<f64>() / self.total();
        (second - m * m).max(0.0)
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Largest `|P(l) - Q(l)|` over the union of both ranges.
    pub fn sup_distance(&self, other: &OamSpectrum) -> f64 {
        let lo = self.l_min.min(other.l_min);
        let hi = self.l_max().max(other.l_max());
        (lo..=hi).map(|l| (self.prob(l) - other.prob(l)).abs()).fold(0.0, f64::max)
    }
}

/// Writes `l,P_l` rows.
pub fn write_spectrum_csv<W: std::io::Write>(spectrum: &OamSpectrum, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["l", "P_l"])?;
    for (l, p) in spectrum.iter() {
        writer.write_record([l.to_string(), format!("{p:e}")])?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes `phi,P_phi` rows.
pub fn write_density_csv<W: std::io::Write>(density: &AngularDensity, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["phi", "P_phi"])?;
    for (phi, p) in density.angles().iter().zip(density.probs()) {
        writer.write_record([format!("{phi:e}"), format!("{p:e}")])?;
    }
    writer.flush()?;
    Ok(())
}

/// `l` range `lbar +- 6 dl` (at least +-8) for an intelligent state.
pub fn suggested_l_range(lambda_width: f64, l_bar: f64) -> (i32, i32) {
    let half = (6.0 * delta_l_of_lambda(lambda_width)).ceil().max(8.0) as i32;
    let centre = l_bar.round() as i32;
    (centre - half, centre + half)
}

fn density_from_polar(polar: &PolarSamples) -> Result<AngularDensity> {
    let m = polar.grid.n_phi();
    let dr = polar.grid.d_rho();
    let mut probs = vec![0.0; m];
    for (i, &r) in polar.radii.iter().enumerate() {
        let w = r * dr;
        for (p, v) in probs.iter_mut().zip(polar.ring(i)) {
            *p += v.norm_sqr() * w;
        }
    }
    AngularDensity::from_samples(probs)
}

fn spectrum_from_polar(polar: &PolarSamples, l_min: i32, l_max: i32) -> Result<OamSpectrum> {
    let m = polar.grid.n_phi();
    if l_min > l_max || (l_max.max(-l_min) as usize) >= m / 2 {
        return Err(Error::InvalidArgument(format!(
            "l range [{l_min}, {l_max}] must be ordered and within +-{} for n_phi={m}",
            m / 2 - 1
        )));
    }
    let fft = fft_plan(m, false);
    let dr = polar.grid.d_rho();
    let norm = 1.0 / m as f64;
    let per_ring: Vec<Vec<f64>> = polar
        .radii
        .par_iter()
        .enumerate()
        .map(|(i, &r)| {
            let mut buf: Vec<Complex64> = polar.ring(i).to_vec();
            fft.process(&mut buf);
            let w = 2.0 * PI * r * dr * norm * norm;
            (l_min..=l_max)
                .map(|l| buf[l.rem_euclid(m as i32) as usize].norm_sqr() * w)
                .collect()
        })
        .collect();
    let mut probs = vec![0.0; (l_max - l_min + 1) as usize];
    for ring in &per_ring {
        for (p, v) in probs.iter_mut().zip(ring) {
            *p += v;
        }
    }
    let spectrum = OamSpectrum::new(l_min, probs)?;
    let total = spectrum.total();
    if total < 1.0 - MASS_DEFICIT_LIMIT {
        log::warn!(
            "OAM spectrum over [{l_min}, {l_max}] holds mass {total:.6}; range or polar domain misses part of the field"
        );
    }
    Ok(spectrum)
}

pub fn angular_density(field: &ScalarField, n_phi: usize) -> Result<AngularDensity> {
    if n_phi < MIN_N_PHI {
        return Err(Error::InvalidArgument(format!("n_phi {n_phi} < {MIN_N_PHI}")));
    }
    let polar = resample(field, &PolarGrid::covering(field.grid(), n_phi)?)?;
    density_from_polar(&polar)
}

/// OAM spectrum `P(l) = 2 pi sum_i |c_l(rho_i)|^2 rho_i drho`, with `c_l` the
/// azimuthal Fourier coefficients of the polar-resampled field. The sum over
/// all `l` equals the power inside the resampled disk.
pub fn oam_spectrum(field: &ScalarField, l_min: i32, l_max: i32) -> Result<OamSpectrum> {
    let polar = resample(field, &PolarGrid::covering(field.grid(), DEFAULT_N_PHI)?)?;
    spectrum_from_polar(&polar, l_min, l_max)
}

/// Angular density and OAM spectrum from a single polar resampling.
pub fn analyze_field(
    field: &ScalarField,
    n_phi: usize,
    l_min: i32,
    l_max: i32,
) -> Result<(AngularDensity, OamSpectrum)> {
    if n_phi < MIN_N_PHI {
        return Err(Error::InvalidArgument(format!("n_phi {n_phi} < {MIN_N_PHI}")));
    }
    let polar = resample(field, &PolarGrid::covering(field.grid(), n_phi)?)?;
    Ok((density_from_polar(&polar)?, spectrum_from_polar(&polar, l_min, l_max)?))
}

/// `dphi^2 = 1/(2 lambda) - sqrt(pi) exp(-pi^2 lambda) / (sqrt(lambda) erf(pi sqrt(lambda)))`.
pub fn delta_phi_of_lambda(lambda_width: f64) -> f64 {
    let l = lambda_width;
    let correction = PI.sqrt() * (-PI * PI * l).exp() / (l.sqrt() * erf(PI * l.sqrt()));
    (0.5 / l - correction).max(0.0).sqrt()
}

/// `dl = |lambda| dphi`.
pub fn delta_l_of_lambda(lambda_width: f64) -> f64 {
    lambda_width.abs() * delta_phi_of_lambda(lambda_width)
}

/// Truncated-Gaussian intelligent state
/// `g(phi) = N exp(i lbar phi) exp(-lambda phi^2 / 2)` on `[-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IntelligentState {
    pub lambda_width: f64,
    pub l_bar: f64,
}

impl IntelligentState {
    pub fn new(lambda_width: f64, l_bar: f64) -> Result<Self> {
        if !(lambda_width > 0.0 && lambda_width.is_finite()) {
            return Err(Error::InvalidArgument(format!("lambda {lambda_width} must be > 0")));
        }
        if !l_bar.is_finite() {
            return Err(Error::InvalidArgument("mean OAM must be finite".into()));
        }
        Ok(Self { lambda_width, l_bar })
    }

    pub fn normalization(&self) -> f64 {
        let l = self.lambda_width;
        (l / PI).powf(0.25) / erf(PI * l.sqrt()).sqrt()
    }

    pub fn angle_wavefunction(&self, phi: f64) -> Complex64 {
        Complex64::from_polar(
            self.normalization() * (-0.5 * self.lambda_width * phi * phi).exp(),
            self.l_bar * phi,
        )
    }

    /// `g(l) = (2 pi)^-1/2 int_{-pi}^{pi} exp(-i l phi) g(phi) dphi`. The
    /// interval is symmetric and `|g(phi)|` even, so the value is real.
    pub fn oam_amplitude(&self, l: i32) -> Result<f64> {
        let a = self.l_bar - l as f64;
        let lam = self.lambda_width;
        let sigma = 1.0 / lam.sqrt();
        let mut breaks: Vec<f64> = [sigma, 2.0 * sigma, 4.0 * sigma, 8.0 * sigma]
            .into_iter()
            .filter(|&b| b < PI)
            .collect();
        if a.abs() > 4.0 {
            let period = PI / a.abs();
            let count = (PI / period) as usize;
            breaks.extend((1..count).map(|k| k as f64 * period));
            breaks.sort_by(f64::total_cmp);
        }
        let tol = Tolerance {
            abs: 1e-15,
            rel: 1e-13,
            max_intervals: 4000,
        };
        let half = integrate_with_breaks(
            |phi| (a * phi).cos() * (-0.5 * lam * phi * phi).exp(),
            0.0,
            PI,
            &breaks,
            tol,
        )?;
        Ok(self.normalization() * 2.0 * half / (2.0 * PI).sqrt())
    }

    /// Same amplitude from the convolution form
    /// `(lambda pi)^-1/4 / sqrt(erf(pi sqrt(lambda))) int sinc(k pi) exp(-(l + k - lbar)^2 / 2 lambda) dk`,
    /// truncated where the Gaussian exponent reaches 40.
    pub fn oam_amplitude_sinc(&self, l: i32) -> Result<f64> {
        let lam = self.lambda_width;
        let centre = self.l_bar - l as f64;
        let reach = (80.0 * lam).sqrt();
        let (lo, hi) = (centre - reach, centre + reach);
        let breaks: Vec<f64> = ((lo.ceil() as i64)..=(hi.floor() as i64)).map(|k| k as f64).collect();
        let tol = Tolerance {
            abs: 1e-15 * (breaks.len() + 10) as f64,
            rel: 1e-13,
            max_intervals: breaks.len() + 4000,
        };
        let integral = integrate_with_breaks(
            |k| {
                let x = PI * k;
                let sinc = if x.abs() < 1e-8 { 1.0 - x * x / 6.0 } else { x.sin() / x };
                let d = k - centre;
                sinc * (-d * d / (2.0 * lam)).exp()
            },
            lo,
            hi,
            &breaks,
            tol,
        )?;
        Ok((lam * PI).powf(-0.25) / erf(PI * lam.sqrt()).sqrt() * integral)
    }

    pub fn oam_probability(&self, l: i32) -> Result<f64> {
        self.oam_amplitude(l).map(|a| a * a)
    }

    pub fn spectrum(&self, l_min: i32, l_max: i32) -> Result<OamSpectrum> {
        let probs = (l_min..=l_max)
            .map(|l| self.oam_probability(l))
            .collect::<Result<Vec<_>>>()?;
        OamSpectrum::new(l_min, probs)
    }

    pub fn delta_phi(&self) -> f64 {
        delta_phi_of_lambda(self.lambda_width)
    }

    pub fn delta_l(&self) -> f64 {
        delta_l_of_lambda(self.lambda_width)
    }

    /// `|g(pi)|^2`.
    pub fn boundary_density(&self) -> f64 {
        self.angle_wavefunction(PI).norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct UncertaintyReport {
    pub delta_phi: f64,
    pub delta_l: f64,
    pub p_boundary: f64,
    /// `dphi * dl - |1 - 2 pi P(pi)| / 2`; zero for an intelligent state.
    pub product_gap: f64,
}

impl UncertaintyReport {
    pub fn lower_bound(&self) -> f64 {
        (1.0 - 2.0 * PI * self.p_boundary).abs() / 2.0
    }

    pub fn product(&self) -> f64 {
        self.delta_phi * self.delta_l
    }
}

pub fn uncertainty_report(density: &AngularDensity, spectrum: &OamSpectrum) -> UncertaintyReport {
    let delta_phi = density.std_dev();
    let delta_l = spectrum.std_dev();
    let p_boundary = density.boundary_density();
    let bound = (1.0 - 2.0 * PI * p_boundary).abs() / 2.0;
    UncertaintyReport {
        delta_phi,
        delta_l,
        p_boundary,
        product_gap: delta_phi * delta_l - bound,
    }
}

pub const FIT_LAMBDA_MIN: f64 = 1e-3;
pub const FIT_LAMBDA_MAX: f64 = 1e4;
const FIT_SCAN_POINTS: usize = 57;
const GOLDEN_TOL: f64 = 1e-9;

/// Sum of squared differences between `spectrum` and `|g(l)|^2`.
pub fn fit_objective(spectrum: &OamSpectrum, state: &IntelligentState) -> Result<f64> {
    spectrum
        .iter()
        .map(|(l, p)| state.oam_probability(l).map(|q| (p - q).powi(2)))
        .sum()
}

/// Least-squares fit of `|g(l; lambda, lbar)|^2` to `spectrum` with `lbar`
/// held fixed. A coarse log-spaced scan brackets the minimum, golden-section
/// search refines it in `log lambda`. Returns the fitted state and the
/// residual sum of squares.
pub fn fit_intelligent(spectrum: &OamSpectrum, l_bar: f64) -> Result<(IntelligentState, f64)> {
    let objective = |log_lambda: f64| -> Result<f64> {
        fit_objective(spectrum, &IntelligentState::new(log_lambda.exp(), l_bar)?)
    };
    let (lo, hi) = (FIT_LAMBDA_MIN.ln(), FIT_LAMBDA_MAX.ln());
    let xs: Vec<f64> = (0..FIT_SCAN_POINTS)
        .map(|k| lo + (hi - lo) * k as f64 / (FIT_SCAN_POINTS - 1) as f64)
        .collect();
    let values = xs
        .par_iter()
        .map(|&x| objective(x))
        .collect::<Result<Vec<_>>>()?;
    let best = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .expect("scan is non-empty");
    if best == 0 || best == FIT_SCAN_POINTS - 1 {
        return Err(Error::NoBracket);
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (xs[best - 1], xs[best + 1]);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = objective(c)?;
    let mut fd = objective(d)?;
    while (b - a).abs() > GOLDEN_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d)?;
        }
    }
    let x = 0.5 * (a + b);
    let state = IntelligentState::new(x.exp(), l_bar)?;
    let residual = objective(x)?;
    Ok((state, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aperture::AngularAperture;
    use crate::field::{lg_mode, GridSpec, LgModeSpec};

    const SQRT3: f64 = 1.7320508075688772;

    #[test]
    fn delta_phi_reference_values() {
        // 40-digit evaluations of the closed form (cross-checked by quadrature).
        let cases = [
            (0.005, 1.8018823467988106445),
            (0.5, 0.99093000718975673058),
            (1.0, 0.70704195223882338335),
            (2.0, 0.49999999664702372704),
            (10.0, 0.22360679774997896964),
            (100.0, 0.07071067811865475244),
        ];
        for (l, expected) in cases {
            assert!((delta_phi_of_lambda(l) - expected).abs() < 1e-12, "lambda={l}");
        }
    }

    #[test]
    fn delta_phi_open_limit_and_monotonicity() {
        assert!((delta_phi_of_lambda(1e-4) - PI / SQRT3).abs() < 1e-3);
        let mut last = f64::INFINITY;
        for k in 0..100 {
            let l = 1e-4 * 10f64.powf(8.0 * k as f64 / 99.0);
            let d = delta_phi_of_lambda(l);
            assert!(d < last && d <= PI / SQRT3 + 1e-9);
            last = d;
        }
        for l in [0.01, 0.3, 5.0] {
            let prod = delta_phi_of_lambda(l) * delta_l_of_lambda(l);
            assert!((prod - l * delta_phi_of_lambda(l).powi(2)).abs() < 1e-14);
        }
    }

    #[test]
    fn wavefunction_normalized_and_phase_only_in_lbar() {
        let s = IntelligentState::new(1.3, 0.0).unwrap();
        let shifted = IntelligentState::new(1.3, 4.0).unwrap();
        let tol = Tolerance::default();
        let norm = crate::quadrature::integrate(|p| s.angle_wavefunction(p).norm_sqr(), -PI, PI, tol).unwrap();
        assert!((norm - 1.0).abs() < 1e-10);
        for phi in [-3.0, -0.4, 0.0, 1.1, 2.9] {
            assert!((s.angle_wavefunction(phi).norm() - shifted.angle_wavefunction(phi).norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn wavefunction_solves_its_differential_equation() {
        let s = IntelligentState::new(2.7, 3.0).unwrap();
        let h = 1e-3;
        for phi in [-2.0, -0.5, 0.3, 1.7] {
            let g = |p: f64| s.angle_wavefunction(p);
            let dg = (g(phi - 2.0 * h) - 8.0 * g(phi - h) + 8.0 * g(phi + h) - g(phi + 2.0 * h)) / (12.0 * h);
            let i = Complex64::i();
            let residual = i * dg + s.l_bar * g(phi) + i * s.lambda_width * phi * g(phi);
            assert!(residual.norm() < 1e-8, "phi={phi} residual={}", residual.norm());
        }
    }

    #[test]
    fn oam_amplitude_reference_values() {
        let s = IntelligentState::new(2.0, 0.0).unwrap();
        let expected = [
            0.6316131715100995885,
            0.49191069185387495074,
            0.23235438678066033941,
            0.066576844516561778183,
        ];
        for (l, e) in expected.iter().enumerate() {
            assert!((s.oam_amplitude(l as i32).unwrap() - e).abs() < 1e-12);
            assert!((s.oam_amplitude(-(l as i32)).unwrap() - e).abs() < 1e-12);
        }
        let wide = IntelligentState::new(0.5, 0.0).unwrap();
        assert!((wide.oam_amplitude(7).unwrap() - 0.0013426873866551531683).abs() < 1e-13);
    }

    #[test]
    fn sinc_form_agrees() {
        for (lam, lbar) in [(0.01, 0.0), (0.5, 1.0), (2.0, 0.0), (30.0, -2.0)] {
            let s = IntelligentState::new(lam, lbar).unwrap();
            for l in [-3, 0, 1, 4] {
                let a = s.oam_amplitude(l).unwrap();
                let b = s.oam_amplitude_sinc(l).unwrap();
                assert!((a - b).abs() < 1e-8, "lambda={lam} l={l}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn parseval_and_variance() {
        let s = IntelligentState::new(100.0, 0.0).unwrap();
        let spec = s.spectrum(-80, 80).unwrap();
        assert!((spec.total() - 1.0).abs() < 1e-8);
        let expected = s.delta_l().powi(2);
        assert!((spec.variance() - expected).abs() < 1e-6 * expected);
        let s2 = IntelligentState::new(2.0, 0.0).unwrap();
        let spec2 = s2.spectrum(-200, 200).unwrap();
        assert!((spec2.variance() - s2.delta_l().powi(2)).abs() < 1e-6);
    }

    #[test]
    fn integer_shift_moves_spectrum() {
        let base = IntelligentState::new(1.0, 0.0).unwrap().spectrum(-20, 20).unwrap();
        let shifted = IntelligentState::new(1.0, 5.0).unwrap();
        for l in -20..=20 {
            assert!((shifted.oam_probability(l + 5).unwrap() - base.prob(l)).abs() < 1e-3);
        }
    }

    #[test]
    fn uncertainty_of_analytic_state_saturates() {
        let s = IntelligentState::new(2.0, 0.0).unwrap();
        let density = AngularDensity::from_fn(4096, |p| s.angle_wavefunction(p).norm_sqr()).unwrap();
        let spectrum = s.spectrum(-60, 60).unwrap();
        let r = uncertainty_report(&density, &spectrum);
        assert!(r.product_gap.abs() < 1e-4, "gap {}", r.product_gap);
        assert!((r.delta_phi - s.delta_phi()).abs() < 1e-6);
    }

    #[test]
    fn uniform_density_single_l() {
        let density = AngularDensity::uniform(1024).unwrap();
        let spectrum = OamSpectrum::new(3, vec![1.0]).unwrap();
        let r = uncertainty_report(&density, &spectrum);
        assert!((r.delta_phi - PI / SQRT3).abs() < 1e-5);
        assert_eq!(r.delta_l, 0.0);
        assert!((r.p_boundary - 1.0 / (2.0 * PI)).abs() < 1e-12);
        assert!(r.lower_bound() < 1e-12);
        assert!(r.product_gap.abs() < 1e-12);
    }

    #[test]
    fn density_of_unapertured_mode_is_flat() {
        let g = GridSpec::new(512, 4.0).unwrap();
        let f = lg_mode(&g, &LgModeSpec::new(2, 1.0).unwrap());
        let d = angular_density(&f, 512).unwrap();
        assert!((d.integral() - 1.0).abs() < 1e-12);
        let flat = 1.0 / (2.0 * PI);
        assert!(d.probs().iter().all(|p| (p - flat).abs() < 1e-4));
        assert!(angular_density(&f, 128).is_err());
    }

    #[test]
    fn density_of_apertured_mode_follows_gaussian() {
        let g = GridSpec::new(512, 4.0).unwrap();
        let (f, _) = AngularAperture::for_waist(1.0, 1.0)
            .unwrap()
            .apply(&lg_mode(&g, &LgModeSpec::new(0, 1.0).unwrap()))
            .unwrap();
        let d = angular_density(&f, 1024).unwrap();
        let angles = d.angles();
        let peak = d.probs().iter().cloned().fold(0.0, f64::max);
        let mid = d.n_phi() / 2;
        assert!(d.probs()[mid] == peak || d.probs()[mid - 1] == peak);
        let s = IntelligentState::new(1.0, 0.0).unwrap();
        for j in (0..d.n_phi()).step_by(64) {
            let expected = s.angle_wavefunction(angles[j]).norm_sqr();
            assert!((d.probs()[j] - expected).abs() < 2e-3 * s.normalization().powi(2));
        }
        assert!((d.boundary_density() - s.boundary_density()).abs() < 1e-5);
    }

    #[test]
    fn spectrum_of_pure_vortex() {
        let g = GridSpec::new(512, 4.0).unwrap();
        let f = lg_mode(&g, &LgModeSpec::new(3, 1.0).unwrap());
        let spec = oam_spectrum(&f, -20, 20).unwrap();
        assert!(spec.prob(3) >= 1.0 - 1e-6, "P(3) = {}", spec.prob(3));
        assert!(spec.iter().filter(|(l, _)| *l != 3).all(|(_, p)| p < 1e-8));
    }

    #[test]
    fn spectrum_range_checks() {
        let g = GridSpec::new(128, 4.0).unwrap();
        let f = lg_mode(&g, &LgModeSpec::new(0, 1.0).unwrap());
        assert!(oam_spectrum(&f, 5, 2).is_err());
        assert!(oam_spectrum(&f, -600, 0).is_err());
    }

    #[test]
    fn self_fit_round_trip() {
        let truth = IntelligentState::new(7.0, 0.0).unwrap();
        let spec = truth.spectrum(-30, 30).unwrap();
        let (fit, residual) = fit_intelligent(&spec, 0.0).unwrap();
        assert!((fit.lambda_width / 7.0 - 1.0).abs() < 1e-3);
        assert!(residual < 1e-12);
    }

    #[test]
    fn monotone_objective_has_no_bracket() {
        // A delta spectrum is best matched by lambda -> infinity.
        let spec = OamSpectrum::new(0, vec![1.0]).unwrap();
        assert!(matches!(fit_intelligent(&spec, 0.0), Err(Error::NoBracket)));
    }

    #[test]
    fn csv_exports() {
        let mut buf = Vec::new();
        write_spectrum_csv(&OamSpectrum::new(-1, vec![0.25, 0.5, 0.25]).unwrap(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "l,P_l\n-1,2.5e-1\n0,5e-1\n1,2.5e-1\n");
        let mut buf = Vec::new();
        write_density_csv(&AngularDensity::uniform(4).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("phi,P_phi\n-2.356194490192345e0,"));
    }

    #[test]
    fn suggested_range_covers_six_sigma() {
        let (lo, hi) = suggested_l_range(10.0, 2.0);
        let dl = delta_l_of_lambda(10.0);
        assert!(lo as f64 <= 2.0 - 6.0 * dl && hi as f64 >= 2.0 + 6.0 * dl);
    }
}
