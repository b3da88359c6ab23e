//! Sampled transverse fields on a square Cartesian grid.
//!
//! Samples are cell-centered: sample `(i, j)` sits at
//! `x = (i - n/2 + 1/2) * step`, `y = (j - n/2 + 1/2) * step`, so no sample
//! falls on the origin where the azimuthal phase of an OAM mode is undefined.
//! Storage is row-major with rows running along `y`: index `j * n + i`.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::sync::Mutex;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default wavenumber in inverse length units (lengths are measured in units
/// of the beam waist in every default configuration).
pub const DEFAULT_WAVENUMBER: f64 = 1.0e4;

/// Edge amplitude, relative to the peak, above which a mode is considered
/// aliased by the finite grid.
pub const EDGE_AMPLITUDE_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GridSpec {
    n: usize,
    half_width: f64,
}

impl GridSpec {
    /// `n` must be a power of two no smaller than 64.
    pub fn new(n: usize, half_width: f64) -> Result<Self> {
        if n < 64 || !n.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "grid size {n} must be a power of two >= 64"
            )));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "half width {half_width} must be positive and finite"
            )));
        }
        Ok(Self { n, half_width })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Physical coordinate of sample index `i` along either axis.
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - self.n as f64 / 2.0 + 0.5) * self.step()
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.coord(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: GridSpec,
    wavenumber: f64,
    samples: Vec<Complex64>,
}

impl ScalarField {
    pub fn new(grid: GridSpec, wavenumber: f64, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        if !(wavenumber > 0.0 && wavenumber.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "wavenumber {wavenumber} must be positive"
            )));
        }
        Ok(Self {
            grid,
            wavenumber,
            samples,
        })
    }

    pub fn zeros(grid: GridSpec, wavenumber: f64) -> Self {
        Self {
            grid,
            wavenumber,
            samples: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Samples `f(x, y)` at every grid point.
    pub fn from_fn<F>(grid: GridSpec, wavenumber: f64, f: F) -> Self
    where
        F: Fn(f64, f64) -> Complex64 + Sync,
    {
        let n = grid.n();
        let coords = grid.coords();
        let mut samples = vec![Complex64::new(0.0, 0.0); grid.len()];
        samples.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
            let y = coords[j];
            for (i, s) in row.iter_mut().enumerate() {
                *s = f(coords[i], y);
            }
        });
        Self {
            grid,
            wavenumber,
            samples,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.samples[j * self.grid.n() + i]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.samples.par_iter_mut().for_each(|s| *s *= factor);
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        out.samples.par_iter_mut().for_each(|s| *s = s.conj());
        out
    }

    /// Largest modulus among samples on the outermost ring of the grid.
    pub fn edge_max(&self) -> f64 {
        let n = self.grid.n();
        let mut m: f64 = 0.0;
        for k in 0..n {
            for (i, j) in [(k, 0), (k, n - 1), (0, k), (n - 1, k)] {
                m = m.max(self.at(i, j).norm());
            }
        }
        m
    }

    pub fn peak(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }
}

/// Laguerre-Gaussian mode with radial index zero.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LgModeSpec {
    pub l0: i32,
    pub waist: f64,
    pub wavenumber: f64,
}

impl LgModeSpec {
    pub fn new(l0: i32, waist: f64) -> Result<Self> {
        if !(waist > 0.0 && waist.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "beam waist {waist} must be positive"
            )));
        }
        Ok(Self {
            l0,
            waist,
            wavenumber: DEFAULT_WAVENUMBER,
        })
    }

    pub fn with_wavenumber(mut self, wavenumber: f64) -> Self {
        self.wavenumber = wavenumber;
        self
    }

    /// Unnormalized amplitude `(rho/w)^|l0| exp(i l0 phi) exp(-rho^2/w^2)`.
    #[inline]
    pub fn amplitude(&self, x: f64, y: f64) -> Complex64 {
        let r = x.hypot(y) / self.waist;
        let modulus = r.powi(self.l0.abs()) * (-r * r).exp();
        Complex64::from_polar(modulus, self.l0 as f64 * y.atan2(x))
    }

    /// Modulus at radius `rho` divided by the peak modulus of the ring profile.
    pub fn relative_amplitude_at(&self, rho: f64) -> f64 {
        let l = self.l0.unsigned_abs() as f64;
        let r = rho / self.waist;
        let value = r.powf(l) * (-r * r).exp();
        let peak = if l == 0.0 {
            1.0
        } else {
            (l / 2.0).powf(l / 2.0) * (-l / 2.0).exp()
        };
        value / peak
    }

    pub fn rayleigh_length(&self) -> f64 {
        rayleigh_length(self.wavenumber, self.waist)
    }
}

/// `k w^2 / 2`.
pub fn rayleigh_length(wavenumber: f64, waist: f64) -> f64 {
    0.5 * wavenumber * waist * waist
}

/// Samples a unit-power LG mode. Logs an aliasing warning (once per mode
/// and grid) when the mode is not negligible at the grid edge.
pub fn lg_mode(grid: &GridSpec, spec: &LgModeSpec) -> ScalarField {
    static WARNED: Mutex<BTreeSet<(i32, usize, u64, u64)>> = Mutex::new(BTreeSet::new());
    let edge = spec.relative_amplitude_at(grid.half_width());
    let key = (spec.l0, grid.n(), grid.half_width().to_bits(), spec.waist.to_bits());
    if edge > EDGE_AMPLITUDE_LIMIT && WARNED.lock().map(|mut w| w.insert(key)).unwrap_or(true) {
        log::warn!(
            "LG mode l0={} reaches {:.2e} of its peak at the grid edge (limit {:.0e}); expect aliasing",
            spec.l0,
            edge,
            EDGE_AMPLITUDE_LIMIT
        );
    }
    lg_mode_unchecked(grid, spec)
}

pub(crate) fn lg_mode_unchecked(grid: &GridSpec, spec: &LgModeSpec) -> ScalarField {
    let field = ScalarField::from_fn(*grid, spec.wavenumber, |x, y| spec.amplitude(x, y));
    normalize(&field).expect("LG mode has positive power on any valid grid")
}

fn row_sums<F>(n: usize, len: usize, f: F) -> Vec<Complex64>
where
    F: Fn(usize) -> Complex64 + Sync,
{
    (0..len / n)
        .into_par_iter()
        .map(|j| (0..n).map(|i| f(j * n + i)).sum())
        .collect()
}

/// `sum conj(f) g step^2`. Rows are reduced in parallel and combined in a
/// fixed order, so the result is bitwise reproducible.
pub fn inner_product(f: &ScalarField, g: &ScalarField) -> Result<Complex64> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch);
    }
    let (a, b) = (&f.samples, &g.samples);
    let rows = row_sums(f.grid.n(), a.len(), |k| a[k].conj() * b[k]);
    let step = f.grid.step();
    Ok(rows.into_iter().sum::<Complex64>() * (step * step))
}

pub fn total_power(f: &ScalarField) -> f64 {
    let s = &f.samples;
    let rows = row_sums(f.grid.n(), s.len(), |k| Complex64::new(s[k].norm_sqr(), 0.0));
    let step = f.grid.step();
    rows.into_iter().map(|c| c.re).sum::<f64>() * step * step
}

pub fn normalize(f: &ScalarField) -> Result<ScalarField> {
    let p = total_power(f);
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::ZeroPower);
    }
    Ok(f.scaled(1.0 / p.sqrt()))
}

/// Header line of the text field dump.
pub fn dump_header(f: &ScalarField) -> String {
    format!(
        "# oamfield v1 n={} half_width={:?} k={:?}",
        f.grid.n(),
        f.grid.half_width(),
        f.wavenumber
    )
}

/// Writes the header line followed by one line per grid row (`y` index),
/// each holding `re im` pairs for increasing `x`.
pub fn write_dump<W: Write>(f: &ScalarField, mut out: W) -> Result<()> {
    writeln!(out, "{}", dump_header(f))?;
    let n = f.grid.n();
    let mut line = String::new();
    for row in f.samples.chunks(n) {
        line.clear();
        for (i, s) in row.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&format!("{:e} {:e}", s.re, s.im));
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn header_value<'a>(token: Option<&'a str>, key: &str) -> Result<&'a str> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::Format(format!("expected `{key}=` in header")))
}

pub fn read_dump<R: BufRead>(input: R) -> Result<ScalarField> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty input".into()))??;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("#") || tokens.next() != Some("oamfield") || tokens.next() != Some("v1")
    {
        return Err(Error::Format(format!("bad header `{header}`")));
    }
    let parse_err = |e: &dyn std::fmt::Display| Error::Format(e.to_string());
    let n: usize = header_value(tokens.next(), "n")?
        .parse()
        .map_err(|e| parse_err(&e))?;
    let half_width: f64 = header_value(tokens.next(), "half_width")?
        .parse()
        .map_err(|e| parse_err(&e))?;
    let k: f64 = header_value(tokens.next(), "k")?
        .parse()
        .map_err(|e| parse_err(&e))?;
    let grid = GridSpec::new(n, half_width)?;
    let mut samples = Vec::with_capacity(grid.len());
    for (j, line) in lines.enumerate().take(n) {
        let line = line?;
        let values: Vec<f64> = line
            .split_whitespace()
            .map(|v| v.parse::<f64>().map_err(|e| parse_err(&e)))
            .collect::<Result<_>>()?;
        if values.len() != 2 * n {
            return Err(Error::Format(format!(
                "row {j} has {} values, expected {}",
                values.len(),
                2 * n
            )));
        }
        samples.extend(values.chunks(2).map(|p| Complex64::new(p[0], p[1])));
    }
    ScalarField::new(grid, k, samples)
}
