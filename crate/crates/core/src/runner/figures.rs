use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::aperture::AngularAperture;
use crate::entanglement::overlap_analytic;
use crate::error::Result;
use crate::field::{lg_mode, LgModeSpec};
use crate::oam::{analyze_field, delta_phi_of_lambda, fit_intelligent, IntelligentState, OamSpectrum};
use crate::polar::DEFAULT_N_PHI;
use crate::svg::{heatmap, Chart, Series, Style};

use super::config::{log_spaced, RunConfig};
use super::output::{read_records_csv, write_results, write_table, RESULTS_STEM};
use super::sweep::{run_cases, ResultRecord};

/// `l` range used for measured spectra.
pub const SPECTRUM_L_MAX: i32 = 40;
const HEATMAP_SIDE: usize = 120;
const CURVE_POINTS: usize = 200;

/// Measured and fitted spectrum of `u_0` behind one aperture.
#[derive(Debug, Clone)]
pub struct SpectrumFit {
    pub lambda: f64,
    pub measured: OamSpectrum,
    pub fitted: IntelligentState,
    pub fitted_spectrum: OamSpectrum,
    pub residual: f64,
}

/// Diffracts `u_{l_bar}` on the configured grid and fits an intelligent state
/// with mean `l_bar` to its OAM spectrum.
pub fn spectrum_fit(config: &RunConfig, lambda: f64, l_bar: i32) -> Result<SpectrumFit> {
    let grid = config.grid_spec()?;
    let mode = LgModeSpec::new(l_bar, config.beam.waist)?.with_wavenumber(config.beam.wavenumber);
    let (field, _) = config.aperture_for(lambda)?.apply(&lg_mode(&grid, &mode))?;
    let (lo, hi) = (l_bar - SPECTRUM_L_MAX, l_bar + SPECTRUM_L_MAX);
    let (_, measured) = analyze_field(&field, DEFAULT_N_PHI, lo, hi)?;
    let (fitted, residual) = fit_intelligent(&measured, l_bar as f64)?;
    let fitted_spectrum = fitted.spectrum(lo, hi)?;
    Ok(SpectrumFit {
        lambda,
        measured,
        fitted,
        fitted_spectrum,
        residual,
    })
}

fn sweep_records(config: &RunConfig, out: &Path, results: Option<&Path>) -> Result<Vec<ResultRecord>> {
    if let Some(path) = results {
        return read_records_csv(path);
    }
    let default = out.join(format!("{RESULTS_STEM}.csv"));
    if default.exists() {
        return read_records_csv(&default);
    }
    log::info!("no results in {}, running the sweep", out.display());
    let sweep = run_cases(config, config.z_rayleigh[0])?;
    write_results(out, std::slice::from_ref(&sweep))?;
    Ok(sweep.records())
}

fn by_l0(records: &[ResultRecord]) -> BTreeMap<i32, Vec<ResultRecord>> {
    let mut map: BTreeMap<i32, Vec<ResultRecord>> = BTreeMap::new();
    for r in records {
        map.entry(r.l0).or_default().push(*r);
    }
    map
}

fn save(path: PathBuf, svg: String, written: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(&path, svg)?;
    written.push(path);
    Ok(())
}

fn figure1(config: &RunConfig, out: &Path, written: &mut Vec<PathBuf>) -> Result<()> {
    let mut rows = Vec::new();
    for &lambda in &config.figures.fig1_lambdas {
        let fit = spectrum_fit(config, lambda, 0)?;
        for ((l, p), (_, q)) in fit.measured.iter().zip(fit.fitted_spectrum.iter()) {
            rows.push(vec![lambda, l as f64, p, q, fit.fitted.lambda_width]);
        }

        let aperture = AngularAperture::new(lambda, config.aperture.radius, config.aperture.power)?;
        let hw = config.grid.half_width;
        let coord = |k: usize| -hw + (k as f64 + 0.5) * 2.0 * hw / HEATMAP_SIDE as f64;
        let mut values = Vec::with_capacity(HEATMAP_SIDE * HEATMAP_SIDE);
        for r in 0..HEATMAP_SIDE {
            for c in 0..HEATMAP_SIDE {
                values.push(aperture.transmission(coord(c), coord(r)));
            }
        }
        let title = format!("aperture transmission, lambda = {lambda}");
        save(
            out.join(format!("fig1_aperture_lambda{lambda}.svg")),
            heatmap(&title, &values, HEATMAP_SIDE, HEATMAP_SIDE),
            written,
        )?;

        let window = (3.0 * fit.fitted.delta_l()).ceil().max(6.0) as i32;
        let keep = |l: i32| l.abs() <= window;
        let mut chart = Chart::new(format!("OAM spectrum, lambda = {lambda}"), "l", "P(l)");
        chart.push(Series::new(
            "numeric",
            Style::Bars,
            fit.measured.iter().filter(|(l, _)| keep(*l)).map(|(l, p)| (l as f64, p)).collect(),
        ));
        chart.push(Series::new(
            format!("|g(l)|^2, fit lambda = {:.4}", fit.fitted.lambda_width),
            Style::Line,
            fit.fitted_spectrum.iter().filter(|(l, _)| keep(*l)).map(|(l, p)| (l as f64, p)).collect(),
        ));
        save(out.join(format!("fig1_spectrum_lambda{lambda}.svg")), chart.render(), written)?;
    }
    let path = out.join("fig1.csv");
    write_table(&path, &["lambda[1]", "l[hbar]", "p_numeric[1]", "p_fit[1]", "lambda_fit[1]"], &rows)?;
    written.push(path);
    Ok(())
}

fn figure2(records: &[ResultRecord], out: &Path, written: &mut Vec<PathBuf>) -> Result<()> {
    let groups = by_l0(records);
    let (lo, hi) = records
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), r| (a.min(r.lambda), b.max(r.lambda)));
    let dense = log_spaced(lo, hi, CURVE_POINTS);

    let mut chart = Chart::new("mutual overlap", "delta phi [rad]", "b");
    let mut rows = Vec::new();
    let mut curve_rows = Vec::new();
    for (&l0, recs) in &groups {
        chart.push(Series::new(
            format!("l0 = {l0} numeric"),
            Style::Points,
            recs.iter().map(|r| (r.delta_phi, r.b_numeric)).collect(),
        ));
        chart.push(Series::new(
            format!("l0 = {l0} analytic"),
            Style::Line,
            dense.iter().map(|&l| (delta_phi_of_lambda(l), overlap_analytic(l, l0))).collect(),
        ));
        rows.extend(recs.iter().map(|r| vec![l0 as f64, r.lambda, r.delta_phi, r.b_numeric, r.b_analytic]));
        curve_rows.extend(
            dense
                .iter()
                .map(|&l| vec![l0 as f64, l, delta_phi_of_lambda(l), overlap_analytic(l, l0)]),
        );
    }
    save(out.join("fig2.svg"), chart.render(), written)?;
    let path = out.join("fig2.csv");
    write_table(&path, &["l0[hbar]", "lambda[1]", "delta_phi[rad]", "b_numeric[1]", "b_analytic[1]"], &rows)?;
    written.push(path);
    let path = out.join("fig2_curves.csv");
    write_table(&path, &["l0[hbar]", "lambda[1]", "delta_phi[rad]", "b_analytic[1]"], &curve_rows)?;
    written.push(path);

    // Zoom on the negative minimum of the l0 = 1 curve.
    let zoom = log_spaced(0.02, 0.6, CURVE_POINTS);
    let inset_rows: Vec<Vec<f64>> = zoom
        .iter()
        .map(|&l| vec![l, delta_phi_of_lambda(l), overlap_analytic(l, 1)])
        .collect();
    let mut inset = Chart::new("l0 = 1, negative minimum", "delta phi [rad]", "b");
    if let Some(recs) = groups.get(&1) {
        let (a, b) = (delta_phi_of_lambda(0.6), delta_phi_of_lambda(0.02));
        inset.push(Series::new(
            "numeric",
            Style::Points,
            recs.iter()
                .filter(|r| r.delta_phi >= a && r.delta_phi <= b)
                .map(|r| (r.delta_phi, r.b_numeric))
                .collect(),
        ));
    }
    inset.push(Series::new(
        "analytic",
        Style::Line,
        inset_rows.iter().map(|r| (r[1], r[2])).collect(),
    ));
    save(out.join("fig2_inset.svg"), inset.render(), written)?;
    let path = out.join("fig2_inset.csv");
    write_table(&path, &["lambda[1]", "delta_phi[rad]", "b_analytic[1]"], &inset_rows)?;
    written.push(path);
    Ok(())
}

fn figure3(config: &RunConfig, out: &Path, written: &mut Vec<PathBuf>) -> Result<()> {
    let lambda = config.figures.fig3_lambda;
    let mut rows = Vec::new();
    let mut chart = Chart::new(format!("OAM distributions at +-l0, lambda = {lambda}"), "l", "|g(l)|^2");
    for &l0 in &config.figures.fig3_l0 {
        let plus = IntelligentState::new(lambda, l0 as f64)?;
        let minus = IntelligentState::new(lambda, -l0 as f64)?;
        let reach = l0 + (6.0 * plus.delta_l()).ceil().max(4.0) as i32;
        let mut p_series = Vec::new();
        let mut m_series = Vec::new();
        for l in -reach..=reach {
            let (gp, gm) = (plus.oam_amplitude(l)?, minus.oam_amplitude(l)?);
            rows.push(vec![l0 as f64, l as f64, gp * gp, gm * gm, gp * gm]);
            p_series.push((l as f64, gp * gp));
            m_series.push((l as f64, gm * gm));
        }
        chart.push(Series::new(format!("+{l0}"), Style::Bars, p_series));
        chart.push(Series::new(format!("-{l0}"), Style::Bars, m_series));
    }
    save(out.join("fig3.svg"), chart.render(), written)?;
    let path = out.join("fig3.csv");
    write_table(
        &path,
        &["l0[hbar]", "l[hbar]", "p_plus[1]", "p_minus[1]", "amplitude_product[1]"],
        &rows,
    )?;
    written.push(path);
    Ok(())
}

fn figure4(records: &[ResultRecord], out: &Path, written: &mut Vec<PathBuf>) -> Result<()> {
    let groups = by_l0(records);
    let mut b_chart = Chart::new("overlap vs l0 delta phi", "l0 delta phi [rad]", "b");
    let mut c_chart = Chart::new("concurrence vs l0 delta phi", "l0 delta phi [rad]", "C");
    let mut rows = Vec::new();
    let mut x_max: f64 = 0.0;
    for (&l0, recs) in &groups {
        let xs: Vec<f64> = recs.iter().map(|r| l0 as f64 * r.delta_phi).collect();
        x_max = xs.iter().cloned().fold(x_max, f64::max);
        b_chart.push(Series::new(
            format!("l0 = {l0}"),
            Style::Points,
            xs.iter().zip(recs).map(|(&x, r)| (x, r.b_numeric)).collect(),
        ));
        c_chart.push(Series::new(
            format!("l0 = {l0}"),
            Style::Points,
            xs.iter().zip(recs).map(|(&x, r)| (x, r.concurrence_numeric)).collect(),
        ));
        rows.extend(xs.iter().zip(recs).map(|(&x, r)| {
            vec![
                l0 as f64,
                x,
                r.b_numeric,
                r.concurrence_numeric,
                (-2.0 * x * x).exp(),
                (2.0 * x * x).tanh(),
            ]
        }));
    }
    let curve: Vec<Vec<f64>> = (0..CURVE_POINTS)
        .map(|k| {
            let x = x_max * k as f64 / (CURVE_POINTS - 1) as f64;
            vec![x, (-2.0 * x * x).exp(), (2.0 * x * x).tanh()]
        })
        .collect();
    b_chart.push(
        Series::new("exp(-2x^2)", Style::Line, curve.iter().map(|r| (r[0], r[1])).collect()).with_color("black"),
    );
    c_chart.push(
        Series::new("tanh(2x^2)", Style::Line, curve.iter().map(|r| (r[0], r[2])).collect()).with_color("black"),
    );
    save(out.join("fig4_overlap.svg"), b_chart.render(), written)?;
    save(out.join("fig4_concurrence.svg"), c_chart.render(), written)?;
    let path = out.join("fig4.csv");
    write_table(
        &path,
        &[
            "l0[hbar]",
            "x[rad]",
            "b_numeric[1]",
            "concurrence_numeric[1]",
            "b_universal[1]",
            "concurrence_universal[1]",
        ],
        &rows,
    )?;
    written.push(path);
    let path = out.join("fig4_curves.csv");
    write_table(&path, &["x[rad]", "b_universal[1]", "concurrence_universal[1]"], &curve)?;
    written.push(path);
    Ok(())
}

/// Writes the enabled figures into `out`. Sweep-based figures read
/// `results` when given, else `out/results.csv`, else run the sweep.
pub fn write_figures(config: &RunConfig, out: &Path, results: Option<&Path>) -> Result<Vec<PathBuf>> {
    config.validate()?;
    fs::create_dir_all(out)?;
    let mut written = Vec::new();
    let f = &config.figures;
    if f.fig2 || f.fig4 {
        let records = sweep_records(config, out, results)?;
        if f.fig2 {
            figure2(&records, out, &mut written)?;
        }
        if f.fig4 {
            figure4(&records, out, &mut written)?;
        }
    }
    if f.fig1 {
        figure1(config, out, &mut written)?;
    }
    if f.fig3 {
        figure3(config, out, &mut written)?;
    }
    Ok(written)
}
