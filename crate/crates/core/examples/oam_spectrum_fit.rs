//! Measures the OAM spectrum behind an angular aperture and fits an
//! intelligent state to it.

use oamlab::aperture::AngularAperture;
use oamlab::field::{lg_mode, GridSpec, LgModeSpec};
use oamlab::oam::{analyze_field, fit_intelligent, write_spectrum_csv};

fn main() -> oamlab::Result<()> {
    let grid = GridSpec::new(512, 4.0)?;
    let input = lg_mode(&grid, &LgModeSpec::new(0, 1.0)?);
    for lambda in [0.5, 2.0, 10.0] {
        let (field, _) = AngularAperture::for_waist(lambda, 1.0)?.apply(&input)?;
        let (_, spectrum) = analyze_field(&field, 1024, -40, 40)?;
        let (state, residual) = fit_intelligent(&spectrum, 0.0)?;
        let fitted = state.spectrum(-40, 40)?;
        println!(
            "aperture lambda {lambda}: fitted {:.5}, residual {residual:.1e}, sup error {:.1e}",
            state.lambda_width,
            spectrum.sup_distance(&fitted)
        );
        if lambda == 2.0 {
            let narrow = oamlab::oam::OamSpectrum::new(-4, (-4..=4).map(|l| spectrum.prob(l)).collect())?;
            write_spectrum_csv(&narrow, std::io::stdout())?;
        }
    }
    Ok(())
}
