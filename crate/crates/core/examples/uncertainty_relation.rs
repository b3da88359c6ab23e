//! Angle-OAM uncertainty products of diffracted beams against the lower
//! bound `|1 - 2 pi P(pi)| / 2`.

use oamlab::aperture::AngularAperture;
use oamlab::field::{lg_mode, GridSpec, LgModeSpec};
use oamlab::oam::{analyze_field, uncertainty_report, IntelligentState};

fn main() -> oamlab::Result<()> {
    let grid = GridSpec::new(512, 4.0)?;
    let input = lg_mode(&grid, &LgModeSpec::new(1, 1.0)?);
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "lambda", "dphi", "dl", "product", "bound");
    for lambda in [0.1, 0.5, 2.0, 10.0, 50.0] {
        let (field, _) = AngularAperture::for_waist(lambda, 1.0)?.apply(&input)?;
        let (density, spectrum) = analyze_field(&field, 1024, -39, 41)?;
        let r = uncertainty_report(&density, &spectrum);
        println!(
            "{lambda:>8} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            r.delta_phi,
            r.delta_l,
            r.product(),
            r.lower_bound()
        );
    }
    let state = IntelligentState::new(2.0, 1.0)?;
    println!(
        "exact state, lambda 2: dphi dl = {:.12}, bound {:.12}",
        state.delta_phi() * state.delta_l(),
        (1.0 - 2.0 * std::f64::consts::PI * state.boundary_density()).abs() / 2.0
    );
    Ok(())
}
