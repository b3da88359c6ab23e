//! Propagates a diffracted vortex over a few Rayleigh lengths: the beam
//! spreads, but power and OAM content do not change.

use oamlab::aperture::AngularAperture;
use oamlab::field::{lg_mode, total_power, GridSpec, LgModeSpec};
use oamlab::oam::analyze_field;
use oamlab::propagation::{propagate, PropagatorSpec};

fn main() -> oamlab::Result<()> {
    let grid = GridSpec::new(1024, 12.0)?;
    let mode = LgModeSpec::new(2, 1.0)?;
    let (field, _) = AngularAperture::for_waist(2.0, 1.0)?.apply(&lg_mode(&grid, &mode))?;
    let (_, start) = analyze_field(&field, 1024, -30, 34)?;
    for z in [0.0, 0.5, 1.0, 2.0] {
        let moved = propagate(&field, &PropagatorSpec::new(z * mode.rayleigh_length())?);
        let (_, spectrum) = analyze_field(&moved, 1024, -30, 34)?;
        println!(
            "z = {z} z_R: power {:.12}, peak {:.4}, P(2) {:.6}, spectrum shift {:.1e}",
            total_power(&moved),
            moved.peak(),
            spectrum.prob(2),
            spectrum.sup_distance(&start)
        );
    }
    Ok(())
}
