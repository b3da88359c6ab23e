//! Diffracts a Gaussian beam on angular apertures of decreasing width and
//! prints the transmitted fraction and angular width.

use oamlab::aperture::AngularAperture;
use oamlab::field::{lg_mode, GridSpec, LgModeSpec};
use oamlab::oam::{analyze_field, delta_phi_of_lambda};

fn main() -> oamlab::Result<()> {
    let grid = GridSpec::new(512, 4.0)?;
    let input = lg_mode(&grid, &LgModeSpec::new(0, 1.0)?);
    println!("{:>8} {:>10} {:>10} {:>10}", "lambda", "fraction", "dphi", "dphi(num)");
    for lambda in [0.01, 0.1, 1.0, 10.0, 100.0] {
        let (field, fraction) = AngularAperture::for_waist(lambda, 1.0)?.apply(&input)?;
        let (density, _) = analyze_field(&field, 1024, -40, 40)?;
        println!(
            "{lambda:>8} {fraction:>10.5} {:>10.5} {:>10.5}",
            delta_phi_of_lambda(lambda),
            density.std_dev()
        );
    }
    Ok(())
}
