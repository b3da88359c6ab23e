//! Diffracts both arms of an OAM-entangled pair on the same aperture and
//! reports the overlap of the two images and the resulting concurrence.

use oamlab::aperture::AngularAperture;
use oamlab::entanglement::{overlap_minimum, run_biphoton, BiphotonRunSpec};
use oamlab::field::GridSpec;

fn main() -> oamlab::Result<()> {
    let grid = GridSpec::new(512, 4.0)?;
    println!("{:>3} {:>8} {:>8} {:>11} {:>11} {:>9}", "l0", "lambda", "dphi", "b", "b (closed)", "C");
    for l0 in [1, 2] {
        for lambda in [0.01, 0.3, 3.0, 30.0] {
            let spec = BiphotonRunSpec::new(l0, AngularAperture::for_waist(lambda, 1.0)?, grid, 1.0)?;
            let r = run_biphoton(&spec)?;
            println!(
                "{l0:>3} {lambda:>8} {:>8.4} {:>11.3e} {:>11.3e} {:>9.6}",
                r.delta_phi, r.b_numeric, r.b_analytic, r.concurrence
            );
        }
    }
    let (lambda, dphi, b) = overlap_minimum(1)?;
    println!("l0 = 1: most negative overlap {b:.5} at lambda {lambda:.4} (dphi {dphi:.4})");
    Ok(())
}
