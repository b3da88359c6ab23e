//! Concurrence against `l0 dphi` for several `l0`, from the closed-form
//! overlap, next to `tanh(2 (l0 dphi)^2)` and the entangled coherent state.

use oamlab::entanglement::{
    coherent_state_concurrence, concurrence_from_overlap, overlap_analytic, universal_concurrence,
};
use oamlab::oam::delta_phi_of_lambda;

fn main() -> oamlab::Result<()> {
    println!("{:>3} {:>8} {:>8} {:>10} {:>10} {:>10}", "l0", "lambda", "x", "C", "tanh", "coherent");
    for l0 in [1, 2, 5] {
        for lambda in [0.05, 0.5, 5.0, 50.0] {
            let dphi = delta_phi_of_lambda(lambda);
            let x = l0 as f64 * dphi;
            let c = concurrence_from_overlap(overlap_analytic(lambda, l0))?;
            println!(
                "{l0:>3} {lambda:>8} {x:>8.4} {c:>10.6} {:>10.6} {:>10.6}",
                universal_concurrence(l0, dphi),
                coherent_state_concurrence(x)
            );
        }
    }
    Ok(())
}
