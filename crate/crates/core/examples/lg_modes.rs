//! Samples a few Laguerre-Gauss modes and prints their power, edge amplitude
//! and mutual overlaps.

use oamlab::field::{inner_product, lg_mode, total_power, GridSpec, LgModeSpec};

fn main() -> oamlab::Result<()> {
    let grid = GridSpec::new(512, 7.0)?;
    let modes: Vec<_> = (-2..=2)
        .map(|l| Ok((l, lg_mode(&grid, &LgModeSpec::new(l, 1.0)?))))
        .collect::<oamlab::Result<_>>()?;
    for (l, m) in &modes {
        println!(
            "l = {l:+}: power {:.12}, edge/peak {:.1e}",
            total_power(m),
            m.edge_max() / m.peak()
        );
    }
    println!("|<u_l|u_l'>|:");
    for (_, a) in &modes {
        let row: Vec<String> = modes
            .iter()
            .map(|(_, b)| Ok(format!("{:8.1e}", inner_product(a, b)?.norm())))
            .collect::<oamlab::Result<_>>()?;
        println!("  {}", row.join(" "));
    }
    Ok(())
}
