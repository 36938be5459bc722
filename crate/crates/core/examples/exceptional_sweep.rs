//! Scans a degree window of `ZA` for parameters where the rank jumps.

use gkz::arith::format_vec;
use gkz::formulas::{exceptional_sweep, SweepOptions};
use gkz::geometry::Configuration;
use gkz::params::Budget;

fn main() -> Result<(), gkz::error::Error> {
    let cfg = Configuration::from_rows(&[
        &[1, 1, 1, 1, 1, 1, 1, 1, 1],
        &[0, 1, 2, 3, 0, 2, 0, 1, 0],
        &[0, 0, 0, 0, 1, 1, 2, 2, 3],
    ])?;
    let opts = SweepOptions {
        degrees: (0, 6),
        margin: 1,
    };
    let found = exceptional_sweep(&cfg, &opts, &Budget::default())?;
    println!("exceptional parameters with degree in [0, 6]:");
    for beta in &found {
        println!("  ({})", format_vec(beta).join(", "));
    }

    let conic = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]])?;
    let none = exceptional_sweep(&conic, &opts, &Budget::default())?;
    println!(
        "the conic has {} exceptional parameters in the same window",
        none.len()
    );
    Ok(())
}
