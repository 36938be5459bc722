//! Cohen–Macaulay test for a few monomial curves and surfaces.

use gkz::arith::format_vec;
use gkz::formulas::{is_cohen_macaulay, CmOutcome};
use gkz::geometry::Configuration;
use gkz::params::Budget;

fn main() -> Result<(), gkz::error::Error> {
    let configs: [&[&[i64]]; 4] = [
        &[&[1, 1, 1, 1], &[0, 1, 2, 3]],
        &[&[1, 1, 1, 1], &[0, 1, 3, 4]],
        &[&[1, 1, 1, 1], &[0, 2, 3, 5]],
        &[
            &[1, 1, 1, 1, 1, 1, 1, 1, 1],
            &[0, 1, 2, 3, 0, 2, 0, 1, 0],
            &[0, 0, 0, 0, 1, 1, 2, 2, 3],
        ],
    ];
    for rows in configs {
        let cfg = Configuration::from_rows(rows)?;
        match is_cohen_macaulay(&cfg, &Budget::default())? {
            CmOutcome::CohenMacaulay => println!("{rows:?}: Cohen–Macaulay"),
            CmOutcome::NotCohenMacaulay { beta, m1, m2 } => println!(
                "{rows:?}: not Cohen–Macaulay, β = ({}) with shifts {m1:?} and {m2:?}",
                format_vec(&beta).join(", ")
            ),
            CmOutcome::Inconclusive => println!("{rows:?}: budget exhausted"),
        }
    }
    Ok(())
}
