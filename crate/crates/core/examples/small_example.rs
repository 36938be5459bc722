//! The conic `[[1,1,1],[0,1,2]]` at `β = (1,1)` under two weights.

use gkz::arith::{format_vec, int_vec, rat_vec};
use gkz::formulas::dim_log_free;
use gkz::geometry::{regular_triangulation, Configuration, Weight};
use gkz::params::Budget;
use gkz::series::minex;

fn main() -> Result<(), gkz::error::Error> {
    let cfg = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]])?;
    let beta = rat_vec(&int_vec(&[1, 1]));
    let budget = Budget::default();
    for w in [[0, 1, 0], [0, -1, 0]] {
        let t = regular_triangulation(&cfg, &Weight::from_i64(&w))?;
        let cells: Vec<_> = t.cells.iter().map(|c| c.vertices.clone()).collect();
        let d = dim_log_free(&cfg, &t, &beta, &budget)?;
        println!("w = {w:?}: cells {cells:?}");
        println!("  dim = {} = {}", d.render(), d.total);
        for e in minex(&cfg, &t, &beta, &budget)? {
            println!("  exponent ({})", format_vec(&e.v).join(", "));
        }
    }
    Ok(())
}
