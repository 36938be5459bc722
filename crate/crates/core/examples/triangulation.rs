//! Regular triangulations of a five-point planar configuration for a few weights,
//! checked against the brute-force lower hull.

use gkz::geometry::{normalized_volume, regular_triangulation, Configuration, Weight};
use gkz::oracle::oracle_lower_hull;

fn main() -> Result<(), gkz::error::Error> {
    let cfg = Configuration::from_rows(&[&[1, 1, 1, 1, 1], &[0, 1, 2, 0, 1], &[0, 0, 0, 1, 1]])?;
    for w in [[1, 0, 1, 0, 0], [5, 1, 2, 3, 0], [0, 2, 7, 3, 1]] {
        let w = Weight::from_i64(&w);
        let t = regular_triangulation(&cfg, &w)?;
        println!(
            "w = {:?}",
            w.values().iter().map(|x| x.to_string()).collect::<Vec<_>>()
        );
        for c in &t.cells {
            println!(
                "  cell {:?} volume {}",
                c.vertices,
                normalized_volume(&cfg, c)?
            );
        }
        let reference = oracle_lower_hull(&cfg, &w)?;
        let ours: Vec<_> = t.cells.iter().map(|c| c.vertices.clone()).collect();
        println!("  agrees with lower hull: {}", ours == reference);
    }
    Ok(())
}
