//! A simplex configuration whose rank at `β = (1,1,1)` exceeds its volume.

use gkz::arith::{format_vec, int_vec, rat_vec};
use gkz::formulas::{is_exceptional, rank_simplex};
use gkz::geometry::{cone_faces, normalized_volume, Configuration};
use gkz::params::{minface, Budget};

fn main() -> Result<(), gkz::error::Error> {
    let cfg = Configuration::from_rows(&[
        &[1, 1, 1, 1, 1, 1, 1, 1, 1],
        &[0, 1, 2, 3, 0, 2, 0, 1, 0],
        &[0, 0, 0, 0, 1, 1, 2, 2, 3],
    ])?;
    let budget = Budget::default();
    for f in cone_faces(&cfg) {
        println!(
            "face {:?}: volume {}",
            f.vertices,
            normalized_volume(&cfg, &f)?
        );
    }

    for b in [[1, 1, 1], [2, 1, 1]] {
        let beta = rat_vec(&int_vec(&b));
        let r = rank_simplex(&cfg, &beta, &budget)?;
        let e = is_exceptional(&cfg, &beta, &budget)?;
        let mf: Vec<_> = minface(&cfg, &beta, &budget)?
            .into_iter()
            .map(|f| f.members)
            .collect();
        println!("β = ({})", format_vec(&beta).join(", "));
        println!(
            "  rank = {} = {} (volume {})",
            r.breakdown.render(),
            r.rank,
            r.volume
        );
        println!("  exceptional: {}, minface {mf:?}", e.exceptional);
    }
    Ok(())
}
