//! Groups integer parameters of a small box by their fingerprint; two
//! parameters in one group give isomorphic systems.

use std::collections::BTreeMap;

use gkz::arith::{format_vec, int_vec, rat_vec};
use gkz::geometry::Configuration;
use gkz::params::{fingerprint, Budget};

fn main() -> Result<(), gkz::error::Error> {
    let cfg = Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 1, 3, 4]])?;
    let budget = Budget::default();
    let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for k in -1..=2 {
        for j in -1..=2 * k + 3 {
            let beta = rat_vec(&int_vec(&[k, j]));
            let f = fingerprint(&cfg, &beta, &budget)?;
            groups
                .entry(format!("{:?}", f.classes))
                .or_default()
                .push(format!("({})", format_vec(&beta).join(",")));
        }
    }
    println!(
        "{} isomorphism classes among the sampled parameters",
        groups.len()
    );
    for members in groups.values() {
        println!("  {}", members.join(" "));
    }
    Ok(())
}
