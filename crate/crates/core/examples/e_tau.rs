//! The sets `E_τ(β)` over all faces for a few parameters, plus the
//! fingerprint comparison that decides isomorphism of the systems.

use gkz::arith::{format_vec, parse_rational, Rat};
use gkz::geometry::{cone_faces, Configuration};
use gkz::params::{e_tau_with, fingerprint, Budget};

fn parse(v: &[&str]) -> Vec<Rat> {
    v.iter()
        .map(|s| parse_rational(s).expect("literal"))
        .collect()
}

fn main() -> Result<(), gkz::error::Error> {
    let cfg = Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 1, 3, 4]])?;
    let budget = Budget::default();
    let params = [parse(&["1", "2"]), parse(&["1/2", "1"]), parse(&["0", "0"])];
    for beta in &params {
        println!("β = ({})", format_vec(beta).join(", "));
        for f in cone_faces(&cfg) {
            let classes: Vec<String> = e_tau_with(&cfg, &f, beta, &budget)?
                .iter()
                .map(|c| format!("({})", format_vec(&c.rep).join(", ")))
                .collect();
            println!("  E_{:?} = {{{}}}", f.members, classes.join(", "));
        }
    }
    let f0 = fingerprint(&cfg, &params[2], &budget)?;
    let f1 = fingerprint(&cfg, &params[0], &budget)?;
    println!(
        "faces where (0,0) and (1,2) differ: {:?}",
        f0.differences(&f1)
    );
    Ok(())
}
