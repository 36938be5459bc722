//! Truncated logarithm-free series for a twisted cubic and an exact check
//! that the Euler and box operators kill them.

use gkz::arith::{format_rational, format_vec, parse_rational, Rat};
use gkz::geometry::{regular_triangulation, Configuration, Weight};
use gkz::params::Budget;
use gkz::series::{minex, phi_series, verify_annihilation};

fn main() -> Result<(), gkz::error::Error> {
    let cfg = Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 1, 2, 3]])?;
    let beta: Vec<Rat> = ["1/3", "-1/2"]
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_, _>>()?;
    let t = regular_triangulation(&cfg, &Weight::from_i64(&[1, 0, 0, 1]))?;
    let budget = Budget::default();
    let order = Rat::from_integer(6.into());
    for e in minex(&cfg, &t, &beta, &budget)? {
        let s = phi_series(&cfg, &t, &e, &order, &budget)?;
        println!(
            "φ at ({}), {} terms up to weight {}",
            format_vec(&e.v).join(", "),
            s.terms.len(),
            order
        );
        for term in s.terms.iter().take(4) {
            let u: Vec<String> = term.u.iter().map(|x| x.to_string()).collect();
            println!(
                "  {} · x^(v+({}))",
                format_rational(&term.coeff),
                u.join(",")
            );
        }
        let report = verify_annihilation(&cfg, &s, &beta, 3, &budget)?;
        println!("  annihilated: {}", report.passed());
    }
    Ok(())
}
