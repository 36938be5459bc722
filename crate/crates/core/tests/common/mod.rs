#![allow(dead_code)]

use gkz::arith::{Int, Rat};
use gkz::error::Error;
use gkz::geometry::{regular_triangulation, Configuration, Triangulation, Weight};
use gkz::params::Budget;
use gkz::series::minex_unchecked;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_example() -> Configuration {
    Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap()
}

pub fn rank_eleven() -> Configuration {
    Configuration::from_rows(&[
        &[1, 1, 1, 1, 1, 1, 1, 1, 1],
        &[0, 1, 2, 3, 0, 2, 0, 1, 0],
        &[0, 0, 0, 0, 1, 1, 2, 2, 3],
    ])
    .unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

/// A homogeneous configuration: a row of ones over `d − 1` rows with entries
/// in `[0, max]`, distinct columns, full rank.
pub fn random_config(r: &mut impl Rng, max_d: usize, max_n: usize, max: i64) -> Configuration {
    loop {
        let d = r.gen_range(2..=max_d);
        let n = r.gen_range(d..=max_n);
        let mut cols: Vec<Vec<i64>> = Vec::new();
        let mut tries = 0;
        while cols.len() < n && tries < 100 {
            tries += 1;
            let mut c = vec![1];
            c.extend((1..d).map(|_| r.gen_range(0..=max)));
            if !cols.contains(&c) {
                cols.push(c);
            }
        }
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        if let Ok(cfg) = Configuration::from_rows(&refs) {
            return cfg;
        }
    }
}

/// A weight with entries in `[0, 10^6]`, generic for the triangulation and,
/// with overwhelming probability, for the series and its triangulation.
pub fn random_triangulation(cfg: &Configuration, r: &mut impl Rng) -> (Weight, Triangulation) {
    loop {
        let w: Vec<i64> = (0..cfg.len()).map(|_| r.gen_range(0..=20)).collect();
        let w = Weight::from_i64(&w);
        if let Ok(t) = regular_triangulation(cfg, &w) {
            return (w, t);
        }
    }
}

/// A weight, its triangulation and a parameter for which the weight is
/// generic enough to single out the minimal exponents.
pub fn random_instance(cfg: &Configuration, r: &mut impl Rng) -> (Weight, Triangulation, Vec<Rat>) {
    loop {
        let (w, t) = random_triangulation(cfg, r);
        let beta = random_beta(cfg, r);
        match minex_unchecked(cfg, &t, &beta, &Budget::default()) {
            Err(Error::NonGenericWeight(_)) => continue,
            _ => return (w, t, beta),
        }
    }
}

/// `A u` for a random `u ∈ N^n` with entries at most `max`.
pub fn random_in_na(cfg: &Configuration, r: &mut impl Rng, max: i64) -> Vec<Rat> {
    let u: Vec<Int> = (0..cfg.len())
        .map(|_| Int::from(r.gen_range(0..=max)))
        .collect();
    cfg.apply_int(&u)
        .into_iter()
        .map(Rat::from_integer)
        .collect()
}

/// Integer, half-integer or random rational parameters, with the first kind
/// most frequent so that resonant cases show up.
pub fn random_beta(cfg: &Configuration, r: &mut impl Rng) -> Vec<Rat> {
    let den = match r.gen_range(0..6) {
        0..=2 => 1,
        3 => 2,
        4 => 3,
        _ => r.gen_range(2..=7),
    };
    (0..cfg.dim())
        .map(|_| Rat::new(Int::from(r.gen_range(-2 * den..=4 * den)), Int::from(den)))
        .collect()
}

pub fn show(v: &[Rat]) -> String {
    format!(
        "({})",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}
