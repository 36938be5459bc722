//! The two worked examples, rerun as self-checks by `gkz verify`.

use num_traits::{One, Zero};

use crate::arith::{format_vec, rat, Int, Rat};
use crate::error::Result;
use crate::formulas::{
    dim_log_free, exceptional_sweep, is_cohen_macaulay, is_exceptional, rank_simplex, CmOutcome,
    SweepOptions,
};
use crate::geometry::{
    cone_faces, lattice_volume, normalized_volume, regular_triangulation, Configuration, Weight,
};
use crate::params::{minface, semigroup_member, Budget};
use crate::series::{minex, phi_series};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

pub fn small_example() -> Configuration {
    Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).expect("valid configuration")
}

pub fn rank_eleven_example() -> Configuration {
    Configuration::from_rows(&[
        &[1, 1, 1, 1, 1, 1, 1, 1, 1],
        &[0, 1, 2, 3, 0, 2, 0, 1, 0],
        &[0, 0, 0, 0, 1, 1, 2, 2, 3],
    ])
    .expect("valid configuration")
}

fn tuple(v: &[Rat]) -> String {
    format!("({})", format_vec(v).join(","))
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check {
            name,
            passed,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Runs every check; failures are reported, never raised.
pub fn example_checks(budget: &Budget) -> Vec<Check> {
    let small = small_example();
    let beta = ints(&[1, 1]);
    let big = rank_eleven_example();
    let beta0 = ints(&[1, 1, 1]);
    let mut out = Vec::new();

    for (name, w, dim, formula) in [
        (
            "small example, w = (0,1,0)",
            [0, 1, 0],
            2,
            "(2−2·1+1) + 2·(1−1) + 1",
        ),
        (
            "small example, w = (0,-1,0)",
            [0, -1, 0],
            1,
            "2·(1−2·1+1) + 3·(1−1) + 1",
        ),
    ] {
        out.push(check(name, || {
            let t = regular_triangulation(&small, &Weight::from_i64(&w))?;
            let b = dim_log_free(&small, &t, &beta, budget)?;
            let r = b.render();
            Ok((
                b.total == Int::from(dim) && r == formula,
                format!("{} = {}", r, b.total),
            ))
        }));
    }

    out.push(check("small example, minimal exponents", || {
        let t1 = regular_triangulation(&small, &Weight::from_i64(&[0, 1, 0]))?;
        let t2 = regular_triangulation(&small, &Weight::from_i64(&[0, -1, 0]))?;
        let e1: Vec<Vec<Rat>> = minex(&small, &t1, &beta, budget)?
            .into_iter()
            .map(|e| e.v)
            .collect();
        let e2: Vec<Vec<Rat>> = minex(&small, &t2, &beta, budget)?
            .into_iter()
            .map(|e| e.v)
            .collect();
        let a = ints(&[0, 1, 0]);
        let half = vec![rat(1, 2), Rat::zero(), rat(1, 2)];
        let passed =
            e1.contains(&a) && e1.contains(&half) && e2.contains(&a) && !e2.contains(&half);
        let show = |e: &[Vec<Rat>]| e.iter().map(|v| tuple(v)).collect::<Vec<_>>().join(" ");
        Ok((passed, format!("w: {}; w': {}", show(&e1), show(&e2))))
    }));

    out.push(check(
        "small example, series of (0,1,0) is a monomial",
        || {
            let t = regular_triangulation(&small, &Weight::from_i64(&[0, 1, 0]))?;
            let ex = minex(&small, &t, &beta, budget)?;
            let Some(e) = ex.into_iter().find(|e| e.v == ints(&[0, 1, 0])) else {
                return Ok((false, "exponent (0,1,0) missing".into()));
            };
            let s = phi_series(&small, &t, &e, &rat(10, 1), budget)?;
            let passed = s.terms.len() == 1
                && s.terms[0].u.iter().all(Zero::is_zero)
                && s.terms[0].coeff.is_one();
            Ok((passed, format!("{} terms", s.terms.len())))
        },
    ));

    out.push(check("rank-11 example, face volumes", || {
        let vol = lattice_volume(&big)?;
        let mut vols = Vec::new();
        for f in &cone_faces(&big) {
            vols.push(normalized_volume(&big, f)?);
        }
        vols.sort_by(|a, b| b.cmp(a));
        let want: Vec<Int> = [9, 3, 3, 3, 1, 1, 1, 1]
            .iter()
            .map(|&x| Int::from(x))
            .collect();
        let got: Vec<String> = vols.iter().map(|v| v.to_string()).collect();
        Ok((
            vol == Int::from(9) && vols == want,
            format!("vol {vol}; faces {}", got.join(",")),
        ))
    }));

    out.push(check("rank-11 example, minface", || {
        let mf: Vec<Vec<usize>> = minface(&big, &beta0, budget)?
            .into_iter()
            .map(|f| f.members)
            .collect();
        Ok((mf == vec![vec![0], vec![3], vec![8]], format!("{mf:?}")))
    }));

    out.push(check("rank-11 example, rank and exceptionality", || {
        let r = rank_simplex(&big, &beta0, budget)?;
        let e = is_exceptional(&big, &beta0, budget)?;
        let formula = r.breakdown.render();
        let passed = r.rank == Int::from(11)
            && r.volume == Int::from(9)
            && formula == "(9−3·3+3·1−1) + 3·(3−2·1+1) + 3·1"
            && e.exceptional;
        Ok((passed, format!("{formula} = {}", r.rank)))
    }));

    out.push(check("rank-11 example, sweep of degrees 0..6", || {
        let opts = SweepOptions {
            degrees: (0, 6),
            ..SweepOptions::default()
        };
        let found = exceptional_sweep(&big, &opts, budget)?;
        let shown: Vec<String> = found.iter().map(|b| tuple(b)).collect();
        Ok((found == vec![beta0.clone()], shown.join(" ")))
    }));

    out.push(check(
        "rank-11 example, not Cohen-Macaulay",
        || match is_cohen_macaulay(&big, budget)? {
            CmOutcome::NotCohenMacaulay { beta, m1, m2 } => {
                let shifted = |m: &[Int]| -> Vec<Rat> {
                    let am = big.apply_int(m);
                    beta.iter()
                        .zip(am)
                        .map(|(b, a)| b + Rat::from_integer(a))
                        .collect()
                };
                let passed = !semigroup_member(&big, &beta)
                    && semigroup_member(&big, &shifted(&m1))
                    && semigroup_member(&big, &shifted(&m2));
                Ok((passed, format!("witness β = {}", tuple(&beta))))
            }
            other => Ok((false, format!("{other:?}"))),
        },
    ));

    out
}
