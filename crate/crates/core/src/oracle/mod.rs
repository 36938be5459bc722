//! Slow reference computations used to cross-check the main algorithms.
//!
//! Each function here avoids the shortcuts of the production code: cells are
//! found by testing every `d`-subset, parameter classes by brute-force
//! enumeration of non-negative shifts, and series coefficients by propagating
//! the box-operator recurrences outward from `c_0 = 1`.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::arith::{dot_int_rat, dot_rat, falling_factorial, rat_from_int, Int, Rat};
use crate::error::{Error, Result};
use crate::geometry::{supporting_functional, Configuration, Face, Weight};
use crate::lattice::{enumerate_points, rational_solve, QuotientGroup, Region};
use crate::series::{kernel_lattice, n_v};

/// Cells of the regular triangulation of `w`: the `d`-subsets `I` with `A_I`
/// invertible such that every other column lies strictly above the affine
/// function interpolating `w` on `I`.
pub fn oracle_lower_hull(cfg: &Configuration, w: &Weight) -> Result<Vec<Vec<usize>>> {
    cfg.check_len(w.len())?;
    let d = cfg.dim();
    let comps = w.height_dim();
    let mut cells = Vec::new();
    for verts in (0..cfg.len()).combinations(d) {
        let at = cfg.submatrix(&verts).transpose().to_rational();
        let mut lifts: Vec<Vec<Rat>> = Vec::with_capacity(comps);
        let mut invertible = true;
        for c in 0..comps {
            let rhs: Vec<Rat> = verts.iter().map(|&i| w.height(i)[c].clone()).collect();
            match rational_solve(&at, d, &rhs) {
                Some(x) => lifts.push(x),
                None => {
                    invertible = false;
                    break;
                }
            }
        }
        if !invertible || cfg.rank_of(&verts) < d {
            continue;
        }
        let mut above = true;
        let mut touching = None;
        for j in (0..cfg.len()).filter(|j| !verts.contains(j)) {
            let slack: Vec<Rat> = (0..comps)
                .map(|c| {
                    let lifted = lifts[c]
                        .iter()
                        .zip(cfg.column(j))
                        .fold(Rat::zero(), |a, (x, y)| a + x * rat_from_int(y));
                    &w.height(j)[c] - lifted
                })
                .collect();
            match slack.iter().find(|s| !s.is_zero()) {
                None => touching = Some(j),
                Some(s) if s.is_negative() => {
                    above = false;
                    break;
                }
                Some(_) => {}
            }
        }
        if let (true, Some(j)) = (above, touching) {
            return Err(Error::NonGenericWeight(format!(
                "column {j} lies on the lifted hyperplane of {verts:?}"
            )));
        }
        if above {
            cells.push(verts);
        }
    }
    Ok(cells)
}

/// Classes `β − A u` modulo `Z(A∩τ)` over `u ∈ N^n` vanishing on the members
/// of `τ` with `β − A u ∈ Q(A∩τ)`.
///
/// The search over `u` is complete when `τ` is a face of the cone (a
/// supporting functional `h` bounds `Σ u_j h(a_j)` by `h(β)`) or spans the
/// whole space (each `u_j` only matters below the order of `a_j` modulo
/// `Z(A∩τ)`). Otherwise shifts of total degree at most `max_degree` are tried.
pub fn oracle_e_tau(
    cfg: &Configuration,
    face: &Face,
    beta: &[Rat],
    max_degree: usize,
) -> Vec<Vec<Rat>> {
    let outside: Vec<usize> = (0..cfg.len())
        .filter(|j| !face.members.contains(j))
        .collect();
    let modulus = face.lattice(cfg);
    let mut out = BTreeSet::new();
    let mut visit = |u: &[(usize, Int)]| {
        let mut lam = beta.to_vec();
        for (j, k) in u {
            for (l, a) in lam.iter_mut().zip(cfg.column(*j)) {
                *l -= rat_from_int(a) * rat_from_int(k);
            }
        }
        if let Some(rep) = modulus.reduce(&lam) {
            out.insert(rep);
        }
    };
    if let Some(h) = supporting_functional(cfg, &face.members) {
        let budget = dot_rat(&h, beta);
        let costs: Vec<Rat> = outside
            .iter()
            .map(|&j| dot_int_rat(cfg.column(j), &h))
            .collect();
        bounded_search(&outside, &costs, budget, &mut visit);
        return out.into_iter().collect();
    }
    let caps: Vec<Cap> = if cfg.rank_of(&face.members) == cfg.dim() {
        let q = QuotientGroup::new(cfg.za(), &modulus).expect("sublattice of full rank");
        outside
            .iter()
            .map(|&j| Cap::Below(element_order(&q, cfg.column(j))))
            .collect()
    } else {
        outside.iter().map(|_| Cap::Degree).collect()
    };
    let mut u = vec![0usize; outside.len()];
    boxed_search(&outside, &caps, max_degree, 0, &mut u, &mut visit);
    out.into_iter().collect()
}

#[derive(Clone, Copy)]
enum Cap {
    Below(usize),
    Degree,
}

fn element_order(q: &QuotientGroup, a: &[Int]) -> usize {
    let c = q.class_of_int(a).expect("column in ZA");
    let zero = q.zero();
    let mut x = c.clone();
    let mut k = 1;
    while x != zero {
        x = q.add(&x, &c);
        k += 1;
    }
    k
}

fn bounded_search(
    outside: &[usize],
    costs: &[Rat],
    budget: Rat,
    visit: &mut impl FnMut(&[(usize, Int)]),
) {
    fn go(
        i: usize,
        outside: &[usize],
        costs: &[Rat],
        left: &Rat,
        u: &mut Vec<(usize, Int)>,
        visit: &mut impl FnMut(&[(usize, Int)]),
    ) {
        if i == outside.len() {
            visit(u);
            return;
        }
        let mut k = 0i64;
        let mut rest = left.clone();
        while !rest.is_negative() {
            u.push((outside[i], Int::from(k)));
            go(i + 1, outside, costs, &rest, u, visit);
            u.pop();
            rest -= &costs[i];
            k += 1;
        }
    }
    if budget.is_negative() {
        return;
    }
    go(0, outside, costs, &budget, &mut Vec::new(), visit);
}

fn boxed_search(
    outside: &[usize],
    caps: &[Cap],
    degree_left: usize,
    i: usize,
    u: &mut Vec<usize>,
    visit: &mut impl FnMut(&[(usize, Int)]),
) {
    if i == outside.len() {
        let shift: Vec<(usize, Int)> = outside
            .iter()
            .zip(u.iter())
            .map(|(&j, &k)| (j, Int::from(k)))
            .collect();
        visit(&shift);
        return;
    }
    let top = match caps[i] {
        Cap::Below(n) => n - 1,
        Cap::Degree => degree_left,
    };
    for k in 0..=top {
        u[i] = k;
        let left = match caps[i] {
            Cap::Below(_) => degree_left,
            Cap::Degree => degree_left - k,
        };
        boxed_search(outside, caps, left, i + 1, u, visit);
    }
    u[i] = 0;
}

fn falling(x: &[Rat], t: &[Int]) -> Rat {
    x.iter()
        .zip(t)
        .fold(Rat::from_integer(Int::from(1)), |a, (p, q)| {
            a * falling_factorial(p, q)
        })
}

/// Coefficients of `φ_v` on `N_v ∩ {w·u ≤ order} ∩ {|u_j| ≤ radius}`, computed
/// by propagation: `c_0 = 1` and `c_u [v+u]_{b+} = c_p [v+p]_{b−}` for
/// `u = p + b`, `b ∈ L`. Every available predecessor is used and must agree.
pub fn oracle_series(
    cfg: &Configuration,
    v: &[Rat],
    w: &Weight,
    order: &Rat,
    radius: u32,
) -> Result<Vec<(Vec<Int>, Rat)>> {
    let l = kernel_lattice(cfg);
    let pts = enumerate_points(
        &l,
        &Region::cube(cfg.len(), &Int::from(radius)),
        &[],
        u64::MAX,
    )?;
    let mut support: Vec<Vec<Int>> = pts
        .into_iter()
        .filter(|u| n_v(cfg, v, u) && &w.dot(u) <= order)
        .collect();
    support.sort_by(|a, b| (w.dot(a), a.clone()).cmp(&(w.dot(b), b.clone())));

    let shift =
        |u: &[Int]| -> Vec<Rat> { v.iter().zip(u).map(|(a, b)| a + rat_from_int(b)).collect() };
    let mut coeff: BTreeMap<Vec<Int>, Rat> = BTreeMap::new();
    for u in &support {
        if u.iter().all(Zero::is_zero) {
            coeff.insert(u.clone(), Rat::from_integer(Int::from(1)));
            continue;
        }
        let mut value: Option<Rat> = None;
        for (p, cp) in &coeff {
            let b: Vec<Int> = u.iter().zip(p).map(|(x, y)| x - y).collect();
            let bp: Vec<Int> = b
                .iter()
                .map(|x| {
                    if x.is_positive() {
                        x.clone()
                    } else {
                        Int::zero()
                    }
                })
                .collect();
            let bm: Vec<Int> = b
                .iter()
                .map(|x| if x.is_negative() { -x } else { Int::zero() })
                .collect();
            let den = falling(&shift(u), &bp);
            if den.is_zero() {
                continue;
            }
            let c = cp * falling(&shift(p), &bm) / den;
            match &value {
                None => value = Some(c),
                Some(prev) if *prev != c => {
                    return Err(Error::InternalInconsistency(format!(
                        "recurrences disagree at {u:?}"
                    )))
                }
                Some(_) => {}
            }
        }
        let c = value
            .ok_or_else(|| Error::InternalInconsistency(format!("no predecessor reaches {u:?}")))?;
        coeff.insert(u.clone(), c);
    }
    Ok(support
        .into_iter()
        .map(|u| {
            let c = coeff.remove(&u).expect("computed");
            (u, c)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat};

    #[test]
    fn hull_of_the_conic() {
        let cfg = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap();
        assert_eq!(
            oracle_lower_hull(&cfg, &Weight::from_i64(&[0, 1, 0])).unwrap(),
            vec![vec![0, 2]]
        );
        assert_eq!(
            oracle_lower_hull(&cfg, &Weight::from_i64(&[0, -1, 0])).unwrap(),
            vec![vec![0, 1], vec![1, 2]]
        );
        assert!(oracle_lower_hull(&cfg, &Weight::from_i64(&[0, 0, 0])).is_err());
    }

    #[test]
    fn half_series_by_recurrence() {
        let cfg = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap();
        let v = vec![rat(1, 2), rat(0, 1), rat(1, 2)];
        let s = oracle_series(&cfg, &v, &Weight::from_i64(&[0, 1, 0]), &rat(4, 1), 6).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[1], (int_vec(&[-1, 2, -1]), rat(1, 8)));
    }
}
