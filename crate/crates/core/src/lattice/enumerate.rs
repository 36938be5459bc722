//! Lattice points inside boxes cut by one linear inequality.

use num_traits::{Signed, Zero};

use super::{row_hermite_form, Lattice};
use crate::arith::{rat_from_int, Int, Rat};
use crate::error::{Error, Result};

/// `lower_j <= x_j <= upper_j` (missing bounds are unconstrained) together with
/// an optional `Σ c_j x_j <= bound`.
#[derive(Clone, Debug)]
pub struct Region {
    pub lower: Vec<Option<Rat>>,
    pub upper: Vec<Option<Rat>>,
    pub objective: Option<(Vec<Rat>, Rat)>,
}

impl Region {
    pub fn unbounded(n: usize) -> Self {
        Region {
            lower: vec![None; n],
            upper: vec![None; n],
            objective: None,
        }
    }

    /// The cube `|x_j| <= radius`.
    pub fn cube(n: usize, radius: &Int) -> Self {
        let r = rat_from_int(radius);
        Region {
            lower: vec![Some(-r.clone()); n],
            upper: vec![Some(r); n],
            objective: None,
        }
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        for (j, xj) in x.iter().enumerate() {
            let q = rat_from_int(xj);
            if self.lower[j].as_ref().is_some_and(|lo| &q < lo) {
                return false;
            }
            if self.upper[j].as_ref().is_some_and(|hi| &q > hi) {
                return false;
            }
        }
        match &self.objective {
            Some((c, b)) => objective_value(c, x) <= *b,
            None => true,
        }
    }

    /// Tightens box bounds using the objective inequality.
    fn implied_bounds(&self) -> (Vec<Option<Rat>>, Vec<Option<Rat>>) {
        let mut lo = self.lower.clone();
        let mut hi = self.upper.clone();
        let Some((c, b)) = &self.objective else {
            return (lo, hi);
        };
        // smallest possible contribution of each coordinate
        let least: Vec<Option<Rat>> = c
            .iter()
            .enumerate()
            .map(|(j, cj)| {
                if cj.is_zero() {
                    Some(Rat::zero())
                } else if cj.is_positive() {
                    lo[j].as_ref().map(|l| cj * l)
                } else {
                    hi[j].as_ref().map(|h| cj * h)
                }
            })
            .collect();
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let mut rest = Rat::zero();
            let mut ok = true;
            for (i, l) in least.iter().enumerate() {
                if i == j {
                    continue;
                }
                match l {
                    Some(v) => rest += v,
                    None => ok = false,
                }
            }
            if !ok {
                continue;
            }
            let limit = (b - rest) / cj;
            if cj.is_positive() {
                if hi[j].as_ref().map_or(true, |h| &limit < h) {
                    hi[j] = Some(limit);
                }
            } else if lo[j].as_ref().map_or(true, |l| &limit > l) {
                lo[j] = Some(limit);
            }
        }
        (lo, hi)
    }
}

fn objective_value(c: &[Rat], x: &[Int]) -> Rat {
    c.iter()
        .zip(x)
        .fold(Rat::zero(), |acc, (a, b)| acc + a * rat_from_int(b))
}

/// All points of `l` in `region`, in lexicographic order of the original
/// coordinates.
///
/// The coordinates listed in `first` are enumerated first; they must determine
/// the lattice point (the projection of `l` onto them is injective) and every
/// Hermite pivot must end up bounded, otherwise the call is rejected.
pub fn enumerate_points(
    l: &Lattice,
    region: &Region,
    first: &[usize],
    max_nodes: u64,
) -> Result<Vec<Vec<Int>>> {
    let n = l.ambient_dim();
    let mut perm: Vec<usize> = first.to_vec();
    perm.extend((0..n).filter(|j| !first.contains(j)));
    let rows: Vec<Vec<Int>> = l
        .basis()
        .iter()
        .map(|b| perm.iter().map(|&j| b[j].clone()).collect())
        .collect();
    let basis = row_hermite_form(&rows, n);
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|x| !x.is_zero()).expect("nonzero row"))
        .collect();

    let (lo0, hi0) = region.implied_bounds();
    let lo: Vec<Option<Rat>> = perm.iter().map(|&j| lo0[j].clone()).collect();
    let hi: Vec<Option<Rat>> = perm.iter().map(|&j| hi0[j].clone()).collect();
    for &p in &pivots {
        if lo[p].is_none() || hi[p].is_none() {
            return Err(Error::Precondition(format!(
                "lattice enumeration is unbounded in coordinate {}",
                perm[p]
            )));
        }
    }
    let objective = region.objective.as_ref().map(|(c, b)| {
        (
            perm.iter().map(|&j| c[j].clone()).collect::<Vec<Rat>>(),
            b.clone(),
        )
    });

    let mut search = Search {
        basis: &basis,
        pivots: &pivots,
        lo: &lo,
        hi: &hi,
        objective: objective.as_ref(),
        nodes: 0,
        max_nodes,
        out: Vec::new(),
    };
    search.descend(0, vec![Int::zero(); n])?;

    let mut out: Vec<Vec<Int>> = search
        .out
        .into_iter()
        .map(|x| {
            let mut y = vec![Int::zero(); n];
            for (k, &j) in perm.iter().enumerate() {
                y[j] = x[k].clone();
            }
            y
        })
        .filter(|y| region.contains(y))
        .collect();
    out.sort();
    Ok(out)
}

struct Search<'a> {
    basis: &'a [Vec<Int>],
    pivots: &'a [usize],
    lo: &'a [Option<Rat>],
    hi: &'a [Option<Rat>],
    objective: Option<&'a (Vec<Rat>, Rat)>,
    nodes: u64,
    max_nodes: u64,
    out: Vec<Vec<Int>>,
}

impl Search<'_> {
    fn descend(&mut self, k: usize, x: Vec<Int>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::budget("enumerating lattice points", self.max_nodes));
        }
        // coordinates before `fixed` can no longer change
        let fixed = self.pivots.get(k).copied().unwrap_or(x.len());
        for j in 0..fixed {
            let q = rat_from_int(&x[j]);
            if self.lo[j].as_ref().is_some_and(|l| &q < l)
                || self.hi[j].as_ref().is_some_and(|h| &q > h)
            {
                return Ok(());
            }
        }
        if let Some((c, b)) = self.objective {
            let mut least = Rat::zero();
            for (j, cj) in c.iter().enumerate() {
                if j < fixed {
                    least += cj * rat_from_int(&x[j]);
                } else if cj.is_positive() {
                    match &self.lo[j] {
                        Some(l) => least += cj * l,
                        None => return self.branch(k, x),
                    }
                } else if cj.is_negative() {
                    match &self.hi[j] {
                        Some(h) => least += cj * h,
                        None => return self.branch(k, x),
                    }
                }
            }
            if &least > b {
                return Ok(());
            }
        }
        self.branch(k, x)
    }

    fn branch(&mut self, k: usize, x: Vec<Int>) -> Result<()> {
        if k == self.basis.len() {
            self.out.push(x);
            return Ok(());
        }
        let p = self.pivots[k];
        let step = rat_from_int(&self.basis[k][p]);
        let base = rat_from_int(&x[p]);
        let lo = self.lo[p].as_ref().expect("pivot bounds checked");
        let hi = self.hi[p].as_ref().expect("pivot bounds checked");
        let t_lo = ((lo - &base) / &step).ceil().to_integer();
        let t_hi = ((hi - &base) / &step).floor().to_integer();
        let mut t = t_lo;
        while t <= t_hi {
            let y: Vec<Int> = x
                .iter()
                .zip(&self.basis[k])
                .map(|(a, b)| a + &t * b)
                .collect();
            self.descend(k + 1, y)?;
            t += 1;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat};

    #[test]
    fn cube_points_of_a_line() {
        let l = Lattice::from_generators(3, vec![int_vec(&[1, -2, 1])]);
        let pts = enumerate_points(&l, &Region::cube(3, &Int::from(2)), &[], 1000).unwrap();
        assert_eq!(
            pts,
            vec![
                int_vec(&[-1, 2, -1]),
                int_vec(&[0, 0, 0]),
                int_vec(&[1, -2, 1])
            ]
        );
    }

    #[test]
    fn objective_cuts_a_ray() {
        // u = m(1,-2,1), u_0 >= 0 and 3 u_0 <= 7
        let l = Lattice::from_generators(3, vec![int_vec(&[1, -2, 1])]);
        let mut r = Region::unbounded(3);
        r.lower[0] = Some(rat(0, 1));
        r.objective = Some((vec![rat(3, 1), rat(0, 1), rat(0, 1)], rat(7, 1)));
        let pts = enumerate_points(&l, &r, &[0], 1000).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(enumerate_points(&l, &Region::unbounded(3), &[0], 1000).is_err());
    }

    #[test]
    fn node_budget() {
        let l = Lattice::standard(2);
        let e = enumerate_points(&l, &Region::cube(2, &Int::from(50)), &[], 100).unwrap_err();
        assert_eq!(e.kind(), "BudgetExceeded");
    }
}
