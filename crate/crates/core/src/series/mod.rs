//! Exponents and logarithm-free canonical series `φ_v`.

mod exponents;
mod phi;

pub(crate) use exponents::fake_exponents;
pub use exponents::{exponents_for, minex, minex_unchecked};
pub use phi::{
    box_operators, phi_series, verify_annihilation, AnnihilationReport, OperatorCheck, Term,
    TruncatedSeries,
};

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{format_rational, is_natural, is_negative_integer, rat_from_int, Int, Rat};
use crate::error::{Error, Result};
use crate::geometry::{Configuration, Face, Triangulation};
use crate::lattice::{
    enumerate_points, integer_kernel, rational_solve, solve_integer, Lattice, Region,
};
use crate::params::{affine_classes, Budget, EClass};

/// `L = {u ∈ Z^n : A u = 0}`.
pub fn kernel_lattice(cfg: &Configuration) -> Lattice {
    Lattice::from_generators(cfg.len(), integer_kernel(cfg.matrix()))
}

/// `{i : v_i ∈ Z_{<0}}`
pub fn nsupp(v: &[Rat]) -> Vec<usize> {
    (0..v.len())
        .filter(|&i| is_negative_integer(&v[i]))
        .collect()
}

/// `{i : v_i ∈ N}`
pub fn psupp(v: &[Rat]) -> Vec<usize> {
    (0..v.len()).filter(|&i| is_natural(&v[i])).collect()
}

/// `{i : v_i ∉ Z}`
pub fn non_integral(v: &[Rat]) -> Vec<usize> {
    (0..v.len()).filter(|&i| !v[i].is_integer()).collect()
}

/// An exponent `v` with `A v = β`, together with `τ_v` and `λ_v` once known.
#[derive(Clone, Debug)]
pub struct Exponent {
    pub v: Vec<Rat>,
    pub nsupp: Vec<usize>,
    pub psupp: Vec<usize>,
    pub face: Option<Face>,
    pub class: Option<EClass>,
}

impl Exponent {
    pub fn new(v: Vec<Rat>) -> Self {
        Exponent {
            nsupp: nsupp(&v),
            psupp: psupp(&v),
            v,
            face: None,
            class: None,
        }
    }

    /// `I_v = {j : v_j ∉ N}`
    pub fn i_v(&self) -> Vec<usize> {
        (0..self.v.len())
            .filter(|j| !self.psupp.contains(j))
            .collect()
    }

    /// The class of `v` modulo `L`: two exponents for the same `β` differ by an
    /// element of `L` exactly when their fractional parts agree.
    pub fn class_mod_l(&self) -> Vec<Rat> {
        self.v.iter().map(crate::arith::frac).collect()
    }
}

impl PartialEq for Exponent {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl Eq for Exponent {}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.v.iter().map(format_rational).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Membership of `u` in `N_v = {u ∈ L : nsupp(v) = nsupp(v + u)}`.
pub fn n_v(cfg: &Configuration, v: &[Rat], u: &[Int]) -> bool {
    if !cfg.apply_int(u).iter().all(Zero::is_zero) {
        return false;
    }
    let shifted: Vec<Rat> = v.iter().zip(u).map(|(a, b)| a + rat_from_int(b)).collect();
    nsupp(v) == nsupp(&shifted)
}

/// Some `u ∈ L` with `nsupp(v + u) ⊊ nsupp(v)`, if one exists.
pub fn shrinking_shift(
    cfg: &Configuration,
    v: &[Rat],
    budget: &Budget,
) -> Result<Option<Vec<Int>>> {
    let ns = nsupp(v);
    let nonint = non_integral(v);
    for &i in &ns {
        let mut free: Vec<usize> = ns.iter().copied().filter(|&j| j != i).collect();
        free.extend(nonint.iter().copied());
        free.sort_unstable();
        // y_j = (v + u)_j must be natural off `free`
        let rest: Vec<usize> = (0..v.len()).filter(|j| !free.contains(j)).collect();
        let mut gamma = vec![Rat::zero(); cfg.dim()];
        for &j in &rest {
            for (g, a) in gamma.iter_mut().zip(cfg.column(j)) {
                *g += &v[j] * rat_from_int(a);
            }
        }
        let classes = affine_classes(cfg, &free, &gamma, budget)?;
        let Some((_, y)) = classes
            .into_iter()
            .find(|(rep, _)| rep.iter().all(Zero::is_zero))
        else {
            continue;
        };
        let ay = cfg.apply_int(&y);
        let target: Vec<Rat> = gamma
            .iter()
            .zip(&ay)
            .map(|(g, a)| g - rat_from_int(a))
            .collect();
        let x = solve_integer(&cfg.submatrix(&free), &target).ok_or_else(|| {
            Error::InternalInconsistency("shift class is zero but not integrally solvable".into())
        })?;
        let mut u = vec![Int::zero(); v.len()];
        for &j in &rest {
            u[j] = (rat_from_int(&y[j]) - &v[j]).to_integer();
        }
        for (&j, xj) in free.iter().zip(x) {
            u[j] = xj;
        }
        return Ok(Some(u));
    }
    Ok(None)
}

/// Whether no `u ∈ L` strictly shrinks `nsupp(v)`.
pub fn has_minimal_negative_support(
    cfg: &Configuration,
    v: &[Rat],
    budget: &Budget,
) -> Result<bool> {
    Ok(shrinking_shift(cfg, v, budget)?.is_none())
}

/// Shifts `v` by lattice vectors until its negative support is minimal; each
/// step removes at least one index from `nsupp`.
pub fn make_minimal(cfg: &Configuration, v: &[Rat], budget: &Budget) -> Result<Vec<Rat>> {
    let mut v = v.to_vec();
    while let Some(u) = shrinking_shift(cfg, &v, budget)? {
        for (a, b) in v.iter_mut().zip(&u) {
            *a += rat_from_int(b);
        }
    }
    Ok(v)
}

/// A maximal cell of `t` whose vertices contain every index in `support`.
pub fn cell_containing<'a>(t: &'a Triangulation, support: &[usize]) -> Option<&'a Face> {
    t.cells
        .iter()
        .find(|c| support.iter().all(|j| c.vertices.contains(j)))
}

/// The polytope `N_v ∩ {w·u ≤ bound}` as an enumeration region, with the
/// coordinates off a cell `Ĩ ⊇ nsupp(v) ∪ {j : v_j ∉ Z}` listed first.
///
/// On `L` one has `w·u = Σ_{j ∉ Ĩ} (w_j − c·a_j) u_j` where `c` lifts `w` on
/// `Ĩ`; these reduced weights are positive, and `u_j ≥ −v_j` off `Ĩ`, so the
/// region is bounded.
pub(crate) fn n_v_region(
    cfg: &Configuration,
    t: &Triangulation,
    v: &[Rat],
    bound: &Rat,
) -> Result<(Region, Vec<usize>)> {
    let n = cfg.len();
    let mut support = nsupp(v);
    support.extend(non_integral(v));
    let cell = cell_containing(t, &support).ok_or_else(|| {
        Error::Precondition(format!(
            "no cell of the triangulation contains the support {support:?}"
        ))
    })?;
    let w = t.weight.values();
    let at = cfg.submatrix(&cell.vertices).transpose().to_rational();
    let wi: Vec<Rat> = cell.vertices.iter().map(|&i| w[i].clone()).collect();
    let c = rational_solve(&at, cfg.dim(), &wi).expect("cell columns are independent");
    let free: Vec<usize> = (0..n).filter(|j| !cell.vertices.contains(j)).collect();

    let mut region = Region::unbounded(n);
    let mut omega = vec![Rat::zero(); n];
    for &j in &free {
        let cj: Rat = c
            .iter()
            .zip(cfg.column(j))
            .fold(Rat::zero(), |acc, (x, y)| acc + x * rat_from_int(y));
        let o = &w[j] - cj;
        if !o.is_positive() {
            return Err(Error::NonGenericWeight(format!(
                "reduced weight of column {j} over the cell {:?} is not positive",
                cell.vertices
            )));
        }
        omega[j] = o;
    }
    for j in 0..n {
        if is_natural(&v[j]) {
            region.lower[j] = Some(-v[j].clone());
        } else if is_negative_integer(&v[j]) {
            region.upper[j] = Some(-v[j].clone() - Rat::from_integer(Int::from(1)));
        }
    }
    region.objective = Some((omega, bound.clone()));
    Ok((region, free))
}

/// All `u ∈ N_v` with `w·u ≤ bound`.
pub fn n_v_points(
    cfg: &Configuration,
    t: &Triangulation,
    v: &[Rat],
    bound: &Rat,
    budget: &Budget,
) -> Result<Vec<Vec<Int>>> {
    let (region, first) = n_v_region(cfg, t, v, bound)?;
    let l = kernel_lattice(cfg);
    enumerate_points(&l, &region, &first, budget.nodes)
}

/// Returns `v + u*` where `u*` minimizes `w·u` over `N_v` (ties broken by the
/// weight's perturbation if it has one; otherwise a tie is an error).
pub fn canonicalize_exponent(
    cfg: &Configuration,
    t: &Triangulation,
    v: &[Rat],
    budget: &Budget,
) -> Result<Vec<Rat>> {
    let pts = n_v_points(cfg, t, v, &Rat::zero(), budget)?;
    let mut best: Option<(Vec<Rat>, &Vec<Int>)> = None;
    let mut tie = false;
    for u in &pts {
        let key = t.weight.key(u);
        match &best {
            Some((k, _)) if &key > k => {}
            Some((k, _)) if &key == k => tie = true,
            _ => {
                best = Some((key, u));
                tie = false;
            }
        }
    }
    let (_, u) =
        best.ok_or_else(|| Error::InternalInconsistency("N_v does not contain 0".into()))?;
    if tie {
        return Err(Error::NonGenericWeight(
            "the weight minimum over N_v is attained twice".into(),
        ));
    }
    Ok(v.iter().zip(u).map(|(a, b)| a + rat_from_int(b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat};
    use crate::geometry::{regular_triangulation, Weight};

    fn small() -> Configuration {
        Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap()
    }

    fn v(x: &[(i64, i64)]) -> Vec<Rat> {
        x.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn kernel() {
        assert_eq!(kernel_lattice(&small()).basis(), &[int_vec(&[1, -2, 1])]);
        let c = Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]).unwrap();
        let l = kernel_lattice(&c);
        assert_eq!(l.rank(), 2);
        assert!(l.contains_int(&int_vec(&[1, -2, 1, 0])));
        assert!(l.contains_int(&int_vec(&[0, 1, -2, 1])));
        let id = Configuration::from_rows(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(kernel_lattice(&id).is_zero());
    }

    #[test]
    fn minimal_negative_support() {
        let cfg = small();
        let b = Budget::default();
        assert!(has_minimal_negative_support(&cfg, &v(&[(0, 1), (1, 1), (0, 1)]), &b).unwrap());
        assert!(has_minimal_negative_support(&cfg, &v(&[(1, 2), (0, 1), (1, 2)]), &b).unwrap());
        let bad = v(&[(-1, 1), (3, 1), (0, 1)]);
        assert!(!has_minimal_negative_support(&cfg, &bad, &b).unwrap());
        let fixed = make_minimal(&cfg, &bad, &b).unwrap();
        assert!(nsupp(&fixed).is_empty());
        assert_eq!(cfg.apply(&fixed), cfg.apply(&bad));
    }

    #[test]
    fn n_v_membership() {
        let cfg = small();
        let half = v(&[(1, 2), (0, 1), (1, 2)]);
        for m in -3..=3i64 {
            let u = int_vec(&[m, -2 * m, m]);
            assert_eq!(n_v(&cfg, &half, &u), m <= 0);
            assert_eq!(n_v(&cfg, &v(&[(0, 1), (1, 1), (0, 1)]), &u), m == 0);
        }
    }

    #[test]
    fn canonical_exponents() {
        let cfg = small();
        let t = regular_triangulation(&cfg, &Weight::from_i64(&[0, 1, 0])).unwrap();
        let b = Budget::default();
        let half = v(&[(1, 2), (0, 1), (1, 2)]);
        assert_eq!(canonicalize_exponent(&cfg, &t, &half, &b).unwrap(), half);
        let e = v(&[(0, 1), (1, 1), (0, 1)]);
        assert_eq!(canonicalize_exponent(&cfg, &t, &e, &b).unwrap(), e);
        let pts = n_v_points(&cfg, &t, &half, &rat(4, 1), &b).unwrap();
        assert_eq!(
            pts,
            vec![
                int_vec(&[-2, 4, -2]),
                int_vec(&[-1, 2, -1]),
                int_vec(&[0, 0, 0])
            ]
        );
    }
}
