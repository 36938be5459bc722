use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;

use super::{breakdown, dim_log_free, face_volumes, DimensionBreakdown};
use crate::arith::{clear_denominators, lcm_of_denominators, rat, rat_from_int, Int, Rat};
use crate::error::{Error, Result};
use crate::geometry::{
    cone_faces, normalized_volume, regular_triangulation, simplex_vertices, Configuration, Face,
    Triangulation, Weight,
};
use crate::lattice::{
    annihilator, enumerate_points, rational_solve, solve_integer, IntMatrix, Lattice,
    QuotientGroup, Region,
};
use crate::params::{e_tau_with, Budget, EClass};

/// Weight `1` on the vertices of the simplex and `2` elsewhere, refined
/// lexicographically so that the initial ideal is monomial; its regular
/// triangulation has the simplex as its only cell.
pub fn single_cell_weight(cfg: &Configuration) -> Result<(Weight, Triangulation)> {
    let verts = simplex_vertices(cfg)?;
    let values: Vec<Rat> = (0..cfg.len())
        .map(|j| {
            if verts.contains(&j) {
                rat(1, 1)
            } else {
                rat(2, 1)
            }
        })
        .collect();
    let w = Weight::lex(values);
    match regular_triangulation(cfg, &w) {
        Ok(t) if t.cells.len() == 1 && t.cells[0].vertices == verts => Ok((w, t)),
        Ok(_) | Err(Error::NonGenericWeight(_)) => Err(Error::NoSingleCellWeight),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug)]
pub struct RankOutcome {
    pub rank: Int,
    pub volume: Int,
    pub weight: Weight,
    pub breakdown: DimensionBreakdown,
}

#[derive(Clone, Debug)]
pub struct ExceptionalOutcome {
    pub exceptional: bool,
    /// faces `τ_1, τ_2` and `λ ∈ k(A∩τ_1∩τ_2)` lying in `E_{τ_1}(β)` and
    /// `E_{τ_2}(β)` but not in `E_{τ_1∩τ_2}(β)`
    pub witness: Option<(Face, Face, Vec<Rat>)>,
    pub rank: Int,
    pub volume: Int,
}

/// One face pair `τ_1, τ_2` with their meet `σ` and the coset representatives
/// of `(Z(A∩τ_1) ∩ Z(A∩τ_2) ∩ Qσ) / Z(A∩σ)`.
struct FacePair {
    first: usize,
    second: usize,
    meet: usize,
    span: Vec<Vec<Rat>>,
    shifts: Vec<Vec<Rat>>,
}

/// Everything about a simplex configuration that does not depend on `β`.
struct SimplexData {
    weight: Weight,
    triangulation: Triangulation,
    volumes: Vec<Int>,
    cone: Vec<Face>,
    /// `cone_of[k]` is the cone face with the members of `triangulation.faces[k]`
    cone_of: Vec<usize>,
    pairs: Vec<FacePair>,
}

impl SimplexData {
    fn new(cfg: &Configuration) -> Result<Self> {
        let (weight, triangulation) = single_cell_weight(cfg)?;
        let volumes = face_volumes(cfg, &triangulation)?;
        let cone = cone_faces(cfg);
        let cone_of = triangulation
            .faces
            .iter()
            .map(|f| {
                cone.iter()
                    .position(|g| g.members == f.members)
                    .ok_or_else(|| {
                        Error::InternalInconsistency(format!("{} is not a cone face", f.label()))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let d = cfg.dim();
        let mut pairs = Vec::new();
        for i in 0..cone.len() {
            for j in (i + 1)..cone.len() {
                let (t1, t2) = (&cone[i], &cone[j]);
                if t1.contains_face(t2) || t2.contains_face(t1) {
                    continue;
                }
                let members = t1.intersect_members(t2);
                let meet = cone
                    .iter()
                    .position(|f| f.members == members)
                    .ok_or_else(|| {
                        Error::InternalInconsistency("faces do not meet in a face".into())
                    })?;
                let sigma = &cone[meet];
                let span = cfg.span_of(&sigma.members);
                let shifts = if sigma.is_empty() {
                    vec![vec![Rat::zero(); d]]
                } else {
                    let k = t1
                        .lattice(cfg)
                        .intersection(&t2.lattice(cfg))
                        .intersect_span(&span);
                    let q = QuotientGroup::new(&k, &sigma.lattice(cfg))?;
                    q.elements()
                        .ok_or_else(|| {
                            Error::InternalInconsistency(
                                "infinite quotient of face lattices".into(),
                            )
                        })?
                        .iter()
                        .map(|c| q.representative(c).iter().map(rat_from_int).collect())
                        .collect()
                };
                pairs.push(FacePair {
                    first: i,
                    second: j,
                    meet,
                    span,
                    shifts,
                });
            }
        }
        Ok(SimplexData {
            weight,
            triangulation,
            volumes,
            cone,
            cone_of,
            pairs,
        })
    }

    fn cone_classes(
        &self,
        cfg: &Configuration,
        beta: &[Rat],
        budget: &Budget,
    ) -> Result<Vec<Vec<EClass>>> {
        self.cone
            .iter()
            .map(|f| e_tau_with(cfg, f, beta, budget))
            .collect()
    }

    fn rank(
        &self,
        cfg: &Configuration,
        beta: &[Rat],
        cone_e: &[Vec<EClass>],
    ) -> Result<RankOutcome> {
        // the same classes, re-attached to the faces of the triangulation
        let e_of: Vec<Vec<EClass>> = self
            .cone_of
            .iter()
            .zip(&self.triangulation.faces)
            .map(|(&c, f)| {
                cone_e[c]
                    .iter()
                    .map(|e| EClass {
                        face: f.clone(),
                        ..e.clone()
                    })
                    .collect()
            })
            .collect();
        let breakdown = breakdown(cfg, &self.triangulation, beta, &e_of, &self.volumes)?;
        Ok(RankOutcome {
            rank: breakdown.total.clone(),
            volume: self.volumes.last().expect("the cell is a face").clone(),
            weight: self.weight.clone(),
            breakdown,
        })
    }

    fn exceptional(
        &self,
        cfg: &Configuration,
        beta: &[Rat],
        budget: &Budget,
    ) -> Result<ExceptionalOutcome> {
        let cone_e = self.cone_classes(cfg, beta, budget)?;
        let r = self.rank(cfg, beta, &cone_e)?;
        let d = cfg.dim();
        let mut witness = None;
        'pairs: for p in &self.pairs {
            let sigma_lattice = self.cone[p.meet].lattice(cfg);
            let known: BTreeSet<&Vec<Rat>> = cone_e[p.meet].iter().map(|e| &e.rep).collect();
            for e1 in &cone_e[p.first] {
                for e2 in &cone_e[p.second] {
                    let Some(lam0) = glue(d, e1, e2, &p.span) else {
                        continue;
                    };
                    for sh in &p.shifts {
                        let lam: Vec<Rat> = lam0.iter().zip(sh).map(|(a, b)| a + b).collect();
                        let rep = sigma_lattice.reduce(&lam).ok_or_else(|| {
                            Error::InternalInconsistency("glued class left Qσ".into())
                        })?;
                        if !known.contains(&rep) {
                            witness = Some((
                                self.cone[p.first].clone(),
                                self.cone[p.second].clone(),
                                rep,
                            ));
                            break 'pairs;
                        }
                    }
                }
            }
        }
        let exceptional = witness.is_some();
        if exceptional != (r.rank > r.volume) {
            return Err(Error::InternalInconsistency(format!(
                "face criterion says exceptional = {exceptional} but rank {} and volume {}",
                r.rank, r.volume
            )));
        }
        Ok(ExceptionalOutcome {
            exceptional,
            witness,
            rank: r.rank,
            volume: r.volume,
        })
    }
}

/// `rank M_A(β)` for a simplex configuration: the logarithm-free dimension for
/// a weight whose triangulation is the simplex itself.
pub fn rank_simplex(cfg: &Configuration, beta: &[Rat], budget: &Budget) -> Result<RankOutcome> {
    cfg.check_param(beta)?;
    let (weight, t) = single_cell_weight(cfg)?;
    let volume = normalized_volume(cfg, &t.cells[0])?;
    let breakdown = dim_log_free(cfg, &t, beta, budget)?;
    Ok(RankOutcome {
        rank: breakdown.total.clone(),
        volume,
        weight,
        breakdown,
    })
}

/// Some `λ ∈ Qσ` with `λ ≡ e1` modulo `Z(A∩τ_1)` and `λ ≡ e2` modulo `Z(A∩τ_2)`.
fn glue(d: usize, e1: &EClass, e2: &EClass, sigma_span: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let b1 = e1.modulus.basis();
    let b2 = e2.modulus.basis();
    let (k1, k2) = (b1.len(), b2.len());
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    // e1 + B1 y1 − B2 y2 = e2
    for i in 0..d {
        let mut row: Vec<Int> = b1.iter().map(|b| b[i].clone()).collect();
        row.extend(b2.iter().map(|b| -b[i].clone()));
        rows.push(row);
        rhs.push(&e2.rep[i] - &e1.rep[i]);
    }
    // P (e1 + B1 y1) = 0
    for p in annihilator(sigma_span, d) {
        let p = clear_denominators(&p);
        let mut row: Vec<Int> = b1
            .iter()
            .map(|b| b.iter().zip(&p).fold(Int::zero(), |a, (x, y)| a + x * y))
            .collect();
        row.extend(std::iter::repeat(Int::zero()).take(k2));
        rows.push(row);
        let pe: Rat = p
            .iter()
            .zip(&e1.rep)
            .fold(Rat::zero(), |a, (x, y)| a + rat_from_int(x) * y);
        rhs.push(-pe);
    }
    let y = solve_integer(&IntMatrix::new(rows).ok()?, &rhs)?;
    let mut lam = e1.rep.clone();
    for (b, c) in b1.iter().zip(&y[..k1]) {
        for (l, x) in lam.iter_mut().zip(b) {
            *l += rat_from_int(&(x * c));
        }
    }
    Some(lam)
}

/// Decides `β ∈ E(A)` for a simplex configuration by searching for two faces
/// whose parameter sets disagree with that of their intersection, and checks
/// the answer against `rank > vol`.
pub fn is_exceptional(
    cfg: &Configuration,
    beta: &[Rat],
    budget: &Budget,
) -> Result<ExceptionalOutcome> {
    cfg.check_param(beta)?;
    SimplexData::new(cfg)?.exceptional(cfg, beta, budget)
}

/// Search window for [`exceptional_sweep`].
#[derive(Clone, Debug)]
pub struct SweepOptions {
    /// `h·β` ranges over `lo..=hi`
    pub degrees: (i64, i64),
    /// coordinates of `β` in the vertex basis are at least `−margin`
    pub margin: i64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            degrees: (-2, 4),
            margin: 1,
        }
    }
}

/// Every exceptional `β ∈ ZA` inside the window, sorted by degree and then
/// lexicographically.
pub fn exceptional_sweep(
    cfg: &Configuration,
    opts: &SweepOptions,
    budget: &Budget,
) -> Result<Vec<Vec<Rat>>> {
    let verts = simplex_vertices(cfg)?;
    let d = cfg.dim();
    let av = cfg.submatrix(&verts).to_rational();
    // y = D · (vertex coordinates) is integral on ZA
    let za_coords: Vec<Vec<Rat>> = cfg
        .za()
        .basis()
        .iter()
        .map(|b| {
            rational_solve(&av, d, &b.iter().map(rat_from_int).collect::<Vec<_>>())
                .ok_or_else(|| Error::InternalInconsistency("ZA outside the vertex span".into()))
        })
        .collect::<Result<_>>()?;
    let den = lcm_of_denominators(za_coords.iter().flatten());
    let scale = rat_from_int(&den);
    let gens: Vec<Vec<Int>> = za_coords
        .iter()
        .map(|c| c.iter().map(|x| (x * &scale).to_integer()).collect())
        .collect();
    let l = Lattice::from_generators(d, gens);
    let (lo, hi) = opts.degrees;
    let mut region = Region::unbounded(d);
    for b in region.lower.iter_mut() {
        *b = Some(rat(-opts.margin, 1) * &scale);
    }
    region.objective = Some((vec![rat(1, 1); d], rat(hi, 1) * &scale));
    let ys = enumerate_points(&l, &region, &[], budget.nodes)?;
    let low = rat(lo, 1) * &scale;
    let candidates: Vec<Vec<Rat>> = ys
        .into_iter()
        .filter(|y| y.iter().fold(Rat::zero(), |a, x| a + rat_from_int(x)) >= low)
        .map(|y| {
            let c: Vec<Rat> = y.iter().map(|x| rat_from_int(x) / &scale).collect();
            (0..d)
                .map(|i| {
                    c.iter().zip(&verts).fold(Rat::zero(), |a, (x, &v)| {
                        a + x * rat_from_int(&cfg.column(v)[i])
                    })
                })
                .collect()
        })
        .collect();
    let data = SimplexData::new(cfg)?;
    let flags: Vec<bool> = candidates
        .par_iter()
        .map(|b| data.exceptional(cfg, b, budget).map(|o| o.exceptional))
        .collect::<Result<_>>()?;
    let mut out: Vec<Vec<Rat>> = candidates
        .into_iter()
        .zip(flags)
        .filter_map(|(b, f)| f.then_some(b))
        .collect();
    out.sort_by(|a, b| (cfg.degree(a), a).cmp(&(cfg.degree(b), b)));
    Ok(out)
}
