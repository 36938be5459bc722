use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::weight::{lex_is_zero, lex_positive};
use super::{members_of_simplex, Configuration, Face, FaceKind, Weight};
use crate::arith::{rat_vec, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{rational_inverse, LatticeIndex};

/// The regular triangulation `Δ_w` of `conv(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub weight: Weight,
    /// maximal cells, sorted by vertex set
    pub cells: Vec<Face>,
    /// every face of every cell including `∅`, sorted by dimension then vertices
    pub faces: Vec<Face>,
}

impl Triangulation {
    pub fn face(&self, vertices: &[usize]) -> Option<&Face> {
        self.faces.iter().find(|f| f.vertices == vertices)
    }

    pub fn is_unimodular(&self, cfg: &Configuration) -> Result<bool> {
        for c in &self.cells {
            if !super::normalized_volume(cfg, c)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Union of all cell vertex sets.
    pub fn vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self
            .cells
            .iter()
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        s.into_iter().collect()
    }
}

/// Lower-hull data for a candidate simplex `I`.
struct Certificate {
    verts: Vec<usize>,
    /// barycentric coordinates `A_I^{-1} a_j`, one vector per column
    bary: Vec<Vec<Rat>>,
    /// `height_j - (lifted hyperplane through I)(a_j)`
    slack: Vec<Vec<Rat>>,
}

enum Status {
    Strict,
    Degenerate,
    Invalid,
}

impl Certificate {
    fn new(cfg: &Configuration, w: &Weight, verts: &[usize]) -> Option<Self> {
        let minv = rational_inverse(&cfg.submatrix(verts).to_rational())?;
        let bary: Vec<Vec<Rat>> = cfg
            .columns()
            .iter()
            .map(|a| {
                let a = rat_vec(a);
                minv.iter()
                    .map(|row| row.iter().zip(&a).fold(Rat::zero(), |s, (x, y)| s + x * y))
                    .collect()
            })
            .collect();
        let vh: Vec<Vec<Rat>> = verts.iter().map(|&i| w.height(i)).collect();
        let slack = (0..cfg.len())
            .map(|j| {
                let mut s = w.height(j);
                for (b, hi) in bary[j].iter().zip(&vh) {
                    for (x, y) in s.iter_mut().zip(hi) {
                        *x -= b * y;
                    }
                }
                s
            })
            .collect();
        Some(Certificate {
            verts: verts.to_vec(),
            bary,
            slack,
        })
    }

    fn status(&self) -> Status {
        let mut degenerate = false;
        for (j, s) in self.slack.iter().enumerate() {
            if self.verts.contains(&j) {
                continue;
            }
            if lex_is_zero(s) {
                degenerate = true;
            } else if !lex_positive(s) {
                return Status::Invalid;
            }
        }
        if degenerate {
            Status::Degenerate
        } else {
            Status::Strict
        }
    }
}

fn non_generic(verts: &[usize]) -> Error {
    Error::NonGenericWeight(format!(
        "lifted points are not in general position near the cell {verts:?}"
    ))
}

/// Computes `Δ_w` by walking across the lower hull of the lifted configuration.
///
/// A first cell is located by scanning `d`-subsets; every further cell is
/// reached through an interior facet by a ratio test, and each cell is
/// certified with strict inequalities for all points off the cell.
pub fn regular_triangulation(cfg: &Configuration, w: &Weight) -> Result<Triangulation> {
    cfg.check_len(w.len())?;
    let d = cfg.dim();
    let mut start = None;
    for verts in (0..cfg.len()).combinations(d) {
        let Some(cert) = Certificate::new(cfg, w, &verts) else {
            continue;
        };
        match cert.status() {
            Status::Strict => {
                start = Some(cert);
                break;
            }
            Status::Degenerate => return Err(non_generic(&verts)),
            Status::Invalid => {}
        }
    }
    let start = start.ok_or_else(|| non_generic(&[]))?;

    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(start.verts.clone());
    let mut queue = VecDeque::from([start]);
    let mut cells = Vec::new();
    while let Some(cert) = queue.pop_front() {
        for r in 0..d {
            let mut best: Option<(Vec<Rat>, usize)> = None;
            let mut tie = false;
            for k in 0..cfg.len() {
                let g = &cert.bary[k][r];
                if !g.is_negative() {
                    continue;
                }
                let scale = -g.clone();
                let ratio: Vec<Rat> = cert.slack[k].iter().map(|x| x / &scale).collect();
                match &best {
                    Some((b, _)) if &ratio > b => {}
                    Some((b, _)) if &ratio == b => tie = true,
                    _ => {
                        best = Some((ratio, k));
                        tie = false;
                    }
                }
            }
            let Some((_, k)) = best else { continue };
            if tie {
                return Err(non_generic(&cert.verts));
            }
            let mut next: Vec<usize> = cert.verts.clone();
            next[r] = k;
            next.sort_unstable();
            if seen.contains(&next) {
                continue;
            }
            let nc = Certificate::new(cfg, w, &next).ok_or_else(|| non_generic(&next))?;
            if !matches!(nc.status(), Status::Strict) {
                return Err(non_generic(&next));
            }
            seen.insert(next);
            queue.push_back(nc);
        }
        cells.push(cert.verts);
    }
    Ok(assemble(cfg, w, cells))
}

/// Builds cells and the face poset from the maximal vertex sets.
pub(crate) fn assemble(
    cfg: &Configuration,
    w: &Weight,
    mut cells: Vec<Vec<usize>>,
) -> Triangulation {
    cells.sort();
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in &cells {
        for k in 0..=c.len() {
            for s in c.iter().copied().combinations(k) {
                all.insert(s);
            }
        }
    }
    let face = |verts: &Vec<usize>| Face {
        kind: FaceKind::Triangulation,
        span_dim: verts.len(),
        vertices: verts.clone(),
        members: members_of_simplex(cfg, verts),
    };
    let mut faces: Vec<Face> = all.iter().map(face).collect();
    faces.sort_by(|a, b| (a.vertices.len(), &a.vertices).cmp(&(b.vertices.len(), &b.vertices)));
    Triangulation {
        weight: w.clone(),
        cells: cells.iter().map(face).collect(),
        faces,
    }
}

pub fn is_generic_weight(cfg: &Configuration, w: &Weight) -> bool {
    regular_triangulation(cfg, w).is_ok()
}

/// One-codimensional faces of `τ` inside the face poset of `t`.
pub fn facets(tau: &Face, t: &Triangulation) -> Vec<Face> {
    if tau.vertices.is_empty() {
        return Vec::new();
    }
    t.faces
        .iter()
        .filter(|f| {
            f.vertices.len() + 1 == tau.vertices.len()
                && f.vertices.iter().all(|v| tau.vertices.contains(v))
        })
        .cloned()
        .collect()
}

/// Normalized volume of `conv(A)` with respect to `ZA`: the sum of
/// `[ZA : Σ_{i∈I} Z a_i]` over the cells of any regular triangulation.
pub fn lattice_volume(cfg: &Configuration) -> Result<Int> {
    let w = Weight::lex(vec![Rat::zero(); cfg.len()]);
    let t = regular_triangulation(cfg, &w)?;
    let mut total = Int::zero();
    for c in &t.cells {
        match cfg.lattice_of(&c.vertices).index_in(cfg.za())? {
            LatticeIndex::Finite(v) => total += v,
            LatticeIndex::Infinite => {
                return Err(Error::InternalInconsistency("degenerate cell".into()))
            }
        }
    }
    Ok(total)
}
