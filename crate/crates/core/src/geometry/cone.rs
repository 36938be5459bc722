use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::{Configuration, Face, FaceKind};
use crate::arith::{dot_int_rat, Rat};
use crate::error::{Error, Result};
use crate::lattice::rational_kernel;

/// Inner normals of the facets of `Q≥0 A`, one per facet, each nonnegative on
/// every column.
pub(crate) fn facet_normals(cfg: &Configuration) -> &[Vec<Rat>] {
    cfg.facet_normals.get_or_init(|| compute_facet_normals(cfg))
}

fn compute_facet_normals(cfg: &Configuration) -> Vec<Vec<Rat>> {
    let d = cfg.dim();
    let n = cfg.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut normals = Vec::new();
    for s in (0..n).combinations(d - 1) {
        if cfg.rank_of(&s) != d - 1 {
            continue;
        }
        let ker = rational_kernel(&cfg.span_of(&s), d);
        let [y] = ker.as_slice() else { continue };
        let vals: Vec<Rat> = cfg.columns().iter().map(|a| dot_int_rat(a, y)).collect();
        let pos = vals.iter().any(|x| x.is_positive());
        let neg = vals.iter().any(|x| x.is_negative());
        if pos && neg {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&j| vals[j].is_zero()).collect();
        if seen.insert(members) {
            normals.push(if neg {
                y.iter().map(|x| -x).collect()
            } else {
                y.clone()
            });
        }
    }
    normals
}

/// A linear form vanishing on the columns in `members` and positive on all
/// others, when `members` is the member set of a face of `Q≥0 A`.
pub fn supporting_functional(cfg: &Configuration, members: &[usize]) -> Option<Vec<Rat>> {
    let mut l = vec![Rat::zero(); cfg.dim()];
    for y in facet_normals(cfg) {
        if members
            .iter()
            .all(|&j| dot_int_rat(cfg.column(j), y).is_zero())
        {
            for (a, b) in l.iter_mut().zip(y) {
                *a += b;
            }
        }
    }
    (0..cfg.len())
        .all(|j| dot_int_rat(cfg.column(j), &l).is_zero() == members.contains(&j))
        .then_some(l)
}

/// All faces of `Q≥0 A`, from `{0}` up to the whole cone, sorted by dimension
/// and then by member set.
pub fn cone_faces(cfg: &Configuration) -> Vec<Face> {
    cfg.cone_faces
        .get_or_init(|| compute_cone_faces(cfg))
        .clone()
}

fn compute_cone_faces(cfg: &Configuration) -> Vec<Face> {
    let n = cfg.len();
    let facet_sets: BTreeSet<Vec<usize>> = facet_normals(cfg)
        .iter()
        .map(|y| {
            (0..n)
                .filter(|&j| dot_int_rat(cfg.column(j), y).is_zero())
                .collect()
        })
        .collect();

    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    all.insert((0..n).collect());
    let mut frontier: Vec<Vec<usize>> = facet_sets.iter().cloned().collect();
    all.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for g in &facet_sets {
                let m: Vec<usize> = f.iter().filter(|j| g.contains(j)).copied().collect();
                if all.insert(m.clone()) {
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    all.insert(Vec::new());

    let rays: Vec<usize> = all
        .iter()
        .filter(|m| !m.is_empty() && cfg.rank_of(m) == 1)
        .map(|m| m[0])
        .collect();
    let mut faces: Vec<Face> = all
        .into_iter()
        .map(|members| Face {
            kind: FaceKind::Cone,
            span_dim: cfg.rank_of(&members),
            vertices: rays
                .iter()
                .filter(|r| members.contains(r))
                .copied()
                .collect(),
            members,
        })
        .collect();
    faces.sort_by(|a, b| (a.span_dim, &a.members).cmp(&(b.span_dim, &b.members)));
    faces
}

/// Indices of the extreme rays when `conv(A)` is a simplex.
pub fn simplex_vertices(cfg: &Configuration) -> Result<Vec<usize>> {
    let faces = cone_faces(cfg);
    let full = faces.last().expect("the full cone is always a face");
    if full.vertices.len() != cfg.dim() {
        return Err(Error::NotSimplex {
            rays: full.vertices.len(),
            dim: cfg.dim(),
        });
    }
    Ok(full.vertices.clone())
}

pub fn is_simplex(cfg: &Configuration) -> bool {
    simplex_vertices(cfg).is_ok()
}
