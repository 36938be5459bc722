//! Counting formulas: the logarithm-free dimension, the simplicial rank, the
//! exceptional set and the Cohen–Macaulay test.

mod cm;
mod simplex;

pub use cm::{is_cohen_macaulay, CmOutcome};
pub use simplex::{
    exceptional_sweep, is_exceptional, rank_simplex, single_cell_weight, ExceptionalOutcome,
    RankOutcome, SweepOptions,
};

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;

use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::geometry::{facets, normalized_volume, Configuration, Face, Triangulation};
use crate::lattice::{rational_solve, Lattice};
use crate::params::{e_tau_with, natural_map, Budget, EClass};
use crate::series::{fake_exponents, kernel_lattice};

/// Contribution of one pair `(τ, λ)` with `λ ∈ E_τ(β)`.
#[derive(Clone, Debug)]
pub struct Contribution {
    pub face: Face,
    pub class: Vec<Rat>,
    pub volume: Int,
    /// `corrections[i-1]` lists, for every `i`-subset of facets carrying a
    /// lift of `λ`, how many exponent classes those facets share; this is
    /// `vol(τ_1 ∩ ⋯ ∩ τ_i)` unless some facet carries several lifts
    pub corrections: Vec<Vec<Int>>,
    pub value: Int,
}

impl Contribution {
    /// Renders `vol − Σ vol(τ_1) + Σ vol(τ_1∩τ_2) − ⋯`, grouping equal volumes.
    pub fn render(&self) -> String {
        let mut s = self.volume.to_string();
        for (i, vols) in self.corrections.iter().enumerate() {
            if vols.is_empty() {
                continue;
            }
            let sign = if i % 2 == 0 { "−" } else { "+" };
            let mut grouped: Vec<(Int, usize)> = Vec::new();
            for v in vols.iter().sorted_by(|a, b| b.cmp(a)) {
                match grouped.last_mut() {
                    Some((x, k)) if x == v => *k += 1,
                    _ => grouped.push((v.clone(), 1)),
                }
            }
            for (v, k) in grouped {
                if k == 1 {
                    s.push_str(&format!("{sign}{v}"));
                } else {
                    s.push_str(&format!("{sign}{k}·{v}"));
                }
            }
        }
        if self.corrections.iter().any(|c| !c.is_empty()) {
            format!("({s})")
        } else {
            s
        }
    }
}

/// The per-`(τ, λ)` terms of the logarithm-free dimension and their sum.
#[derive(Clone, Debug)]
pub struct DimensionBreakdown {
    pub contributions: Vec<Contribution>,
    pub total: Int,
}

impl DimensionBreakdown {
    /// e.g. `(2−2·1+1) + 2·(1−1) + 1`, largest faces first.
    pub fn render(&self) -> String {
        let mut parts: Vec<(String, usize)> = Vec::new();
        let ordered = self
            .contributions
            .iter()
            .sorted_by(|a, b| b.face.span_dim.cmp(&a.face.span_dim));
        for c in ordered {
            let r = c.render();
            match parts.iter_mut().find(|(s, _)| *s == r) {
                Some((_, k)) => *k += 1,
                None => parts.push((r, 1)),
            }
        }
        parts
            .into_iter()
            .map(|(s, k)| if k == 1 { s } else { format!("{k}·{s}") })
            .join(" + ")
    }

    /// The contribution values, largest faces first and grouped per face.
    pub fn values_by_face(&self) -> Vec<(Face, Int)> {
        let mut out: Vec<(Face, Int)> = Vec::new();
        for c in &self.contributions {
            match out.iter_mut().find(|(f, _)| f.vertices == c.face.vertices) {
                Some((_, v)) => *v += &c.value,
                None => out.push((c.face.clone(), c.value.clone())),
            }
        }
        out.sort_by(|a, b| {
            b.0.span_dim
                .cmp(&a.0.span_dim)
                .then(a.0.vertices.cmp(&b.0.vertices))
        });
        out
    }
}

/// `dim S_{β,w}` as a sum over `τ ∈ Δ_w` and `λ ∈ E_τ(β)` of
/// `vol(τ) − Σ_i (−1)^{i−1} Σ |U_1 ∩ ⋯ ∩ U_i|`, where `U_k` collects the
/// exponent classes that the facet `τ_k` contributes through lifts of `λ`.
/// When every facet carries at most one lift, `|U_1 ∩ ⋯ ∩ U_i|` is
/// `vol(τ_1∩⋯∩τ_i)`.
pub fn dim_log_free(
    cfg: &Configuration,
    t: &Triangulation,
    beta: &[Rat],
    budget: &Budget,
) -> Result<DimensionBreakdown> {
    cfg.check_param(beta)?;
    let e_of = t
        .faces
        .iter()
        .map(|f| e_tau_with(cfg, f, beta, budget))
        .collect::<Result<Vec<_>>>()?;
    breakdown(cfg, t, beta, &e_of, &face_volumes(cfg, t)?)
}

/// `vol(τ)` for every face of `t`, in the order of `t.faces`.
pub(crate) fn face_volumes(cfg: &Configuration, t: &Triangulation) -> Result<Vec<Int>> {
    t.faces.iter().map(|f| normalized_volume(cfg, f)).collect()
}

/// Classes modulo `L` of fake exponents, keyed by their reduction against a
/// fixed solution of `A v = β`.
struct ClassSets<'a> {
    cfg: &'a Configuration,
    beta: &'a [Rat],
    kernel: Lattice,
    origin: Vec<Rat>,
    cache: BTreeMap<(usize, Vec<Rat>), BTreeSet<Vec<Rat>>>,
}

impl<'a> ClassSets<'a> {
    fn new(cfg: &'a Configuration, beta: &'a [Rat]) -> Result<Self> {
        let origin = rational_solve(&cfg.matrix().to_rational(), cfg.len(), beta)
            .ok_or_else(|| Error::InternalInconsistency("A v = β has no solution".into()))?;
        Ok(ClassSets {
            cfg,
            beta,
            kernel: kernel_lattice(cfg),
            origin,
            cache: BTreeMap::new(),
        })
    }

    fn get(&mut self, face: usize, lambda: &EClass) -> Result<&BTreeSet<Vec<Rat>>> {
        let key = (face, lambda.rep.clone());
        if !self.cache.contains_key(&key) {
            let mut set = BTreeSet::new();
            for v in fake_exponents(self.cfg, &lambda.face, lambda, self.beta)? {
                let diff: Vec<Rat> = v.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
                let class = self.kernel.reduce(&diff).ok_or_else(|| {
                    Error::InternalInconsistency("fake exponent off A v = β".into())
                })?;
                set.insert(class);
            }
            self.cache.insert(key.clone(), set);
        }
        Ok(&self.cache[&key])
    }
}

/// The dimension formula from precomputed `E_τ(β)` and volumes, both indexed
/// like `t.faces`.
pub(crate) fn breakdown(
    cfg: &Configuration,
    t: &Triangulation,
    beta: &[Rat],
    e_of: &[Vec<EClass>],
    volumes: &[Int],
) -> Result<DimensionBreakdown> {
    let index: BTreeMap<&[usize], usize> = t
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.vertices.as_slice(), i))
        .collect();
    let mut sets = ClassSets::new(cfg, beta)?;

    let mut contributions = Vec::new();
    let mut total = Int::zero();
    for (k, tau) in t.faces.iter().enumerate() {
        if e_of[k].is_empty() {
            continue;
        }
        let volume = &volumes[k];
        let fs: Vec<usize> = facets(tau, t)
            .iter()
            .map(|f| index[f.vertices.as_slice()])
            .collect();
        for lambda in &e_of[k] {
            let own = sets.get(k, lambda)?.clone();
            if Int::from(own.len()) != *volume {
                return Err(Error::InternalInconsistency(format!(
                    "{} exponent classes for {} of volume {volume}",
                    own.len(),
                    tau.label()
                )));
            }
            let mut carried: Vec<BTreeSet<Vec<Rat>>> = Vec::new();
            for &i in &fs {
                let mut u = BTreeSet::new();
                for l in &e_of[i] {
                    if natural_map(cfg, l, tau)?.rep == lambda.rep {
                        u.extend(sets.get(i, l)?.iter().cloned());
                    }
                }
                if !u.is_subset(&own) {
                    return Err(Error::InternalInconsistency(format!(
                        "a facet of {} contributes classes outside it",
                        tau.label()
                    )));
                }
                if !u.is_empty() {
                    carried.push(u);
                }
            }

            let mut corrections = Vec::new();
            let mut correction = Int::zero();
            for size in 1..=carried.len() {
                let mut sizes = Vec::new();
                for subset in carried.iter().combinations(size) {
                    let meet = subset[1..].iter().fold(subset[0].clone(), |acc, u| {
                        acc.intersection(u).cloned().collect()
                    });
                    if !meet.is_empty() {
                        sizes.push(Int::from(meet.len()));
                    }
                }
                let s: Int = sizes.iter().sum();
                if size % 2 == 1 {
                    correction += s;
                } else {
                    correction -= s;
                }
                corrections.push(sizes);
            }
            while corrections.last().is_some_and(|c: &Vec<Int>| c.is_empty()) {
                corrections.pop();
            }
            let value = volume - correction;
            let union: BTreeSet<&Vec<Rat>> = carried.iter().flatten().collect();
            if value != volume - Int::from(union.len()) {
                return Err(Error::InternalInconsistency(format!(
                    "inclusion–exclusion disagrees with the union for {}",
                    tau.label()
                )));
            }
            total += &value;
            contributions.push(Contribution {
                face: tau.clone(),
                class: lambda.rep.clone(),
                volume: volume.clone(),
                corrections,
                value,
            });
        }
    }
    Ok(DimensionBreakdown {
        contributions,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::geometry::{regular_triangulation, Weight};

    #[test]
    fn small_example_breakdowns() {
        let cfg = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap();
        let beta = vec![rat(1, 1), rat(1, 1)];
        let b = Budget::default();
        let t = regular_triangulation(&cfg, &Weight::from_i64(&[0, 1, 0])).unwrap();
        let d = dim_log_free(&cfg, &t, &beta, &b).unwrap();
        assert_eq!(d.total, Int::from(2));
        assert_eq!(d.render(), "(2−2·1+1) + 2·(1−1) + 1");
        let t = regular_triangulation(&cfg, &Weight::from_i64(&[0, -1, 0])).unwrap();
        let d = dim_log_free(&cfg, &t, &beta, &b).unwrap();
        assert_eq!(d.total, Int::from(1));
        assert_eq!(d.render(), "2·(1−2·1+1) + 3·(1−1) + 1");
    }
}
