use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;

use super::{canonicalize_exponent, make_minimal, Exponent};
use crate::arith::{frac, rat_from_int, Int, Rat};
use crate::error::{Error, Result};
use crate::formulas::dim_log_free;
use crate::geometry::{normalized_volume, Configuration, Face, Triangulation};
use crate::lattice::rational_solve;
use crate::params::{e_tau_with, Budget, EClass};

/// The `vol(τ)` exponents attached to `(τ, λ)`: one per class of
/// `Z(A∩τ)/Σ_{i∈vert(τ)} Z a_i`, each made minimal and canonicalized.
pub fn exponents_for(
    cfg: &Configuration,
    t: &Triangulation,
    tau: &Face,
    lambda: &EClass,
    beta: &[Rat],
    budget: &Budget,
) -> Result<Vec<Exponent>> {
    fake_exponents(cfg, tau, lambda, beta)?
        .into_iter()
        .map(|v| {
            let v = make_minimal(cfg, &v, budget)?;
            let v = canonicalize_exponent(cfg, t, &v, budget)?;
            attribute(cfg, t, v)
        })
        .collect()
}

/// One element of `Exp_w(τ, λ)` for each of its `vol(τ)` classes modulo `L`.
pub(crate) fn fake_exponents(
    cfg: &Configuration,
    tau: &Face,
    lambda: &EClass,
    beta: &[Rat],
) -> Result<Vec<Vec<Rat>>> {
    let n = cfg.len();
    let verts = &tau.vertices;
    let extra: Vec<usize> = tau
        .members
        .iter()
        .copied()
        .filter(|j| !verts.contains(j))
        .collect();
    let u = &lambda.witness;
    let au = cfg.apply_int(u);
    let gamma0: Vec<Rat> = beta
        .iter()
        .zip(&au)
        .map(|(b, a)| b - rat_from_int(a))
        .collect();
    let basis = cfg.submatrix(verts).to_rational();
    let coords = |x: &[Rat]| -> Result<Vec<Rat>> {
        if verts.is_empty() {
            return if x.iter().all(|q| q == &Rat::from_integer(Int::from(0))) {
                Ok(Vec::new())
            } else {
                Err(Error::InternalInconsistency(
                    "class off the empty face".into(),
                ))
            };
        }
        rational_solve(&basis, verts.len(), x).ok_or_else(|| {
            Error::InternalInconsistency(format!("{} misses its class", tau.label()))
        })
    };
    let base = coords(&gamma0)?;
    let extra_coords: Vec<Vec<Rat>> = extra
        .iter()
        .map(|&j| coords(&cfg.column(j).iter().map(rat_from_int).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;

    // N-combinations of the extra members reach every class of the finite group
    let key = |c: &[Rat]| -> Vec<Rat> { c.iter().map(frac).collect() };
    let mut seen: BTreeMap<Vec<Rat>, (Vec<u32>, Vec<Rat>)> = BTreeMap::new();
    let zero = vec![Rat::from_integer(Int::from(0)); verts.len()];
    seen.insert(key(&zero), (vec![0; extra.len()], zero.clone()));
    let mut queue = VecDeque::from([(vec![0u32; extra.len()], zero)]);
    while let Some((m, c)) = queue.pop_front() {
        for (k, ec) in extra_coords.iter().enumerate() {
            let c2: Vec<Rat> = c.iter().zip(ec).map(|(a, b)| a + b).collect();
            let k2 = key(&c2);
            if seen.contains_key(&k2) {
                continue;
            }
            let mut m2 = m.clone();
            m2[k] += 1;
            seen.insert(k2, (m2.clone(), c2.clone()));
            queue.push_back((m2, c2));
        }
    }
    let vol = normalized_volume(cfg, tau)?;
    if Int::from(seen.len()) != vol {
        return Err(Error::InternalInconsistency(format!(
            "{} classes found for {} of volume {vol}",
            seen.len(),
            tau.label()
        )));
    }

    Ok(seen
        .into_values()
        .map(|(m, c)| {
            let mut v = vec![Rat::from_integer(Int::from(0)); n];
            for j in 0..n {
                if !tau.members.contains(&j) {
                    v[j] = rat_from_int(&u[j]);
                }
            }
            for (&j, mj) in extra.iter().zip(&m) {
                v[j] = Rat::from_integer(Int::from(*mj));
            }
            for (k, &i) in verts.iter().enumerate() {
                v[i] = &base[k] - &c[k];
            }
            v
        })
        .collect())
}

/// Fills in `τ_v` (the face of `Δ_w` with vertices `I_v`) and `λ_v`.
pub(crate) fn attribute(cfg: &Configuration, t: &Triangulation, v: Vec<Rat>) -> Result<Exponent> {
    let mut e = Exponent::new(v);
    let iv = e.i_v();
    let face = t.face(&iv).cloned().ok_or_else(|| {
        Error::InternalInconsistency(format!("I_v = {iv:?} is not a face of the triangulation"))
    })?;
    let modulus = face.lattice(cfg);
    let mut lam = vec![Rat::from_integer(Int::from(0)); cfg.dim()];
    for &j in &iv {
        for (l, a) in lam.iter_mut().zip(cfg.column(j)) {
            *l += &e.v[j] * rat_from_int(a);
        }
    }
    let rep = modulus
        .reduce(&lam)
        .ok_or_else(|| Error::InternalInconsistency("λ_v left the span of τ_v".into()))?;
    let witness = (0..cfg.len())
        .map(|j| {
            if face.members.contains(&j) {
                Int::from(0)
            } else {
                e.v[j].to_integer()
            }
        })
        .collect();
    e.class = Some(EClass {
        face: face.clone(),
        rep,
        modulus,
        witness,
    });
    e.face = Some(face);
    Ok(e)
}

/// `Minex_{β,w}` without comparing its size to the dimension formula.
pub fn minex_unchecked(
    cfg: &Configuration,
    t: &Triangulation,
    beta: &[Rat],
    budget: &Budget,
) -> Result<Vec<Exponent>> {
    cfg.check_param(beta)?;
    let per_face: Vec<Vec<Exponent>> = t
        .faces
        .par_iter()
        .map(|tau| {
            let mut out = Vec::new();
            for lambda in e_tau_with(cfg, tau, beta, budget)? {
                out.extend(exponents_for(cfg, t, tau, &lambda, beta, budget)?);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut by_v: BTreeMap<Vec<Rat>, Exponent> = BTreeMap::new();
    for e in per_face.into_iter().flatten() {
        by_v.entry(e.v.clone()).or_insert(e);
    }
    let out: Vec<Exponent> = by_v.into_values().collect();

    let mut keys = BTreeSet::new();
    for e in &out {
        let face = e.face.as_ref().expect("attributed");
        if !keys.insert((face.vertices.clone(), e.class_mod_l())) {
            return Err(Error::InternalInconsistency(format!(
                "two exponents share τ_v = {} and their class modulo L",
                face.label()
            )));
        }
    }
    Ok(out)
}

/// `Minex_{β,w}`, checked against the dimension formula.
pub fn minex(
    cfg: &Configuration,
    t: &Triangulation,
    beta: &[Rat],
    budget: &Budget,
) -> Result<Vec<Exponent>> {
    let out = minex_unchecked(cfg, t, beta, budget)?;
    let expected = dim_log_free(cfg, t, beta, budget)?.total;
    if Int::from(out.len()) != expected {
        return Err(Error::InternalInconsistency(format!(
            "{} exponents found but the dimension formula gives {expected}",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::formulas::single_cell_weight;
    use crate::geometry::{regular_triangulation, Weight};

    #[test]
    fn small_example_minex() {
        let cfg = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap();
        let beta = vec![rat(1, 1), rat(1, 1)];
        let b = Budget::default();
        let t = regular_triangulation(&cfg, &Weight::from_i64(&[0, 1, 0])).unwrap();
        let vs: Vec<Vec<Rat>> = minex(&cfg, &t, &beta, &b)
            .unwrap()
            .into_iter()
            .map(|e| e.v)
            .collect();
        assert_eq!(
            vs,
            vec![
                vec![rat(0, 1), rat(1, 1), rat(0, 1)],
                vec![rat(1, 2), rat(0, 1), rat(1, 2)]
            ]
        );
        let t = regular_triangulation(&cfg, &Weight::from_i64(&[0, -1, 0])).unwrap();
        let vs = minex(&cfg, &t, &beta, &b).unwrap();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].v, vec![rat(0, 1), rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn rank_eleven_minex() {
        let cfg = Configuration::from_rows(&[
            &[1, 1, 1, 1, 1, 1, 1, 1, 1],
            &[0, 1, 2, 3, 0, 2, 0, 1, 0],
            &[0, 0, 0, 0, 1, 1, 2, 2, 3],
        ])
        .unwrap();
        let (_, t) = single_cell_weight(&cfg).unwrap();
        let ex = minex(
            &cfg,
            &t,
            &[rat(1, 1), rat(1, 1), rat(1, 1)],
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(ex.len(), 11);
    }
}
