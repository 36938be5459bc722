use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::arith::{Int, Rat};
use crate::error::Result;
use crate::geometry::{simplex_vertices, Configuration};
use crate::lattice::QuotientGroup;
use crate::params::{next_layer, Budget};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmOutcome {
    CohenMacaulay,
    /// `β ∈ ZA \ NA` and `m1, m2 ∈ N^n` supported on distinct vertices with
    /// `β + A m1, β + A m2 ∈ NA`
    NotCohenMacaulay {
        beta: Vec<Rat>,
        m1: Vec<Int>,
        m2: Vec<Int>,
    },
    /// the candidate set outgrew the node budget
    Inconclusive,
}

fn order_of(q: &QuotientGroup, c: &[Int]) -> usize {
    let zero = q.zero();
    let mut x = c.to_vec();
    let mut k = 1;
    while x != zero {
        x = q.add(&x, c);
        k += 1;
    }
    k
}

/// Cohen–Macaulayness of `k[NA]` for a simplex configuration.
///
/// `k[NA]` is Cohen–Macaulay exactly when it is free over the subring
/// generated by the vertices, i.e. when each class of `ZA / Σ_{v} Z a_v`
/// contains a single element `γ ∈ NA` with `γ − a_v ∉ NA` for every vertex.
/// Such elements are sums `Σ u_j a_j` over non-vertices with `u_j` below the
/// order of `a_j` in that group, so the search is finite.
pub fn is_cohen_macaulay(cfg: &Configuration, budget: &Budget) -> Result<CmOutcome> {
    let verts = simplex_vertices(cfg)?;
    let q = QuotientGroup::new(cfg.za(), &cfg.lattice_of(&verts))?;
    let others: Vec<usize> = (0..cfg.len()).filter(|j| !verts.contains(j)).collect();
    let orders: Vec<usize> = others
        .iter()
        .map(|&j| order_of(&q, &q.class_of_int(cfg.column(j)).expect("column in ZA")))
        .collect();
    let count = orders
        .iter()
        .try_fold(1u64, |a, &o| a.checked_mul(o as u64));
    if count.map_or(true, |c| c > budget.nodes) {
        return Ok(CmOutcome::Inconclusive);
    }

    let d = cfg.dim();
    let mut candidates: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut u = vec![0usize; others.len()];
    loop {
        let mut g = vec![Int::zero(); d];
        for (&j, &k) in others.iter().zip(&u) {
            for (x, a) in g.iter_mut().zip(cfg.column(j)) {
                *x += a * Int::from(k);
            }
        }
        candidates.insert(g);
        let mut i = 0;
        while i < u.len() {
            u[i] += 1;
            if u[i] < orders[i] {
                break;
            }
            u[i] = 0;
            i += 1;
        }
        if i == u.len() {
            break;
        }
    }

    let max_deg = orders.iter().map(|o| o - 1).sum::<usize>();
    let mut layers: Vec<BTreeSet<Vec<Int>>> = vec![BTreeSet::from([vec![Int::zero(); d]])];
    let mut seen = 1u64;
    for _ in 0..max_deg {
        let next = next_layer(cfg, layers.last().expect("nonempty"));
        seen += next.len() as u64;
        if seen > budget.nodes {
            return Ok(CmOutcome::Inconclusive);
        }
        layers.push(next);
    }
    let in_na = |g: &[Int]| -> bool {
        let deg = cfg.degree(
            &g.iter()
                .map(|x| Rat::from_integer(x.clone()))
                .collect::<Vec<_>>(),
        );
        if !deg.is_integer() || deg < Rat::zero() {
            return false;
        }
        usize::try_from(deg.to_integer())
            .ok()
            .and_then(|k| layers.get(k))
            .is_some_and(|l| l.contains(g))
    };

    let mut by_class: BTreeMap<Vec<Int>, Vec<Int>> = BTreeMap::new();
    for g in candidates {
        let apery = verts.iter().all(|&v| {
            let h: Vec<Int> = g.iter().zip(cfg.column(v)).map(|(x, a)| x - a).collect();
            !in_na(&h)
        });
        if !apery {
            continue;
        }
        let class = q.class_of_int(&g).expect("in ZA");
        match by_class.get(&class) {
            None => {
                by_class.insert(class, g);
            }
            Some(g1) => return Ok(witness(cfg, &verts, g1, &g)),
        }
    }
    Ok(CmOutcome::CohenMacaulay)
}

/// From two Apéry elements `γ1 ≠ γ2` of one class, `γ1 − γ2 = A_V (z+ − z−)`
/// and `β = γ1 − A z+ = γ2 − A z−`.
fn witness(cfg: &Configuration, verts: &[usize], g1: &[Int], g2: &[Int]) -> CmOutcome {
    let av = cfg.submatrix(verts).to_rational();
    let diff: Vec<Rat> = g1
        .iter()
        .zip(g2)
        .map(|(a, b)| Rat::from_integer(a - b))
        .collect();
    let z = crate::lattice::rational_solve(&av, verts.len(), &diff).expect("vertices span");
    let mut m1 = vec![Int::zero(); cfg.len()];
    let mut m2 = vec![Int::zero(); cfg.len()];
    for (&v, c) in verts.iter().zip(&z) {
        let c = c.to_integer();
        if c > Int::zero() {
            m1[v] = c;
        } else {
            m2[v] = -c;
        }
    }
    let am1 = cfg.apply_int(&m1);
    let beta = g1
        .iter()
        .zip(&am1)
        .map(|(a, b)| Rat::from_integer(a - b))
        .collect();
    CmOutcome::NotCohenMacaulay { beta, m1, m2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::semigroup_member;

    fn check_witness(cfg: &Configuration, o: &CmOutcome) {
        let CmOutcome::NotCohenMacaulay { beta, m1, m2 } = o else {
            panic!("expected a witness, got {o:?}");
        };
        assert!(!semigroup_member(cfg, beta));
        for m in [m1, m2] {
            let am: Vec<Rat> = cfg
                .apply_int(m)
                .into_iter()
                .map(Rat::from_integer)
                .collect();
            let shifted: Vec<Rat> = beta.iter().zip(&am).map(|(a, b)| a + b).collect();
            assert!(semigroup_member(cfg, &shifted));
        }
        assert!(m1.iter().zip(m2).all(|(a, b)| a.is_zero() || b.is_zero()));
    }

    #[test]
    fn classic_examples() {
        let b = Budget::default();
        let conic = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap();
        assert_eq!(
            is_cohen_macaulay(&conic, &b).unwrap(),
            CmOutcome::CohenMacaulay
        );
        let quartic = Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 1, 3, 4]]).unwrap();
        let o = is_cohen_macaulay(&quartic, &b).unwrap();
        check_witness(&quartic, &o);
        let twisted = Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]).unwrap();
        assert_eq!(
            is_cohen_macaulay(&twisted, &b).unwrap(),
            CmOutcome::CohenMacaulay
        );
    }
}
