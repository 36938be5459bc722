use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive};

use crate::arith::{Int, Rat};
use crate::geometry::Configuration;

/// Membership in the monoid `NA`.
///
/// Homogeneity grades `NA` by `h`, so `γ` can only be a sum of exactly
/// `h . γ` columns; those sums are generated layer by layer.
pub fn semigroup_member(cfg: &Configuration, gamma: &[Rat]) -> bool {
    let deg = cfg.degree(gamma);
    if !deg.is_integer() || deg.is_negative() || gamma.iter().any(|x| !x.is_integer()) {
        return false;
    }
    let target: Vec<Int> = gamma.iter().map(|x| x.to_integer()).collect();
    if !cfg.za().contains_int(&target) {
        return false;
    }
    let k = deg.to_integer().to_usize().expect("degree fits in memory");
    degree_layer(cfg, k).contains(&target)
}

/// All elements of `NA` of degree `k`.
pub fn degree_layer(cfg: &Configuration, k: usize) -> BTreeSet<Vec<Int>> {
    let mut layer: BTreeSet<Vec<Int>> = BTreeSet::new();
    layer.insert(vec![Int::from(0); cfg.dim()]);
    for _ in 0..k {
        layer = next_layer(cfg, &layer);
    }
    layer
}

pub(crate) fn next_layer(cfg: &Configuration, layer: &BTreeSet<Vec<Int>>) -> BTreeSet<Vec<Int>> {
    let mut next = BTreeSet::new();
    for x in layer {
        for a in cfg.columns() {
            next.insert(x.iter().zip(a).map(|(p, q)| p + q).collect());
        }
    }
    next
}
