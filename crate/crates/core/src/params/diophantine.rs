//! Non-negative integer solutions of `M x = b` by Contejean–Devie completion.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::arith::Int;
use crate::error::{Error, Result};

/// Minimal solutions of `M x = b` and the Hilbert basis of `M x = 0` over `N`.
///
/// Every non-negative solution is a minimal solution plus an `N`-combination
/// of Hilbert basis elements.
#[derive(Clone, Debug, Default)]
pub(crate) struct NonnegSolutions {
    pub minimal: Vec<Vec<Int>>,
    pub hilbert: Vec<Vec<Int>>,
}

/// Runs the completion on the homogenized system `M x - b t = 0`; basis
/// elements with `t = 1` are the minimal inhomogeneous solutions and those
/// with `t = 0` the homogeneous Hilbert basis. Elements with `t >= 2` are
/// never needed, and since coordinates only grow along completion paths they
/// are pruned as soon as they appear.
pub(crate) fn nonneg_solutions(
    rows: &[Vec<Int>],
    k: usize,
    rhs: &[Int],
    max_degree: u64,
) -> Result<NonnegSolutions> {
    let m = k + 1;
    let col = |i: usize| -> Vec<Int> {
        rows.iter()
            .zip(rhs)
            .map(|(r, b)| if i < k { r[i].clone() } else { -b.clone() })
            .collect()
    };
    let cols: Vec<Vec<Int>> = (0..m).map(col).collect();

    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut frontier: BTreeSet<Vec<u32>> = (0..m)
        .map(|i| {
            let mut e = vec![0u32; m];
            e[i] = 1;
            e
        })
        .collect();
    let mut degree = 1u64;
    while !frontier.is_empty() {
        if degree > max_degree {
            return Err(Error::budget(
                "completing non-negative solutions",
                max_degree,
            ));
        }
        let residuals: Vec<(Vec<u32>, Vec<Int>)> = frontier
            .into_iter()
            .map(|x| {
                let r = residual(&cols, &x);
                (x, r)
            })
            .collect();
        let mut open = Vec::new();
        for (x, r) in residuals {
            if r.iter().all(Zero::is_zero) {
                basis.push(x);
            } else {
                open.push((x, r));
            }
        }
        let mut next = BTreeSet::new();
        for (x, r) in &open {
            for (i, c) in cols.iter().enumerate() {
                let dot: Int = r.iter().zip(c).map(|(a, b)| a * b).sum();
                if !dot.is_negative() {
                    continue;
                }
                let mut y = x.clone();
                y[i] += 1;
                if y[k] >= 2 {
                    continue;
                }
                if basis.iter().any(|b| dominates(&y, b)) {
                    continue;
                }
                next.insert(y);
            }
        }
        frontier = next;
        degree += 1;
    }

    let mut out = NonnegSolutions::default();
    for b in basis {
        let v: Vec<Int> = b[..k].iter().map(|&x| Int::from(x)).collect();
        if b[k] == 1 {
            out.minimal.push(v);
        } else {
            out.hilbert.push(v);
        }
    }
    out.minimal.sort();
    out.hilbert.sort();
    Ok(out)
}

fn residual(cols: &[Vec<Int>], x: &[u32]) -> Vec<Int> {
    let mut r = vec![Int::zero(); cols.first().map_or(0, Vec::len)];
    for (c, &xi) in cols.iter().zip(x) {
        if xi == 0 {
            continue;
        }
        for (ri, ci) in r.iter_mut().zip(c) {
            *ri += ci * xi;
        }
    }
    r
}

fn dominates(y: &[u32], b: &[u32]) -> bool {
    y.iter().zip(b).all(|(a, c)| a >= c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int_vec;

    #[test]
    fn coin_problem() {
        // 2x + 3y = 7: solutions (2,1) only
        let s = nonneg_solutions(&[int_vec(&[2, 3])], 2, &int_vec(&[7]), 64).unwrap();
        assert_eq!(s.minimal, vec![int_vec(&[2, 1])]);
        assert!(s.hilbert.is_empty());
    }

    #[test]
    fn homogeneous_part() {
        // x - y = 1
        let s = nonneg_solutions(&[int_vec(&[1, -1])], 2, &int_vec(&[1]), 64).unwrap();
        assert_eq!(s.minimal, vec![int_vec(&[1, 0])]);
        assert_eq!(s.hilbert, vec![int_vec(&[1, 1])]);
        // x + y - 2z = 0
        let s = nonneg_solutions(&[int_vec(&[1, 1, -2])], 3, &int_vec(&[0]), 64).unwrap();
        assert_eq!(s.minimal, vec![int_vec(&[0, 0, 0])]);
        assert_eq!(
            s.hilbert,
            vec![
                int_vec(&[0, 2, 1]),
                int_vec(&[1, 1, 1]),
                int_vec(&[2, 0, 1])
            ]
        );
    }

    #[test]
    fn no_rows_and_infeasible() {
        let s = nonneg_solutions(&[], 2, &[], 64).unwrap();
        assert_eq!(s.minimal, vec![int_vec(&[0, 0])]);
        assert_eq!(s.hilbert.len(), 2);
        let s = nonneg_solutions(&[int_vec(&[2])], 1, &int_vec(&[3]), 64).unwrap();
        assert!(s.minimal.is_empty());
        let s = nonneg_solutions(&[int_vec(&[1])], 1, &int_vec(&[-1]), 64).unwrap();
        assert!(s.minimal.is_empty());
    }

    #[test]
    fn budget_is_reported() {
        let e = nonneg_solutions(&[int_vec(&[1])], 1, &int_vec(&[100]), 10).unwrap_err();
        assert_eq!(e.kind(), "BudgetExceeded");
    }
}
