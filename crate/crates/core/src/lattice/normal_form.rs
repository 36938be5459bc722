//! Smith and Hermite normal forms over the integers.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::arith::Int;

/// Result of [`smith_normal_form`]: `u * m * v == s`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `s[0][0], s[1][1], ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with unimodular transforms.
///
/// The diagonal of `s` is non-negative and each nonzero entry divides the next.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        if pi != t {
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
        }
        if pj != t {
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }

        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &-q.clone());
                u.add_row_multiple(i, t, &-q);
                if !a[(i, t)].is_zero() {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &-q.clone());
                v.add_col_multiple(j, t, &-q);
                if !a[(t, j)].is_zero() {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    changed = true;
                }
            }
            if !changed {
                // divisibility chain: fold a non-divisible row into the pivot row
                let p = a[(t, t)].clone();
                let bad =
                    (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
                if let Some(i) = bad {
                    a.add_row_multiple(t, i, &Int::from(1));
                    u.add_row_multiple(t, i, &Int::from(1));
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s: a, v }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= a[(i, j)].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the nonzero rows only: echelon form, positive pivots, and entries
/// above each pivot reduced into `[0, pivot)`. Two generating sets span the
/// same lattice iff their outputs are equal.
pub fn row_hermite_form(rows: &[Vec<Int>], ncols: usize) -> Vec<Vec<Int>> {
    let mut a: Vec<Vec<Int>> = rows.to_vec();
    let mut p = 0;
    for col in 0..ncols {
        if p == a.len() {
            break;
        }
        loop {
            let best = (p..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(b) = best else { break };
            a.swap(p, b);
            let mut clean = true;
            for i in p + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[p][col]);
                let pivot_row = a[p].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[p][col].is_zero() {
            continue;
        }
        if a[p][col].is_negative() {
            for x in &mut a[p] {
                *x = -x.clone();
            }
        }
        let pivot_row = a[p].clone();
        for i in 0..p {
            let q = a[i][col].div_floor(&pivot_row[col]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        p += 1;
    }
    a.truncate(p);
    a
}
