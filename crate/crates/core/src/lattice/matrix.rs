use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::arith::{rat_from_int, Int, Rat};
use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Int>>,
}

impl IntMatrix {
    pub fn new(data: Vec<Vec<Int>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Convenience constructor for literals; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Self::new(data).expect("ragged matrix literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![Int::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::one();
        }
        m
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..dim {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[Vec<Int>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        self.data
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rat]) -> Vec<Rat> {
        self.data
            .iter()
            .map(|r| r.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| acc + b * a))
            .collect()
    }

    pub fn to_rational(&self) -> Vec<Vec<Rat>> {
        self.data
            .iter()
            .map(|r| r.iter().map(rat_from_int).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(&self.to_rational(), self.cols).pivots.len()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.data.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        let src = self.data[source].clone();
        for (t, s) in self.data[target].iter_mut().zip(&src) {
            *t += factor * s;
        }
    }

    /// `col[target] += factor * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &Int) {
        if factor.is_zero() {
            return;
        }
        for r in &mut self.data {
            let s = r[source].clone();
            r[target] += factor * s;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -x.clone();
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i][j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i][j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form over the rationals.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Rat>>,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &[Vec<Rat>], ncols: usize) -> Rref {
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in &mut a[r] {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Rref { rows: a, pivots }
}

pub fn rational_rank(m: &[Vec<Rat>], ncols: usize) -> usize {
    rref(m, ncols).pivots.len()
}

/// Basis of `{x : M x = 0}` over the rationals.
pub fn rational_kernel(m: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let r = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !r.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); ncols];
            x[f] = Rat::one();
            for (row, &p) in r.rows.iter().zip(&r.pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// One rational solution of `M x = b`, or `None` when inconsistent.
pub fn rational_solve(m: &[Vec<Rat>], ncols: usize, b: &[Rat]) -> Option<Vec<Rat>> {
    let aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let r = rref(&aug, ncols + 1);
    if r.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn rational_inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let r = rref(&aug, 2 * n);
    if r.pivots.len() < n || r.pivots[n - 1] >= n {
        return None;
    }
    Some(r.rows.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub(crate) fn rat_is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}
