//! Exact integer lattices: membership, indices, intersections and quotients.
//!
//! Everything here works over arbitrary-precision integers and rationals.
//! Lattices keep a row-style Hermite basis, so two lattices are equal exactly
//! when their basis lists are equal.

mod enumerate;
mod matrix;
mod normal_form;
mod quotient;

pub use enumerate::{enumerate_points, Region};
pub use matrix::{
    rational_inverse, rational_kernel, rational_rank, rational_solve, rref, IntMatrix, Rref,
};
pub use normal_form::{row_hermite_form, smith_normal_form, SmithForm};
pub use quotient::QuotientGroup;

pub(crate) use matrix::rat_is_zero_vec;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{clear_denominators, frac, rat_from_int, Int, Rat};
use crate::error::{Error, Result};

/// A subgroup of `Z^n` given by a Hermite-reduced basis. The empty basis is
/// the zero lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Vec<Vec<Int>>,
}

/// Group index `[super : sub]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&Int> {
        match self {
            LatticeIndex::Finite(n) => Some(n),
            LatticeIndex::Infinite => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// The standard lattice `Z^n`.
    pub fn standard(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: IntMatrix::identity(ambient_dim).row_vecs().to_vec(),
        }
    }

    pub fn from_generators<I>(ambient_dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<Int>>,
    {
        let rows: Vec<Vec<Int>> = gens.into_iter().collect();
        for r in &rows {
            assert_eq!(r.len(), ambient_dim, "generator has wrong length");
        }
        Lattice {
            ambient_dim,
            basis: row_hermite_form(&rows, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn pivot(row: &[Int]) -> usize {
        row.iter()
            .position(|x| !x.is_zero())
            .expect("Hermite basis rows are nonzero")
    }

    /// Rational coordinates of `v` in the basis, `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient_dim, "vector has wrong length");
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let p = Self::pivot(b);
            let c = &rest[p] / rat_from_int(&b[p]);
            if !c.is_zero() {
                for (r, x) in rest.iter_mut().zip(b) {
                    *r -= &c * rat_from_int(x);
                }
            }
            coords.push(c);
        }
        rat_is_zero_vec(&rest).then_some(coords)
    }

    pub fn in_span(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Membership of a rational vector.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    pub fn contains_int(&self, v: &[Int]) -> bool {
        let q: Vec<Rat> = v.iter().map(rat_from_int).collect();
        self.contains(&q)
    }

    /// Integer coordinates of a lattice vector.
    pub fn integer_coordinates(&self, v: &[Rat]) -> Option<Vec<Int>> {
        let c = self.coordinates(v)?;
        c.iter()
            .all(|x| x.is_integer())
            .then(|| c.into_iter().map(|x| x.to_integer()).collect())
    }

    pub fn combine(&self, coords: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * rat_from_int(x);
            }
        }
        out
    }

    /// Canonical representative of `v + self` with coordinates in `[0, 1)`.
    /// `None` when `v` is not in the rational span.
    pub fn reduce(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let c = self.coordinates(v)?;
        let c: Vec<Rat> = c.iter().map(frac).collect();
        Some(self.combine(&c))
    }

    pub fn is_sublattice_of(&self, sup: &Lattice) -> bool {
        self.basis.iter().all(|b| sup.contains_int(b))
    }

    /// `[sup : self]`, computed from the Smith form of `self`'s basis written in
    /// `sup`'s coordinates.
    pub fn index_in(&self, sup: &Lattice) -> Result<LatticeIndex> {
        let mut rows = Vec::with_capacity(self.rank());
        for b in &self.basis {
            let q: Vec<Rat> = b.iter().map(rat_from_int).collect();
            rows.push(sup.integer_coordinates(&q).ok_or(Error::NotSublattice)?);
        }
        if self.rank() != sup.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        if self.rank() == 0 {
            return Ok(LatticeIndex::Finite(Int::one()));
        }
        let m = IntMatrix::new(rows)?;
        let f = smith_normal_form(&m);
        Ok(LatticeIndex::Finite(
            f.diagonal().iter().fold(Int::one(), |acc, x| acc * x),
        ))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::from_generators(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.ambient_dim);
        }
        // y1 B1 = y2 B2  <=>  (y1, y2) in the integer kernel of [B1; -B2]^T
        let r1 = self.rank();
        let mut cols: Vec<Vec<Int>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.iter().map(|x| -x).collect()));
        let mt = IntMatrix::from_columns(self.ambient_dim, &cols);
        let ker = integer_kernel(&mt);
        Lattice::from_generators(
            self.ambient_dim,
            ker.iter().map(|y| {
                let mut x = vec![Int::zero(); self.ambient_dim];
                for (c, b) in y[..r1].iter().zip(&self.basis) {
                    for (o, bi) in x.iter_mut().zip(b) {
                        *o += c * bi;
                    }
                }
                x
            }),
        )
    }

    /// Intersection with the rational subspace spanned by `span`.
    pub fn intersect_span(&self, span: &[Vec<Rat>]) -> Lattice {
        let ann = annihilator(span, self.ambient_dim);
        if ann.is_empty() || self.is_zero() {
            return self.clone();
        }
        // rows of P B^T, scaled to integers, act on coordinate vectors y
        let mut rows = Vec::new();
        for p in &ann {
            let row: Vec<Rat> = self
                .basis
                .iter()
                .map(|b| {
                    p.iter()
                        .zip(b)
                        .fold(Rat::zero(), |acc, (x, y)| acc + x * rat_from_int(y))
                })
                .collect();
            rows.push(clear_denominators(&row));
        }
        let m = IntMatrix::new(rows).expect("rectangular");
        let ker = integer_kernel(&m);
        Lattice::from_generators(
            self.ambient_dim,
            ker.iter().map(|y| {
                let mut x = vec![Int::zero(); self.ambient_dim];
                for (c, b) in y.iter().zip(&self.basis) {
                    for (o, bi) in x.iter_mut().zip(b) {
                        *o += c * bi;
                    }
                }
                x
            }),
        )
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|b| {
                let s: Vec<String> = b.iter().map(ToString::to_string).collect();
                format!("({})", s.join(","))
            })
            .collect();
        write!(f, "Z{{{}}}", rows.join(", "))
    }
}

/// `lattice_index(sub, super)`.
pub fn lattice_index(sub: &Lattice, sup: &Lattice) -> Result<LatticeIndex> {
    sub.index_in(sup)
}

/// `member(v, L)`.
pub fn member(v: &[Rat], l: &Lattice) -> bool {
    l.contains(v)
}

/// Rows spanning `{y : y . s = 0 for all s in span}`.
pub fn annihilator(span: &[Vec<Rat>], ambient_dim: usize) -> Vec<Vec<Rat>> {
    if span.is_empty() {
        return (0..ambient_dim)
            .map(|i| {
                (0..ambient_dim)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
    }
    rational_kernel(span, ambient_dim)
}

/// Hermite basis of `{x in Z^n : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let f = smith_normal_form(m);
    let r = f.rank();
    let gens: Vec<Vec<Int>> = (r..m.cols()).map(|j| f.v.column(j)).collect();
    row_hermite_form(&gens, m.cols())
}

/// One integer solution of `M x = t`, if any.
pub fn solve_integer(m: &IntMatrix, t: &[Rat]) -> Option<Vec<Int>> {
    assert_eq!(t.len(), m.rows(), "right-hand side has wrong length");
    let f = smith_normal_form(m);
    let ut = f.u.mul_rat_vec(t);
    let diag = f.diagonal();
    let mut y = vec![Int::zero(); m.cols()];
    for (i, uti) in ut.iter().enumerate() {
        let s = diag.get(i).cloned().unwrap_or_else(Int::zero);
        if s.is_zero() {
            if !uti.is_zero() {
                return None;
            }
        } else {
            let q = uti / rat_from_int(&s);
            if !q.is_integer() {
                return None;
            }
            y[i] = q.to_integer();
        }
    }
    Some(f.v.mul_vec(&y))
}

/// Smallest-magnitude sanity helper used by tests and oracles.
pub fn max_abs(v: &[Int]) -> Int {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Int::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat};

    fn lat(gens: &[&[i64]]) -> Lattice {
        let n = gens.first().map_or(0, |g| g.len());
        Lattice::from_generators(n, gens.iter().map(|g| int_vec(g)))
    }

    #[test]
    fn index_examples() {
        let sub = lat(&[&[1, 0], &[1, 2]]);
        let z2 = Lattice::standard(2);
        assert_eq!(
            lattice_index(&sub, &z2).unwrap(),
            LatticeIndex::Finite(Int::from(2))
        );
        assert_eq!(
            lattice_index(&z2, &z2).unwrap(),
            LatticeIndex::Finite(Int::from(1))
        );
        let ray = lat(&[&[1, 0]]);
        assert_eq!(lattice_index(&ray, &z2).unwrap(), LatticeIndex::Infinite);
        assert_eq!(lattice_index(&z2, &sub), Err(Error::NotSublattice));
    }

    #[test]
    fn zero_lattice_index() {
        let z = Lattice::zero(3);
        assert_eq!(
            lattice_index(&z, &z).unwrap(),
            LatticeIndex::Finite(Int::from(1))
        );
    }

    #[test]
    fn membership_examples() {
        let l = lat(&[&[1, 0], &[1, 2]]);
        assert!(member(&[rat(0, 1), rat(0, 1)], &l));
        assert!(!member(&[rat(1, 1), rat(1, 1)], &l));
        assert!(member(&[rat(2, 1), rat(2, 1)], &l));
        assert!(member(&[rat(0, 1)], &Lattice::zero(1)));
        assert!(!member(&[rat(1, 1)], &Lattice::zero(1)));
    }

    #[test]
    fn reduce_is_canonical() {
        let l = lat(&[&[1, 0], &[1, 2]]);
        let a = l.reduce(&[rat(7, 2), rat(5, 1)]).unwrap();
        let b = l.reduce(&[rat(1, 2), rat(1, 1)]).unwrap();
        assert_eq!(a, b);
        assert!(lat(&[&[1, 1]]).reduce(&[rat(1, 1), rat(0, 1)]).is_none());
    }

    #[test]
    fn intersections() {
        let a = lat(&[&[2, 0], &[0, 1]]);
        let b = lat(&[&[1, 0], &[0, 3]]);
        assert_eq!(a.intersection(&b), lat(&[&[2, 0], &[0, 3]]));
        let z3 = Lattice::standard(3);
        let plane = z3.intersect_span(&[vec![rat(1, 1), rat(1, 1), rat(0, 1)]]);
        assert_eq!(plane, lat(&[&[1, 1, 0]]));
    }

    #[test]
    fn integer_solutions() {
        let m = IntMatrix::from_i64(&[&[1, 1, 1], &[0, 1, 2]]);
        let x = solve_integer(&m, &[rat(2, 1), rat(2, 1)]).unwrap();
        assert_eq!(m.mul_vec(&x), int_vec(&[2, 2]));
        let m = IntMatrix::from_i64(&[&[2, 4]]);
        assert!(solve_integer(&m, &[rat(3, 1)]).is_none());
        assert!(solve_integer(&m, &[rat(1, 2)]).is_none());
        let k = integer_kernel(&IntMatrix::from_i64(&[&[1, 1, 1], &[0, 1, 2]]));
        assert_eq!(k, vec![int_vec(&[1, -2, 1])]);
    }
}
