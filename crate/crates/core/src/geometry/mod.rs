//! Point configurations, their cones and regular triangulations.

mod cone;
mod triangulation;
mod weight;

pub use cone::{cone_faces, is_simplex, simplex_vertices, supporting_functional};
pub use triangulation::{
    facets, is_generic_weight, lattice_volume, regular_triangulation, Triangulation,
};
pub use weight::Weight;

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::arith::{dot_int_rat, rat_vec, Int, Rat};
use crate::error::{Error, Result};
use crate::lattice::{rational_rank, rational_solve, IntMatrix, Lattice, LatticeIndex};

/// A homogeneous point configuration `A = (a_1, ..., a_n)` of full rank `d`.
#[derive(Clone, Debug)]
pub struct Configuration {
    a: IntMatrix,
    columns: Vec<Vec<Int>>,
    h: Vec<Rat>,
    za: Lattice,
    facet_normals: OnceLock<Vec<Vec<Rat>>>,
    cone_faces: OnceLock<Vec<Face>>,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
    }
}

impl Eq for Configuration {}

pub fn make_configuration(a: IntMatrix) -> Result<Configuration> {
    Configuration::new(a)
}

impl Configuration {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let (d, n) = (a.rows(), a.cols());
        let rank = a.rank();
        if rank < d {
            return Err(Error::RankDeficient { rank, rows: d });
        }
        let at = a.transpose().to_rational();
        let ones = vec![Rat::one(); n];
        let h = rational_solve(&at, d, &ones).ok_or(Error::NotHomogeneous)?;
        if n == 0 {
            return Err(Error::NotHomogeneous);
        }
        let columns = a.columns();
        let za = Lattice::from_generators(d, columns.iter().cloned());
        Ok(Configuration {
            a,
            columns,
            h,
            za,
            facet_normals: OnceLock::new(),
            cone_faces: OnceLock::new(),
        })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    /// Number of rows `d`.
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// Number of columns `n`.
    pub fn len(&self) -> usize {
        self.a.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.a.cols() == 0
    }

    pub fn column(&self, j: usize) -> &[Int] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<Int>] {
        &self.columns
    }

    /// The covector `h` with `h . a_j = 1` for every column.
    pub fn h(&self) -> &[Rat] {
        &self.h
    }

    pub fn za(&self) -> &Lattice {
        &self.za
    }

    pub fn degree(&self, gamma: &[Rat]) -> Rat {
        self.h
            .iter()
            .zip(gamma)
            .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
    }

    /// `Z(A ∩ τ)` for a member set.
    pub fn lattice_of(&self, members: &[usize]) -> Lattice {
        Lattice::from_generators(self.dim(), members.iter().map(|&j| self.columns[j].clone()))
    }

    pub fn span_of(&self, members: &[usize]) -> Vec<Vec<Rat>> {
        members.iter().map(|&j| rat_vec(&self.columns[j])).collect()
    }

    pub fn rank_of(&self, members: &[usize]) -> usize {
        rational_rank(&self.span_of(members), self.dim())
    }

    /// `A u` for a rational vector `u`.
    pub fn apply(&self, u: &[Rat]) -> Vec<Rat> {
        (0..self.dim())
            .map(|i| dot_int_rat(self.a.row(i), u))
            .collect()
    }

    pub fn apply_int(&self, u: &[Int]) -> Vec<Int> {
        self.a.mul_vec(u)
    }

    /// Columns of `A` restricted to `idx`, as a `d x |idx|` matrix.
    pub fn submatrix(&self, idx: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<Int>> = idx.iter().map(|&j| self.columns[j].clone()).collect();
        IntMatrix::from_columns(self.dim(), &cols)
    }

    pub fn check_len(&self, v: usize) -> Result<()> {
        if v != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: v,
            });
        }
        Ok(())
    }

    pub fn check_param(&self, beta: &[Rat]) -> Result<()> {
        if beta.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: beta.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceKind {
    Triangulation,
    Cone,
}

/// A face of `Δ_w` or of the cone `Q≥0 A`.
///
/// `members` are all column indices lying in the face and `vertices` its
/// extreme columns; indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub kind: FaceKind,
    pub span_dim: usize,
    pub vertices: Vec<usize>,
    pub members: Vec<usize>,
}

impl Face {
    pub fn empty(kind: FaceKind) -> Self {
        Face {
            kind,
            span_dim: 0,
            vertices: Vec::new(),
            members: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_face(&self, other: &Face) -> bool {
        other
            .members
            .iter()
            .all(|j| self.members.binary_search(j).is_ok())
    }

    pub fn lattice(&self, cfg: &Configuration) -> Lattice {
        cfg.lattice_of(&self.members)
    }

    /// Members of `self` that also lie in `other`.
    pub fn intersect_members(&self, other: &Face) -> Vec<usize> {
        self.members
            .iter()
            .filter(|j| other.members.binary_search(j).is_ok())
            .copied()
            .collect()
    }

    pub fn label(&self) -> String {
        if self.vertices.is_empty() {
            return "∅".to_string();
        }
        let v: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        format!("τ{{{}}}", v.join(","))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} members={:?}", self.label(), self.members)
    }
}

/// `vol(τ) = [Z(A ∩ τ) : Σ_{i ∈ vert(τ)} Z a_i]`; the empty face has volume 1.
pub fn normalized_volume(cfg: &Configuration, face: &Face) -> Result<Int> {
    if face.vertices.is_empty() {
        return Ok(Int::one());
    }
    if cfg.rank_of(&face.vertices) != face.vertices.len() {
        return Err(Error::Precondition(format!(
            "vertices of {} are not linearly independent",
            face.label()
        )));
    }
    let sub = cfg.lattice_of(&face.vertices);
    match sub.index_in(&face.lattice(cfg))? {
        LatticeIndex::Finite(n) => Ok(n),
        LatticeIndex::Infinite => Err(Error::InternalInconsistency(format!(
            "vertices of {} do not span the face",
            face.label()
        ))),
    }
}

/// Members of the simplicial cone spanned by the independent columns `verts`.
pub(crate) fn members_of_simplex(cfg: &Configuration, verts: &[usize]) -> Vec<usize> {
    if verts.is_empty() {
        return Vec::new();
    }
    let m = cfg.submatrix(verts).to_rational();
    (0..cfg.len())
        .filter(|&j| {
            rational_solve(&m, verts.len(), &rat_vec(cfg.column(j)))
                .is_some_and(|x| x.iter().all(|c| !c.is_negative()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn homogeneity() {
        let cfg = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap();
        assert_eq!(cfg.h(), &[rat(1, 1), rat(0, 1)]);
        assert_eq!(
            Configuration::from_rows(&[&[1, 2]]),
            Err(Error::NotHomogeneous)
        );
        assert!(matches!(
            Configuration::from_rows(&[&[1, 1], &[1, 1]]),
            Err(Error::RankDeficient { rank: 1, rows: 2 })
        ));
        let cfg = Configuration::from_rows(&[&[2, 0, 1], &[0, 2, 1]]).unwrap();
        assert_eq!(cfg.h(), &[rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn volumes() {
        let cfg = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap();
        let cell = Face {
            kind: FaceKind::Triangulation,
            span_dim: 2,
            vertices: vec![0, 2],
            members: members_of_simplex(&cfg, &[0, 2]),
        };
        assert_eq!(cell.members, vec![0, 1, 2]);
        assert_eq!(normalized_volume(&cfg, &cell).unwrap(), Int::from(2));
        let thin = Face {
            members: vec![0, 2],
            ..cell
        };
        assert_eq!(normalized_volume(&cfg, &thin).unwrap(), Int::one());
        assert_eq!(
            normalized_volume(&cfg, &Face::empty(FaceKind::Triangulation)).unwrap(),
            Int::one()
        );
    }
}
