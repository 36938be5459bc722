use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntMatrix, Lattice};
use crate::arith::{Int, Rat};
use crate::error::{Error, Result};

/// The finitely generated abelian group `sup / sub`.
///
/// Classes are coordinate tuples in `Z/s_1 x ... x Z/s_k x Z^f`; components
/// with `s_i = 1` are dropped.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    sup: Lattice,
    /// columns of the Smith transform `V`, restricted to nontrivial components
    proj: Vec<Vec<Int>>,
    /// inverse rows, used to lift class tuples back to vectors
    lift: Vec<Vec<Int>>,
    moduli: Vec<Int>,
}

impl QuotientGroup {
    pub fn new(sup: &Lattice, sub: &Lattice) -> Result<Self> {
        let r = sup.rank();
        let mut rows = Vec::with_capacity(sub.rank());
        for b in sub.basis() {
            let q: Vec<Rat> = b.iter().map(|x| Rat::from_integer(x.clone())).collect();
            rows.push(sup.integer_coordinates(&q).ok_or(Error::NotSublattice)?);
        }
        let (v, vinv, diag) = if rows.is_empty() {
            (
                IntMatrix::identity(r),
                IntMatrix::identity(r),
                vec![Int::zero(); r],
            )
        } else {
            let m = IntMatrix::new(rows)?;
            let f = smith_normal_form(&m);
            let mut diag = f.diagonal();
            diag.resize(r, Int::zero());
            let vinv = unimodular_inverse(&f.v);
            (f.v, vinv, diag)
        };
        let mut proj = Vec::new();
        let mut lift = Vec::new();
        let mut moduli = Vec::new();
        for (i, s) in diag.iter().enumerate() {
            if s.is_one() {
                continue;
            }
            proj.push(v.column(i));
            lift.push(vinv.row(i).to_vec());
            moduli.push(s.clone());
        }
        Ok(QuotientGroup {
            sup: sup.clone(),
            proj,
            lift,
            moduli,
        })
    }

    /// Invariant factors greater than one, followed by a 0 per free component.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let mut out: Vec<Int> = self
            .moduli
            .iter()
            .filter(|s| !s.is_zero())
            .cloned()
            .collect();
        out.sort();
        out.extend(self.moduli.iter().filter(|s| s.is_zero()).cloned());
        out
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|s| !s.is_zero())
    }

    pub fn order(&self) -> Option<Int> {
        self.is_finite()
            .then(|| self.moduli.iter().fold(Int::one(), |acc, s| acc * s))
    }

    /// The class of `v`, or `None` if `v` is not in the super-lattice.
    pub fn class_of(&self, v: &[Rat]) -> Option<Vec<Int>> {
        let x = self.sup.integer_coordinates(v)?;
        Some(self.class_of_coords(&x))
    }

    pub fn class_of_int(&self, v: &[Int]) -> Option<Vec<Int>> {
        let q: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
        self.class_of(&q)
    }

    fn class_of_coords(&self, x: &[Int]) -> Vec<Int> {
        self.proj
            .iter()
            .zip(&self.moduli)
            .map(|(col, s)| {
                let t: Int = x.iter().zip(col).map(|(a, b)| a * b).sum();
                if s.is_zero() {
                    t
                } else {
                    t.mod_floor(s)
                }
            })
            .collect()
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.moduli.len()]
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((x, y), s)| {
                let t = x + y;
                if s.is_zero() {
                    t
                } else {
                    t.mod_floor(s)
                }
            })
            .collect()
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        a.iter()
            .zip(&self.moduli)
            .map(|(x, s)| if s.is_zero() { -x } else { (-x).mod_floor(s) })
            .collect()
    }

    /// A vector of the super-lattice in the given class.
    pub fn representative(&self, class: &[Int]) -> Vec<Int> {
        let r = self.sup.rank();
        let mut coords = vec![Int::zero(); r];
        for (t, row) in class.iter().zip(&self.lift) {
            for (c, x) in coords.iter_mut().zip(row) {
                *c += t * x;
            }
        }
        let mut out = vec![Int::zero(); self.sup.ambient_dim()];
        for (c, b) in coords.iter().zip(self.sup.basis()) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// All classes of a finite quotient in lexicographic tuple order.
    pub fn elements(&self) -> Option<Vec<Vec<Int>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for s in &self.moduli {
            let mut next = Vec::new();
            for prefix in &out {
                let mut t = Int::zero();
                while &t < s {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    next.push(p);
                    t += 1;
                }
            }
            out = next;
        }
        Some(out)
    }
}

fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let inv = super::rational_inverse(&m.to_rational()).expect("unimodular matrix is invertible");
    IntMatrix::new(
        inv.into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
            .collect(),
    )
    .expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int_vec, rat};

    #[test]
    fn cyclic_quotient() {
        let sup = Lattice::standard(2);
        let sub = Lattice::from_generators(2, vec![int_vec(&[1, 0]), int_vec(&[1, 2])]);
        let q = QuotientGroup::new(&sup, &sub).unwrap();
        assert_eq!(q.invariant_factors(), vec![Int::from(2)]);
        assert_eq!(q.order(), Some(Int::from(2)));
        let a = q.class_of(&[rat(1, 1), rat(1, 1)]).unwrap();
        let b = q.class_of(&[rat(0, 1), rat(3, 1)]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, q.zero());
        assert_eq!(q.add(&a, &b), q.zero());
        for e in q.elements().unwrap() {
            let r = q.representative(&e);
            assert_eq!(q.class_of_int(&r).unwrap(), e);
        }
    }

    #[test]
    fn free_part() {
        let sup = Lattice::standard(2);
        let sub = Lattice::from_generators(2, vec![int_vec(&[2, 0])]);
        let q = QuotientGroup::new(&sup, &sub).unwrap();
        assert_eq!(q.invariant_factors(), vec![Int::from(2), Int::zero()]);
        assert!(q.order().is_none());
        let q0 = QuotientGroup::new(&sup, &Lattice::zero(2)).unwrap();
        assert_eq!(q0.invariant_factors().len(), 2);
    }
}
