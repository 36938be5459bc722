use num_traits::{One, Zero};

use crate::arith::{dot_int_rat, Int, Rat};

/// A weight vector `w`, optionally with a symbolic lexicographic perturbation.
///
/// With `lex_tiebreak` the height of column `j` is `w_j + ε^(j+1)` for an
/// infinitesimal `ε`. Heights are then compared as vectors
/// `(w_j, [j = 0], [j = 1], ...)` in lexicographic order, which breaks every
/// tie while refining the subdivision induced by `w` alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    values: Vec<Rat>,
    lex_tiebreak: bool,
}

impl Weight {
    pub fn new(values: Vec<Rat>) -> Self {
        Weight {
            values,
            lex_tiebreak: false,
        }
    }

    pub fn lex(values: Vec<Rat>) -> Self {
        Weight {
            values,
            lex_tiebreak: true,
        }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(
            values
                .iter()
                .map(|&x| Rat::from_integer(Int::from(x)))
                .collect(),
        )
    }

    pub fn with_lex_tiebreak(mut self, on: bool) -> Self {
        self.lex_tiebreak = on;
        self
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn lex_tiebreak(&self) -> bool {
        self.lex_tiebreak
    }

    /// Number of components of a perturbed height.
    pub(crate) fn height_dim(&self) -> usize {
        if self.lex_tiebreak {
            self.values.len() + 1
        } else {
            1
        }
    }

    pub(crate) fn height(&self, j: usize) -> Vec<Rat> {
        let mut h = vec![Rat::zero(); self.height_dim()];
        h[0] = self.values[j].clone();
        if self.lex_tiebreak {
            h[j + 1] = Rat::one();
        }
        h
    }

    /// `w . u`, ignoring the perturbation.
    pub fn dot(&self, u: &[Int]) -> Rat {
        dot_int_rat(u, &self.values)
    }

    pub fn dot_rat(&self, u: &[Rat]) -> Rat {
        self.values
            .iter()
            .zip(u)
            .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
    }

    /// Perturbed weight of `u` as a lexicographically ordered key.
    pub fn key(&self, u: &[Int]) -> Vec<Rat> {
        let mut k = vec![self.dot(u)];
        if self.lex_tiebreak {
            k.extend(u.iter().map(|x| Rat::from_integer(x.clone())));
        }
        k
    }
}

/// `true` when the first nonzero entry is positive.
pub(crate) fn lex_positive(v: &[Rat]) -> bool {
    v.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x > &Rat::zero())
}

pub(crate) fn lex_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}
