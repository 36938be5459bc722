use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedMul, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{kernel_lattice, n_v_points, Exponent};
use crate::arith::{falling_factorial, format_rational, rat_from_int, Int, Rat};
use crate::error::{Error, Result};
use crate::geometry::{Configuration, Triangulation};
use crate::lattice::{enumerate_points, Region};
use crate::params::Budget;

/// One term `coeff · x^(v+u)` of `φ_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub u: Vec<Int>,
    pub coeff: Rat,
}

/// `φ_v` truncated to the terms with `w·u ≤ order`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    pub base: Exponent,
    pub weight: Vec<Rat>,
    pub order: Rat,
    /// sorted by `w·u`, then lexicographically by `u`
    pub terms: Vec<Term>,
}

impl TruncatedSeries {
    pub fn coefficient(&self, u: &[Int]) -> Option<&Rat> {
        self.terms.iter().find(|t| t.u == u).map(|t| &t.coeff)
    }

    pub fn weight_of(&self, u: &[Int]) -> Rat {
        self.weight
            .iter()
            .zip(u)
            .fold(Rat::zero(), |acc, (w, x)| acc + w * rat_from_int(x))
    }
}

/// `[x]_t = Π_j x_j (x_j − 1) ⋯ (x_j − t_j + 1)`
pub fn pochhammer(x: &[Rat], t: &[Int]) -> Rat {
    x.iter()
        .zip(t)
        .fold(Rat::one(), |acc, (a, b)| acc * falling_factorial(a, b))
}

fn positive_part(u: &[Int]) -> Vec<Int> {
    u.iter()
        .map(|x| {
            if x.is_positive() {
                x.clone()
            } else {
                Int::zero()
            }
        })
        .collect()
}

fn negative_part(u: &[Int]) -> Vec<Int> {
    u.iter()
        .map(|x| if x.is_negative() { -x } else { Int::zero() })
        .collect()
}

fn shift(v: &[Rat], u: &[Int]) -> Vec<Rat> {
    v.iter().zip(u).map(|(a, b)| a + rat_from_int(b)).collect()
}

/// `[v]_{u−} / [v+u]_{u+}`
pub fn series_coefficient(v: &[Rat], u: &[Int]) -> Result<Rat> {
    let den = pochhammer(&shift(v, u), &positive_part(u));
    if den.is_zero() {
        return Err(Error::ZeroDenominator {
            offset: u.iter().map(ToString::to_string).collect(),
        });
    }
    Ok(pochhammer(v, &negative_part(u)) / den)
}

/// The terms of `φ_v = x^v Σ_{u ∈ N_v} [v]_{u−}/[v+u]_{u+} x^u` with `w·u ≤ order`.
pub fn phi_series(
    cfg: &Configuration,
    t: &Triangulation,
    v: &Exponent,
    order: &Rat,
    budget: &Budget,
) -> Result<TruncatedSeries> {
    let pts = n_v_points(cfg, t, &v.v, order, budget)?;
    let mut terms = pts
        .into_iter()
        .map(|u| {
            let coeff = series_coefficient(&v.v, &u)?;
            Ok(Term { u, coeff })
        })
        .collect::<Result<Vec<_>>>()?;
    let w = t.weight.values().to_vec();
    let wt = |u: &[Int]| -> Rat {
        w.iter()
            .zip(u)
            .fold(Rat::zero(), |a, (x, y)| a + x * rat_from_int(y))
    };
    terms.sort_by(|a, b| (wt(&a.u), &a.u).cmp(&(wt(&b.u), &b.u)));
    Ok(TruncatedSeries {
        base: v.clone(),
        weight: w,
        order: order.clone(),
        terms,
    })
}

/// Result of applying one operator `∂^{b+} − ∂^{b−}`.
#[derive(Clone, Debug)]
pub struct OperatorCheck {
    pub b: Vec<Int>,
    /// `max(w·b+, w·b−)`
    pub weight: Rat,
    /// the truncation determines the image exactly at monomials `x^(v+p)`
    /// with `w·p` up to this value
    pub guaranteed: Rat,
    /// smallest `w·p`, among those up to `guaranteed`, where the image has a
    /// nonzero coefficient
    pub first_nonzero: Option<Rat>,
}

impl OperatorCheck {
    pub fn passed(&self) -> bool {
        self.first_nonzero
            .as_ref()
            .map_or(true, |f| f > &self.guaranteed)
    }
}

#[derive(Clone, Debug)]
pub struct AnnihilationReport {
    /// every Euler operator kills every term exactly
    pub euler: bool,
    pub operators: Vec<OperatorCheck>,
}

impl AnnihilationReport {
    pub fn passed(&self) -> bool {
        self.euler && self.operators.iter().all(OperatorCheck::passed)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.euler {
            out.push("Euler operators".to_string());
        }
        for op in self.operators.iter().filter(|o| !o.passed()) {
            let b: Vec<String> = op.b.iter().map(ToString::to_string).collect();
            out.push(format!(
                "box operator for ({}) is nonzero at weight {}",
                b.join(","),
                format_rational(op.first_nonzero.as_ref().expect("failed check"))
            ));
        }
        out
    }
}

/// Nonzero `b ∈ L` with `|b_j| ≤ radius`, one of each pair `±b`.
pub fn box_operators(cfg: &Configuration, radius: u32, budget: &Budget) -> Result<Vec<Vec<Int>>> {
    let l = kernel_lattice(cfg);
    let pts = enumerate_points(
        &l,
        &Region::cube(cfg.len(), &Int::from(radius)),
        &[],
        budget.nodes,
    )?;
    Ok(pts
        .into_iter()
        .filter(|b| {
            b.iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_positive())
        })
        .collect())
}

/// A truncated series on machine integers, for fast lookups while the box
/// operators are applied.
struct Support<'a> {
    s: &'a TruncatedSeries,
    index: FxHashMap<Vec<i64>, usize>,
    /// `u` for every term
    us: Vec<Vec<i64>>,
    /// `D·(w·u)` for every term
    weights: Vec<i128>,
    /// `v_j + u_j` when it is an integer
    integral: Vec<Vec<Option<i64>>>,
    /// the common denominator `D` of `w` and the order
    scale: Int,
    /// the coefficient of every term, when it fits
    coeffs: Vec<Option<Small>>,
    /// `[v_j + u_j]_t` for every term, every `j` and `t ≤ radius`, when it fits
    falling: Vec<Vec<Vec<Option<Small>>>>,
}

type Small = Ratio<i128>;

fn to_small(x: &Rat) -> Option<Small> {
    Some(Small::new(x.numer().to_i128()?, x.denom().to_i128()?))
}

fn small(x: &Int) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InternalInconsistency(format!("{x} does not fit a machine integer")))
}

impl<'a> Support<'a> {
    fn new(s: &'a TruncatedSeries, radius: u32) -> Result<Self> {
        let scale = s
            .weight
            .iter()
            .chain([&s.order])
            .fold(Int::one(), |acc, w| acc.lcm(w.denom()));
        let mut out = Support {
            s,
            index: FxHashMap::default(),
            us: Vec::new(),
            weights: Vec::new(),
            integral: Vec::new(),
            scale,
            coeffs: Vec::new(),
            falling: Vec::new(),
        };
        for (k, t) in s.terms.iter().enumerate() {
            let u = t.u.iter().map(small).collect::<Result<Vec<_>>>()?;
            out.weights.push(out.scaled(&s.weight_of(&t.u))?);
            out.integral.push(
                shift(&s.base.v, &t.u)
                    .iter()
                    .map(|x| {
                        if x.is_integer() {
                            x.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect(),
            );
            out.coeffs.push(to_small(&t.coeff));
            out.falling.push(
                shift(&s.base.v, &t.u)
                    .iter()
                    .map(|x| {
                        (0..=radius)
                            .map(|t| to_small(&falling_factorial(x, &Int::from(t))))
                            .collect()
                    })
                    .collect(),
            );
            out.index.insert(u.clone(), k);
            out.us.push(u);
        }
        Ok(out)
    }

    fn scaled(&self, x: &Rat) -> Result<i128> {
        let y = x * Rat::from_integer(self.scale.clone());
        y.to_integer()
            .to_i128()
            .filter(|_| y.is_integer())
            .ok_or_else(|| Error::InternalInconsistency(format!("weight {y} is out of range")))
    }

    /// Whether `[v+u]_t` vanishes for the term `k`.
    fn pochhammer_vanishes(&self, k: usize, t: &[i64]) -> bool {
        self.integral[k]
            .iter()
            .zip(t)
            .any(|(x, &t)| x.is_some_and(|x| 0 <= x && x < t))
    }

    /// `c_u [v+u]_t` for the term `k`, unless an intermediate value overflows.
    fn small_product(&self, k: usize, t: &[i64]) -> Option<Small> {
        let mut acc = self.coeffs[k]?;
        for (j, &tj) in t.iter().enumerate().filter(|(_, &tj)| tj > 0) {
            acc = acc.checked_mul(self.falling[k][j][tj as usize].as_ref()?)?;
        }
        Some(acc)
    }

    fn term(&self, u: &[i64]) -> Option<usize> {
        self.index.get(u).copied()
    }

    /// `∂^{b+} − ∂^{b−}` applied to the series, as in `OperatorCheck`.
    fn check(&self, b: Vec<Int>) -> Result<OperatorCheck> {
        let s = self.s;
        let v = &s.base.v;
        let bp = positive_part(&b);
        let bm = negative_part(&b);
        let (wp, wm) = (s.weight_of(&bp), s.weight_of(&bm));
        let weight = (&wp).max(&wm).clone();
        let guaranteed = &s.order - &weight;
        let (sp, sm, g) = (
            self.scaled(&wp)?,
            self.scaled(&wm)?,
            self.scaled(&guaranteed)?,
        );
        let small_b = b.iter().map(small).collect::<Result<Vec<_>>>()?;
        let small_bp = bp.iter().map(small).collect::<Result<Vec<_>>>()?;
        let small_bm = bm.iter().map(small).collect::<Result<Vec<_>>>()?;

        let mut first: Option<i128> = None;
        let mut partner = vec![0i64; b.len()];
        for (k, u) in self.us.iter().enumerate() {
            // the monomial p = u − b+, where u and u − b meet
            let w = self.weights[k] - sp;
            if w <= g && first.map_or(true, |f| w < f) {
                partner
                    .iter_mut()
                    .zip(u)
                    .zip(&small_b)
                    .for_each(|((x, a), c)| *x = a - c);
                let nonzero = match self.term(&partner) {
                    Some(l) => match (
                        self.small_product(k, &small_bp),
                        self.small_product(l, &small_bm),
                    ) {
                        (Some(x), Some(y)) => x != y,
                        _ => {
                            let r = &s.terms[k].coeff * pochhammer(&shift(v, &s.terms[k].u), &bp)
                                - &s.terms[l].coeff * pochhammer(&shift(v, &s.terms[l].u), &bm);
                            !r.is_zero()
                        }
                    },
                    None => !s.terms[k].coeff.is_zero() && !self.pochhammer_vanishes(k, &small_bp),
                };
                if nonzero {
                    first = Some(w);
                }
            }
            // the monomial p = u − b−; pairs with u + b were handled above
            let w = self.weights[k] - sm;
            if w <= g && first.map_or(true, |f| w < f) {
                partner
                    .iter_mut()
                    .zip(u)
                    .zip(&small_b)
                    .for_each(|((x, a), c)| *x = a + c);
                if self.term(&partner).is_none()
                    && !s.terms[k].coeff.is_zero()
                    && !self.pochhammer_vanishes(k, &small_bm)
                {
                    first = Some(w);
                }
            }
        }
        Ok(OperatorCheck {
            b,
            weight,
            guaranteed,
            first_nonzero: first.map(|f| Rat::new(Int::from(f), self.scale.clone())),
        })
    }
}

/// Applies every Euler operator and every box operator of coordinate norm at
/// most `radius` to the truncated series.
pub fn verify_annihilation(
    cfg: &Configuration,
    s: &TruncatedSeries,
    beta: &[Rat],
    radius: u32,
    budget: &Budget,
) -> Result<AnnihilationReport> {
    let v = &s.base.v;
    let euler = s.terms.iter().all(|t| cfg.apply(&shift(v, &t.u)) == beta);
    let support = Support::new(s, radius)?;
    let operators = box_operators(cfg, radius, budget)?
        .into_par_iter()
        .map(|b| support.check(b))
        .collect::<Result<Vec<_>>>()?;
    Ok(AnnihilationReport { euler, operators })
}
