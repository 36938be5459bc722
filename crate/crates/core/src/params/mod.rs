//! Parameter classes `E_τ(β)`, their natural maps, `minface(β)` and the
//! isomorphism fingerprint.

mod diophantine;
mod semigroup;

pub(crate) use diophantine::nonneg_solutions;
pub(crate) use semigroup::next_layer;
pub use semigroup::{degree_layer, semigroup_member};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use num_traits::{One, Signed, Zero};

use crate::arith::{
    clear_denominators, dot_int_rat, dot_rat, format_rational, lcm_of_denominators, rat_from_int,
    Int, Rat,
};
use crate::error::{Error, Result};
use crate::geometry::{cone_faces, supporting_functional, Configuration, Face};
use crate::lattice::{annihilator, rational_inverse, rational_rank, Lattice};

/// Search limits shared by every bounded enumeration in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// total degree allowed in non-negative completion searches
    pub degree: u64,
    /// lattice points visited by any single enumeration
    pub nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            degree: 64,
            nodes: 2_000_000,
        }
    }
}

/// A class `λ ∈ k(A∩τ)/Z(A∩τ)`.
///
/// `rep` is canonical (coordinates in `[0,1)` with respect to the Hermite
/// basis of `modulus`), so equal classes have equal representatives.
/// `witness` is some `u ∈ N^n`, zero on the members of the face, with
/// `β − A u ≡ rep` modulo `Z(A∩τ)`.
#[derive(Clone, Debug)]
pub struct EClass {
    pub face: Face,
    pub rep: Vec<Rat>,
    pub modulus: Lattice,
    pub witness: Vec<Int>,
}

impl PartialEq for EClass {
    fn eq(&self, other: &Self) -> bool {
        self.face.members == other.face.members && self.rep == other.rep
    }
}

impl Eq for EClass {}

impl PartialOrd for EClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.face.members, &self.rep).cmp(&(&other.face.members, &other.rep))
    }
}

impl fmt::Display for EClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.rep.iter().map(format_rational).collect();
        write!(f, "[({})] on {}", r.join(","), self.face.label())
    }
}

/// Classes of `γ − A_J y` modulo `Z A_F`, over `y ∈ N^J` with `γ − A_J y ∈ Q A_F`,
/// where `F = members` and `J` is its complement. Each class comes with a
/// witness `y` (as a length-`n` vector vanishing on `F`).
pub(crate) fn affine_classes(
    cfg: &Configuration,
    members: &[usize],
    gamma: &[Rat],
    budget: &Budget,
) -> Result<Vec<(Vec<Rat>, Vec<Int>)>> {
    if !in_lattice_plus_span(cfg, members, gamma) {
        return Ok(Vec::new());
    }
    match supporting_functional(cfg, members) {
        Some(l) => face_classes(cfg, members, gamma, &l, budget),
        None => completion_classes(cfg, members, gamma, budget.degree),
    }
}

/// Whether `γ ∈ ZA + Q A_F`, a necessary condition for any class to exist:
/// the integer functionals vanishing on `A_F` must send `γ` into the image
/// of `ZA`.
fn in_lattice_plus_span(cfg: &Configuration, members: &[usize], gamma: &[Rat]) -> bool {
    let d = cfg.dim();
    if cfg.rank_of(members) == d {
        return true;
    }
    let proj: Vec<Vec<Int>> = annihilator(&cfg.span_of(members), d)
        .iter()
        .map(|p| clear_denominators(p))
        .collect();
    let image = Lattice::from_generators(
        proj.len(),
        cfg.za().basis().iter().map(|b| {
            proj.iter()
                .map(|p| p.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        }),
    );
    let target: Vec<Rat> = proj
        .iter()
        .map(|p| {
            p.iter()
                .zip(gamma)
                .fold(Rat::zero(), |a, (x, y)| a + rat_from_int(x) * y)
        })
        .collect();
    image.contains(&target)
}

/// [`affine_classes`] through minimal non-negative solutions and the Hilbert
/// basis of the projected system; works for any member set.
fn completion_classes(
    cfg: &Configuration,
    members: &[usize],
    gamma: &[Rat],
    max_degree: u64,
) -> Result<Vec<(Vec<Rat>, Vec<Int>)>> {
    let n = cfg.len();
    let d = cfg.dim();
    let outside: Vec<usize> = (0..n).filter(|j| !members.contains(j)).collect();
    let zf = cfg.lattice_of(members);

    let span = cfg.span_of(members);
    let proj: Vec<Vec<Int>> = if zf.rank() == d {
        Vec::new()
    } else {
        annihilator(&span, d)
            .iter()
            .map(|p| clear_denominators(p))
            .collect()
    };
    let mut rows = Vec::with_capacity(proj.len());
    let mut rhs = Vec::with_capacity(proj.len());
    for p in &proj {
        let row: Vec<Int> = outside
            .iter()
            .map(|&j| p.iter().zip(cfg.column(j)).map(|(x, y)| x * y).sum())
            .collect();
        let b: Rat = p
            .iter()
            .zip(gamma)
            .fold(Rat::from_integer(Int::from(0)), |acc, (x, y)| acc + y * x);
        let l = lcm_of_denominators([&b]);
        rows.push(row.iter().map(|x| x * &l).collect());
        rhs.push((b * rat_from_int(&l)).to_integer());
    }
    let sols = nonneg_solutions(&rows, outside.len(), &rhs, max_degree)?;

    let spread = |y: &[Int]| -> Vec<Int> {
        let mut u = vec![Int::from(0); n];
        for (&j, x) in outside.iter().zip(y) {
            u[j] = x.clone();
        }
        u
    };
    let image = |u: &[Int]| -> Vec<Rat> { cfg.apply_int(u).iter().map(rat_from_int).collect() };
    let hilbert: Vec<(Vec<Int>, Vec<Rat>)> = sols
        .hilbert
        .iter()
        .map(|h| {
            let u = spread(h);
            let g = image(&u);
            (u, g)
        })
        .collect();

    let mut seen: BTreeMap<Vec<Rat>, Vec<Int>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for s in &sols.minimal {
        let u = spread(s);
        let lam: Vec<Rat> = gamma.iter().zip(image(&u)).map(|(b, a)| b - a).collect();
        let rep = zf.reduce(&lam).ok_or_else(|| {
            Error::InternalInconsistency("solution class left the span of the face".into())
        })?;
        if !seen.contains_key(&rep) {
            seen.insert(rep.clone(), u.clone());
            queue.push_back((rep, u));
        }
    }
    while let Some((rep, u)) = queue.pop_front() {
        for (hu, g) in &hilbert {
            let lam: Vec<Rat> = rep.iter().zip(g).map(|(x, y)| x - y).collect();
            let r2 = zf
                .reduce(&lam)
                .expect("homogeneous solutions stay in the span");
            if seen.contains_key(&r2) {
                continue;
            }
            let u2: Vec<Int> = u.iter().zip(hu).map(|(a, b)| a + b).collect();
            seen.insert(r2.clone(), u2.clone());
            queue.push_back((r2, u2));
        }
    }
    Ok(seen.into_iter().collect())
}

/// [`affine_classes`] when `members` spans a face of the cone with supporting
/// functional `l`: residues `γ − A_J y` are explored modulo `Z A_F`, and `l`
/// strictly decreases along every step, so the search is finite.
fn face_classes(
    cfg: &Configuration,
    members: &[usize],
    gamma: &[Rat],
    l: &[Rat],
    budget: &Budget,
) -> Result<Vec<(Vec<Rat>, Vec<Int>)>> {
    let max_states = budget.nodes;
    let n = cfg.len();
    let d = cfg.dim();
    let outside: Vec<usize> = (0..n).filter(|j| !members.contains(j)).collect();
    let zf = cfg.lattice_of(members);
    let r = zf.rank();

    // coordinates in a basis made of a basis of Z A_F followed by unit vectors
    let mut basis: Vec<Vec<Rat>> = zf
        .basis()
        .iter()
        .map(|b| b.iter().map(rat_from_int).collect())
        .collect();
    for i in 0..d {
        let mut e = vec![Rat::zero(); d];
        e[i] = Rat::one();
        let mut trial = basis.clone();
        trial.push(e);
        if rational_rank(&trial, d) == trial.len() {
            basis = trial;
        }
    }
    let columns: Vec<Vec<Rat>> = (0..d)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    let inverse = rational_inverse(&columns).expect("basis of Q^d");
    let coords = |x: &[Rat]| -> Vec<Rat> {
        inverse
            .iter()
            .map(|row| row.iter().zip(x).fold(Rat::zero(), |a, (p, q)| a + p * q))
            .collect()
    };

    let cols: Vec<Vec<Rat>> = outside
        .iter()
        .map(|&j| coords(&cfg.column(j).iter().map(rat_from_int).collect::<Vec<_>>()))
        .collect();
    let drops: Vec<Rat> = outside
        .iter()
        .map(|&j| dot_int_rat(cfg.column(j), l))
        .collect();
    let start = coords(gamma);
    let height = dot_rat(gamma, l);

    // everything is scaled to machine integers; residues of the first `r`
    // coordinates modulo `scale` identify classes modulo Z A_F
    let scale = lcm_of_denominators(cols.iter().flatten().chain(&start));
    let hscale = lcm_of_denominators(drops.iter().chain([&height]));
    let small = |x: &Rat, s: &Int| -> Option<i64> {
        let v = (x * rat_from_int(s)).to_integer();
        i64::try_from(v).ok().filter(|v| v.abs() < 1 << 40)
    };
    let scaled = (|| -> Option<_> {
        let m = i64::try_from(scale.clone()).ok().filter(|v| *v < 1 << 20)?;
        let cols: Vec<Vec<i64>> = cols
            .iter()
            .map(|c| c.iter().map(|x| small(x, &scale)).collect())
            .collect::<Option<_>>()?;
        let start: Vec<i64> = start
            .iter()
            .map(|x| small(x, &scale))
            .collect::<Option<_>>()?;
        let drops: Vec<i64> = drops
            .iter()
            .map(|x| small(x, &hscale))
            .collect::<Option<_>>()?;
        Some((m, cols, start, drops, small(&height, &hscale)?))
    })();
    let Some((m, cols, start, drops, height)) = scaled else {
        return completion_classes(cfg, members, gamma, budget.degree);
    };
    let key = |c: &[i64]| -> Vec<i64> {
        c.iter()
            .enumerate()
            .map(|(i, &x)| if i < r { x.rem_euclid(m) } else { x })
            .collect()
    };

    // (residue, height, parent state, column taken)
    let mut states: Vec<(Vec<i64>, i64, usize, usize)> =
        vec![(start.clone(), height, usize::MAX, 0)];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([key(&start)]);
    let mut found: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
    let mut next = 0;
    while next < states.len() {
        let (c, h) = (states[next].0.clone(), states[next].1);
        if c[r..].iter().all(|x| *x == 0) {
            let mut lam = vec![Rat::zero(); d];
            for (coef, b) in c.iter().zip(&basis) {
                let q = Rat::new(Int::from(*coef), scale.clone());
                for (x, y) in lam.iter_mut().zip(b) {
                    *x += &q * y;
                }
            }
            let rep = zf
                .reduce(&lam)
                .expect("residue lies in the span of the face");
            found.entry(rep).or_insert(next);
        }
        for (k, &j) in outside.iter().enumerate() {
            let h2 = h - drops[k];
            if h2 < 0 {
                continue;
            }
            let c2: Vec<i64> = c.iter().zip(&cols[k]).map(|(a, b)| a - b).collect();
            if !seen.insert(key(&c2)) {
                continue;
            }
            if seen.len() as u64 > max_states {
                return Err(Error::budget(
                    "exploring residues modulo a face lattice",
                    max_states,
                ));
            }
            states.push((c2, h2, next, j));
        }
        next += 1;
    }
    Ok(found
        .into_iter()
        .map(|(rep, mut i)| {
            let mut u = vec![Int::zero(); n];
            while states[i].2 != usize::MAX {
                u[states[i].3] += 1;
                i = states[i].2;
            }
            (rep, u)
        })
        .collect())
}

/// `E_τ(β) = {λ ∈ k(A∩τ)/Z(A∩τ) : β − λ ∈ NA + Z(A∩τ)}` with the default budget.
pub fn e_tau(cfg: &Configuration, face: &Face, beta: &[Rat]) -> Result<Vec<EClass>> {
    e_tau_with(cfg, face, beta, &Budget::default())
}

pub fn e_tau_with(
    cfg: &Configuration,
    face: &Face,
    beta: &[Rat],
    budget: &Budget,
) -> Result<Vec<EClass>> {
    cfg.check_param(beta)?;
    let modulus = face.lattice(cfg);
    let classes = affine_classes(cfg, &face.members, beta, budget)?;
    Ok(classes
        .into_iter()
        .map(|(rep, witness)| EClass {
            face: face.clone(),
            rep,
            modulus: modulus.clone(),
            witness,
        })
        .collect())
}

/// Reinterprets `λ′ ∈ k(A∩τ′)/Z(A∩τ′)` modulo `Z(A∩τ)`.
pub fn natural_map(cfg: &Configuration, lambda: &EClass, target: &Face) -> Result<EClass> {
    let modulus = target.lattice(cfg);
    let rep = modulus.reduce(&lambda.rep).ok_or_else(|| {
        Error::SpanMismatch(format!(
            "{} does not lie in the span of {}",
            lambda.face.label(),
            target.label()
        ))
    })?;
    if !lambda.face.members.iter().all(|j| {
        let v: Vec<Rat> = cfg.column(*j).iter().map(rat_from_int).collect();
        modulus.in_span(&v)
    }) {
        return Err(Error::SpanMismatch(format!(
            "{} does not lie in the span of {}",
            lambda.face.label(),
            target.label()
        )));
    }
    let mut witness = lambda.witness.clone();
    for &j in &target.members {
        witness[j] = Int::from(0);
    }
    Ok(EClass {
        face: target.clone(),
        rep,
        modulus,
        witness,
    })
}

/// Inclusion-minimal cone faces with nonempty `E_τ(β)`.
pub fn minface(cfg: &Configuration, beta: &[Rat], budget: &Budget) -> Result<Vec<Face>> {
    let fp = fingerprint_faces(cfg, beta, budget)?;
    let nonempty: Vec<&Face> = fp
        .iter()
        .filter(|(_, e)| !e.is_empty())
        .map(|(f, _)| f)
        .collect();
    Ok(nonempty
        .iter()
        .filter(|f| {
            !nonempty
                .iter()
                .any(|g| g.members != f.members && f.contains_face(g))
        })
        .map(|f| (*f).clone())
        .collect())
}

fn fingerprint_faces(
    cfg: &Configuration,
    beta: &[Rat],
    budget: &Budget,
) -> Result<Vec<(Face, Vec<EClass>)>> {
    cfg.check_param(beta)?;
    cone_faces(cfg)
        .into_par_iter()
        .map(|f| {
            let e = e_tau_with(cfg, &f, beta, budget)?;
            Ok((f, e))
        })
        .collect()
}

/// `τ ↦ E_τ(β)` over all cone faces, keyed by member sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub classes: BTreeMap<Vec<usize>, Vec<Vec<Rat>>>,
}

impl Fingerprint {
    /// Member sets of the faces where the two fingerprints differ.
    pub fn differences(&self, other: &Fingerprint) -> Vec<Vec<usize>> {
        self.classes
            .iter()
            .filter(|(k, v)| other.classes.get(*k) != Some(v))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

pub fn fingerprint(cfg: &Configuration, beta: &[Rat], budget: &Budget) -> Result<Fingerprint> {
    let classes = fingerprint_faces(cfg, beta, budget)?
        .into_iter()
        .map(|(f, e)| (f.members, e.into_iter().map(|c| c.rep).collect()))
        .collect();
    Ok(Fingerprint { classes })
}

/// The combinatorial isomorphism criterion: `E_τ(β) = E_τ(β′)` for every face.
pub fn same_fingerprint(
    cfg: &Configuration,
    beta: &[Rat],
    beta2: &[Rat],
    budget: &Budget,
) -> Result<bool> {
    Ok(fingerprint(cfg, beta, budget)? == fingerprint(cfg, beta2, budget)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::geometry::{regular_triangulation, FaceKind, Weight};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn face_search_matches_completion() {
        let configs = [
            rank11(),
            Configuration::from_rows(&[&[1, 1, 1], &[0, 2, 3]]).unwrap(),
            Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 1, 0, 1], &[0, 0, 1, 1]]).unwrap(),
        ];
        let params = [[1, 1, 1], [2, 3, 1], [-1, 2, 2], [4, 5, 7], [0, 0, 0]];
        for cfg in &configs {
            for p in &params {
                let beta: Vec<Rat> = p[..cfg.dim()].iter().map(|&x| rat(x, 2)).collect();
                let beta_int = ints(&p[..cfg.dim()]);
                for face in cone_faces(cfg) {
                    let l = supporting_functional(cfg, &face.members).unwrap();
                    for b in [&beta, &beta_int] {
                        let fast =
                            face_classes(cfg, &face.members, b, &l, &Budget::default()).unwrap();
                        let slow = completion_classes(cfg, &face.members, b, 64).unwrap();
                        let reps = |v: &[(Vec<Rat>, Vec<Int>)]| {
                            v.iter().map(|x| x.0.clone()).collect::<Vec<_>>()
                        };
                        assert_eq!(reps(&fast), reps(&slow), "{:?} {:?}", face.members, b);
                    }
                }
            }
        }
    }

    fn rank11() -> Configuration {
        Configuration::from_rows(&[
            &[1, 1, 1, 1, 1, 1, 1, 1, 1],
            &[0, 1, 2, 3, 0, 2, 0, 1, 0],
            &[0, 0, 0, 0, 1, 1, 2, 2, 3],
        ])
        .unwrap()
    }

    #[test]
    fn small_example_classes_are_trivial() {
        let cfg = Configuration::from_rows(&[&[1, 1, 1], &[0, 1, 2]]).unwrap();
        let beta = ints(&[1, 1]);
        for w in [[0, 1, 0], [0, -1, 0]] {
            let t = regular_triangulation(&cfg, &Weight::from_i64(&w)).unwrap();
            for f in &t.faces {
                let e = e_tau(&cfg, f, &beta).unwrap();
                assert_eq!(e.len(), 1, "face {f}");
                assert!(e[0].rep.iter().all(|x| x == &rat(0, 1)));
            }
        }
    }

    #[test]
    fn empty_face_is_membership() {
        let cfg = rank11();
        let empty = Face::empty(FaceKind::Cone);
        assert!(e_tau(&cfg, &empty, &ints(&[1, 1, 1])).unwrap().is_empty());
        assert_eq!(e_tau(&cfg, &empty, &ints(&[1, 0, 0])).unwrap().len(), 1);
    }

    #[test]
    fn full_face_gives_beta() {
        let cfg = rank11();
        let full = cone_faces(&cfg).pop().unwrap();
        let beta = vec![rat(1, 3), rat(2, 7), rat(-5, 2)];
        let e = e_tau(&cfg, &full, &beta).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(Some(e[0].rep.clone()), full.lattice(&cfg).reduce(&beta));
    }

    #[test]
    fn rank11_minface() {
        let cfg = rank11();
        let mf = minface(&cfg, &ints(&[1, 1, 1]), &Budget::default()).unwrap();
        let m: Vec<_> = mf.iter().map(|f| f.members.clone()).collect();
        assert_eq!(m, vec![vec![0], vec![3], vec![8]]);
        let mf = minface(&cfg, &ints(&[1, 0, 0]), &Budget::default()).unwrap();
        assert_eq!(mf, vec![Face::empty(FaceKind::Cone)]);
        let mf = minface(&cfg, &ints(&[0, 0, 0]), &Budget::default()).unwrap();
        assert_eq!(mf, vec![Face::empty(FaceKind::Cone)]);
    }

    #[test]
    fn fingerprints() {
        let cfg = rank11();
        let b = Budget::default();
        let f0 = fingerprint(&cfg, &ints(&[1, 1, 1]), &b).unwrap();
        let f1 = fingerprint(&cfg, &ints(&[1, 0, 0]), &b).unwrap();
        assert_ne!(f0, f1);
        assert!(f0.differences(&f1).contains(&vec![]));
        assert!(same_fingerprint(&cfg, &ints(&[1, 1, 1]), &ints(&[1, 1, 1]), &b).unwrap());
    }

    #[test]
    fn natural_map_two_to_one() {
        let cfg = Configuration::from_rows(&[&[1, 1, 1], &[0, 2, 3]]).unwrap();
        let t = regular_triangulation(&cfg, &Weight::from_i64(&[0, -1, 0])).unwrap();
        let cell = t
            .cells
            .iter()
            .find(|c| c.vertices == vec![0, 1])
            .unwrap()
            .clone();
        let full = cone_faces(&cfg).pop().unwrap();
        let beta = vec![rat(1, 2), rat(1, 3)];
        let small = e_tau(&cfg, &cell, &beta).unwrap();
        let big = e_tau(&cfg, &full, &beta).unwrap();
        assert_eq!(small.len(), 2 * big.len());
        for l in &small {
            assert!(big.contains(&natural_map(&cfg, l, &full).unwrap()));
        }
        let ray = Face {
            kind: FaceKind::Cone,
            span_dim: 1,
            vertices: vec![0],
            members: vec![0],
        };
        assert_eq!(
            natural_map(&cfg, &big[0], &ray).unwrap_err().kind(),
            "SpanMismatch"
        );
    }
}
