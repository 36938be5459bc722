//! Scalar helpers shared by every module: exact integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_from_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(rat_from_int).collect()
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Parses `"p/q"`, `"-n"` or `"n"` exactly.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: Int = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Canonical wire form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_natural(q: &Rat) -> bool {
    q.is_integer() && !q.is_negative()
}

pub fn is_negative_integer(q: &Rat) -> bool {
    q.is_integer() && q.is_negative()
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &Rat) -> Rat {
    q - q.floor()
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + y * x)
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector by the lcm of its denominators, returning integers.
pub fn clear_denominators(values: &[Rat]) -> Vec<Int> {
    let l = lcm_of_denominators(values);
    values
        .iter()
        .map(|q| (q * rat_from_int(&l)).to_integer())
        .collect()
}

/// Falling factorial `x (x-1) ... (x-t+1)`.
pub fn falling_factorial(x: &Rat, t: &Int) -> Rat {
    let steps = t.to_u64().expect("falling factorial length out of range");
    let mut acc = Rat::one();
    let mut cur = x.clone();
    for _ in 0..steps {
        acc *= &cur;
        if acc.is_zero() {
            return acc;
        }
        cur -= Rat::one();
    }
    acc
}

pub fn format_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}
