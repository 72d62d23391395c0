//! Exact numbers for the oracle graphs: arbitrary-precision rationals,
//! values `a + b√2` with exact sign, and rigorous rational bounds on π.

use std::cmp::Ordering;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Rational(s.to_string());
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadValue {
    pub a: Rational,
    pub b: Rational,
}

impl QuadValue {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadValue { a, b }
    }

    /// Exact sign. When `a` and `b` disagree in sign the answer comes from
    /// comparing `a²` with `2b²`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * int(2);
                // |a| vs |b|√2 decides, and a carries sign sa
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn sub(&self, other: &QuadValue) -> QuadValue {
        QuadValue { a: &self.a - &other.a, b: &self.b - &other.b }
    }
}

impl PartialOrd for QuadValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum()
    }
}

/// Nested rational enclosures `lo < π < hi` from continued-fraction
/// convergents of π.
const PI_TABLE: [((i64, i64), (i64, i64)); 4] = [
    ((333, 106), (355, 113)),
    ((103_993, 33_102), (104_348, 33_215)),
    ((208_341, 66_317), (312_689, 99_532)),
    ((833_719, 265_381), (1_146_408, 364_913)),
];

/// Bounds on `arctan(1/x)` from `terms` terms of its alternating series.
fn arctan_inv_bounds(x: i64, terms: usize) -> (Rational, Rational) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = Rational::zero();
    for k in 0..terms {
        let term = Rational::new(BigInt::one(), &power * BigInt::from(2 * k as i64 + 1));
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power *= &x2;
    }
    // the next term is smaller than the last one used
    let next = Rational::new(BigInt::one(), &power * BigInt::from(2 * terms as i64 + 1));
    if terms % 2 == 1 {
        (&sum - &next, sum)
    } else {
        (sum.clone(), &sum + &next)
    }
}

/// Machin: π = 16 arctan(1/5) − 4 arctan(1/239).
fn machin_bounds(terms: usize) -> (Rational, Rational) {
    let (l5, u5) = arctan_inv_bounds(5, terms);
    let (l239, u239) = arctan_inv_bounds(239, terms);
    let lo = int(16) * l5 - int(4) * u239;
    let hi = int(16) * u5 - int(4) * l239;
    (lo, hi)
}

/// The tightest small-denominator enclosure `lo < π < hi` (width < 1e-11).
pub fn pi_enclosure() -> (Rational, Rational) {
    table().last().expect("nonempty").clone()
}

/// Rational bounds `lo < π < hi` whose width shrinks with `terms`.
pub fn pi_bounds(terms: usize) -> (Rational, Rational) {
    machin_bounds(terms)
}

fn table() -> &'static Vec<(Rational, Rational)> {
    static T: OnceLock<Vec<(Rational, Rational)>> = OnceLock::new();
    T.get_or_init(|| PI_TABLE.iter().map(|&((a, b), (c, d))| (rat(a, b), rat(c, d))).collect())
}

/// Compare a rational with π. Never `Equal`: π is irrational, so shrinking
/// enclosures eventually separate them.
pub fn cmp_pi(x: &Rational) -> Ordering {
    // floats are exact enough far from π
    if let Some(f) = x.to_f64() {
        if f < 3.14159 {
            return Ordering::Less;
        }
        if f > 3.1416 {
            return Ordering::Greater;
        }
    }
    for (lo, hi) in table() {
        if x <= lo {
            return Ordering::Less;
        }
        if x >= hi {
            return Ordering::Greater;
        }
    }
    let mut level = 0;
    loop {
        let (lo, hi) = machin_level(level);
        if *x <= lo {
            return Ordering::Less;
        }
        if *x >= hi {
            return Ordering::Greater;
        }
        level += 1;
    }
}

/// Machin bounds with `8 · 2^level` terms, computed once.
fn machin_level(level: usize) -> (Rational, Rational) {
    static CACHE: Mutex<Vec<(Rational, Rational)>> = Mutex::new(Vec::new());
    let mut cache = CACHE.lock().expect("pi cache");
    while cache.len() <= level {
        let terms = 8 << cache.len();
        cache.push(machin_bounds(terms));
    }
    cache[level].clone()
}

/// `|x| < π`, exactly.
pub fn abs_below_pi(x: &Rational) -> bool {
    cmp_pi(&x.abs()) == Ordering::Less
}
