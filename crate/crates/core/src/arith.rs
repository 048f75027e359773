//! Exact positive rationals, prime factorization, perfect powers and
//! supernatural numbers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A strictly positive rational in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<BigUint>);

impl Rational {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::invalid(format!(
                "rational {num}/{den} is not strictly positive"
            )));
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    pub fn from_int(n: impl Into<BigUint>) -> Result<Self> {
        Self::new(n.into(), BigUint::one())
    }

    pub fn one() -> Self {
        Rational(Ratio::one())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn pow(&self, e: u32) -> Self {
        Rational(Ratio::new_raw(self.numer().pow(e), self.denom().pow(e)))
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn to_signed(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numer().clone()),
            BigInt::from(self.denom().clone()),
        )
    }
}

impl From<u64> for Rational {
    /// Panics on zero; intended for literals in tests and examples.
    fn from(n: u64) -> Self {
        Rational::from_int(n).expect("nonzero literal")
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"n/d"` or a bare integer `"n"`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            BigUint::from_str(t.trim())
                .map_err(|_| Error::invalid(format!("bad rational component {t:?}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Rational::new(parse(s)?, BigUint::one()),
        }
    }
}

/// Prime factorization by trial division, as an ordered prime → exponent map.
/// `factorize(1)` is empty. Zero is not a valid input and yields an empty map.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return out;
    }
    if let Some(small) = n.to_u64() {
        for (p, e) in factorize_u64(small) {
            out.insert(BigUint::from(p), e);
        }
        return out;
    }
    let mut m = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            out.insert(p.clone(), e);
        }
        if let Some(small) = m.to_u64() {
            for (q, e) in factorize_u64(small) {
                *out.entry(BigUint::from(q)).or_insert(0) += e;
            }
            return out;
        }
        p += 1u32;
    }
    if !m.is_one() {
        *out.entry(m).or_insert(0) += 1;
    }
    out
}

fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd_of_exponents<'a>(it: impl Iterator<Item = &'a u32>) -> u32 {
    it.fold(0u32, |g, &e| g.gcd(&e))
}

/// Returns `(base, exponent)` with `base^exponent = n` and the exponent as
/// large as possible. `perfect_power(1) = (1, 1)`.
pub fn perfect_power(n: &BigUint) -> (BigUint, u32) {
    let f = factorize(n);
    let g = gcd_of_exponents(f.values());
    if g == 0 {
        return (BigUint::one(), 1);
    }
    let base = f
        .iter()
        .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e / g));
    (base, g)
}

/// The deepest rational root of `q`: `(root, degree)` with
/// `root^degree = q`. `reduced_root(1) = (1, 1)` by convention.
pub fn reduced_root(q: &Rational) -> (Rational, u32) {
    let fn_ = factorize(q.numer());
    let fd = factorize(q.denom());
    let g = gcd_of_exponents(fn_.values().chain(fd.values()));
    if g == 0 {
        return (Rational::one(), 1);
    }
    let part = |f: &BTreeMap<BigUint, u32>| {
        f.iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e / g))
    };
    let root = Rational(Ratio::new(part(&fn_), part(&fd)));
    (root, g)
}

/// How two supernatural numbers relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SnRelation {
    Equal,
    FinitelyEquivalent,
    Inequivalent,
}

impl SnRelation {
    /// Equal or finitely equivalent.
    pub fn is_equivalent(self) -> bool {
        !matches!(self, SnRelation::Inequivalent)
    }
}

/// A supernatural number of the form `m · ∏_{p ∈ S} p^∞` with `m` a
/// positive integer whose prime factors avoid `S`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Supernatural {
    finite: BTreeMap<BigUint, u32>,
    infinite: BTreeSet<BigUint>,
}

impl Supernatural {
    pub fn one() -> Self {
        Self::default()
    }

    /// `∏ prefix · (∏ period)^∞`.
    pub fn from_periodic(prefix: &[BigUint], period: &[BigUint]) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::invalid("supernatural period must be nonempty"));
        }
        if prefix.iter().chain(period).any(|n| n.is_zero()) {
            return Err(Error::invalid("supernatural factors must be positive"));
        }
        let mut infinite = BTreeSet::new();
        for n in period {
            infinite.extend(factorize(n).into_keys());
        }
        let mut finite = BTreeMap::new();
        for n in prefix {
            for (p, e) in factorize(n) {
                if !infinite.contains(&p) {
                    *finite.entry(p).or_insert(0) += e;
                }
            }
        }
        Ok(Supernatural { finite, infinite })
    }

    pub fn finite_exponents(&self) -> &BTreeMap<BigUint, u32> {
        &self.finite
    }

    pub fn infinite_primes(&self) -> &BTreeSet<BigUint> {
        &self.infinite
    }

    pub fn is_one(&self) -> bool {
        self.finite.is_empty() && self.infinite.is_empty()
    }

    pub fn compare(&self, other: &Supernatural) -> SnRelation {
        if self == other {
            SnRelation::Equal
        } else if self.infinite == other.infinite {
            SnRelation::FinitelyEquivalent
        } else {
            SnRelation::Inequivalent
        }
    }
}

impl Mul for &Supernatural {
    type Output = Supernatural;
    fn mul(self, rhs: &Supernatural) -> Supernatural {
        let infinite: BTreeSet<BigUint> = self.infinite.union(&rhs.infinite).cloned().collect();
        let mut finite = BTreeMap::new();
        for (p, e) in self.finite.iter().chain(&rhs.finite) {
            if !infinite.contains(p) {
                *finite.entry(p.clone()).or_insert(0) += *e;
            }
        }
        Supernatural { finite, infinite }
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts: Vec<(BigUint, String)> = self
            .infinite
            .iter()
            .map(|p| (p.clone(), format!("{p}^∞")))
            .collect();
        for (p, e) in &self.finite {
            let s = if *e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            };
            parts.push((p.clone(), s));
        }
        parts.sort();
        let joined: Vec<String> = parts.into_iter().map(|(_, s)| s).collect();
        write!(f, "{}", joined.join("·"))
    }
}

impl fmt::Debug for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
