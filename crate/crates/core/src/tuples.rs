//! Refinement-multiplicity tuples and their composition monoid.
//!
//! Convention: `compose(outer, inner)` applies `inner` first. The inner
//! tuple is the initial segment of the result, and entry `i·len(inner)+j`
//! is `outer[i]·inner[j]`. Factor lists are stored outermost first, so
//! `[c1, c2, c3]` means `c1 ∘ c2 ∘ c3` with `c3` applied first.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// A nonempty tuple of positive integer multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntTuple(Vec<BigUint>);

impl IntTuple {
    pub fn new(entries: Vec<BigUint>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("tuple must be nonempty"));
        }
        if entries.iter().any(|e| e.is_zero()) {
            return Err(Error::invalid("tuple entries must be positive"));
        }
        Ok(IntTuple(entries))
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self> {
        Self::new(entries.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of entries: the dimension multiplier `k` of the embedding.
    pub fn sum(&self) -> BigUint {
        self.0.iter().sum()
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_usizes(&self) -> Option<Vec<usize>> {
        self.0.iter().map(|e| e.to_usize()).collect()
    }

    /// Integer composition with `inner` applied first.
    pub fn compose(outer: &IntTuple, inner: &IntTuple) -> IntTuple {
        let mut v = Vec::with_capacity(outer.len() * inner.len());
        for o in &outer.0 {
            for i in &inner.0 {
                v.push(o * i);
            }
        }
        IntTuple(v)
    }
}

impl fmt::Display for IntTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for IntTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A nonempty tuple of positive rationals whose first entry is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormTuple(Vec<Rational>);

impl NormTuple {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        match entries.first() {
            None => Err(Error::invalid("normalized tuple must be nonempty")),
            Some(first) if !first.is_one() => Err(Error::invalid(format!(
                "normalized tuple must start with 1, got {first}"
            ))),
            Some(_) => Ok(NormTuple(entries)),
        }
    }

    /// Normalizes a list of positive integers. Panics on empty input or a
    /// zero entry; meant for literals.
    pub fn from_ints(entries: &[u64]) -> Self {
        normalize(&IntTuple::from_u64s(entries).expect("valid literal")).1
    }

    /// The unit `(1)`.
    pub fn unit() -> Self {
        NormTuple(vec![Rational::one()])
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_unit(&self) -> bool {
        self.0.len() == 1
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(Rational::is_one)
    }

    /// Successive ratios `a_i / a_{i-1}` for `i = 1..len`.
    pub fn ratios(&self) -> Vec<Rational> {
        self.0.windows(2).map(|w| &w[1] / &w[0]).collect()
    }

    /// `c ∘ c ∘ … ∘ c` with `m` copies; `m = 0` gives the unit.
    pub fn power(&self, m: usize) -> NormTuple {
        (0..m).fold(NormTuple::unit(), |acc, _| compose(&acc, self))
    }

    /// Smallest integer tuple with this normalized form.
    pub fn to_int_tuple(&self) -> IntTuple {
        let l = self
            .0
            .iter()
            .fold(BigUint::one(), |acc, q| acc.lcm(q.denom()));
        IntTuple(
            self.0
                .iter()
                .map(|q| q.numer() * (&l / q.denom()))
                .collect(),
        )
    }
}

impl fmt::Display for NormTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .0
            .iter()
            .map(|q| {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    q.to_string()
                }
            })
            .collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for NormTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Divides through by the leading entry.
pub fn normalize(t: &IntTuple) -> (Rational, NormTuple) {
    let lead = t.0[0].clone();
    let entries = t
        .0
        .iter()
        .map(|a| Rational::new(a.clone(), lead.clone()).expect("positive entries"))
        .collect();
    (
        Rational::from_int(lead).expect("positive entries"),
        NormTuple(entries),
    )
}

/// `outer ∘ inner`, with `inner` applied first.
pub fn compose(outer: &NormTuple, inner: &NormTuple) -> NormTuple {
    let mut v = Vec::with_capacity(outer.len() * inner.len());
    for o in &outer.0 {
        for i in &inner.0 {
            v.push(o * i);
        }
    }
    NormTuple(v)
}

/// Composes a factor list given outermost first. The empty list gives `(1)`.
pub fn compose_all(factors: &[NormTuple]) -> NormTuple {
    factors
        .iter()
        .rev()
        .fold(NormTuple::unit(), |acc, f| compose(f, &acc))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Divisibility {
    None,
    Divisible,
    StronglyDivisible,
}

impl Divisibility {
    pub fn is_divisible(self) -> bool {
        !matches!(self, Divisibility::None)
    }
}

/// Ratio periodicity of `t` modulo `m`: ratios with equal nonzero residue
/// must agree for `Divisible`; all residues must agree for
/// `StronglyDivisible`.
pub fn divisibility(t: &NormTuple, m: usize) -> Result<Divisibility> {
    if m == 0 {
        return Err(Error::invalid("divisibility modulus must be positive"));
    }
    if t.len() % m != 0 {
        return Ok(Divisibility::None);
    }
    let ratios = t.ratios();
    let mut class: Vec<Option<&Rational>> = vec![None; m];
    let mut zero_uniform = true;
    for (idx, r) in ratios.iter().enumerate() {
        let i = idx + 1;
        let slot = &mut class[i % m];
        match slot {
            None => *slot = Some(r),
            Some(prev) if *prev == r => {}
            Some(_) if i % m == 0 => zero_uniform = false,
            Some(_) => return Ok(Divisibility::None),
        }
    }
    Ok(if zero_uniform {
        Divisibility::StronglyDivisible
    } else {
        Divisibility::Divisible
    })
}

/// Splits `t = outer ∘ inner` with `len(inner) = m`.
pub fn factor_by_length(t: &NormTuple, m: usize) -> Result<(NormTuple, NormTuple)> {
    if !divisibility(t, m)?.is_divisible() {
        return Err(Error::NotDivisible { m, len: t.len() });
    }
    let inner = NormTuple(t.0[..m].to_vec());
    let outer = NormTuple(t.0.iter().step_by(m).cloned().collect());
    Ok((outer, inner))
}

/// Smallest `m ≥ 2` for which `t` is `m`-divisible, or `None` for `(1)`.
pub fn minimal_divisor(t: &NormTuple) -> Option<usize> {
    (2..=t.len()).find(|&m| {
        divisibility(t, m)
            .map(Divisibility::is_divisible)
            .unwrap_or(false)
    })
}

/// Splits off the shortest nontrivial inner factor, which is irreducible.
/// An irreducible `t` gives `((1), t)`; `(1)` gives `((1), (1))`.
pub fn peel_minimal(t: &NormTuple) -> (NormTuple, NormTuple) {
    match minimal_divisor(t) {
        None => (NormTuple::unit(), NormTuple::unit()),
        Some(m) if m == t.len() => (NormTuple::unit(), t.clone()),
        Some(m) => factor_by_length(t, m).expect("minimal divisor divides"),
    }
}

pub fn is_irreducible(t: &NormTuple) -> bool {
    t.len() > 1 && minimal_divisor(t) == Some(t.len())
}

/// Ratio of a geometric tuple. A length-1 tuple is compatible with every
/// ratio.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeomRatio {
    Any,
    Ratio(Rational),
}

impl GeomRatio {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            GeomRatio::Any => None,
            GeomRatio::Ratio(r) => Some(r),
        }
    }
}

/// `Some(x)` when `t = (1, x, x², …)`.
pub fn is_geometric(t: &NormTuple) -> Option<GeomRatio> {
    if t.len() == 1 {
        return Some(GeomRatio::Any);
    }
    let x = &t.0[1];
    let mut expect = x.clone();
    for a in &t.0[2..] {
        expect = &expect * x;
        if *a != expect {
            return None;
        }
    }
    Some(GeomRatio::Ratio(x.clone()))
}

/// The unique factorization into irreducibles in which every geometric
/// adjacent pair has the outer factor at least as long as the inner one.
/// Outermost first; `(1)` gives the empty list.
pub fn canonical_factorization(t: &NormTuple) -> Vec<NormTuple> {
    let mut innermost_first = Vec::new();
    let mut cur = t.clone();
    while cur.len() > 1 {
        let (outer, inner) = peel_minimal(&cur);
        innermost_first.push(inner);
        cur = outer;
    }
    innermost_first.reverse();
    innermost_first
}

/// Merges maximal runs of the canonical factorization whose composition is
/// geometric. No adjacent pair of the result composes to a geometric tuple.
pub fn compressed_factorization(t: &NormTuple) -> Vec<NormTuple> {
    compress_factors(&canonical_factorization(t))
}

/// Greedy left-to-right merge of adjacent factors with geometric product.
pub fn compress_factors(factors: &[NormTuple]) -> Vec<NormTuple> {
    let mut out: Vec<NormTuple> = Vec::new();
    for f in factors {
        if let Some(last) = out.last_mut() {
            let merged = compose(last, f);
            if is_geometric(&merged).is_some() {
                *last = merged;
                continue;
            }
        }
        out.push(f.clone());
    }
    out
}

/// Puts a factor list, outermost first, into canonical order by sorting
/// each maximal geometric run into prime-length factors with lengths
/// non-decreasing outward. Input factors must be irreducible.
pub fn canonicalize_runs(factors: &[NormTuple]) -> Vec<NormTuple> {
    let mut out = Vec::with_capacity(factors.len());
    for run in compress_factors(factors) {
        if is_geometric(&run).is_some() && run.len() > 1 {
            out.extend(canonical_factorization(&run));
        } else {
            out.push(run);
        }
    }
    // Runs that were not geometric came from single irreducible factors.
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CommuteClass {
    TrivialFactor,
    BothAllOnes,
    CommonPower { c: NormTuple, m: usize, n: usize },
    NonCommuting,
}

/// Which case of the commuting-pair trichotomy applies to `a` and `b`.
pub fn commute_class(a: &NormTuple, b: &NormTuple) -> Result<CommuteClass> {
    if compose(a, b) != compose(b, a) {
        return Ok(CommuteClass::NonCommuting);
    }
    if a.is_unit() || b.is_unit() {
        return Ok(CommuteClass::TrivialFactor);
    }
    if a.is_all_ones() && b.is_all_ones() {
        return Ok(CommuteClass::BothAllOnes);
    }
    for l in 2..=a.len().min(b.len()) {
        let (Some(m), Some(n)) = (log_exact(a.len(), l), log_exact(b.len(), l)) else {
            continue;
        };
        let c = NormTuple(a.0[..l].to_vec());
        if c.power(m) == *a && c.power(n) == *b {
            return Ok(CommuteClass::CommonPower { c, m, n });
        }
    }
    Err(Error::invariant(format!(
        "{a} and {b} commute but no common root was found"
    )))
}

/// `Some(e)` with `base^e = n`.
fn log_exact(n: usize, base: usize) -> Option<usize> {
    let mut acc = 1usize;
    let mut e = 0;
    while acc < n {
        acc = acc.checked_mul(base)?;
        e += 1;
    }
    (acc == n).then_some(e)
}
