//! Classification invariants of eventually periodic order-preserving
//! presentations and the isomorphism decision built on them.
//!
//! A presentation lists the tuple of each level: `prefix` first, then
//! `period` repeated forever. Level `n` embeds level `n-1` into level `n`, so
//! along the presentation tuples are applied in list order.

use std::fmt;

use num_bigint::BigUint;

use crate::arith::{Rational, SnRelation, Supernatural};
use crate::error::{Error, Result};
use crate::tuples::{
    canonical_factorization, canonicalize_runs, compose, compose_all, is_geometric, normalize,
    IntTuple, NormTuple,
};

/// Composed tuples longer than this skip the stability cross-check.
pub const STABILITY_CHECK_LIMIT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    prefix: Vec<IntTuple>,
    period: Vec<IntTuple>,
}

impl Presentation {
    pub fn new(prefix: Vec<IntTuple>, period: Vec<IntTuple>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::invalid("presentation period must be nonempty"));
        }
        Ok(Presentation { prefix, period })
    }

    /// Shorthand for tests and examples. Panics on invalid input.
    pub fn from_u64s(prefix: &[&[u64]], period: &[&[u64]]) -> Self {
        let conv = |ts: &[&[u64]]| {
            ts.iter()
                .map(|t| IntTuple::from_u64s(t).expect("valid tuple"))
                .collect::<Vec<_>>()
        };
        Presentation::new(conv(prefix), conv(period)).expect("nonempty period")
    }

    pub fn prefix(&self) -> &[IntTuple] {
        &self.prefix
    }

    pub fn period(&self) -> &[IntTuple] {
        &self.period
    }

    /// Tuple of level `n` (1-based).
    pub fn level_tuple(&self, n: usize) -> Result<&IntTuple> {
        if n == 0 {
            return Err(Error::OutOfRange("levels start at 1".into()));
        }
        let idx = n - 1;
        Ok(if idx < self.prefix.len() {
            &self.prefix[idx]
        } else {
            &self.period[(idx - self.prefix.len()) % self.period.len()]
        })
    }

    /// The same system with each period composed into a single tuple.
    pub fn telescope(&self) -> Presentation {
        let mut it = self.period.iter();
        let first = it.next().expect("nonempty period").clone();
        let composed = it.fold(first, |inner, outer| IntTuple::compose(outer, &inner));
        Presentation {
            prefix: self.prefix.clone(),
            period: vec![composed],
        }
    }

    /// Prepends tuples to the prefix.
    pub fn padded(&self, extra: &[IntTuple]) -> Presentation {
        let mut prefix = extra.to_vec();
        prefix.extend(self.prefix.iter().cloned());
        Presentation {
            prefix,
            period: self.period.clone(),
        }
    }

    /// Every tuple has all entries equal.
    pub fn is_alternation(&self) -> bool {
        self.prefix
            .iter()
            .chain(&self.period)
            .all(|t| t.entries().iter().all(|a| *a == t.entries()[0]))
    }

    fn sn_over(&self, f: impl Fn(&IntTuple) -> BigUint) -> Supernatural {
        let prefix: Vec<BigUint> = self.prefix.iter().map(&f).collect();
        let period: Vec<BigUint> = self.period.iter().map(&f).collect();
        Supernatural::from_periodic(&prefix, &period).expect("nonempty period of positive values")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ts: &[IntTuple]| ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "prefix [{}] period [{}]", join(&self.prefix), join(&self.period))
    }
}

/// Supernatural number of the UHF envelope: the level sizes `k_n`.
pub fn envelope_supernatural(p: &Presentation) -> Supernatural {
    p.sn_over(|t| t.sum())
}

/// Supernatural number of the first refinement multiplicities.
pub fn first_summand_supernatural(p: &Presentation) -> Supernatural {
    p.sn_over(|t| t.entries()[0].clone())
}

fn lengths_supernatural(p: &Presentation, with_prefix: bool) -> Supernatural {
    let prefix: Vec<BigUint> = if with_prefix {
        p.prefix.iter().map(|t| BigUint::from(t.len())).collect()
    } else {
        Vec::new()
    };
    let period: Vec<BigUint> = p.period.iter().map(|t| BigUint::from(t.len())).collect();
    Supernatural::from_periodic(&prefix, &period).expect("nonempty period")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeometricWitness {
    pub lengths: Supernatural,
    pub root: Rational,
}

/// Present iff every composition of distant levels is geometric.
///
/// The ratio law for composites forces `q = q^L` around a period whose
/// non-unit tuples have lengths multiplying to `L ≥ 2`, so the only
/// periodic geometric behaviour is all-ones tuples, with root 1. Unit
/// tuples (pure refinement steps) impose nothing.
pub fn has_geometric_character(p: &Presentation) -> Option<GeometricWitness> {
    let all_flat = p
        .period
        .iter()
        .map(|t| normalize(t).1)
        .all(|t| t.is_unit() || t.is_all_ones());
    all_flat.then(|| GeometricWitness {
        lengths: lengths_supernatural(p, false),
        root: Rational::one(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Mode {
    Geometric {
        lengths: Supernatural,
        root: Rational,
    },
    /// Factor lists are in application order, innermost first.
    NonGeometric {
        prefix_factors: Vec<NormTuple>,
        cycle_factors: Vec<NormTuple>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantSet {
    pub envelope: Supernatural,
    pub first_summand: Supernatural,
    pub mode: Mode,
}

/// `canonicalize_runs` for a list in application order.
fn canon_app(app: &[NormTuple]) -> Vec<NormTuple> {
    let outer_first: Vec<NormTuple> = app.iter().rev().cloned().collect();
    let mut out = canonicalize_runs(&outer_first);
    out.reverse();
    out
}

/// Irreducible factors of a tuple, innermost first.
fn app_factors(t: &IntTuple) -> Vec<NormTuple> {
    let mut f = canonical_factorization(&normalize(t).1);
    f.reverse();
    f
}

/// Shortest `c` with `cycle = c^j`.
pub fn primitive_root(cycle: &[NormTuple]) -> &[NormTuple] {
    let n = cycle.len();
    for d in 1..=n {
        if n % d == 0 && (d..n).all(|i| cycle[i] == cycle[i - d]) {
            return &cycle[..d];
        }
    }
    cycle
}

/// Lexicographically least rotation.
pub fn min_rotation(cycle: &[NormTuple]) -> Vec<NormTuple> {
    let n = cycle.len();
    (0..n)
        .map(|s| cycle[s..].iter().chain(&cycle[..s]).cloned().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// True when `a` and `b` are rotations of each other.
pub fn rotation_equal(a: &[NormTuple], b: &[NormTuple]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| a[s..].iter().chain(&a[..s]).eq(b)))
}

fn composed_len(factors: &[NormTuple]) -> Option<usize> {
    factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
}

/// Factor cycle of a presentation without geometric character.
///
/// The one-period factor list is cut at a point where two adjacent factors
/// do not compose to a geometric tuple. Geometric runs never cross such a
/// point, so the cut cycle canonicalizes locally and every further period
/// repeats it exactly.
fn nongeometric_mode(p: &Presentation) -> Result<Mode> {
    let cycle_list: Vec<NormTuple> = p.period.iter().flat_map(app_factors).collect();
    let n = cycle_list.len();
    let cut = (0..n)
        .find(|&i| {
            let inner = &cycle_list[i];
            let outer = &cycle_list[(i + 1) % n];
            is_geometric(&compose(outer, inner)).is_none()
        })
        .ok_or_else(|| {
            Error::invariant(format!(
                "{p}: no non-geometric junction in a presentation without geometric character"
            ))
        })?;
    let start = (cut + 1) % n;
    let rotated: Vec<NormTuple> = cycle_list[start..]
        .iter()
        .chain(&cycle_list[..start])
        .cloned()
        .collect();
    let cycle = canon_app(&rotated);

    // Stability: two cut periods must factor as two copies of one.
    if composed_len(&rotated).is_some_and(|l| l.saturating_mul(l) <= STABILITY_CHECK_LIMIT) {
        let one = compose_all(&rotated.iter().rev().cloned().collect::<Vec<_>>());
        let mut two = canonical_factorization(&compose(&one, &one));
        two.reverse();
        let expect: Vec<NormTuple> = cycle.iter().chain(&cycle).cloned().collect();
        if two != expect {
            return Err(Error::invariant(format!(
                "{p}: factorization over two periods is not two copies of one period"
            )));
        }
    }

    let mut head: Vec<NormTuple> = p.prefix.iter().flat_map(app_factors).collect();
    head.extend(cycle_list[..start].iter().cloned());
    let prefix_factors = canon_app(&head);
    let cycle_factors = min_rotation(primitive_root(&cycle));
    Ok(Mode::NonGeometric {
        prefix_factors,
        cycle_factors,
    })
}

pub fn invariants(p: &Presentation) -> Result<InvariantSet> {
    let mode = match has_geometric_character(p) {
        Some(w) => Mode::Geometric {
            lengths: w.lengths,
            root: w.root,
        },
        None => nongeometric_mode(p)?,
    };
    Ok(InvariantSet {
        envelope: envelope_supernatural(p),
        first_summand: first_summand_supernatural(p),
        mode,
    })
}

/// One comparison made by [`isomorphic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub holds: bool,
    pub citation: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub verdict: bool,
    pub checks: Vec<Check>,
    pub left: InvariantSet,
    pub right: InvariantSet,
}

impl IsoReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

pub const CITE_ENVELOPE: &str = "Glimm classification of the UHF envelope";
pub const CITE_FIRST_SUMMAND: &str = "first-summand invariant of the spectrum";
pub const CITE_CLASSIFICATION: &str = "classification by geometric character";
pub const CITE_FACTORIZATION: &str = "unique factorization of tuples";

fn relation_name(r: SnRelation) -> &'static str {
    match r {
        SnRelation::Equal => "equal",
        SnRelation::FinitelyEquivalent => "finitely equivalent",
        SnRelation::Inequivalent => "inequivalent",
    }
}

fn fmt_factors(fs: &[NormTuple]) -> String {
    let parts: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Decides isomorphism of the limit algebras of two eventually periodic
/// presentations. Every failed comparison is reported, not just the first.
pub fn isomorphic(p1: &Presentation, p2: &Presentation) -> Result<IsoReport> {
    let a = invariants(p1)?;
    let b = invariants(p2)?;
    let mut checks = Vec::new();

    let env = a.envelope.compare(&b.envelope);
    checks.push(Check {
        name: "envelope",
        holds: env == SnRelation::Equal,
        citation: CITE_ENVELOPE,
        detail: format!(
            "envelope supernatural numbers {} and {} are {}",
            a.envelope,
            b.envelope,
            relation_name(env)
        ),
    });

    let first = a.first_summand.compare(&b.first_summand);
    checks.push(Check {
        name: "first_summand",
        holds: first.is_equivalent(),
        citation: CITE_FIRST_SUMMAND,
        detail: format!(
            "first-summand supernatural numbers {} and {} are {}",
            a.first_summand,
            b.first_summand,
            relation_name(first)
        ),
    });

    match (&a.mode, &b.mode) {
        (
            Mode::Geometric { lengths: l1, root: q1 },
            Mode::Geometric { lengths: l2, root: q2 },
        ) => {
            let rel = l1.compare(l2);
            checks.push(Check {
                name: "lengths",
                holds: rel.is_equivalent(),
                citation: CITE_CLASSIFICATION,
                detail: format!("length supernatural numbers {l1} and {l2} are {}", relation_name(rel)),
            });
            checks.push(Check {
                name: "root",
                holds: q1 == q2,
                citation: CITE_CLASSIFICATION,
                detail: format!("reduced roots {q1} and {q2}"),
            });
        }
        (
            Mode::NonGeometric { cycle_factors: c1, .. },
            Mode::NonGeometric { cycle_factors: c2, .. },
        ) => {
            let same = rotation_equal(c1, c2);
            checks.push(Check {
                name: "factor_cycle",
                holds: same,
                citation: CITE_FACTORIZATION,
                detail: format!(
                    "primitive factor cycles {} and {} {}",
                    fmt_factors(c1),
                    fmt_factors(c2),
                    if same { "agree up to rotation" } else { "differ" }
                ),
            });
        }
        _ => checks.push(Check {
            name: "geometric_character",
            holds: false,
            citation: CITE_CLASSIFICATION,
            detail: "exactly one presentation has geometric character".into(),
        }),
    }

    let verdict = checks.iter().all(|c| c.holds);
    if verdict && !a.first_summand.compare(&b.first_summand).is_equivalent() {
        return Err(Error::invariant("isomorphic verdict with inequivalent first summands"));
    }
    Ok(IsoReport {
        verdict,
        checks,
        left: a,
        right: b,
    })
}

/// `(standard, refinement)` supernatural numbers of an alternation
/// presentation: tuple lengths and the common entry of each tuple.
pub fn alternation_invariants(p: &Presentation) -> Result<(Supernatural, Supernatural)> {
    if !p.is_alternation() {
        let bad = p
            .prefix
            .iter()
            .chain(&p.period)
            .find(|t| t.entries().iter().any(|a| *a != t.entries()[0]))
            .expect("some tuple has unequal entries");
        return Err(Error::NotAlternation(format!("tuple {bad} has unequal entries")));
    }
    Ok((lengths_supernatural(p, true), first_summand_supernatural(p)))
}

/// Isomorphism of alternation algebras from their two supernatural numbers:
/// both finitely equivalent and the products exactly equal.
pub fn alternation_isomorphic(p1: &Presentation, p2: &Presentation) -> Result<bool> {
    let (s1, r1) = alternation_invariants(p1)?;
    let (s2, r2) = alternation_invariants(p2)?;
    Ok(s1.compare(&s2).is_equivalent()
        && r1.compare(&r2).is_equivalent()
        && (&s1 * &r1) == (&s2 * &r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pres(prefix: &[&[u64]], period: &[&[u64]]) -> Presentation {
        Presentation::from_u64s(prefix, period)
    }

    fn sn(s: &Supernatural) -> String {
        s.to_string()
    }

    fn nt(v: &[u64]) -> NormTuple {
        NormTuple::from_ints(v)
    }

    #[test]
    fn level_tuples() {
        let p = pres(&[&[3]], &[&[1, 1], &[2]]);
        let lv: Vec<String> = (1..=5).map(|n| p.level_tuple(n).unwrap().to_string()).collect();
        assert_eq!(lv, ["(3)", "(1,1)", "(2)", "(1,1)", "(2)"]);
        assert!(p.level_tuple(0).is_err());
        assert_eq!(pres(&[], &[&[1, 2], &[1, 3]]).telescope().period()[0].to_string(), "(1,2,3,6)");
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(sn(&envelope_supernatural(&pres(&[], &[&[2]]))), "2^∞");
        assert_eq!(sn(&envelope_supernatural(&pres(&[], &[&[1, 1]]))), "2^∞");
        assert_eq!(sn(&envelope_supernatural(&pres(&[&[3]], &[&[1, 1]]))), "2^∞·3");
    }

    #[test]
    fn first_summand_examples() {
        assert_eq!(sn(&first_summand_supernatural(&pres(&[], &[&[2]]))), "2^∞");
        assert!(first_summand_supernatural(&pres(&[], &[&[1, 1]])).is_one());
        assert_eq!(sn(&first_summand_supernatural(&pres(&[], &[&[2, 1], &[1, 3]]))), "2^∞");
    }

    #[test]
    fn geometric_character_examples() {
        let w = has_geometric_character(&pres(&[], &[&[1, 1]])).unwrap();
        assert!(w.root.is_one());
        assert!(has_geometric_character(&pres(&[], &[&[2]])).is_some());
        assert!(has_geometric_character(&pres(&[], &[&[1, 2], &[1, 3]])).is_none());
        assert!(has_geometric_character(&pres(&[], &[&[1, 2]])).is_none());
        assert!(has_geometric_character(&pres(&[&[1, 2]], &[&[3, 3]])).is_some());
    }

    #[test]
    fn invariant_examples() {
        let alt = invariants(&pres(&[], &[&[1, 1], &[2]])).unwrap();
        assert_eq!(sn(&alt.envelope), "2^∞");
        assert_eq!(sn(&alt.first_summand), "2^∞");
        match alt.mode {
            Mode::Geometric { lengths, root } => {
                assert_eq!(sn(&lengths), "2^∞");
                assert!(root.is_one());
            }
            m => panic!("expected geometric, got {m:?}"),
        }

        let one = invariants(&pres(&[], &[&[1, 2]])).unwrap();
        assert_eq!(
            one.mode,
            Mode::NonGeometric {
                prefix_factors: vec![],
                cycle_factors: vec![nt(&[1, 2])]
            }
        );

        let two = invariants(&pres(&[], &[&[1, 2], &[1, 4]])).unwrap();
        assert!(matches!(two.mode, Mode::NonGeometric { .. }));

        let refinement = invariants(&pres(&[], &[&[2]])).unwrap();
        match refinement.mode {
            Mode::Geometric { lengths, root } => {
                assert!(lengths.is_one());
                assert!(root.is_one());
            }
            m => panic!("expected geometric, got {m:?}"),
        }
    }

    #[test]
    fn geometric_run_across_periods() {
        // (1,4) after (1,2) is (1,2,4,8), geometric; (1,2) after (1,4) is
        // (1,4,2,8), which is where the cycle is cut.
        let inv = invariants(&pres(&[], &[&[1, 2], &[1, 4]])).unwrap();
        let Mode::NonGeometric { cycle_factors, .. } = inv.mode else {
            panic!("expected non-geometric")
        };
        assert_eq!(cycle_factors, vec![nt(&[1, 2]), nt(&[1, 4])]);
    }

    #[test]
    fn iso_examples() {
        assert!(isomorphic(&pres(&[], &[&[2]]), &pres(&[], &[&[4]])).unwrap().verdict);
        let r = isomorphic(&pres(&[], &[&[2]]), &pres(&[], &[&[1, 1]])).unwrap();
        assert!(!r.verdict);
        assert!(r.mismatches().any(|c| c.name == "first_summand"));
        assert!(
            isomorphic(&pres(&[], &[&[1, 1], &[2]]), &pres(&[], &[&[2], &[1, 1]]))
                .unwrap()
                .verdict
        );
        let r = isomorphic(&pres(&[], &[&[1, 2]]), &pres(&[], &[&[1, 3]])).unwrap();
        assert!(!r.verdict);
        assert!(r.mismatches().any(|c| c.name == "factor_cycle"));
    }

    #[test]
    fn alternation_examples() {
        let (s, r) = alternation_invariants(&pres(&[], &[&[1, 1]])).unwrap();
        assert_eq!((sn(&s), sn(&r)), ("2^∞".to_string(), "1".to_string()));
        let (s, r) = alternation_invariants(&pres(&[], &[&[2, 2], &[3, 3, 3]])).unwrap();
        assert_eq!((sn(&s), sn(&r)), ("2^∞·3^∞".to_string(), "2^∞·3^∞".to_string()));
        assert!(matches!(
            alternation_invariants(&pres(&[], &[&[1, 2]])),
            Err(Error::NotAlternation(_))
        ));
    }

    #[test]
    fn cycle_helpers() {
        let a = nt(&[1, 2]);
        let b = nt(&[1, 3]);
        let c = vec![a.clone(), b.clone(), a.clone(), b.clone()];
        assert_eq!(primitive_root(&c), &[a.clone(), b.clone()]);
        assert!(rotation_equal(&[a.clone(), b.clone()], &[b.clone(), a.clone()]));
        assert!(!rotation_equal(&[a.clone(), b.clone()], &[a.clone(), a.clone()]));
        assert_eq!(min_rotation(&[b.clone(), a.clone()]), min_rotation(&[a, b]));
    }

    fn arb_int_tuple() -> impl Strategy<Value = IntTuple> {
        proptest::collection::vec(1u64..=3, 1..=3).prop_map(|v| IntTuple::from_u64s(&v).unwrap())
    }

    fn arb_pres() -> impl Strategy<Value = Presentation> {
        (
            proptest::collection::vec(arb_int_tuple(), 0..=2),
            proptest::collection::vec(arb_int_tuple(), 1..=2),
        )
            .prop_map(|(prefix, period)| Presentation::new(prefix, period).unwrap())
    }

    /// Factor list of the composite of `reps` periods, innermost first.
    fn composed_factors(p: &Presentation, reps: usize) -> Vec<NormTuple> {
        let mut tuples = Vec::new();
        for _ in 0..reps {
            tuples.extend(p.period().iter().cloned());
        }
        let mut it = tuples.into_iter();
        let first = it.next().unwrap();
        let t = it.fold(first, |inner, outer| IntTuple::compose(&outer, &inner));
        app_factors(&t)
    }

    fn contains_run(hay: &[NormTuple], needle: &[NormTuple]) -> bool {
        needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
    }

    proptest! {
        #[test]
        fn telescope_invariance(p in arb_pres()) {
            let t = p.telescope();
            let a = invariants(&p).unwrap();
            let b = invariants(&t).unwrap();
            prop_assert_eq!(&a.envelope, &b.envelope);
            prop_assert_eq!(&a.first_summand, &b.first_summand);
            match (&a.mode, &b.mode) {
                (Mode::Geometric { root: r1, .. }, Mode::Geometric { root: r2, .. }) => {
                    prop_assert_eq!(r1, r2);
                }
                (Mode::NonGeometric { cycle_factors: c1, .. }, Mode::NonGeometric { cycle_factors: c2, .. }) => {
                    prop_assert_eq!(c1, c2);
                }
                _ => prop_assert!(false, "mode changed under telescoping"),
            }
            prop_assert!(isomorphic(&p, &t).unwrap().verdict);
            prop_assert_eq!(has_geometric_character(&p).is_some(), has_geometric_character(&t).is_some());
        }

        #[test]
        fn prefix_invariance(p in arb_pres(), q in arb_pres(), extra in proptest::collection::vec(arb_int_tuple(), 1..=2)) {
            let base = isomorphic(&p, &q).unwrap().verdict;
            let padded = isomorphic(&p.padded(&extra), &q.padded(&extra)).unwrap().verdict;
            prop_assert_eq!(base, padded);
            let a = invariants(&p).unwrap();
            let b = invariants(&p.padded(&extra)).unwrap();
            prop_assert_eq!(a.envelope.infinite_primes(), b.envelope.infinite_primes());
            prop_assert!(a.first_summand.compare(&b.first_summand).is_equivalent());
        }

        #[test]
        fn cycle_matches_full_composition(p in arb_pres()) {
            if let Mode::NonGeometric { cycle_factors, .. } = invariants(&p).unwrap().mode {
                let full = composed_factors(&p, 3);
                let n = cycle_factors.len();
                let found = (0..n).any(|s| {
                    let rot: Vec<NormTuple> = cycle_factors[s..].iter().chain(&cycle_factors[..s]).cloned().collect();
                    let twice: Vec<NormTuple> = rot.iter().chain(&rot).cloned().collect();
                    contains_run(&full, &twice)
                });
                prop_assert!(found, "cycle {:?} not repeated in {:?}", cycle_factors, full);
            }
        }

        #[test]
        fn period_rotation_is_isomorphic(a in arb_int_tuple(), b in arb_int_tuple()) {
            let p = Presentation::new(vec![], vec![a.clone(), b.clone()]).unwrap();
            let q = Presentation::new(vec![], vec![b, a]).unwrap();
            prop_assert!(isomorphic(&p, &q).unwrap().verdict);
        }

        #[test]
        fn alternation_decisions_agree(
            p in proptest::collection::vec((1u64..=3, 1usize..=3), 1..=2),
            q in proptest::collection::vec((1u64..=3, 1usize..=3), 1..=2),
        ) {
            let mk = |v: &[(u64, usize)]| {
                Presentation::new(vec![], v.iter().map(|&(e, l)| IntTuple::from_u64s(&vec![e; l]).unwrap()).collect()).unwrap()
            };
            let (p, q) = (mk(&p), mk(&q));
            prop_assert_eq!(isomorphic(&p, &q).unwrap().verdict, alternation_isomorphic(&p, &q).unwrap());
        }
    }
}
