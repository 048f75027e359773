//! Ordered diagrams with multiplicity (one step of an ordered Bratteli
//! diagram), their contraction, order equivalence and a finite-horizon
//! check of the intertwining equations.
//!
//! Vertices are 1-based. Edges are identified by their position in
//! `edges` (0-based), and `fiber_order[w-1]` lists the edges into vertex `w`
//! from first to last.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub mult: BigUint,
}

impl Edge {
    pub fn new(src: usize, dst: usize, mult: impl Into<BigUint>) -> Self {
        Edge {
            src,
            dst,
            mult: mult.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedDiagram {
    pub src_count: usize,
    pub dst_count: usize,
    pub edges: Vec<Edge>,
    pub fiber_order: Vec<Vec<usize>>,
}

impl OrderedDiagram {
    /// Builds and validates.
    pub fn new(
        src_count: usize,
        dst_count: usize,
        edges: Vec<Edge>,
        fiber_order: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let d = OrderedDiagram {
            src_count,
            dst_count,
            edges,
            fiber_order,
        };
        d.check()?;
        Ok(d)
    }

    /// Builds with the fiber orders given by edge position.
    pub fn with_edge_order(src_count: usize, dst_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut fiber_order = vec![Vec::new(); dst_count];
        for (idx, e) in edges.iter().enumerate() {
            if e.dst >= 1 && e.dst <= dst_count {
                fiber_order[e.dst - 1].push(idx);
            }
        }
        Self::new(src_count, dst_count, edges, fiber_order)
    }

    /// One edge `v → v` of multiplicity 1 per vertex.
    pub fn identity(count: usize) -> Self {
        OrderedDiagram {
            src_count: count,
            dst_count: count,
            edges: (1..=count).map(|v| Edge::new(v, v, 1u32)).collect(),
            fiber_order: (0..count).map(|v| vec![v]).collect(),
        }
    }

    /// The single-vertex diagram of a multiplicity tuple.
    pub fn from_tuple(mults: &[BigUint]) -> Result<Self> {
        let edges = mults.iter().map(|m| Edge::new(1, 1, m.clone())).collect();
        Self::with_edge_order(1, 1, edges)
    }

    /// Multiplicities of a single-vertex diagram in fiber order.
    pub fn as_tuple(&self) -> Option<Vec<BigUint>> {
        if self.src_count != 1 || self.dst_count != 1 {
            return None;
        }
        Some(
            self.fiber_order[0]
                .iter()
                .map(|&e| self.edges[e].mult.clone())
                .collect(),
        )
    }

    /// Every violated structural condition, in a fixed order.
    pub fn validate(&self) -> Vec<String> {
        let mut diag = Vec::new();
        if self.src_count == 0 {
            diag.push("src_count must be positive".to_string());
        }
        if self.dst_count == 0 {
            diag.push("dst_count must be positive".to_string());
        }
        for (idx, e) in self.edges.iter().enumerate() {
            if e.src == 0 || e.src > self.src_count {
                diag.push(format!("edge {idx}: src {} out of range", e.src));
            }
            if e.dst == 0 || e.dst > self.dst_count {
                diag.push(format!("edge {idx}: dst {} out of range", e.dst));
            }
            if e.mult.is_zero() {
                diag.push(format!("edge {idx}: multiplicity must be positive"));
            }
        }
        if self.fiber_order.len() != self.dst_count {
            diag.push(format!(
                "fiber_order has {} entries for {} targets",
                self.fiber_order.len(),
                self.dst_count
            ));
            return diag;
        }
        let mut placed = vec![0usize; self.edges.len()];
        for (w, fiber) in self.fiber_order.iter().enumerate() {
            for &idx in fiber {
                match self.edges.get(idx) {
                    None => diag.push(format!("fiber {}: unknown edge {idx}", w + 1)),
                    Some(e) if e.dst != w + 1 => diag.push(format!(
                        "fiber {}: edge {idx} ends at {}",
                        w + 1,
                        e.dst
                    )),
                    Some(_) => placed[idx] += 1,
                }
            }
            if fiber.is_empty() {
                diag.push(format!("target {} has no incoming edge", w + 1));
            }
        }
        for (idx, &count) in placed.iter().enumerate() {
            let e = &self.edges[idx];
            let in_range = e.dst >= 1 && e.dst <= self.dst_count;
            if in_range && count != 1 {
                diag.push(format!("edge {idx} appears {count} times in its fiber order"));
            }
        }
        diag
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn check(&self) -> Result<()> {
        let diag = self.validate();
        if diag.is_empty() {
            Ok(())
        } else {
            Err(Error::invalid(format!("ordered diagram: {}", diag.join("; "))))
        }
    }

    /// `n_w = Σ_{r(e)=w} m_{s(e)} f(e)`.
    pub fn target_dimensions(&self, src_dims: &[BigUint]) -> Result<Vec<BigUint>> {
        if src_dims.len() != self.src_count {
            return Err(Error::DimensionMismatch(format!(
                "{} source dimensions for {} sources",
                src_dims.len(),
                self.src_count
            )));
        }
        let mut out = vec![BigUint::zero(); self.dst_count];
        for e in &self.edges {
            out[e.dst - 1] += &src_dims[e.src - 1] * &e.mult;
        }
        Ok(out)
    }

    /// For each target, the `(source, multiplicity)` summands in order. This
    /// is the complete description of the associated embedding.
    pub fn embedding_blocks(&self) -> Result<Vec<Vec<(usize, BigUint)>>> {
        self.check()?;
        Ok(self
            .fiber_order
            .iter()
            .map(|fiber| {
                fiber
                    .iter()
                    .map(|&idx| (self.edges[idx].src, self.edges[idx].mult.clone()))
                    .collect()
            })
            .collect())
    }
}

impl fmt::Display for OrderedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}:", self.src_count, self.dst_count)?;
        for (w, fiber) in self.fiber_order.iter().enumerate() {
            let parts: Vec<String> = fiber
                .iter()
                .map(|&i| format!("{}×{}", self.edges[i].src, self.edges[i].mult))
                .collect();
            write!(f, " [{}: {}]", w + 1, parts.join(", "))?;
        }
        Ok(())
    }
}

/// The composite diagram, `first` applied first. Edges `(e1, e2)` into a
/// target are ordered by `e2`, then by `e1`.
pub fn contract(first: &OrderedDiagram, second: &OrderedDiagram) -> Result<OrderedDiagram> {
    first.check()?;
    second.check()?;
    if first.dst_count != second.src_count {
        return Err(Error::DimensionMismatch(format!(
            "first diagram has {} targets, second has {} sources",
            first.dst_count, second.src_count
        )));
    }
    let mut edges = Vec::new();
    let mut fiber_order = Vec::with_capacity(second.dst_count);
    for fiber2 in &second.fiber_order {
        let mut fiber = Vec::new();
        for &i2 in fiber2 {
            let e2 = &second.edges[i2];
            for &i1 in &first.fiber_order[e2.src - 1] {
                let e1 = &first.edges[i1];
                fiber.push(edges.len());
                edges.push(Edge {
                    src: e1.src,
                    dst: e2.dst,
                    mult: &e1.mult * &e2.mult,
                });
            }
        }
        fiber_order.push(fiber);
    }
    Ok(OrderedDiagram {
        src_count: first.src_count,
        dst_count: second.dst_count,
        edges,
        fiber_order,
    })
}

/// Contracts a chain applied left to right. An empty chain is an error
/// since the vertex count would be unknown.
pub fn contract_all(chain: &[OrderedDiagram]) -> Result<OrderedDiagram> {
    let (head, rest) = chain
        .split_first()
        .ok_or_else(|| Error::invalid("cannot contract an empty chain"))?;
    rest.iter().try_fold(head.clone(), |acc, d| contract(&acc, d))
}

/// Order equivalence: equal vertex counts and identical per-target
/// sequences of `(source, multiplicity)`. Fiber orders are total, so this
/// comparison is exact.
pub fn order_equivalent(d1: &OrderedDiagram, d2: &OrderedDiagram) -> bool {
    if d1.src_count != d2.src_count || d1.dst_count != d2.dst_count {
        return false;
    }
    match (d1.embedding_blocks(), d2.embedding_blocks()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// Outcome of checking the intertwining equations up to a finite level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntertwiningReport {
    pub horizon: usize,
    pub holds: bool,
    pub failures: Vec<String>,
}

impl fmt::Display for IntertwiningReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "intertwining equations hold, verified to level {}", self.horizon)
        } else {
            write!(
                f,
                "intertwining equations fail within level {}: {}",
                self.horizon,
                self.failures.join("; ")
            )
        }
    }
}

/// Data for one intertwining check. Everything is 1-based in the
/// mathematical sense: `chain_a[n-1]` is the step into level `n` of the first
/// diagram, `e_prime[n-1]` maps level `n` of the first diagram to level
/// `f(n)` of the second, `f_prime[n-1]` maps level `n` of the second to level
/// `g(n)` of the first, and `f_map[n-1] = f(n)`, `g_map[n-1] = g(n)`.
#[derive(Debug, Clone)]
pub struct Intertwining<'a> {
    pub chain_a: &'a [OrderedDiagram],
    pub chain_b: &'a [OrderedDiagram],
    pub e_prime: &'a [OrderedDiagram],
    pub f_prime: &'a [OrderedDiagram],
    pub f_map: &'a [usize],
    pub g_map: &'a [usize],
}

fn lookup<'a, T>(v: &'a [T], n: usize, what: &str) -> Result<&'a T> {
    n.checked_sub(1)
        .and_then(|i| v.get(i))
        .ok_or_else(|| Error::OutOfRange(format!("{what} needed at index {n}, have {}", v.len())))
}

/// `later ∘ … ∘ earlier` over the steps `from+1 ..= to`, or the identity on
/// level `from` when the range is empty.
fn chain_segment(chain: &[OrderedDiagram], from: usize, to: usize, what: &str) -> Result<OrderedDiagram> {
    if to == from {
        let count = if from == 0 {
            lookup(chain, 1, what)?.src_count
        } else {
            lookup(chain, from, what)?.dst_count
        };
        return Ok(OrderedDiagram::identity(count));
    }
    if to > chain.len() {
        return Err(Error::OutOfRange(format!(
            "{what} needed up to step {to}, have {}",
            chain.len()
        )));
    }
    contract_all(&chain[from..to])
}

fn check_increasing(map: &[usize], what: &str) -> Result<()> {
    if map.first() == Some(&0) || map.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(format!(
            "{what} must be strictly increasing with positive values"
        )));
    }
    Ok(())
}

/// Checks both intertwining equations for every level `n ≤ horizon`.
pub fn verify_intertwining(data: &Intertwining<'_>, horizon: usize) -> Result<IntertwiningReport> {
    check_increasing(data.f_map, "f")?;
    check_increasing(data.g_map, "g")?;
    let mut failures = Vec::new();
    for n in 1..=horizon {
        let fn_ = *lookup(data.f_map, n, "f")?;
        let gfn = *lookup(data.g_map, fn_, "g")?;
        if gfn < n {
            return Err(Error::invalid(format!("g(f({n})) = {gfn} is below {n}")));
        }
        let lhs = contract(
            lookup(data.e_prime, n, "E'")?,
            lookup(data.f_prime, fn_, "F'")?,
        )?;
        let rhs = chain_segment(data.chain_a, n, gfn, "first chain")?;
        if !order_equivalent(&lhs, &rhs) {
            failures.push(format!("level {n}: F'_{fn_} ∘ E'_{n} differs from steps {}..={gfn} of the first chain", n + 1));
        }

        let gn = *lookup(data.g_map, n, "g")?;
        let fgn = *lookup(data.f_map, gn, "f")?;
        if fgn < n {
            return Err(Error::invalid(format!("f(g({n})) = {fgn} is below {n}")));
        }
        let lhs = contract(
            lookup(data.f_prime, n, "F'")?,
            lookup(data.e_prime, gn, "E'")?,
        )?;
        let rhs = chain_segment(data.chain_b, n, fgn, "second chain")?;
        if !order_equivalent(&lhs, &rhs) {
            failures.push(format!("level {n}: E'_{gn} ∘ F'_{n} differs from steps {}..={fgn} of the second chain", n + 1));
        }
    }
    Ok(IntertwiningReport {
        horizon,
        holds: failures.is_empty(),
        failures,
    })
}

/// Builds the intertwining data relating `chain` to its pairwise
/// telescoping `F_n = E_{2n} ∘ E_{2n-1}`: `f(n) = n`, `g(n) = 2n`,
/// `E'_n = E_{2n} ∘ … ∘ E_{n+1}` and `F'_n` the identity. Needs
/// `4·horizon` steps.
pub fn telescoping_witness(chain: &[OrderedDiagram], horizon: usize) -> Result<TelescopeData> {
    if chain.len() < 4 * horizon {
        return Err(Error::OutOfRange(format!(
            "telescoping to level {horizon} needs {} steps, have {}",
            4 * horizon,
            chain.len()
        )));
    }
    let half = chain.len() / 2;
    let chain_b = (1..=half)
        .map(|n| contract(&chain[2 * n - 2], &chain[2 * n - 1]))
        .collect::<Result<Vec<_>>>()?;
    let levels = 2 * horizon;
    let e_prime = (1..=levels)
        .map(|n| chain_segment(chain, n, 2 * n, "chain"))
        .collect::<Result<Vec<_>>>()?;
    let f_prime = (1..=levels)
        .map(|n| OrderedDiagram::identity(chain[2 * n - 1].dst_count))
        .collect();
    Ok(TelescopeData {
        chain_b,
        e_prime,
        f_prime,
        f_map: (1..=levels).collect(),
        g_map: (1..=levels).map(|n| 2 * n).collect(),
    })
}

/// Owned intertwining data produced by [`telescoping_witness`].
#[derive(Debug, Clone)]
pub struct TelescopeData {
    pub chain_b: Vec<OrderedDiagram>,
    pub e_prime: Vec<OrderedDiagram>,
    pub f_prime: Vec<OrderedDiagram>,
    pub f_map: Vec<usize>,
    pub g_map: Vec<usize>,
}

impl TelescopeData {
    pub fn view<'a>(&'a self, chain_a: &'a [OrderedDiagram]) -> Intertwining<'a> {
        Intertwining {
            chain_a,
            chain_b: &self.chain_b,
            e_prime: &self.e_prime,
            f_prime: &self.f_prime,
            f_map: &self.f_map,
            g_map: &self.g_map,
        }
    }
}

/// Copy with one edge's multiplicity increased by one.
pub fn bump_multiplicity(d: &OrderedDiagram, edge: usize) -> OrderedDiagram {
    let mut out = d.clone();
    if let Some(e) = out.edges.get_mut(edge) {
        e.mult += BigUint::one();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::IntTuple;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn tuple_diagram(v: &[u64]) -> OrderedDiagram {
        OrderedDiagram::from_tuple(&v.iter().map(|&x| big(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(OrderedDiagram::identity(3).is_valid());
        let d = OrderedDiagram {
            src_count: 1,
            dst_count: 2,
            edges: vec![Edge::new(1, 1, 1u32)],
            fiber_order: vec![vec![0], vec![]],
        };
        let diag = d.validate();
        assert_eq!(diag, vec!["target 2 has no incoming edge".to_string()]);
        let bad = OrderedDiagram {
            src_count: 1,
            dst_count: 1,
            edges: vec![Edge::new(2, 1, 0u32)],
            fiber_order: vec![vec![0, 0]],
        };
        assert_eq!(bad.validate().len(), 3);
    }

    #[test]
    fn target_dimensions_examples() {
        let id = OrderedDiagram::identity(2);
        assert_eq!(id.target_dimensions(&[big(2), big(3)]).unwrap(), vec![big(2), big(3)]);
        let t = tuple_diagram(&[2, 1, 3]);
        assert_eq!(t.target_dimensions(&[big(5)]).unwrap(), vec![big(30)]);
        let two = OrderedDiagram::with_edge_order(
            2,
            1,
            vec![Edge::new(1, 1, 2u32), Edge::new(2, 1, 1u32)],
        )
        .unwrap();
        assert_eq!(two.target_dimensions(&[big(1), big(2)]).unwrap(), vec![big(4)]);
        assert!(two.target_dimensions(&[big(1)]).is_err());
        assert_eq!(
            two.embedding_blocks().unwrap(),
            vec![vec![(1, big(2)), (2, big(1))]]
        );
    }

    #[test]
    fn blocks_examples() {
        assert_eq!(
            tuple_diagram(&[2, 1]).embedding_blocks().unwrap(),
            vec![vec![(1, big(2)), (1, big(1))]]
        );
        assert_eq!(
            OrderedDiagram::identity(2).embedding_blocks().unwrap(),
            vec![vec![(1, big(1))], vec![(2, big(1))]]
        );
    }

    #[test]
    fn contract_identity_and_tuples() {
        let d = OrderedDiagram::with_edge_order(
            2,
            2,
            vec![
                Edge::new(1, 1, 2u32),
                Edge::new(2, 1, 1u32),
                Edge::new(1, 2, 3u32),
            ],
        )
        .unwrap();
        assert!(order_equivalent(&contract(&OrderedDiagram::identity(2), &d).unwrap(), &d));
        assert!(order_equivalent(&contract(&d, &OrderedDiagram::identity(2)).unwrap(), &d));
        // (1,2) first, then (1,3): composite tuple (1,2,3,6).
        let c = contract(&tuple_diagram(&[1, 2]), &tuple_diagram(&[1, 3])).unwrap();
        assert_eq!(c.as_tuple().unwrap(), vec![big(1), big(2), big(3), big(6)]);
        assert!(contract(&d, &tuple_diagram(&[1])).is_err());
    }

    #[test]
    fn order_equivalence_examples() {
        let d = OrderedDiagram::with_edge_order(
            2,
            1,
            vec![Edge::new(1, 1, 2u32), Edge::new(2, 1, 1u32)],
        )
        .unwrap();
        assert!(order_equivalent(&d, &d));
        let mut swapped = d.clone();
        swapped.fiber_order[0].reverse();
        assert!(!order_equivalent(&d, &swapped));
        let relabeled = OrderedDiagram::new(
            2,
            1,
            vec![Edge::new(2, 1, 1u32), Edge::new(1, 1, 2u32)],
            vec![vec![1, 0]],
        )
        .unwrap();
        assert!(order_equivalent(&d, &relabeled));
    }

    #[test]
    fn intertwining_trivial_and_report_label() {
        let chain: Vec<_> = (0..6).map(|_| tuple_diagram(&[1, 2])).collect();
        let ids: Vec<_> = (0..6).map(|_| OrderedDiagram::identity(1)).collect();
        let maps: Vec<usize> = (1..=6).collect();
        let data = Intertwining {
            chain_a: &chain,
            chain_b: &chain,
            e_prime: &ids,
            f_prime: &ids,
            f_map: &maps,
            g_map: &maps,
        };
        let report = verify_intertwining(&data, 5).unwrap();
        assert!(report.holds);
        assert_eq!(
            report.to_string(),
            "intertwining equations hold, verified to level 5"
        );
        assert!(verify_intertwining(&data, 7).is_err());
    }

    pub(crate) fn arb_diagram(src: usize, dst: usize) -> impl Strategy<Value = OrderedDiagram> {
        arb_diagram_sized(src, dst, 3)
    }

    pub(crate) fn arb_diagram_sized(
        src: usize,
        dst: usize,
        fiber: usize,
    ) -> impl Strategy<Value = OrderedDiagram> {
        let edge = (1..=src, 1..=3u64);
        proptest::collection::vec(proptest::collection::vec(edge, 1..=fiber), dst)
            .prop_flat_map(|fibers| {
                let edges: Vec<Edge> = fibers
                    .iter()
                    .enumerate()
                    .flat_map(|(w, fiber)| fiber.iter().map(move |&(s, m)| Edge::new(s, w + 1, m)))
                    .collect();
                Just(edges).prop_shuffle()
            })
            .prop_map(move |edges| OrderedDiagram::with_edge_order(src, dst, edges).unwrap())
    }

    proptest! {
        #[test]
        fn contract_associative(
            (a, b, c) in (1usize..=4, 1usize..=4, 1usize..=4, 1usize..=4)
                .prop_flat_map(|(v0, v1, v2, v3)| (arb_diagram(v0, v1), arb_diagram(v1, v2), arb_diagram(v2, v3)))
        ) {
            let left = contract(&contract(&a, &b).unwrap(), &c).unwrap();
            let right = contract(&a, &contract(&b, &c).unwrap()).unwrap();
            prop_assert!(left.is_valid());
            prop_assert!(order_equivalent(&left, &right));
        }

        #[test]
        fn target_dimensions_compose(
            (a, b) in (1usize..=3, 1usize..=3, 1usize..=3)
                .prop_flat_map(|(v0, v1, v2)| (arb_diagram(v0, v1), arb_diagram(v1, v2))),
            seed in 1u64..10,
        ) {
            let dims: Vec<BigUint> = (0..a.src_count).map(|i| big(seed + i as u64)).collect();
            let direct = contract(&a, &b).unwrap().target_dimensions(&dims).unwrap();
            let stepped = b.target_dimensions(&a.target_dimensions(&dims).unwrap()).unwrap();
            prop_assert_eq!(direct, stepped);
        }

        #[test]
        fn single_summand_matches_tuple_compose(
            a in proptest::collection::vec(1u64..=5, 1..=4),
            b in proptest::collection::vec(1u64..=5, 1..=4),
        ) {
            let c = contract(&tuple_diagram(&a), &tuple_diagram(&b)).unwrap();
            let expect = IntTuple::compose(
                &IntTuple::from_u64s(&b).unwrap(),
                &IntTuple::from_u64s(&a).unwrap(),
            );
            prop_assert_eq!(c.as_tuple().unwrap(), expect.entries().to_vec());
        }

        #[test]
        fn order_equivalence_under_relabeling(d in arb_diagram(3, 2), seed in any::<u64>()) {
            let n = d.edges.len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut x = seed;
            for i in (1..n).rev() {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (x >> 33) as usize % (i + 1));
            }
            // edge i moves to position perm[i]
            let mut edges = d.edges.clone();
            for (i, e) in d.edges.iter().enumerate() {
                edges[perm[i]] = e.clone();
            }
            let fiber_order = d
                .fiber_order
                .iter()
                .map(|f| f.iter().map(|&i| perm[i]).collect())
                .collect();
            let r = OrderedDiagram::new(d.src_count, d.dst_count, edges, fiber_order).unwrap();
            prop_assert!(order_equivalent(&d, &r));
            prop_assert!(order_equivalent(&r, &d));
        }
    }

    fn random_chain(len: usize) -> impl Strategy<Value = Vec<OrderedDiagram>> {
        proptest::collection::vec(1usize..=2, len + 1).prop_flat_map(|counts| {
            counts
                .windows(2)
                .map(|w| arb_diagram_sized(w[0], w[1], 2).boxed())
                .collect::<Vec<_>>()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn telescoping_verified_and_mutation_rejected(chain in random_chain(20)) {
            let data = telescoping_witness(&chain, 5).unwrap();
            let report = verify_intertwining(&data.view(&chain), 5).unwrap();
            prop_assert!(report.holds, "{}", report);

            let mut bad = data.clone();
            bad.e_prime[0] = bump_multiplicity(&bad.e_prime[0], 0);
            let report = verify_intertwining(&bad.view(&chain), 5).unwrap();
            prop_assert!(!report.holds);
        }
    }
}
