//! Finite-level spectrum orders of order preserving systems, coherence
//! checks, orbit closures, gap points and a locally constant cocycle.
//!
//! Levels are 1-based. A prefix of length `m` is an element of
//! `X_m = [k_1]×…×[k_m]`. Points are eventually periodic: after the explicit
//! prefix the coordinate of level `n` is given by
//! `tail[(n - prefix.len() - 1) mod tail.len()]`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::classify::Presentation;
use crate::embed::{grid_order_from_tuple, GridOrder};
use crate::error::{Error, Result};
use crate::par;

/// Default cap on `|X_m|` for materialized orders.
pub const DEFAULT_LIMIT: usize = 10_000;

/// Level data of a presentation: tuples, `k_n` and F-set boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemLevels {
    presentation: Presentation,
    prefix: Vec<Vec<usize>>,
    period: Vec<Vec<usize>>,
}

fn small_tuple(t: &crate::tuples::IntTuple) -> Result<Vec<usize>> {
    t.to_usizes()
        .filter(|v| v.iter().try_fold(0usize, |a, &b| a.checked_add(b)).is_some())
        .ok_or_else(|| Error::invalid(format!("tuple {t} is too large for spectrum levels")))
}

impl SystemLevels {
    pub fn new(presentation: Presentation) -> Result<Self> {
        let prefix = presentation.prefix().iter().map(small_tuple).collect::<Result<_>>()?;
        let period = presentation.period().iter().map(small_tuple).collect::<Result<_>>()?;
        Ok(SystemLevels {
            presentation,
            prefix,
            period,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// `r^{(n)}`.
    pub fn tuple(&self, n: usize) -> &[usize] {
        assert!(n >= 1, "levels start at 1");
        if n <= self.prefix.len() {
            &self.prefix[n - 1]
        } else {
            &self.period[(n - 1 - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn k(&self, n: usize) -> usize {
        self.tuple(n).iter().sum()
    }

    /// Number of F-sets at level `n`.
    pub fn t(&self, n: usize) -> usize {
        self.tuple(n).len()
    }

    fn f_bounds(&self, n: usize, s: usize) -> Result<(usize, usize)> {
        let r = self.tuple(n);
        if s == 0 || s > r.len() {
            return Err(Error::OutOfRange(format!(
                "F-set {s} at level {n}, which has {}",
                r.len()
            )));
        }
        let start: usize = r[..s - 1].iter().sum();
        Ok((start + 1, start + r[s - 1]))
    }

    pub fn min_f(&self, n: usize, s: usize) -> Result<usize> {
        Ok(self.f_bounds(n, s)?.0)
    }

    pub fn max_f(&self, n: usize, s: usize) -> Result<usize> {
        Ok(self.f_bounds(n, s)?.1)
    }

    /// The index `s` with `x ∈ F^{(n)}_s`.
    pub fn i_n(&self, n: usize, x: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::OutOfRange("levels start at 1".into()));
        }
        let mut end = 0;
        for (s, &len) in self.tuple(n).iter().enumerate() {
            end += len;
            if x >= 1 && x <= end {
                return Ok(s + 1);
            }
        }
        Err(Error::OutOfRange(format!(
            "coordinate {x} at level {n}, where k = {end}"
        )))
    }

    /// `|X_m|`, or `None` on overflow.
    pub fn size(&self, m: usize) -> Option<usize> {
        (1..=m).try_fold(1usize, |acc, n| acc.checked_mul(self.k(n)))
    }

    /// The total order `≼_m`: highest level with differing F-sets decides,
    /// otherwise the lowest differing coordinate.
    pub fn compare_prefix(&self, x: &[usize], y: &[usize]) -> Result<Ordering> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch(format!(
                "prefixes of lengths {} and {}",
                x.len(),
                y.len()
            )));
        }
        let mut ix = Vec::with_capacity(x.len());
        let mut iy = Vec::with_capacity(x.len());
        for (q, (&a, &b)) in x.iter().zip(y).enumerate() {
            ix.push(self.i_n(q + 1, a)?);
            iy.push(self.i_n(q + 1, b)?);
        }
        if let Some(q) = (0..x.len()).rev().find(|&q| ix[q] != iy[q]) {
            return Ok(ix[q].cmp(&iy[q]));
        }
        Ok(x.cmp(y))
    }

    fn compare_unchecked(&self, x: &[usize], y: &[usize]) -> Ordering {
        self.compare_prefix(x, y).expect("prefixes in range")
    }

    /// Every element of `X_m`, sorted by `≼_m`.
    pub fn materialize_order(&self, m: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
        let size = self.checked_size(m, limit)?;
        let mut all = Vec::with_capacity(size);
        let mut cur = vec![1usize; m];
        for _ in 0..size {
            all.push(cur.clone());
            for q in 0..m {
                if cur[q] < self.k(q + 1) {
                    cur[q] += 1;
                    break;
                }
                cur[q] = 1;
            }
        }
        par::sort_by(&mut all, |a, b| self.compare_unchecked(a, b));
        Ok(all)
    }

    fn checked_size(&self, m: usize, limit: usize) -> Result<usize> {
        if m == 0 {
            return Err(Error::OutOfRange("levels start at 1".into()));
        }
        match self.size(m) {
            Some(s) if s <= limit => Ok(s),
            other => Err(Error::LimitExceeded {
                what: format!("order on X_{m}"),
                needed: other.map_or(u128::MAX, |s| s as u128),
                limit,
            }),
        }
    }

    /// The same chains built level by level from the grid orders of the
    /// tuples, with `X_{m-1}` in its order standing in for `[|X_{m-1}|]`.
    pub fn orders_by_grids(&self, m: usize, limit: usize) -> Result<Vec<Vec<Vec<usize>>>> {
        self.checked_size(m, limit)?;
        let k1 = self.k(1);
        let grids = (2..=m)
            .map(|n| {
                let size = self.size(n - 1).expect("checked above");
                grid_order_from_tuple(size, self.tuple(n))
            })
            .collect::<Result<Vec<_>>>()?;
        orders_from_grids(k1, &grids)
    }

    /// Coordinate of a point at level `n`.
    pub fn coord(&self, x: &Point, n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::OutOfRange("levels start at 1".into()));
        }
        let v = if n <= x.prefix.len() {
            x.prefix[n - 1]
        } else {
            match x.tail[(n - 1 - x.prefix.len()) % x.tail.len()] {
                TailSelector::Index(v) => v,
                TailSelector::MinOfF(s) => self.min_f(n, s)?,
                TailSelector::MaxOfF(s) => self.max_f(n, s)?,
            }
        };
        self.i_n(n, v)?;
        Ok(v)
    }

    pub fn point_prefix(&self, x: &Point, n: usize) -> Result<Vec<usize>> {
        (1..=n).map(|q| self.coord(x, q)).collect()
    }

    /// Levels after which both the system and every given point repeat with
    /// a common period, and that period.
    fn horizon(&self, pts: &[&Point]) -> (usize, usize) {
        let start = pts
            .iter()
            .map(|p| p.prefix.len())
            .chain([self.prefix.len()])
            .max()
            .unwrap_or(0);
        let period = pts
            .iter()
            .fold(self.period.len(), |acc, p| acc.lcm(&p.tail.len()));
        (start, period)
    }

    /// Checks that every coordinate is in range.
    pub fn validate_point(&self, x: &Point) -> Result<()> {
        let (start, period) = self.horizon(&[x]);
        for n in 1..=start + period {
            self.coord(x, n)?;
        }
        Ok(())
    }

    /// Decides `R(A)` for points whose tails eventually agree.
    pub fn related_points(&self, x: &Point, y: &Point) -> Result<Relation> {
        self.validate_point(x)?;
        self.validate_point(y)?;
        let (start, period) = self.horizon(&[x, y]);
        for n in start + 1..=start + period {
            if self.coord(x, n)? != self.coord(y, n)? {
                return Ok(Relation::Unrelated);
            }
        }
        let (px, py) = (self.point_prefix(x, start)?, self.point_prefix(y, start)?);
        Ok(match self.compare_prefix(&px, &py)? {
            Ordering::Less => Relation::Forward,
            Ordering::Equal => Relation::Equal,
            Ordering::Greater => Relation::Backward,
        })
    }

    /// Orbit of `x` dense: `i_n(x_n) > 1` for infinitely many `n`.
    pub fn orbit_dense(&self, x: &Point) -> Result<bool> {
        self.validate_point(x)?;
        let (start, period) = self.horizon(&[x]);
        for n in start + 1..=start + period {
            if self.i_n(n, self.coord(x, n)?)? > 1 {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether `x` lies in the closure of the orbit of `y`.
    ///
    /// With `y` not dense, `x` is in the closure iff its prefixes are
    /// eventually `≼` those of `y`. Past the common horizon both points sit
    /// in the first F-sets, so one comparison at the horizon decides unless
    /// the prefixes are equal, in which case the first later difference
    /// does.
    pub fn closure_member(&self, x: &Point, y: &Point) -> Result<bool> {
        self.validate_point(x)?;
        if self.orbit_dense(y)? {
            return Ok(true);
        }
        if self.orbit_dense(x)? {
            return Ok(false);
        }
        let (start, period) = self.horizon(&[x, y]);
        let (px, py) = (self.point_prefix(x, start)?, self.point_prefix(y, start)?);
        match self.compare_prefix(&px, &py)? {
            Ordering::Less => return Ok(true),
            Ordering::Greater => return Ok(false),
            Ordering::Equal => {}
        }
        for n in start + 1..=start + period {
            let (a, b) = (self.coord(x, n)?, self.coord(y, n)?);
            if a != b {
                return Ok(a < b);
            }
        }
        Ok(true)
    }

    fn is_x_infinity(&self, x: &Point) -> Result<bool> {
        let (start, period) = self.horizon(&[x]);
        for n in 1..=start + period {
            if self.coord(x, n)? != self.k(n) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Gap iff eventually `x_n = max F^{(n)}_1`. The point `(k_n)` is
    /// reported separately.
    pub fn is_gap_point(&self, x: &Point) -> Result<GapStatus> {
        self.validate_point(x)?;
        if self.is_x_infinity(x)? {
            return Ok(GapStatus::ExceptionalXInfinity);
        }
        let (start, period) = self.horizon(&[x]);
        for n in start + 1..=start + period {
            if self.coord(x, n)? != self.max_f(n, 1)? {
                return Ok(GapStatus::NotGap);
            }
        }
        Ok(GapStatus::Gap)
    }

    fn is_max_of_own_f(&self, n: usize, v: usize) -> Result<bool> {
        Ok(v == self.max_f(n, self.i_n(n, v)?)?)
    }

    /// The right gap point paired with `x`, and the level from which the
    /// two prefixes are adjacent.
    pub fn gap_successor(&self, x: &Point) -> Result<GapSuccessor> {
        if self.is_gap_point(x)? != GapStatus::Gap {
            return Err(Error::Precondition(format!("{x:?} is not a gap point")));
        }
        let (start, period) = self.horizon(&[x]);
        let px = self.point_prefix(x, start)?;
        // Past `start`, x_n = max F_1, so every later coordinate is maximal
        // in its own F-set.
        let mut last_non_max = None;
        for n in 1..=start {
            if !self.is_max_of_own_f(n, px[n - 1])? {
                last_non_max = Some(n);
            }
        }
        let min_of_own = |n: usize, v: usize| -> Result<usize> { self.min_f(n, self.i_n(n, v)?) };

        if let Some(m) = last_non_max {
            let mut prefix = px[..m - 1].to_vec();
            prefix.push(px[m - 1] + 1);
            for n in m + 1..=start {
                prefix.push(min_of_own(n, px[n - 1])?);
            }
            return Ok(GapSuccessor {
                point: Point::new(prefix, vec![TailSelector::MinOfF(1)])?,
                split_level: m,
            });
        }

        let mut q = (1..=start).find(|&n| px[n - 1] != self.k(n));
        if q.is_none() {
            for n in start + 1..=start + period {
                if self.coord(x, n)? != self.k(n) {
                    q = Some(n);
                    break;
                }
            }
        }
        let q = q.ok_or_else(|| Error::invariant("gap point equal to (k_n)"))?;
        let mut prefix = vec![1; q - 1];
        prefix.push(self.coord(x, q)? + 1);
        for n in q + 1..=start.max(q) {
            prefix.push(min_of_own(n, self.coord(x, n)?)?);
        }
        Ok(GapSuccessor {
            point: Point::new(prefix, vec![TailSelector::MinOfF(1)])?,
            split_level: q,
        })
    }

    /// Checks at every level `split..=max_level` that the prefix of `y`
    /// immediately follows that of `x` in the materialized order.
    pub fn verify_immediate_successor(
        &self,
        x: &Point,
        succ: &GapSuccessor,
        max_level: usize,
        limit: usize,
    ) -> Result<bool> {
        for n in succ.split_level..=max_level {
            let order = self.materialize_order(n, limit)?;
            let px = self.point_prefix(x, n)?;
            let py = self.point_prefix(&succ.point, n)?;
            let pos = order.iter().position(|p| *p == px).expect("prefix in X_n");
            if order.get(pos + 1) != Some(&py) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailSelector {
    Index(usize),
    MinOfF(usize),
    MaxOfF(usize),
}

/// An eventually periodic point of `X = ∏ [k_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    prefix: Vec<usize>,
    tail: Vec<TailSelector>,
}

impl Point {
    pub fn new(prefix: Vec<usize>, tail: Vec<TailSelector>) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::invalid("point tail must be nonempty"));
        }
        Ok(Point { prefix, tail })
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn tail(&self) -> &[TailSelector] {
        &self.tail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `x ≺ y`.
    Forward,
    Backward,
    Equal,
    /// Tails differ, so the points are not related.
    Unrelated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GapStatus {
    Gap,
    NotGap,
    ExceptionalXInfinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSuccessor {
    pub point: Point,
    /// First level at which the prefixes differ.
    pub split_level: usize,
}

/// Chains on `X_1..X_m` from explicit grid orders: `grids[i]` has
/// `n = |X_{i+1}|` and `k = k_{i+2}`, with row `p` standing for the element in
/// position `p` of the previous chain.
pub fn orders_from_grids(k1: usize, grids: &[GridOrder]) -> Result<Vec<Vec<Vec<usize>>>> {
    if k1 == 0 {
        return Err(Error::invalid("k_1 must be positive"));
    }
    let mut levels: Vec<Vec<Vec<usize>>> = vec![(1..=k1).map(|v| vec![v]).collect()];
    for g in grids {
        let prev = levels.last().expect("nonempty");
        if g.n() != prev.len() {
            return Err(Error::DimensionMismatch(format!(
                "grid with n = {} after a level of size {}",
                g.n(),
                prev.len()
            )));
        }
        let next = g
            .cells_in_order()
            .into_iter()
            .map(|(i, l)| {
                let mut p = prev[i - 1].clone();
                p.push(l);
                p
            })
            .collect();
        levels.push(next);
    }
    Ok(levels)
}

/// Outcome of [`check_coherence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceReport {
    pub coherent: bool,
    /// `None` when not requested.
    pub hypercoherent: Option<bool>,
    pub failures: Vec<String>,
}

impl CoherenceReport {
    pub fn holds(&self) -> bool {
        self.coherent && self.hypercoherent.unwrap_or(true)
    }
}

fn positions(level: &[Vec<usize>]) -> HashMap<&[usize], usize> {
    level.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect()
}

/// Validates that `orders[m-1]` lists `X_m` and checks the coherence
/// properties between adjacent levels, plus hypercoherence on request.
pub fn check_coherence(orders: &[Vec<Vec<usize>>], hyper: bool) -> Result<CoherenceReport> {
    let mut ks = Vec::with_capacity(orders.len());
    for (idx, level) in orders.iter().enumerate() {
        let m = idx + 1;
        if level.iter().any(|p| p.len() != m || p.contains(&0)) {
            return Err(Error::invalid(format!("level {m}: entries must be {m} positive coordinates")));
        }
        let k = level.iter().map(|p| p[m - 1]).max().unwrap_or(0);
        ks.push(k);
        let expected = ks.iter().product::<usize>();
        let distinct = positions(level).len();
        let in_range = level.iter().all(|p| p.iter().zip(&ks).all(|(a, k)| a <= k));
        if level.len() != expected || distinct != expected || !in_range {
            return Err(Error::invalid(format!("level {m} is not a ranking of X_{m}")));
        }
    }

    let mut failures = Vec::new();
    let pos: Vec<HashMap<&[usize], usize>> = orders.iter().map(|l| positions(l)).collect();
    for m in 1..orders.len() {
        let next = &pos[m];
        let k = ks[m];
        // b) (x, i) before (x, j) for i < j.
        'b: for x in &orders[m - 1] {
            for j in 1..k {
                let a = next[[x.as_slice(), &[j]].concat().as_slice()];
                let b = next[[x.as_slice(), &[j + 1]].concat().as_slice()];
                if a > b {
                    failures.push(format!("level {}: {x:?} extended by {j} and {} out of order", m + 1, j + 1));
                    break 'b;
                }
            }
        }
        // c) the order of X_m is kept on each column j.
        'c: for j in 1..=k {
            for w in orders[m - 1].windows(2) {
                let a = next[[w[0].as_slice(), &[j]].concat().as_slice()];
                let b = next[[w[1].as_slice(), &[j]].concat().as_slice()];
                if a > b {
                    failures.push(format!("level {}: column {j} reverses {:?} and {:?}", m + 1, w[0], w[1]));
                    break 'c;
                }
            }
        }
    }
    let coherent = failures.is_empty();

    let hypercoherent = hyper.then(|| {
        let mut ok = true;
        for j in 2..=orders.len() {
            for i in 1..j {
                let mut reference: Option<(Vec<usize>, Vec<&[usize]>)> = None;
                let mut by_stem: HashMap<&[usize], Vec<&[usize]>> = HashMap::new();
                for p in &orders[j - 1] {
                    by_stem.entry(&p[..i]).or_default().push(&p[i..]);
                }
                let mut stems: Vec<_> = by_stem.into_iter().collect();
                stems.sort();
                for (stem, suffixes) in stems {
                    match &reference {
                        None => reference = Some((stem.to_vec(), suffixes)),
                        Some((s0, r)) if *r != suffixes => {
                            failures.push(format!(
                                "levels {i}..{j}: stems {s0:?} and {stem:?} order their extensions differently"
                            ));
                            ok = false;
                            break;
                        }
                        _ => {}
                    }
                }
            }
        }
        ok
    });

    Ok(CoherenceReport {
        coherent,
        hypercoherent,
        failures,
    })
}

/// Gap values of a cocycle level by level, with the chains they refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTable {
    /// `gaps[m-1][i]` is the value between the `i`-th and `(i+1)`-th
    /// elements of `≼_m`.
    pub gaps: Vec<Vec<BigRational>>,
    pub transition: BigRational,
    chains: Vec<Vec<Vec<usize>>>,
    /// Prefix sums of the gaps.
    potentials: Vec<Vec<BigRational>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

fn positive(q: &BigRational) -> bool {
    q.is_positive()
}

/// Builds the cocycle levels `1..=depth`. Inside an F-block a refinement step
/// gets `d/r_t`, where `d` is the least gap of the previous level, and a
/// step to the next element of the previous level gets the old gap minus
/// `(r_t - 1)/r_t · d`. Consecutive blocks are joined by `transition`. When
/// the previous level is a single point, `d` is taken to be `transition`.
pub fn build_cocycle(
    sys: &SystemLevels,
    depth: usize,
    c1_gaps: &[BigRational],
    transition: BigRational,
    limit: usize,
) -> Result<CocycleTable> {
    if depth == 0 {
        return Err(Error::OutOfRange("cocycle depth must be positive".into()));
    }
    if c1_gaps.len() + 1 != sys.k(1) {
        return Err(Error::DimensionMismatch(format!(
            "{} level-1 gaps for k_1 = {}",
            c1_gaps.len(),
            sys.k(1)
        )));
    }
    if !c1_gaps.iter().all(positive) || !positive(&transition) {
        return Err(Error::invalid("cocycle gaps and transition value must be positive"));
    }
    let mut gaps: Vec<Vec<BigRational>> = vec![c1_gaps.to_vec()];
    for m in 2..=depth {
        sys.checked_size(m, limit)?;
        let prev = &gaps[m - 2];
        let d = prev.iter().min().cloned().unwrap_or_else(|| transition.clone());
        let size_prev = prev.len() + 1;
        let r = sys.tuple(m);
        let mut level = Vec::new();
        for (t, &rt) in r.iter().enumerate() {
            let rt_q = BigRational::from_integer(BigInt::from(rt));
            let step = &d / &rt_q;
            let shave = &step * BigRational::from_integer(BigInt::from(rt - 1));
            for i in 0..size_prev {
                for _ in 1..rt {
                    level.push(step.clone());
                }
                if i + 1 < size_prev {
                    level.push(&prev[i] - &shave);
                }
            }
            if t + 1 < r.len() {
                level.push(transition.clone());
            }
        }
        gaps.push(level);
    }
    let chains = (1..=depth)
        .map(|m| sys.materialize_order(m, limit))
        .collect::<Result<Vec<_>>>()?;
    let potentials = gaps
        .iter()
        .map(|g| {
            let mut acc = BigRational::zero();
            let mut v = vec![acc.clone()];
            for x in g {
                acc += x;
                v.push(acc.clone());
            }
            v
        })
        .collect();
    let index = chains
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect())
        .collect();
    let table = CocycleTable {
        gaps,
        transition,
        chains,
        potentials,
        index,
    };
    table.verify()?;
    Ok(table)
}

impl CocycleTable {
    pub fn depth(&self) -> usize {
        self.gaps.len()
    }

    pub fn chain(&self, m: usize) -> Result<&[Vec<usize>]> {
        self.chains
            .get(m.wrapping_sub(1))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::OutOfRange(format!("level {m} beyond cocycle depth {}", self.depth())))
    }

    fn position(&self, m: usize, x: &[usize]) -> Result<usize> {
        self.chain(m)?;
        self.index[m - 1]
            .get(x)
            .copied()
            .ok_or_else(|| Error::OutOfRange(format!("{x:?} is not in X_{m}")))
    }

    /// `c_m(x, y)`: the signed sum of gaps from `x` to `y`.
    pub fn eval(&self, m: usize, x: &[usize], y: &[usize]) -> Result<BigRational> {
        let (a, b) = (self.position(m, x)?, self.position(m, y)?);
        Ok(&self.potentials[m - 1][b] - &self.potentials[m - 1][a])
    }

    /// Re-checks positivity, the chain lengths, and level consistency on
    /// consecutive pairs, which by telescoping gives it on all pairs.
    pub fn verify(&self) -> Result<()> {
        for (idx, g) in self.gaps.iter().enumerate() {
            if g.len() + 1 != self.chains[idx].len() {
                return Err(Error::invariant(format!("level {} has {} gaps", idx + 1, g.len())));
            }
            if !g.iter().all(positive) {
                return Err(Error::invariant(format!("level {} has a nonpositive gap", idx + 1)));
            }
        }
        for m in 1..self.depth() {
            let next_pos = positions(&self.chains[m]);
            let k = self.chains[m].len() / self.chains[m - 1].len();
            for j in 1..=k {
                for (i, w) in self.chains[m - 1].windows(2).enumerate() {
                    let a = next_pos[[w[0].as_slice(), &[j]].concat().as_slice()];
                    let b = next_pos[[w[1].as_slice(), &[j]].concat().as_slice()];
                    let lifted = &self.potentials[m][b] - &self.potentials[m][a];
                    if lifted != self.gaps[m - 1][i] {
                        return Err(Error::invariant(format!(
                            "level {} does not restrict to level {} on column {j}",
                            m + 1,
                            m
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `num/den` of a nonnegative value as unsigned parts.
pub fn unsigned_parts(q: &BigRational) -> Option<(BigUint, BigUint)> {
    Some((q.numer().to_biguint()?, q.denom().to_biguint()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{compose_grid, interleaved_triple_grid};
    use proptest::prelude::*;

    fn sys(prefix: &[&[u64]], period: &[&[u64]]) -> SystemLevels {
        SystemLevels::new(Presentation::from_u64s(prefix, period)).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pt(prefix: &[usize], tail: &[TailSelector]) -> Point {
        Point::new(prefix.to_vec(), tail.to_vec()).unwrap()
    }

    use TailSelector::{Index, MaxOfF, MinOfF};

    #[test]
    fn i_n_examples() {
        let s = sys(&[], &[&[2, 1]]);
        assert_eq!(s.i_n(1, 2).unwrap(), 1);
        assert_eq!(s.i_n(1, 3).unwrap(), 2);
        assert!(s.i_n(1, 4).is_err());
        let r = sys(&[], &[&[5]]);
        assert!((1..=5).all(|x| r.i_n(3, x).unwrap() == 1));
    }

    #[test]
    fn compare_examples() {
        let s = sys(&[], &[&[1, 1]]);
        assert_eq!(s.compare_prefix(&[1, 2], &[1, 2]).unwrap(), Ordering::Equal);
        assert_eq!(s.compare_prefix(&[2, 1], &[1, 2]).unwrap(), Ordering::Less);
        let r = sys(&[], &[&[2]]);
        assert_eq!(r.compare_prefix(&[1, 2], &[2, 1]).unwrap(), Ordering::Less);
        assert!(r.compare_prefix(&[1], &[1, 1]).is_err());
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(sys(&[], &[&[3]]).materialize_order(1, DEFAULT_LIMIT).unwrap(), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(
            sys(&[], &[&[1, 1]]).materialize_order(2, DEFAULT_LIMIT).unwrap(),
            vec![vec![1, 1], vec![2, 1], vec![1, 2], vec![2, 2]]
        );
        assert_eq!(
            sys(&[], &[&[2]]).materialize_order(2, DEFAULT_LIMIT).unwrap(),
            vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]
        );
        assert!(matches!(
            sys(&[], &[&[1, 1]]).materialize_order(20, DEFAULT_LIMIT),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn coherence_examples() {
        let s = sys(&[], &[&[2, 1], &[1, 2]]);
        let orders: Vec<_> = (1..=4).map(|m| s.materialize_order(m, DEFAULT_LIMIT).unwrap()).collect();
        let r = check_coherence(&orders, true).unwrap();
        assert!(r.holds(), "{:?}", r.failures);
        assert!(check_coherence(&orders[..1], true).unwrap().holds());

        let grids = [interleaved_triple_grid(1), interleaved_triple_grid(2)];
        let orders = orders_from_grids(3, &grids).unwrap();
        let r = check_coherence(&orders, true).unwrap();
        assert!(r.coherent);
        assert_eq!(r.hypercoherent, Some(false));
        // Consistent with the composed embedding failing the local condition.
        let composed = compose_grid(&grids[0], &grids[1]).unwrap();
        assert!(!crate::embed::satisfies_local_condition(&composed));

        let mut bad = orders.clone();
        bad[1].swap(0, 1);
        assert!(check_coherence(&bad, false).is_ok());
        bad[1].pop();
        assert!(check_coherence(&bad, false).is_err());
    }

    #[test]
    fn related_examples() {
        let r = sys(&[], &[&[2]]);
        let a = pt(&[1, 1], &[Index(1)]);
        let b = pt(&[2, 1], &[Index(1)]);
        assert_eq!(r.related_points(&a, &a).unwrap(), Relation::Equal);
        assert_eq!(r.related_points(&a, &b).unwrap(), Relation::Forward);
        assert_eq!(r.related_points(&b, &a).unwrap(), Relation::Backward);
        let c = pt(&[1, 1], &[Index(2)]);
        assert_eq!(r.related_points(&a, &c).unwrap(), Relation::Unrelated);
        // Same coordinates written differently.
        let d = pt(&[1], &[MinOfF(1)]);
        assert_eq!(r.related_points(&a, &d).unwrap(), Relation::Equal);
    }

    #[test]
    fn orbit_examples() {
        let s = sys(&[], &[&[1, 1, 1]]);
        assert!(s.orbit_dense(&pt(&[], &[MaxOfF(3)])).unwrap());
        assert!(!s.orbit_dense(&pt(&[], &[MaxOfF(1)])).unwrap());
        let r = sys(&[], &[&[3]]);
        assert!(!r.orbit_dense(&pt(&[2], &[MaxOfF(1)])).unwrap());
    }

    #[test]
    fn closure_examples() {
        let s = sys(&[], &[&[1, 2]]);
        let dense = pt(&[], &[MaxOfF(2)]);
        let x = pt(&[2], &[Index(1)]);
        assert!(s.closure_member(&x, &dense).unwrap());
        assert!(s.closure_member(&x, &x).unwrap());
        assert!(!s.closure_member(&dense, &x).unwrap());
    }

    #[test]
    fn gap_examples() {
        let r = sys(&[], &[&[3]]);
        assert_eq!(r.is_gap_point(&pt(&[], &[MaxOfF(1)])).unwrap(), GapStatus::ExceptionalXInfinity);
        assert_eq!(r.is_gap_point(&pt(&[1], &[MaxOfF(1)])).unwrap(), GapStatus::Gap);
        let s = sys(&[], &[&[1, 1]]);
        assert_eq!(s.is_gap_point(&pt(&[], &[Index(1)])).unwrap(), GapStatus::Gap);
        let a = sys(&[], &[&[1, 1], &[2]]);
        assert_eq!(a.is_gap_point(&pt(&[], &[MaxOfF(2), MinOfF(1)])).unwrap(), GapStatus::NotGap);
    }

    #[test]
    fn gap_successor_examples() {
        let s = sys(&[], &[&[1, 1]]);
        let x = pt(&[], &[Index(1)]);
        let y = s.gap_successor(&x).unwrap();
        assert_eq!(s.point_prefix(&y.point, 4).unwrap(), vec![2, 1, 1, 1]);
        assert!(s.verify_immediate_successor(&x, &y, 6, DEFAULT_LIMIT).unwrap());

        let r = sys(&[], &[&[2, 1]]);
        let x = pt(&[1], &[MaxOfF(1)]);
        let y = r.gap_successor(&x).unwrap();
        assert_eq!(y.split_level, 1);
        assert_eq!(r.point_prefix(&y.point, 4).unwrap(), vec![2, 1, 1, 1]);
        assert!(r.verify_immediate_successor(&x, &y, 5, DEFAULT_LIMIT).unwrap());
        assert!(r.closure_member(&x, &y.point).unwrap());
        assert!(!r.closure_member(&y.point, &x).unwrap());

        assert!(matches!(
            r.gap_successor(&pt(&[], &[MaxOfF(2)])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cocycle_examples() {
        let r = sys(&[], &[&[2]]);
        let t = build_cocycle(&r, 2, &[q(1, 1)], q(1, 1), DEFAULT_LIMIT).unwrap();
        assert_eq!(t.gaps[1], vec![q(1, 2), q(1, 2), q(1, 2)]);

        let s = sys(&[&[3]], &[&[1, 1]]);
        let t = build_cocycle(&s, 2, &[q(1, 1), q(2, 1)], q(5, 1), DEFAULT_LIMIT).unwrap();
        assert_eq!(t.gaps[1], vec![q(1, 1), q(2, 1), q(5, 1), q(1, 1), q(2, 1)]);

        let one = sys(&[&[1]], &[&[2]]);
        let t = build_cocycle(&one, 2, &[], q(1, 1), DEFAULT_LIMIT).unwrap();
        assert!(t.gaps[0].is_empty());
        assert_eq!(t.gaps[1], vec![q(1, 2)]);

        assert!(build_cocycle(&r, 2, &[q(0, 1)], q(1, 1), DEFAULT_LIMIT).is_err());
        assert!(t.eval(3, &[1, 1, 1], &[1, 1, 1]).is_err());
        assert_eq!(t.eval(2, &[1, 2], &[1, 1]).unwrap(), q(-1, 2));
    }

    fn arb_sys() -> impl Strategy<Value = SystemLevels> {
        let tuple = proptest::collection::vec(1u64..=2, 1..=2);
        (
            proptest::collection::vec(tuple.clone(), 0..=1),
            proptest::collection::vec(tuple, 1..=2),
        )
            .prop_map(|(prefix, period)| {
                let conv = |v: Vec<Vec<u64>>| {
                    v.into_iter()
                        .map(|t| crate::tuples::IntTuple::from_u64s(&t).unwrap())
                        .collect::<Vec<_>>()
                };
                SystemLevels::new(Presentation::new(conv(prefix), conv(period)).unwrap()).unwrap()
            })
    }

    fn arb_point(max_prefix: usize) -> impl Strategy<Value = (Vec<usize>, Vec<TailSelector>)> {
        let sel = prop_oneof![
            Just(MinOfF(1)),
            Just(MaxOfF(1)),
            Just(Index(1)),
        ];
        (
            proptest::collection::vec(1usize..=4, 0..=max_prefix),
            proptest::collection::vec(sel, 1..=2),
        )
    }

    /// Clamps prefix coordinates into range.
    fn fit(s: &SystemLevels, (prefix, tail): (Vec<usize>, Vec<TailSelector>)) -> Point {
        let prefix = prefix
            .iter()
            .enumerate()
            .map(|(i, &v)| 1 + (v - 1) % s.k(i + 1))
            .collect();
        Point::new(prefix, tail).unwrap()
    }

    proptest! {
        #[test]
        fn materialize_matches_grid_construction(s in arb_sys()) {
            let by_grid = s.orders_by_grids(5, DEFAULT_LIMIT).unwrap();
            for m in 1..=5 {
                prop_assert_eq!(&s.materialize_order(m, DEFAULT_LIMIT).unwrap(), &by_grid[m - 1]);
            }
            let r = check_coherence(&by_grid, true).unwrap();
            prop_assert!(r.holds(), "{:?}", r.failures);
        }

        #[test]
        fn closure_transitive(s in arb_sys(), a in arb_point(3), b in arb_point(3), c in arb_point(3)) {
            let (x, y, z) = (fit(&s, a), fit(&s, b), fit(&s, c));
            if s.closure_member(&x, &y).unwrap() && s.closure_member(&z, &x).unwrap() {
                prop_assert!(s.closure_member(&z, &y).unwrap());
            }
        }

        #[test]
        fn closure_matches_finite_levels(s in arb_sys(), a in arb_point(3), b in arb_point(3)) {
            // For non-dense y, membership iff prefixes are eventually ≼.
            let (x, y) = (fit(&s, a), fit(&s, b));
            if !s.orbit_dense(&y).unwrap() {
                let expect = (8..=10).all(|n| {
                    s.compare_prefix(&s.point_prefix(&x, n).unwrap(), &s.point_prefix(&y, n).unwrap()).unwrap()
                        != Ordering::Greater
                });
                prop_assert_eq!(s.closure_member(&x, &y).unwrap(), expect);
            }
        }

        #[test]
        fn gap_successor_is_immediate(s in arb_sys(), a in arb_point(3)) {
            let x = fit(&s, a);
            if s.is_gap_point(&x).unwrap() == GapStatus::Gap {
                let y = s.gap_successor(&x).unwrap();
                prop_assert!(s.verify_immediate_successor(&x, &y, 6, DEFAULT_LIMIT).unwrap());
                prop_assert!(s.closure_member(&x, &y.point).unwrap());
                prop_assert!(!s.closure_member(&y.point, &x).unwrap());
            }
        }

        #[test]
        fn cocycle_properties(s in arb_sys(), c1 in proptest::collection::vec(1i64..=5, 4), tr in 1i64..=3) {
            let k1 = s.k(1);
            let gaps: Vec<_> = c1[..k1 - 1].iter().map(|&v| q(v, 1)).collect();
            let t = build_cocycle(&s, 4, &gaps, q(tr, 1), DEFAULT_LIMIT).unwrap();
            for m in 1..=4 {
                let chain = t.chain(m).unwrap();
                for x in chain {
                    for y in chain {
                        let c = t.eval(m, x, y).unwrap();
                        let ord = s.compare_prefix(x, y).unwrap();
                        prop_assert_eq!(!c.is_negative(), ord != Ordering::Greater);
                    }
                }
            }
        }
    }
}
