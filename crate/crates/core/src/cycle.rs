//! Cyclic arrangements of the universe and the arc-counting argument.
//!
//! A k-arc of an arrangement `a_0, …, a_{n−1}` is a run of `k` cyclically
//! consecutive entries; its starting point is the index of its first entry.
//! Counting arcs over all `(n−1)!` arrangements gives the bound
//! `|F| ≤ C(n−1,k−1) + (n−k)/n · |F*|` whenever `F*` contains every member
//! of `F` that has a disjoint partner in `F`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::RngCore;
use rayon::prelude::*;

use crate::combinatorics::{binomial, BigCount, ElementSet};
use crate::error::{Error, Result};
use crate::family::KUniformFamily;

/// Largest universe for which all `(n−1)!` arrangements are swept.
pub const EXHAUSTIVE_CYCLE_LIMIT: usize = 10;

/// An arrangement of `[n]` up to rotation, stored starting at element 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicPermutation {
    /// 0-based bit positions; `order[0] == 0`.
    order: Vec<u8>,
}

impl CyclicPermutation {
    /// From 1-based labels in cyclic order; rotated to start at 1.
    pub fn new(labels: &[usize]) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > crate::combinatorics::MAX_UNIVERSE {
            return Err(Error::InvalidParameters(format!(
                "arrangement of length {n}"
            )));
        }
        let mut seen = 0u64;
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::ElementOutOfRange {
                    element: l,
                    universe: n,
                });
            }
            if seen >> (l - 1) & 1 == 1 {
                return Err(Error::InvalidParameters(format!("element {l} repeated")));
            }
            seen |= 1 << (l - 1);
        }
        let start = labels
            .iter()
            .position(|&l| l == 1)
            .expect("bijection contains 1");
        let order = (0..n)
            .map(|i| (labels[(start + i) % n] - 1) as u8)
            .collect();
        Ok(Self { order })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            order: (0..n as u8).collect(),
        }
    }

    /// Uniformly random arrangement.
    pub fn random<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut order: Vec<u8> = (0..n as u8).collect();
        crate::search::shuffle(&mut order[1..], rng);
        Self { order }
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// 1-based labels, starting with 1.
    pub fn labels(&self) -> Vec<usize> {
        self.order.iter().map(|&p| p as usize + 1).collect()
    }

    /// Mask of the k-arc with starting point `start`.
    #[inline]
    pub fn arc_mask(&self, start: usize, k: usize) -> u64 {
        let n = self.order.len();
        (0..k).fold(0u64, |acc, j| acc | 1u64 << self.order[(start + j) % n])
    }

    /// Masks of all `n` k-arcs, indexed by starting point.
    pub fn arc_masks(&self, k: usize) -> Vec<u64> {
        (0..self.order.len()).map(|i| self.arc_mask(i, k)).collect()
    }
}

/// Every cyclic arrangement of `[n]`, each listed once (starting at 1),
/// in lexicographic order of the tail.
pub fn all_cyclic_permutations(n: usize) -> impl Iterator<Item = CyclicPermutation> {
    let mut next: Option<Vec<u8>> = (n >= 1).then(|| (0..n as u8).collect());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ[1..]) {
            next = Some(succ);
        }
        Some(CyclicPermutation { order: cur })
    })
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Members of a family that appear as k-arcs of one arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSet {
    pub permutation: CyclicPermutation,
    /// Starting point → member.
    pub hits: BTreeMap<usize, ElementSet>,
}

impl ArcSet {
    pub fn len(&self) -> usize {
        self.hits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hits.is_empty()
    }
}

fn check_universe(sigma: &CyclicPermutation, family: &KUniformFamily) -> Result<()> {
    if sigma.n() != family.n() {
        return Err(Error::InvalidParameters(format!(
            "arrangement of {} elements against a family over [{}]",
            sigma.n(),
            family.n()
        )));
    }
    Ok(())
}

pub fn arcs(sigma: &CyclicPermutation, family: &KUniformFamily) -> Result<ArcSet> {
    check_universe(sigma, family)?;
    let n = family.n();
    let hits = sigma
        .arc_masks(family.k())
        .into_iter()
        .enumerate()
        .filter(|&(_, m)| family.contains_mask(m))
        .map(|(i, m)| (i, ElementSet::from_mask_unchecked(n, m)))
        .collect();
    Ok(ArcSet {
        permutation: sigma.clone(),
        hits,
    })
}

#[inline]
fn arc_hits(arcs: &[u64], family: &KUniformFamily) -> usize {
    arcs.iter().filter(|&&m| family.contains_mask(m)).count()
}

/// Members of `family` that have a disjoint partner in `family`.
pub fn minimal_fstar(family: &KUniformFamily) -> KUniformFamily {
    let members = family.members();
    family.filter(|a| members.iter().any(|b| a.is_disjoint(b)))
}

/// Checks `fstar ⊆ family` and that every disjoint pair of members lies in `fstar`.
pub fn validate_fstar(family: &KUniformFamily, fstar: &KUniformFamily) -> Result<()> {
    if fstar.n() != family.n() || fstar.k() != family.k() {
        return Err(Error::InvalidFamily("F* must share n and k with F".into()));
    }
    if let Some(stray) = fstar.iter().find(|s| !family.contains(s)) {
        return Err(Error::InvalidFamily(format!(
            "F* member {stray} is not in F"
        )));
    }
    let members = family.members();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if a.is_disjoint(b) && !(fstar.contains(a) && fstar.contains(b)) {
                return Err(Error::InvalidFamily(format!(
                    "disjoint pair {a}, {b} is not inside F*"
                )));
            }
        }
    }
    Ok(())
}

fn require_n_at_least_2k(family: &KUniformFamily) -> Result<()> {
    if family.n() < 2 * family.k() {
        return Err(Error::Precondition(format!(
            "need n >= 2k, got n = {}, k = {}",
            family.n(),
            family.k()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcBounds {
    /// `|S_σ(F∖F*)| ≤ k`.
    pub plain_bound: bool,
    /// `|S_σ(F*)| ≤ 2(k − |S_σ(F∖F*)|)` when `S_σ(F∖F*)` is non-empty; true otherwise.
    pub starred_bound: bool,
    pub plain_hits: usize,
    pub starred_hits: usize,
}

pub fn check_arc_bounds(
    sigma: &CyclicPermutation,
    family: &KUniformFamily,
    fstar: &KUniformFamily,
) -> Result<ArcBounds> {
    check_universe(sigma, family)?;
    require_n_at_least_2k(family)?;
    let arcs = sigma.arc_masks(family.k());
    let starred_hits = arc_hits(&arcs, fstar);
    let plain_hits = arcs
        .iter()
        .filter(|&&m| family.contains_mask(m) && !fstar.contains_mask(m))
        .count();
    Ok(arc_bounds_from_counts(family.k(), plain_hits, starred_hits))
}

#[inline]
pub(crate) fn arc_bounds_from_counts(
    k: usize,
    plain_hits: usize,
    starred_hits: usize,
) -> ArcBounds {
    ArcBounds {
        plain_bound: plain_hits <= k,
        starred_bound: plain_hits == 0 || starred_hits + 2 * plain_hits <= 2 * k,
        plain_hits,
        starred_hits,
    }
}

/// How the `C_j` counts were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// `counts[j]` = number of arrangements with exactly `j` arcs in `F ∖ F*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CjPartition {
    pub counts: Vec<u64>,
    pub permutations: u64,
    pub exhaustive: bool,
    /// Arrangements whose count exceeded `k` (more than `k` plain arcs); kept
    /// out of `counts`.
    pub overflow: u64,
}

pub fn cj_partition(
    family: &KUniformFamily,
    fstar: &KUniformFamily,
    mode: SweepMode,
) -> Result<CjPartition> {
    require_n_at_least_2k(family)?;
    let (n, k) = (family.n(), family.k());
    let plain = family.filter(|m| !fstar.contains(m));
    let bucket = |sigma: &CyclicPermutation| arc_hits(&sigma.arc_masks(k), &plain);
    let tally = |hits: Vec<usize>| {
        let mut counts = vec![0u64; k + 1];
        let mut overflow = 0;
        for h in hits {
            match counts.get_mut(h) {
                Some(c) => *c += 1,
                None => overflow += 1,
            }
        }
        (counts, overflow)
    };
    match mode {
        SweepMode::Exhaustive => {
            if n > EXHAUSTIVE_CYCLE_LIMIT {
                return Err(Error::Precondition(format!(
                    "exhaustive sweep limited to n <= {EXHAUSTIVE_CYCLE_LIMIT}, got {n}"
                )));
            }
            let hits: Vec<usize> = all_cyclic_permutations(n)
                .par_bridge()
                .map(|s| bucket(&s))
                .collect();
            let permutations = hits.len() as u64;
            let (counts, overflow) = tally(hits);
            Ok(CjPartition {
                counts,
                permutations,
                exhaustive: true,
                overflow,
            })
        }
        SweepMode::Sampled { samples, seed } => {
            let mut rng = crate::search::seeded_rng(seed);
            let hits: Vec<usize> = (0..samples)
                .map(|_| bucket(&CyclicPermutation::random(n, &mut rng)))
                .collect();
            let (counts, overflow) = tally(hits);
            Ok(CjPartition {
                counts,
                permutations: samples,
                exhaustive: false,
                overflow,
            })
        }
    }
}

/// Both sides of `Σ_σ |S_σ(G)| = |G| · k! · (n−k)!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleIdentity {
    pub arc_total: BigCount,
    pub expected: BigCount,
    pub permutations: u64,
}

impl CycleIdentity {
    pub fn holds(&self) -> bool {
        self.arc_total == self.expected
    }
}

fn factorial(m: usize) -> BigCount {
    (1..=m as u64).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// Sums arc hits of `family` over every arrangement of `[n]`.
pub fn cycle_identity(family: &KUniformFamily) -> Result<CycleIdentity> {
    let (n, k) = (family.n(), family.k());
    if n > EXHAUSTIVE_CYCLE_LIMIT {
        return Err(Error::Precondition(format!(
            "exhaustive sweep limited to n <= {EXHAUSTIVE_CYCLE_LIMIT}, got {n}"
        )));
    }
    if k == n {
        return Err(Error::Precondition(
            "arcs of length n all coincide; need k < n".into(),
        ));
    }
    let (total, permutations) = all_cyclic_permutations(n)
        .par_bridge()
        .map(|s| (arc_hits(&s.arc_masks(k), family) as u64, 1u64))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(CycleIdentity {
        arc_total: BigUint::from(total),
        expected: BigUint::from(family.len()) * factorial(k) * factorial(n - k),
        permutations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityClass {
    Full,
    Star,
}

/// Result of comparing `n|F|` against `n·C(n−1,k−1) + (n−k)|F*|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBoundOutcome {
    pub holds: bool,
    pub equality: bool,
    /// Set when equality holds with `n > 2k` and the family is one of the two
    /// extremal shapes.
    pub equality_class: Option<EqualityClass>,
    /// False only when `n > 2k`, equality holds and neither shape applies.
    pub dichotomy_holds: bool,
    pub lhs_scaled: BigCount,
    pub rhs_scaled: BigCount,
}

pub fn cycle_bound_check(
    family: &KUniformFamily,
    fstar: &KUniformFamily,
) -> Result<CycleBoundOutcome> {
    require_n_at_least_2k(family)?;
    validate_fstar(family, fstar)?;
    let (n, k) = (family.n() as u64, family.k() as u64);
    let lhs = BigUint::from(n) * family.len();
    let rhs = BigUint::from(n) * binomial(n - 1, k - 1) + BigUint::from(n - k) * fstar.len();
    let equality = lhs == rhs;
    let mut equality_class = None;
    let mut dichotomy_holds = true;
    if equality && n > 2 * k {
        if family.is_full() && fstar == family {
            equality_class = Some(EqualityClass::Full);
        } else if fstar.is_empty() && family.is_maximum_star() {
            equality_class = Some(EqualityClass::Star);
        } else {
            dichotomy_holds = false;
        }
    }
    Ok(CycleBoundOutcome {
        holds: lhs <= rhs,
        equality,
        equality_class,
        dichotomy_holds,
        lhs_scaled: lhs,
        rhs_scaled: rhs,
    })
}

/// `i·n + 2k(k−i) ≤ k·n`, strict when `n > 2k`, for `1 ≤ i ≤ k−1`.
pub fn weighted_line_holds(n: usize, k: usize, i: usize) -> bool {
    let lhs = i * n + 2 * k * (k - i);
    if n > 2 * k {
        lhs < k * n
    } else {
        lhs <= k * n
    }
}
