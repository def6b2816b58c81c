//! Shades and removability.
//!
//! The shade of `D` in `F` is the set of members containing `D`. For a
//! member `A`, an element `x ∈ A` has *multiplicity* `i` when exactly `i`
//! members contain `A ∖ {x}`; the multiplicity-`i` elements form the class
//! `α^i(A)`. Elements of multiplicity 1 cannot be swapped out of `A` at all,
//! while multiplicity ≥ 2 means some other member agrees with `A` everywhere
//! except at `x`. That is what lets [`construct_simplex_cluster`] build a
//! simplex-cluster out of two members meeting in `d` well-chosen elements.

use std::collections::{BTreeMap, HashMap};

use crate::combinatorics::{
    binomial, binomial_u64, enumerate_k_subsets, low_mask, submasks_of_size, BigCount, ElementSet,
};
use crate::configurations::{classify, ConfigWitness};
use crate::error::{Error, Result};
use crate::family::KUniformFamily;

/// All members of `family` that contain `d`.
pub fn shade(family: &KUniformFamily, d: &ElementSet) -> KUniformFamily {
    family.filter(|m| d.is_subset(m))
}

/// Multiplicity of `x` in the member `a`: members containing `a ∖ {x}`.
#[inline]
pub fn multiplicity(family: &KUniformFamily, a: &ElementSet, x: usize) -> usize {
    family.co_count(a.without(x).mask())
}

/// The partition of a member by element multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaProfile {
    pub member: ElementSet,
    pub by_multiplicity: BTreeMap<usize, ElementSet>,
}

impl AlphaProfile {
    /// `α^i(A)`; empty when no element has multiplicity `i`.
    pub fn class(&self, i: usize) -> ElementSet {
        self.by_multiplicity
            .get(&i)
            .copied()
            .unwrap_or_else(|| ElementSet::from_mask_unchecked(self.member.universe(), 0))
    }

    pub fn alpha1(&self) -> ElementSet {
        self.class(1)
    }

    pub fn alpha2(&self) -> ElementSet {
        self.class(2)
    }

    /// Multiplicity of the element `x ∈ A`.
    pub fn multiplicity_of(&self, x: usize) -> Option<usize> {
        self.by_multiplicity
            .iter()
            .find(|(_, s)| s.contains(x))
            .map(|(&i, _)| i)
    }

    /// Whether `A ∈ ∇*(D)`: `D` meets `α^1(A)` or lies inside `α^2(A)`.
    pub fn is_starred_for(&self, d: &ElementSet) -> bool {
        !d.is_disjoint(&self.alpha1()) || d.is_subset(&self.alpha2())
    }
}

pub fn alpha_profile(family: &KUniformFamily, a: &ElementSet) -> Result<AlphaProfile> {
    family.require_member(a)?;
    Ok(alpha_profile_unchecked(family, a))
}

pub(crate) fn alpha_profile_unchecked(family: &KUniformFamily, a: &ElementSet) -> AlphaProfile {
    let mut by_multiplicity: BTreeMap<usize, ElementSet> = BTreeMap::new();
    for x in a.iter() {
        let i = multiplicity(family, a, x);
        let entry = by_multiplicity
            .entry(i)
            .or_insert_with(|| ElementSet::from_mask_unchecked(a.universe(), 0));
        *entry = entry.with(x);
    }
    AlphaProfile {
        member: *a,
        by_multiplicity,
    }
}

/// Whether `A ∩ B` is a `d`-set avoiding `α^1(A)` and not inside `α^2(A)`.
pub fn swap_condition(
    family: &KUniformFamily,
    a: &ElementSet,
    b: &ElementSet,
    d: usize,
) -> Result<bool> {
    family.require_member(a)?;
    family.require_member(b)?;
    if a == b {
        return Err(Error::Precondition("A and B must be distinct".into()));
    }
    let meet = a.intersection(b);
    if meet.len() != d {
        return Ok(false);
    }
    let profile = alpha_profile_unchecked(family, a);
    Ok(meet.is_disjoint(&profile.alpha1()) && !meet.is_subset(&profile.alpha2()))
}

/// Members other than `a` that contain `a ∖ {x}`, in colex order.
fn swap_partners(family: &KUniformFamily, a: &ElementSet, x: usize) -> Vec<ElementSet> {
    let base = a.without(x);
    (1..=family.n())
        .filter(|&y| !a.contains(y))
        .map(|y| base.with(y))
        .filter(|s| family.contains(s))
        .collect()
}

/// Builds `B, B_1, …, B_d` from two members `A`, `B` meeting the
/// [`swap_condition`].
///
/// The elements `x_1..x_d` of `A ∩ B` are ordered ascending, except that the
/// element of largest multiplicity (smallest label on ties) goes last. Each
/// `B_j` is the colex-first member other than `A` containing `A ∖ {x_j}`.
/// Every `B_j` has exactly one element outside `A`; when those all coincide
/// `B_d` is replaced by its next partner. The sets are returned in the order
/// `B, B_1, …, B_d`.
pub fn construct_simplex_cluster(
    family: &KUniformFamily,
    a: &ElementSet,
    b: &ElementSet,
    d: usize,
) -> Result<ConfigWitness> {
    if d < 2 {
        return Err(Error::Precondition(format!(
            "the construction needs d >= 2, got {d}"
        )));
    }
    if !swap_condition(family, a, b, d)? {
        return Err(Error::Precondition(format!(
            "{a} and {b} do not satisfy the removability condition for d = {d}"
        )));
    }
    let profile = alpha_profile_unchecked(family, a);
    let mut xs: Vec<(usize, usize)> = a
        .intersection(b)
        .iter()
        .map(|x| (x, profile.multiplicity_of(x).expect("x lies in A")))
        .collect();
    let last = xs
        .iter()
        .enumerate()
        .max_by(|(_, (xa, ma)), (_, (xb, mb))| ma.cmp(mb).then(xb.cmp(xa)))
        .map(|(i, _)| i)
        .expect("d >= 2 elements");
    let pivot = xs.remove(last);
    xs.push(pivot);
    assert!(
        pivot.1 >= 3,
        "condition guarantees an element of multiplicity >= 3"
    );

    let mut chosen = Vec::with_capacity(d);
    for &(x, _) in &xs[..d - 1] {
        let partners = swap_partners(family, a, x);
        chosen.push(
            *partners
                .first()
                .expect("multiplicity >= 2 leaves a partner"),
        );
    }
    let last_partners = swap_partners(family, a, pivot.0);
    let outside = |s: &ElementSet| s.difference(a).mask();
    let shared_before = chosen
        .iter()
        .fold(low_mask(family.n()), |acc, s| acc & outside(s));
    let last_choice = last_partners
        .iter()
        .find(|s| shared_before & outside(s) == 0)
        .expect("multiplicity >= 3 leaves two partners with different outside elements");
    chosen.push(*last_choice);
    let common_outside = chosen
        .iter()
        .fold(low_mask(family.n()), |acc, s| acc & outside(s));
    assert!(common_outside.count_ones() <= 1 && common_outside == 0);

    let mut sets = Vec::with_capacity(d + 1);
    sets.push(*b);
    sets.extend(chosen);
    let classification = classify(&sets, d)?;
    assert!(
        classification.is_simplex_cluster(),
        "construction produced a non-witness {sets:?}"
    );
    Ok(ConfigWitness {
        d,
        sets,
        classification,
    })
}

/// `∇*(D)`: members of the shade of `D` that `D` meets in `α^1` or that
/// contain `D` inside `α^2`.
pub fn starred_shade(
    family: &KUniformFamily,
    d_set: &ElementSet,
    d: usize,
) -> Result<KUniformFamily> {
    if d_set.len() != d {
        return Err(Error::Precondition(format!(
            "|D| = {} but d = {d}",
            d_set.len()
        )));
    }
    Ok(family
        .filter(|m| d_set.is_subset(m) && alpha_profile_unchecked(family, m).is_starred_for(d_set)))
}

/// `C(k,d) − C(|A ∖ α^1(A)|, d) + C(|α^2(A)|, d)`: the number of `d`-subsets
/// `D ⊆ A` with `A ∈ ∇*(D)`.
pub fn starred_count_per_member(
    family: &KUniformFamily,
    a: &ElementSet,
    d: usize,
) -> Result<BigCount> {
    let profile = alpha_profile(family, a)?;
    Ok(starred_count_from_profile(&profile, family.k(), d))
}

pub(crate) fn starred_count_from_profile(profile: &AlphaProfile, k: usize, d: usize) -> BigCount {
    let a1 = profile.alpha1().len();
    let a2 = profile.alpha2().len();
    binomial(k as u64, d as u64) - binomial((k - a1) as u64, d as u64)
        + binomial(a2 as u64, d as u64)
}

/// `ℓ`-sets whose every `k`-superset lies in the family, in colex order.
pub fn saturated_shades(family: &KUniformFamily, l: usize) -> Result<Vec<ElementSet>> {
    let (n, k) = (family.n(), family.k());
    if l == 0 || l > k {
        return Err(Error::Precondition(format!(
            "need 1 <= l <= k, got l = {l}"
        )));
    }
    let target = binomial_u64(n - l, k - l);
    let mut counts: HashMap<u64, u64> = HashMap::new();
    for m in family {
        for sub in submasks_of_size(m.mask(), l) {
            *counts.entry(sub).or_insert(0) += 1;
        }
    }
    let mut out: Vec<ElementSet> = counts
        .into_iter()
        .filter(|&(_, c)| c == target)
        .map(|(m, _)| ElementSet::from_mask_unchecked(n, m))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Whether the members containing `center` are exactly all `k`-supersets of it.
pub fn is_maximum_s_star(family: &KUniformFamily, center: &ElementSet) -> bool {
    let s = center.len();
    s <= family.k()
        && family.iter().all(|m| center.is_subset(m))
        && family.len() as u64 == binomial_u64(family.n() - s, family.k() - s)
}

/// Lifts a d-simplex of `(d+1)`-sets to a d-simplex-cluster of `k`-sets in `[n]`.
///
/// With `m = k − d − 1`, the first `⌈(d+1)/2⌉` sets receive the `m` smallest
/// unused elements and the rest receive the next `m`. The output keeps the
/// input order.
pub fn lift_simplex(simplex: &[ElementSet], k: usize, n: usize) -> Result<ConfigWitness> {
    if simplex.is_empty() {
        return Err(Error::Precondition("empty simplex".into()));
    }
    let d = simplex.len() - 1;
    if n > crate::combinatorics::MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge(n));
    }
    if simplex.iter().any(|s| s.len() != d + 1) {
        return Err(Error::Precondition(format!(
            "every set must have size d + 1 = {}",
            d + 1
        )));
    }
    if simplex.iter().any(|s| s.mask() & !low_mask(n) != 0) {
        return Err(Error::Precondition(format!(
            "simplex does not fit in [{n}]"
        )));
    }
    if k < d + 1 {
        return Err(Error::Precondition(format!(
            "k = {k} is below d + 1 = {}",
            d + 1
        )));
    }
    let embedded: Vec<ElementSet> = simplex
        .iter()
        .map(|s| ElementSet::from_mask_unchecked(n, s.mask()))
        .collect();
    if !classify(&embedded, d)?.is_simplex {
        return Err(Error::Precondition("input is not a d-simplex".into()));
    }

    let pad = k - d - 1;
    let used = embedded.iter().fold(0u64, |acc, s| acc | s.mask());
    let spare: Vec<u64> = (0..n)
        .map(|p| 1u64 << p)
        .filter(|b| used & b == 0)
        .collect();
    if spare.len() < 2 * pad {
        return Err(Error::Precondition(format!(
            "need {} unused elements to pad to k = {k}, only {} available in [{n}]",
            2 * pad,
            spare.len()
        )));
    }
    let first_block: u64 = spare[..pad].iter().fold(0, |acc, b| acc | b);
    let second_block: u64 = spare[pad..2 * pad].iter().fold(0, |acc, b| acc | b);
    let split = (d + 2) / 2;
    let sets: Vec<ElementSet> = embedded
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let block = if i < split { first_block } else { second_block };
            ElementSet::from_mask_unchecked(n, s.mask() | block)
        })
        .collect();
    let classification = classify(&sets, d)?;
    assert!(
        classification.is_simplex_cluster(),
        "lift produced a non-witness {sets:?}"
    );
    Ok(ConfigWitness {
        d,
        sets,
        classification,
    })
}

/// All `d`-subsets `D ⊆ A` with `A ∈ ∇*(D)`, by direct enumeration.
pub fn starred_subsets_of(
    family: &KUniformFamily,
    a: &ElementSet,
    d: usize,
) -> Result<Vec<ElementSet>> {
    let profile = alpha_profile(family, a)?;
    Ok(submasks_of_size(a.mask(), d)
        .into_iter()
        .map(|m| ElementSet::from_mask_unchecked(family.n(), m))
        .filter(|dset| profile.is_starred_for(dset))
        .collect())
}

/// Sum of `|∇*(D)|` over all `d`-subsets of the universe.
pub fn starred_shade_total(family: &KUniformFamily, d: usize) -> u64 {
    enumerate_k_subsets(family.n(), d)
        .expect("d <= k <= n")
        .map(|dset| {
            family
                .iter()
                .filter(|m| {
                    dset.is_subset(m) && alpha_profile_unchecked(family, m).is_starred_for(&dset)
                })
                .count() as u64
        })
        .sum()
}
