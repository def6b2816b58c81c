use std::collections::HashMap;
use std::sync::OnceLock;

use crate::combinatorics::{binomial_u64, enumerate_k_subsets, low_mask, ElementSet, MAX_UNIVERSE};
use crate::error::{Error, Result};

/// A deduplicated family of `k`-subsets of `[n]`, stored in colex order.
///
/// The family is immutable. A count of members above every `(k-1)`-set is
/// built on first use and backs the removability queries in [`crate::shade`].
#[derive(Clone, Debug)]
pub struct KUniformFamily {
    n: usize,
    k: usize,
    members: Vec<ElementSet>,
    co_index: OnceLock<HashMap<u64, u32>>,
}

impl PartialEq for KUniformFamily {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.members == other.members
    }
}

impl Eq for KUniformFamily {}

fn check_params(n: usize, k: usize) -> Result<()> {
    if n > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge(n));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

impl KUniformFamily {
    /// Validates sizes and universes, sorts into colex order and drops repeats.
    pub fn new(n: usize, k: usize, members: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        check_params(n, k)?;
        let mut v: Vec<ElementSet> = members.into_iter().collect();
        for m in &v {
            if m.universe() != n {
                return Err(Error::InvalidFamily(format!(
                    "member {m} lives in a universe of size {}, expected {n}",
                    m.universe()
                )));
            }
            if m.len() != k {
                return Err(Error::InvalidFamily(format!(
                    "member {m} has size {}, expected {k}",
                    m.len()
                )));
            }
        }
        v.sort_unstable();
        v.dedup();
        Ok(Self::from_sorted(n, k, v))
    }

    pub fn from_masks(n: usize, k: usize, masks: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_params(n, k)?;
        let sets = masks
            .into_iter()
            .map(|m| ElementSet::from_mask(n, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, sets)
    }

    pub(crate) fn from_sorted(n: usize, k: usize, members: Vec<ElementSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self {
            n,
            k,
            members,
            co_index: OnceLock::new(),
        }
    }

    pub fn empty(n: usize, k: usize) -> Result<Self> {
        check_params(n, k)?;
        Ok(Self::from_sorted(n, k, Vec::new()))
    }

    /// All of `([n] choose k)`.
    pub fn full(n: usize, k: usize) -> Result<Self> {
        check_params(n, k)?;
        Ok(Self::from_sorted(
            n,
            k,
            enumerate_k_subsets(n, k)?.collect(),
        ))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.members.iter()
    }

    #[inline]
    pub fn contains_mask(&self, mask: u64) -> bool {
        self.members
            .binary_search_by_key(&mask, |m| m.mask())
            .is_ok()
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        set.universe() == self.n && self.contains_mask(set.mask())
    }

    pub(crate) fn require_member(&self, set: &ElementSet) -> Result<()> {
        if self.contains(set) {
            Ok(())
        } else {
            Err(Error::NotMember(set.to_string()))
        }
    }

    fn co_index(&self) -> &HashMap<u64, u32> {
        self.co_index.get_or_init(|| {
            let mut idx = HashMap::with_capacity(self.members.len() * self.k);
            for m in &self.members {
                let mut rest = m.mask();
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    *idx.entry(m.mask() ^ bit).or_insert(0) += 1;
                }
            }
            idx
        })
    }

    /// Number of members containing the `(k-1)`-set `mask`.
    #[inline]
    pub fn co_count(&self, mask: u64) -> usize {
        debug_assert_eq!(mask.count_ones() as usize + 1, self.k);
        self.co_index().get(&mask).copied().unwrap_or(0) as usize
    }

    /// Number of members containing `d`, by linear scan.
    pub fn shade_count(&self, d: &ElementSet) -> usize {
        self.members.iter().filter(|m| d.is_subset(m)).count()
    }

    /// `([n] choose k)` minus this family.
    pub fn complement(&self) -> Self {
        let rest = enumerate_k_subsets(self.n, self.k)
            .expect("parameters validated at construction")
            .filter(|s| !self.contains_mask(s.mask()))
            .collect();
        Self::from_sorted(self.n, self.k, rest)
    }

    pub fn filter(&self, mut keep: impl FnMut(&ElementSet) -> bool) -> Self {
        Self::from_sorted(
            self.n,
            self.k,
            self.members.iter().copied().filter(|m| keep(m)).collect(),
        )
    }

    pub fn with_member(&self, set: ElementSet) -> Result<Self> {
        if set.universe() != self.n || set.len() != self.k {
            return Err(Error::InvalidFamily(format!(
                "{set} is not a {}-subset of [{}]",
                self.k, self.n
            )));
        }
        let mut v = self.members.clone();
        if let Err(pos) = v.binary_search(&set) {
            v.insert(pos, set);
        }
        Ok(Self::from_sorted(self.n, self.k, v))
    }

    pub fn without_member(&self, set: &ElementSet) -> Self {
        let mut v = self.members.clone();
        if let Ok(pos) = v.binary_search(set) {
            v.remove(pos);
        }
        Self::from_sorted(self.n, self.k, v)
    }

    /// Elements common to every member; the full universe for an empty family.
    pub fn common_elements(&self) -> ElementSet {
        let mask = self
            .members
            .iter()
            .fold(low_mask(self.n), |acc, m| acc & m.mask());
        ElementSet::from_mask_unchecked(self.n, mask)
    }

    /// Smallest `x` contained in every member, if the family is non-empty and has one.
    pub fn star_center(&self) -> Option<usize> {
        if self.members.is_empty() {
            return None;
        }
        self.common_elements().min_element()
    }

    /// Whether this is the family of all `k`-sets through some element.
    pub fn is_maximum_star(&self) -> bool {
        self.star_center().is_some() && self.len() as u64 == binomial_u64(self.n - 1, self.k - 1)
    }

    pub fn is_full(&self) -> bool {
        self.len() as u64 == binomial_u64(self.n, self.k)
    }
}

impl<'a> IntoIterator for &'a KUniformFamily {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
