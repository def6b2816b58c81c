//! Element sets over a universe `[n]`, exact binomials and colex enumeration.
//!
//! Elements are labelled `1..=n` at every external boundary; bit position
//! `i` of a mask stands for element `i + 1`. For sets of equal size the
//! colexicographic order coincides with the numeric order of the masks, so
//! sorting by mask is the canonical order used throughout the crate.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const MAX_UNIVERSE: usize = 64;

/// Arbitrary-precision non-negative count.
pub type BigCount = BigUint;

/// Mask with the low `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `[n]` packed into one machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    mask: u64,
    universe: u8,
}

impl ElementSet {
    pub fn from_mask(universe: usize, mask: u64) -> Result<Self> {
        if universe > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge(universe));
        }
        if mask & !low_mask(universe) != 0 {
            return Err(Error::MaskOutOfRange { mask, universe });
        }
        Ok(Self {
            mask,
            universe: universe as u8,
        })
    }

    /// Caller guarantees `universe <= 64` and that `mask` fits.
    #[inline]
    pub(crate) fn from_mask_unchecked(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= MAX_UNIVERSE && mask & !low_mask(universe) == 0);
        Self {
            mask,
            universe: universe as u8,
        }
    }

    /// Builds a set from 1-based labels. Repeated labels are collapsed.
    pub fn from_elements(universe: usize, elements: &[usize]) -> Result<Self> {
        if universe > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge(universe));
        }
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > universe {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    universe,
                });
            }
            mask |= 1u64 << (e - 1);
        }
        Ok(Self {
            mask,
            universe: universe as u8,
        })
    }

    pub fn empty(universe: usize) -> Result<Self> {
        Self::from_mask(universe, 0)
    }

    pub fn full(universe: usize) -> Result<Self> {
        Self::from_mask(universe, low_mask(universe))
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.universe() && self.mask >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.mask & !other.mask == 0
    }

    #[inline]
    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.mask & other.mask == 0
    }

    #[inline]
    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        Self {
            mask: self.mask & other.mask,
            universe: self.universe,
        }
    }

    #[inline]
    pub fn union(&self, other: &ElementSet) -> ElementSet {
        Self {
            mask: self.mask | other.mask,
            universe: self.universe,
        }
    }

    #[inline]
    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        Self {
            mask: self.mask & !other.mask,
            universe: self.universe,
        }
    }

    /// The set with `element` removed (no-op when absent).
    #[inline]
    pub fn without(&self, element: usize) -> ElementSet {
        debug_assert!(element >= 1 && element <= self.universe());
        Self {
            mask: self.mask & !(1u64 << (element - 1)),
            universe: self.universe,
        }
    }

    #[inline]
    pub fn with(&self, element: usize) -> ElementSet {
        debug_assert!(element >= 1 && element <= self.universe());
        Self {
            mask: self.mask | (1u64 << (element - 1)),
            universe: self.universe,
        }
    }

    /// 1-based labels in ascending order.
    pub fn iter(&self) -> Elements {
        Elements { rest: self.mask }
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Smallest label, if any.
    pub fn min_element(&self) -> Option<usize> {
        (self.mask != 0).then(|| self.mask.trailing_zeros() as usize + 1)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Ascending 1-based labels of a mask.
#[derive(Clone, Debug)]
pub struct Elements {
    rest: u64,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.rest == 0 {
            return None;
        }
        let pos = self.rest.trailing_zeros() as usize;
        self.rest &= self.rest - 1;
        Some(pos + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.rest.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Exact `C(m, l)`; zero when `l > m`.
pub fn binomial(m: u64, l: u64) -> BigCount {
    if l > m {
        return BigCount::zero();
    }
    let l = l.min(m - l);
    let mut acc = BigCount::one();
    for i in 0..l {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

fn binomial_table() -> &'static [[u64; 65]; 65] {
    static TABLE: OnceLock<Box<[[u64; 65]; 65]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; 65]; 65]);
        for m in 0..=64 {
            t[m][0] = 1;
            for l in 1..=m {
                t[m][l] = t[m - 1][l - 1] + t[m - 1][l];
            }
        }
        t
    })
}

/// Word-sized `C(m, l)` for `m <= 64` (every such value fits in a `u64`).
#[inline]
pub fn binomial_u64(m: usize, l: usize) -> u64 {
    assert!(m <= 64, "binomial_u64 supports m <= 64, got {m}");
    if l > m {
        0
    } else {
        binomial_table()[m][l]
    }
}

/// All `k`-subsets of `[n]` in colex order.
pub fn enumerate_k_subsets(n: usize, k: usize) -> Result<KSubsets> {
    if n > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge(n));
    }
    if k > n {
        return Err(Error::InvalidParameters(format!("k = {k} exceeds n = {n}")));
    }
    Ok(KSubsets {
        n,
        next: Some(low_mask(k) as u128),
    })
}

/// Gosper's-hack enumeration of fixed-weight masks.
#[derive(Clone, Debug)]
pub struct KSubsets {
    n: usize,
    next: Option<u128>,
}

impl Iterator for KSubsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ >> self.n == 0).then_some(succ)
        };
        Some(ElementSet::from_mask_unchecked(self.n, cur as u64))
    }
}

/// Position of `set` in the colex enumeration of `|set|`-subsets.
pub fn colex_rank(set: &ElementSet) -> u64 {
    colex_rank_mask(set.mask())
}

#[inline]
pub fn colex_rank_mask(mask: u64) -> u64 {
    let table = binomial_table();
    let mut rank = 0u64;
    for (i, e) in (Elements { rest: mask }).enumerate() {
        rank += table[e - 1][i + 1];
    }
    rank
}

/// Inverse of [`colex_rank`] over `k`-subsets of `[n]`.
pub fn colex_unrank(rank: u64, k: usize, n: usize) -> Result<ElementSet> {
    if n > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge(n));
    }
    if k > n || rank >= binomial_u64(n, k) {
        return Err(Error::RankOutOfRange { rank, n, k });
    }
    let table = binomial_table();
    let mut rest = rank;
    let mut mask = 0u64;
    let mut top = n;
    for i in (1..=k).rev() {
        // largest c < top with C(c, i) <= rest
        let mut c = top - 1;
        while table[c][i] > rest {
            c -= 1;
        }
        mask |= 1u64 << c;
        rest -= table[c][i];
        top = c;
    }
    Ok(ElementSet::from_mask_unchecked(n, mask))
}

/// All `l`-subsets of the mask `within`, as masks, in colex order.
pub(crate) fn submasks_of_size(within: u64, l: usize) -> Vec<u64> {
    let positions: Vec<u32> = (Elements { rest: within }).map(|e| e as u32 - 1).collect();
    if l > positions.len() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(binomial_u64(positions.len(), l) as usize);
    let it = KSubsets {
        n: positions.len(),
        next: Some(low_mask(l) as u128),
    };
    for sel in it {
        let mut m = 0u64;
        for p in sel.iter() {
            m |= 1u64 << positions[p - 1];
        }
        out.push(m);
    }
    out
}
