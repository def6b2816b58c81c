//! Simplices, clusters and simplex-clusters among `d + 1` member sets.
//!
//! `d + 1` sets of size `k` form a *d-simplex* when their common
//! intersection is empty while any `d` of them still meet, and a
//! *d-cluster* when the common intersection is empty and the union has at
//! most `2k` elements. A configuration that is both is a simplex-cluster.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::combinatorics::{low_mask, BigCount, ElementSet};
use crate::error::{Error, Result};
use crate::family::KUniformFamily;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ConfigClass {
    pub is_simplex: bool,
    pub is_cluster: bool,
}

impl ConfigClass {
    pub fn is_simplex_cluster(&self) -> bool {
        self.is_simplex && self.is_cluster
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConfigKind {
    Simplex,
    Cluster,
    SimplexCluster,
}

impl ConfigKind {
    pub fn matches(self, class: ConfigClass) -> bool {
        match self {
            ConfigKind::Simplex => class.is_simplex,
            ConfigKind::Cluster => class.is_cluster,
            ConfigKind::SimplexCluster => class.is_simplex_cluster(),
        }
    }
}

/// `d + 1` distinct member sets together with their classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigWitness {
    pub d: usize,
    pub sets: Vec<ElementSet>,
    pub classification: ConfigClass,
}

impl ConfigWitness {
    /// Re-runs [`classify`] on the stored sets and compares.
    pub fn verify(&self) -> Result<bool> {
        Ok(classify(&self.sets, self.d)? == self.classification)
    }

    pub fn union_size(&self) -> usize {
        self.sets
            .iter()
            .fold(0u64, |acc, s| acc | s.mask())
            .count_ones() as usize
    }
}

/// Classifies `sets` as a d-simplex and/or d-cluster.
pub fn classify(sets: &[ElementSet], d: usize) -> Result<ConfigClass> {
    if sets.len() != d + 1 {
        return Err(Error::InvalidConfiguration(format!(
            "expected {} sets for d = {d}, got {}",
            d + 1,
            sets.len()
        )));
    }
    let k = sets[0].len();
    let universe = sets[0].universe();
    for s in sets {
        if s.len() != k {
            return Err(Error::InvalidConfiguration(format!(
                "set {s} has size {}, expected {k}",
                s.len()
            )));
        }
        if s.universe() != universe {
            return Err(Error::InvalidConfiguration(
                "sets come from different universes".into(),
            ));
        }
    }
    for (i, a) in sets.iter().enumerate() {
        if sets[i + 1..].contains(a) {
            return Err(Error::InvalidConfiguration(format!(
                "set {a} appears twice"
            )));
        }
    }

    let total = sets
        .iter()
        .fold(low_mask(universe), |acc, s| acc & s.mask());
    let union = sets.iter().fold(0u64, |acc, s| acc | s.mask());
    let all_but_one_meet = (0..sets.len()).all(|skip| {
        let inter = sets
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(low_mask(universe), |acc, (_, s)| acc & s.mask());
        inter != 0
    });
    Ok(ConfigClass {
        is_simplex: total == 0 && all_but_one_meet,
        is_cluster: total == 0 && union.count_ones() as usize <= 2 * k,
    })
}

/// Pruned depth-first search for simplex-clusters drawn from `pool`.
///
/// Partial tuples of at most `d` sets must have a non-empty common
/// intersection and every partial union must stay within `2k`; both are
/// necessary for a simplex-cluster. Candidates are visited in increasing
/// index order, so the first hit is the lexicographically first tuple.
struct Searcher<'a> {
    pool: &'a [u64],
    d: usize,
    max_union: u32,
}

impl Searcher<'_> {
    /// Extends the partial tuple `chosen` with pool entries at positions
    /// `from..`; `inter` and `uni` fold every mask already in `chosen`.
    fn extend(&self, chosen: &mut Vec<u64>, from: usize, inter: u64, uni: u64) -> bool {
        let depth = chosen.len();
        if depth == self.d {
            let leave_one_out: Vec<u64> = (0..depth)
                .map(|skip| {
                    chosen
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .fold(u64::MAX, |acc, (_, &m)| acc & m)
                })
                .collect();
            for &c in &self.pool[from..] {
                if c & inter == 0
                    && (uni | c).count_ones() <= self.max_union
                    && leave_one_out.iter().all(|&lo| lo & c != 0)
                {
                    chosen.push(c);
                    return true;
                }
            }
            return false;
        }
        let remaining_needed = self.d + 1 - depth;
        for (off, &c) in self.pool[from..].iter().enumerate() {
            let pos = from + off;
            if self.pool.len() - pos < remaining_needed {
                break;
            }
            let next_inter = inter & c;
            let next_uni = uni | c;
            if next_inter == 0 || next_uni.count_ones() > self.max_union {
                continue;
            }
            chosen.push(c);
            if self.extend(chosen, pos + 1, next_inter, next_uni) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

fn witness_from_masks(n: usize, d: usize, masks: &[u64]) -> ConfigWitness {
    let mut sets: Vec<ElementSet> = masks
        .iter()
        .map(|&m| ElementSet::from_mask_unchecked(n, m))
        .collect();
    sets.sort_unstable();
    let classification = classify(&sets, d).expect("search only assembles well-formed tuples");
    assert!(
        classification.is_simplex_cluster(),
        "search returned a non-witness {sets:?}"
    );
    ConfigWitness {
        d,
        sets,
        classification,
    }
}

/// First d-simplex-cluster among the members of `family`, if any.
///
/// A d-simplex of `k`-sets needs `d ≤ k`: the `d + 1` leave-one-out
/// intersections contribute pairwise distinct elements, `d` of which lie in
/// each set. Larger `d` therefore yields `None` without searching.
///
/// Tuples are compared by the colex positions of their members; the
/// smallest qualifying tuple is returned.
pub fn find_simplex_cluster(family: &KUniformFamily, d: usize) -> Option<ConfigWitness> {
    let k = family.k();
    if d == 0 || d > k || family.len() < d + 1 {
        return None;
    }
    let pool: Vec<u64> = family.iter().map(|m| m.mask()).collect();
    let searcher = Searcher {
        pool: &pool,
        d,
        max_union: 2 * k as u32,
    };
    let lead_limit = pool.len() - d;
    let search_from = |i: usize| {
        let mut chosen = vec![pool[i]];
        searcher
            .extend(&mut chosen, i + 1, pool[i], pool[i])
            .then(|| witness_from_masks(family.n(), d, &chosen))
    };
    if pool.len() < 48 {
        (0..lead_limit).find_map(search_from)
    } else {
        (0..lead_limit).into_par_iter().find_map_first(search_from)
    }
}

/// First d-simplex-cluster of `family ∪ {set}` that uses `set`.
pub fn find_simplex_cluster_with(
    family: &KUniformFamily,
    d: usize,
    set: &ElementSet,
) -> Option<ConfigWitness> {
    let k = family.k();
    if d == 0 || d > k || set.len() != k {
        return None;
    }
    let pool: Vec<u64> = family
        .iter()
        .map(|m| m.mask())
        .filter(|&m| m != set.mask())
        .collect();
    if pool.len() < d {
        return None;
    }
    let searcher = Searcher {
        pool: &pool,
        d,
        max_union: 2 * k as u32,
    };
    let mut chosen = vec![set.mask()];
    searcher
        .extend(&mut chosen, 0, set.mask(), set.mask())
        .then(|| witness_from_masks(family.n(), d, &chosen))
}

/// Lexicographic `r`-combinations of `0..len`.
pub(crate) fn for_each_index_combination(
    len: usize,
    r: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) {
    if r > len {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < len - r + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Counts `(d+1)`-subsets of `family` of the requested kind by classifying
/// every one of them. Meant as an oracle for small families.
pub fn count_configs(family: &KUniformFamily, d: usize, which: ConfigKind) -> BigCount {
    let members = family.members();
    let mut count = BigUint::zero();
    let mut tuple = Vec::with_capacity(d + 1);
    for_each_index_combination(members.len(), d + 1, |idx| {
        tuple.clear();
        tuple.extend(idx.iter().map(|&i| members[i]));
        if which.matches(classify(&tuple, d).expect("members are distinct k-sets")) {
            count += 1u32;
        }
        true
    });
    count
}
