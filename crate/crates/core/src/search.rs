//! Family generators and local search for large simplex-cluster-free families.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`, and every
//! bounded draw goes through [`uniform_below`], so a seed pins down the
//! generated family independently of the platform.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use crate::combinatorics::{binomial_u64, colex_unrank, enumerate_k_subsets, ElementSet};
use crate::configurations::{find_simplex_cluster, find_simplex_cluster_with, ConfigWitness};
use crate::error::{Error, Result};
use crate::family::KUniformFamily;

pub type SearchRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SearchRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `0..bound` by rejection on raw 64-bit draws.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    let limit = u64::MAX - u64::MAX % bound;
    loop {
        let x = rng.next_u64();
        if x < limit {
            return x % bound;
        }
    }
}

/// Fisher–Yates driven by [`uniform_below`].
pub fn shuffle<T, R: RngCore + ?Sized>(items: &mut [T], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = uniform_below(rng, i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

/// All `k`-subsets of `[n]` containing `center`.
pub fn max_star(n: usize, k: usize, center: usize) -> Result<KUniformFamily> {
    if center == 0 || center > n {
        return Err(Error::ElementOutOfRange {
            element: center,
            universe: n,
        });
    }
    Ok(KUniformFamily::full(n, k)?.filter(|m| m.contains(center)))
}

/// `size` distinct `k`-sets drawn uniformly (Floyd's sampling over colex ranks).
pub fn random_family(n: usize, k: usize, size: usize, seed: u64) -> Result<KUniformFamily> {
    KUniformFamily::empty(n, k)?;
    let total = binomial_u64(n, k);
    if size as u64 > total {
        return Err(Error::InvalidParameters(format!(
            "size {size} exceeds C({n},{k}) = {total}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let mut chosen: HashSet<u64> = HashSet::with_capacity(size);
    for j in total - size as u64..total {
        let t = uniform_below(&mut rng, j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let members = chosen
        .into_iter()
        .map(|r| colex_unrank(r, k, n))
        .collect::<Result<Vec<_>>>()?;
    KUniformFamily::new(n, k, members)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Greedy,
    HillClimb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub strategy: Strategy,
    pub seed: u64,
    pub iterations: u64,
}

impl SearchParams {
    /// `4 ≤ d + 1 ≤ k ≤ n/2`.
    pub fn in_bound_scope(&self) -> bool {
        self.d >= 3 && self.d < self.k && 2 * self.k <= self.n
    }

    pub fn bound(&self) -> u64 {
        binomial_u64(self.n - 1, self.k - 1)
    }

    fn validate(&self) -> Result<()> {
        KUniformFamily::empty(self.n, self.k)?;
        if self.d == 0 || self.d >= self.k {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= d and d + 1 <= k, got d = {}, k = {}",
                self.d, self.k
            )));
        }
        Ok(())
    }
}

/// Adds candidates in the given order whenever no simplex-cluster forms.
pub fn greedy_in_order(
    n: usize,
    k: usize,
    d: usize,
    candidates: impl IntoIterator<Item = ElementSet>,
) -> Result<KUniformFamily> {
    let mut family = KUniformFamily::empty(n, k)?;
    for c in candidates {
        if !family.contains(&c) && find_simplex_cluster_with(&family, d, &c).is_none() {
            family = family.with_member(c)?;
        }
    }
    Ok(family)
}

/// Greedy construction over a seeded shuffle of `([n] choose k)`.
pub fn greedy_scfree(params: &SearchParams) -> Result<KUniformFamily> {
    params.validate()?;
    let mut candidates: Vec<ElementSet> = enumerate_k_subsets(params.n, params.k)?.collect();
    shuffle(&mut candidates, &mut seeded_rng(params.seed));
    greedy_in_order(params.n, params.k, params.d, candidates)
}

/// Greedy construction scanning candidates in colex order.
pub fn greedy_colex(n: usize, k: usize, d: usize) -> Result<KUniformFamily> {
    greedy_in_order(n, k, d, enumerate_k_subsets(n, k)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HillClimbOutcome {
    pub family: KUniformFamily,
    pub best_size: usize,
    pub bound: u64,
    pub reached_bound: bool,
    /// Whether the best family is a maximum star.
    pub is_star: bool,
    /// Set when the run found a family contradicting the bound or its
    /// equality case.
    pub violation: Option<String>,
    pub restarts: u64,
}

/// Local search: add a random outside set when feasible, otherwise swap it
/// in for one member of the configuration it closes. After a long plateau
/// the search restarts from a fresh greedy family. Returns the largest
/// family seen; the initial greedy family when `iterations == 0`.
pub fn hill_climb(params: &SearchParams) -> Result<HillClimbOutcome> {
    params.validate()?;
    let (n, k, d) = (params.n, params.k, params.d);
    let universe: Vec<ElementSet> = enumerate_k_subsets(n, k)?.collect();
    let mut rng = seeded_rng(params.seed);
    let patience = (universe.len() as u64 * 4).max(200);

    let mut current = greedy_scfree(params)?;
    let mut best = current.clone();
    let mut stale = 0u64;
    let mut restarts = 0u64;
    for _ in 0..params.iterations {
        let candidate = universe[uniform_below(&mut rng, universe.len() as u64) as usize];
        if current.contains(&candidate) {
            stale += 1;
        } else {
            match find_simplex_cluster_with(&current, d, &candidate) {
                None => {
                    current = current.with_member(candidate)?;
                    stale = 0;
                }
                Some(ConfigWitness { sets, .. }) => {
                    let others: Vec<ElementSet> =
                        sets.into_iter().filter(|s| *s != candidate).collect();
                    let out = others[uniform_below(&mut rng, others.len() as u64) as usize];
                    let reduced = current.without_member(&out);
                    if find_simplex_cluster_with(&reduced, d, &candidate).is_none() {
                        current = reduced.with_member(candidate)?;
                    }
                    stale += 1;
                }
            }
        }
        if current.len() > best.len() {
            best = current.clone();
        }
        if stale >= patience {
            restarts += 1;
            let restart_seed = rng.next_u64();
            current = greedy_scfree(&SearchParams {
                seed: restart_seed,
                ..*params
            })?;
            stale = 0;
        }
    }

    let bound = params.bound();
    let best_size = best.len();
    let is_star = best.is_maximum_star();
    let mut violation = None;
    if find_simplex_cluster(&best, d).is_some() {
        violation = Some("search returned a family containing a simplex-cluster".to_string());
    } else if params.in_bound_scope() && best_size as u64 > bound {
        violation = Some(format!(
            "simplex-cluster-free family of size {best_size} exceeds {bound}"
        ));
    } else if params.in_bound_scope() && best_size as u64 == bound && !is_star {
        violation = Some(format!("family of size {bound} is not a star"));
    }
    Ok(HillClimbOutcome {
        family: best,
        best_size,
        bound,
        reached_bound: best_size as u64 == bound,
        is_star,
        violation,
        restarts,
    })
}

/// Runs the strategy named in `params`; greedy ignores the iteration budget.
pub fn run_search(params: &SearchParams) -> Result<HillClimbOutcome> {
    match params.strategy {
        Strategy::Greedy => hill_climb(&SearchParams {
            iterations: 0,
            ..*params
        }),
        Strategy::HillClimb => hill_climb(params),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_examples() {
        let st = max_star(8, 4, 1).unwrap();
        assert_eq!(st.len(), 35);
        assert!(st.iter().all(|m| m.contains(1)));
        for d in 1..4 {
            assert!(find_simplex_cluster(&st, d).is_none());
        }
        assert!(max_star(8, 4, 9).is_err());
        assert!(max_star(8, 4, 0).is_err());
    }

    #[test]
    fn random_family_contract() {
        let full = random_family(7, 3, 35, 9).unwrap();
        assert!(full.is_full());
        let a = random_family(8, 4, 36, 1).unwrap();
        let b = random_family(8, 4, 36, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 36);
        assert_ne!(a, random_family(8, 4, 36, 2).unwrap());
        assert!(random_family(8, 4, 71, 1).is_err());
    }

    #[test]
    fn uniform_below_is_in_range_and_reproducible() {
        let mut r1 = seeded_rng(5);
        let mut r2 = seeded_rng(5);
        for bound in 1..200u64 {
            let x = uniform_below(&mut r1, bound);
            assert!(x < bound);
            assert_eq!(x, uniform_below(&mut r2, bound));
        }
    }

    #[test]
    fn greedy_is_free_and_bounded() {
        let p = SearchParams {
            n: 8,
            k: 4,
            d: 3,
            strategy: Strategy::Greedy,
            seed: 11,
            iterations: 0,
        };
        let f = greedy_scfree(&p).unwrap();
        assert!(find_simplex_cluster(&f, 3).is_none());
        assert!(f.len() as u64 <= p.bound());
        let bad = SearchParams { d: 4, ..p };
        assert!(greedy_scfree(&bad).is_err());
    }

    #[test]
    fn zero_budget_hill_climb_returns_seed_family() {
        let p = SearchParams {
            n: 8,
            k: 4,
            d: 3,
            strategy: Strategy::HillClimb,
            seed: 4,
            iterations: 0,
        };
        let out = hill_climb(&p).unwrap();
        assert_eq!(out.family, greedy_scfree(&p).unwrap());
        assert_eq!(out.restarts, 0);
    }
}
