//! Brute-force reference implementations used by the integration tests.
//!
//! Everything here works on plain `BTreeSet<usize>` values and recomputes
//! from the definitions, sharing no code with the library beyond reading a
//! family's member list.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use scluster::KUniformFamily;

pub type Set = BTreeSet<usize>;

pub fn sets_of(family: &KUniformFamily) -> Vec<Set> {
    family.iter().map(|m| m.iter().collect()).collect()
}

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(m: u64) -> u128 {
    (1..=m as u128).product()
}

/// All `r`-subsets of `items`, as vectors, in lexicographic order.
pub fn combinations<T: Clone>(items: &[T], r: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], r: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < r - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            go(items, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, r, 0, &mut Vec::new(), &mut out);
    out
}

fn intersect_all<'a>(sets: impl Iterator<Item = &'a Set>) -> Option<Set> {
    let mut acc: Option<Set> = None;
    for s in sets {
        acc = Some(match acc {
            None => s.clone(),
            Some(a) => a.intersection(s).copied().collect(),
        });
    }
    acc
}

/// `(is_simplex, is_cluster)` straight from the definitions.
pub fn classify_oracle(sets: &[Set]) -> (bool, bool) {
    let k = sets[0].len();
    let total_empty = intersect_all(sets.iter()).is_none_or(|s| s.is_empty());
    let union: Set = sets.iter().flatten().copied().collect();
    let all_but_one_meet = (0..sets.len()).all(|skip| {
        intersect_all(
            sets.iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, s)| s),
        )
        .is_some_and(|s| !s.is_empty())
    });
    (
        total_empty && all_but_one_meet,
        total_empty && union.len() <= 2 * k,
    )
}

pub fn is_simplex_cluster_oracle(sets: &[Set]) -> bool {
    let (s, c) = classify_oracle(sets);
    s && c
}

/// Whether any `(d+1)`-subset of `sets` is a d-simplex-cluster.
pub fn has_simplex_cluster_oracle(sets: &[Set], d: usize) -> bool {
    combinations(sets, d + 1)
        .iter()
        .any(|t| is_simplex_cluster_oracle(t))
}

/// Multiplicity of each element of `a`: members containing `a ∖ {x}`.
pub fn multiplicities(sets: &[Set], a: &Set) -> BTreeMap<usize, usize> {
    a.iter()
        .map(|&x| {
            let mut rest = a.clone();
            rest.remove(&x);
            (x, sets.iter().filter(|s| rest.is_subset(s)).count())
        })
        .collect()
}

/// `(α^1(A), α^2(A))`.
pub fn alpha12(sets: &[Set], a: &Set) -> (Set, Set) {
    let m = multiplicities(sets, a);
    let pick = |i| {
        m.iter()
            .filter(|&(_, &c)| c == i)
            .map(|(&x, _)| x)
            .collect()
    };
    (pick(1), pick(2))
}

/// `A ∈ ∇*(D)`: `D ⊆ A` and `D` meets `α^1(A)` or lies inside `α^2(A)`.
pub fn is_starred(sets: &[Set], a: &Set, d_set: &Set) -> bool {
    if !d_set.is_subset(a) {
        return false;
    }
    let (a1, a2) = alpha12(sets, a);
    !d_set.is_disjoint(&a1) || d_set.is_subset(&a2)
}

/// Members that have a disjoint partner.
pub fn fstar_oracle(sets: &[Set]) -> Vec<Set> {
    sets.iter()
        .filter(|a| sets.iter().any(|b| a.is_disjoint(b)))
        .cloned()
        .collect()
}

/// Every ordering of `[n]` starting with 1, i.e. one per cyclic arrangement.
pub fn arrangements(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (2..=n).collect(), &mut vec![1], &mut out);
    out
}

/// The `n` cyclic intervals of length `k` of an arrangement.
pub fn arcs_of(order: &[usize], k: usize) -> Vec<Set> {
    let n = order.len();
    (0..n)
        .map(|i| (0..k).map(|j| order[(i + j) % n]).collect())
        .collect()
}

/// `Σ_σ |S_σ(G)|` by direct enumeration.
pub fn arc_total_oracle(n: usize, k: usize, sets: &[Set]) -> u128 {
    let members: BTreeSet<&Set> = sets.iter().collect();
    arrangements(n)
        .iter()
        .map(|o| arcs_of(o, k).iter().filter(|a| members.contains(a)).count() as u128)
        .sum()
}

/// All `k`-sets of `[n]` containing `center`.
pub fn star_oracle(n: usize, k: usize, center: usize) -> Vec<Set> {
    let rest: Vec<usize> = (1..=n).filter(|&x| x != center).collect();
    combinations(&rest, k - 1)
        .into_iter()
        .map(|mut c| {
            c.push(center);
            c.into_iter().collect()
        })
        .collect()
}
