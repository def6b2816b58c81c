//! Exact checks of the counting inequalities behind the `C(n−1,k−1)` bound
//! for simplex-cluster-free families.
//!
//! Every comparison is made between integers: fractional coefficients are
//! cleared by multiplying both sides by a recorded common denominator.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::combinatorics::{
    binomial, binomial_u64, colex_rank_mask, enumerate_k_subsets, submasks_of_size, BigCount,
    ElementSet,
};
use crate::configurations::find_simplex_cluster;
use crate::cycle::{cycle_bound_check, CycleBoundOutcome};
use crate::error::{Error, Result};
use crate::family::KUniformFamily;
use crate::shade::{
    alpha_profile_unchecked, is_maximum_s_star, saturated_shades, starred_count_from_profile,
    AlphaProfile,
};

fn big(v: impl Into<BigUint>) -> BigUint {
    v.into()
}

fn profiles(family: &KUniformFamily) -> Vec<AlphaProfile> {
    family
        .iter()
        .map(|a| alpha_profile_unchecked(family, a))
        .collect()
}

/// `Σ|α^1(A)|` and `Σ|α^2(A)|` over the family.
fn alpha_sums(profiles: &[AlphaProfile]) -> (u64, u64) {
    profiles.iter().fold((0, 0), |(s1, s2), p| {
        (s1 + p.alpha1().len() as u64, s2 + p.alpha2().len() as u64)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovabilityBoundOutcome {
    /// `|F| ≥ C(n−1,k−1)`.
    pub applicable: bool,
    /// `None` when not applicable.
    pub holds: Option<bool>,
    pub equality: bool,
    /// The left side equals `lhs_numerator / lhs_denominator`.
    pub lhs_numerator: BigCount,
    pub lhs_denominator: BigCount,
    pub rhs: BigCount,
}

/// `Σ_A |α^1(A)| + (n−k−1)/(2(n−k)) · |α^2(A)| ≤ C(n−1,k−1)` for `|F| ≥ C(n−1,k−1)`.
pub fn removability_bound_check(family: &KUniformFamily) -> Result<RemovabilityBoundOutcome> {
    let (n, k) = (family.n() as u64, family.k() as u64);
    if k >= n {
        return Err(Error::Precondition(format!(
            "need k < n, got n = {n}, k = {k}"
        )));
    }
    let rhs = binomial(n - 1, k - 1);
    let applicable = big(family.len() as u64) >= rhs;
    let (s1, s2) = alpha_sums(&profiles(family));
    let lhs_numerator = big(2 * (n - k) * s1 + (n - k - 1) * s2);
    let lhs_denominator = big(2 * (n - k));
    let scaled_rhs = &lhs_denominator * &rhs;
    Ok(RemovabilityBoundOutcome {
        applicable,
        holds: applicable.then(|| lhs_numerator <= scaled_rhs),
        equality: lhs_numerator == scaled_rhs,
        lhs_numerator,
        lhs_denominator,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementIdentity {
    /// `|F|k + |F^C|k = n·C(n−1,k−1)`.
    pub size_identity: bool,
    /// `2·Σ_{A∈F^C}(|α^{n−k}| + |α^{n−k−1}|) = Σ_{A∈F}(2(n−k)|α^1| + (n−k−1)|α^2|)`.
    pub bridge_identity: bool,
    pub complement_side: BigCount,
    pub family_side: BigCount,
}

impl ComplementIdentity {
    pub fn holds(&self) -> bool {
        self.size_identity && self.bridge_identity
    }
}

/// Evaluates both identities relating `F` to its complement `F^C`.
pub fn complement_identity(family: &KUniformFamily) -> Result<ComplementIdentity> {
    let (n, k) = (family.n(), family.k());
    if k >= n {
        return Err(Error::Precondition(format!(
            "need k < n, got n = {n}, k = {k}"
        )));
    }
    let complement = family.complement();
    let size_identity = big(family.len() as u64 * k as u64)
        + big(complement.len() as u64 * k as u64)
        == big(n as u64) * binomial(n as u64 - 1, k as u64 - 1);

    let high = n - k;
    let complement_side: u64 = profiles(&complement)
        .iter()
        .map(|p| (p.class(high).len() + if high > 1 { p.class(high - 1).len() } else { 0 }) as u64)
        .sum();
    let (s1, s2) = alpha_sums(&profiles(family));
    let family_side = 2 * high as u64 * s1 + (high as u64 - 1) * s2;
    Ok(ComplementIdentity {
        size_identity,
        bridge_identity: 2 * complement_side == family_side,
        complement_side: big(2 * complement_side),
        family_side: big(family_side),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarredCountBoundOutcome {
    pub holds: bool,
    pub equality: bool,
    /// `Σ_A (C(k,d) − C(|A∖α^1(A)|,d) + C(|α^2(A)|,d))`.
    pub lhs: BigCount,
    /// `d · C(k−1,d−1) · Σ_A (|α^1(A)| + |α^2(A)|/d)`.
    pub rhs_times_d: BigCount,
}

/// Compares `d·lhs` with `rhs_times_d`.
pub fn starred_count_bound_check(
    family: &KUniformFamily,
    d: usize,
) -> Result<StarredCountBoundOutcome> {
    let (n, k) = (family.n(), family.k());
    if d == 0 || d + 1 > k || k >= n {
        return Err(Error::Precondition(format!(
            "need 1 <= d, d + 1 <= k < n, got n = {n}, k = {k}, d = {d}"
        )));
    }
    let profs = profiles(family);
    let lhs: BigCount = profs
        .iter()
        .map(|p| starred_count_from_profile(p, k, d))
        .sum();
    let (s1, s2) = alpha_sums(&profs);
    let rhs_times_d = binomial(k as u64 - 1, d as u64 - 1) * big(d as u64 * s1 + s2);
    let scaled = &lhs * big(d as u64);
    Ok(StarredCountBoundOutcome {
        holds: scaled <= rhs_times_d,
        equality: scaled == rhs_times_d,
        lhs,
        rhs_times_d,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Equal,
    AtMost,
}

/// One scaled comparison `lhs / denominator  ? rhs / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub id: &'static str,
    pub description: &'static str,
    pub lhs: BigCount,
    pub rhs: BigCount,
    pub denominator: BigCount,
    pub expected: Expected,
    /// False when the step's hypothesis is not met; such steps are reported
    /// but do not enter the verdict.
    pub applicable: bool,
}

impl ChainStep {
    pub fn relation(&self) -> Ordering {
        self.lhs.cmp(&self.rhs)
    }

    pub fn holds(&self) -> bool {
        match self.expected {
            Expected::Equal => self.lhs == self.rhs,
            Expected::AtMost => self.lhs <= self.rhs,
        }
    }

    fn relation_symbol(&self) -> &'static str {
        match self.relation() {
            Ordering::Less => "<",
            Ordering::Equal => "=",
            Ordering::Greater => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub family_size: usize,
    pub steps: Vec<ChainStep>,
    /// `d`-sets whose individual per-shade comparison failed.
    pub per_shade_failures: usize,
    pub verdict: bool,
}

impl ChainReport {
    pub fn step(&self, id: &str) -> Option<&ChainStep> {
        self.steps.iter().find(|s| s.id == id)
    }

    /// True when every applicable step is an equality.
    pub fn all_equalities(&self) -> bool {
        self.steps
            .iter()
            .filter(|s| s.applicable)
            .all(|s| s.relation() == Ordering::Equal)
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# chain n={} k={} d={} |F|={}",
            self.n, self.k, self.d, self.family_size
        )?;
        writeln!(f, "step\tlhs\trhs\tdenominator\trelation\texpected\tstatus")?;
        for s in &self.steps {
            let expected = match s.expected {
                Expected::Equal => "=",
                Expected::AtMost => "<=",
            };
            let status = if !s.applicable {
                "skipped"
            } else if s.holds() {
                "ok"
            } else {
                "FAIL"
            };
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                s.id,
                s.lhs,
                s.rhs,
                s.denominator,
                s.relation_symbol(),
                expected,
                status
            )?;
        }
        writeln!(f, "per-shade failures\t{}", self.per_shade_failures)?;
        writeln!(
            f,
            "verdict\t{}",
            if self.verdict { "holds" } else { "FAILS" }
        )
    }
}

fn require_bound_scope(n: usize, k: usize, d: usize) -> Result<()> {
    if !(d >= 3 && d < k && 2 * k <= n) {
        return Err(Error::Precondition(format!(
            "need 4 <= d + 1 <= k <= n/2, got n = {n}, k = {k}, d = {d}"
        )));
    }
    Ok(())
}

/// Evaluates the summed-shade argument for a simplex-cluster-free family
/// step by step.
///
/// Steps, with their scaling:
/// - `shade-sum`: `|F|·C(k,d) = Σ_D |∇(D)|`
/// - `per-shade`: `(n−d)·Σ_D |∇(D)| ≤ (n−d)·C(n−d−1,k−d−1)·C(n,d) + (n−k)·Σ_D |∇*(D)|`
/// - `starred-sum`: `Σ_D |∇*(D)| = Σ_A (C(k,d) − C(|A∖α^1|,d) + C(|α^2|,d))`
/// - `removability`: the starred sum times `d` against `C(k−1,d−1)·Σ_A(d|α^1| + |α^2|)`
/// - `saturation`: `C(k−1,d−1)·Σ_A(d|α^1| + |α^2|) ≤ d·C(k−1,d−1)·C(n−1,k−1)`,
///   applicable only when `|F| ≥ C(n−1,k−1)`
/// - `constant-term`: `k(n−d)·C(n−d−1,k−d−1)·C(n,d) = n(k−d)·C(n−1,k−1)·C(k,d)`
/// - `collapse`: `n(k−d) + d(n−k) = k(n−d)`
/// - `bound`: `|F|·C(k,d) ≤ C(n−1,k−1)·C(k,d)`
pub fn main_chain_check(family: &KUniformFamily, d: usize) -> Result<ChainReport> {
    let (n, k) = (family.n(), family.k());
    require_bound_scope(n, k, d)?;
    if let Some(w) = find_simplex_cluster(family, d) {
        return Err(Error::Precondition(format!(
            "family contains the {d}-simplex-cluster {:?}",
            w.sets
        )));
    }
    let (nu, ku, du) = (n as u64, k as u64, d as u64);
    let profs = profiles(family);

    let d_sets = binomial_u64(n, d) as usize;
    let mut shade_sizes = vec![0u64; d_sets];
    let mut starred_sizes = vec![0u64; d_sets];
    for p in &profs {
        for sub in submasks_of_size(p.member.mask(), d) {
            let r = colex_rank_mask(sub) as usize;
            shade_sizes[r] += 1;
            if p.is_starred_for(&ElementSet::from_mask_unchecked(n, sub)) {
                starred_sizes[r] += 1;
            }
        }
    }
    let shade_total: u64 = shade_sizes.iter().sum();
    let starred_total: u64 = starred_sizes.iter().sum();

    let reduced_bound = binomial(nu - du - 1, ku - du - 1);
    let per_shade_failures = shade_sizes
        .iter()
        .zip(&starred_sizes)
        .filter(|&(&s, &t)| big((nu - du) * s) > big(nu - du) * &reduced_bound + big((nu - ku) * t))
        .count();

    let c_kd = binomial(ku, du);
    let c_k1d1 = binomial(ku - 1, du - 1);
    let bound = binomial(nu - 1, ku - 1);
    let one = big(1u32);
    let member_sum: BigCount = profs
        .iter()
        .map(|p| starred_count_from_profile(p, k, d))
        .sum();
    let (s1, s2) = alpha_sums(&profs);
    let weighted_alpha = &c_k1d1 * big(du * s1 + s2);

    let steps = vec![
        ChainStep {
            id: "shade-sum",
            description: "each member has C(k,d) d-subsets",
            lhs: big(family.len() as u64) * &c_kd,
            rhs: big(shade_total),
            denominator: one.clone(),
            expected: Expected::Equal,
            applicable: true,
        },
        ChainStep {
            id: "per-shade",
            description: "arc-counting bound applied inside every shade, summed",
            lhs: big((nu - du) * shade_total),
            rhs: big(nu - du) * &reduced_bound * binomial(nu, du) + big((nu - ku) * starred_total),
            denominator: big(nu - du),
            expected: Expected::AtMost,
            applicable: true,
        },
        ChainStep {
            id: "starred-sum",
            description: "starred shades counted per member",
            lhs: big(starred_total),
            rhs: member_sum.clone(),
            denominator: one.clone(),
            expected: Expected::Equal,
            applicable: true,
        },
        ChainStep {
            id: "removability",
            description: "per-member starred count against alpha sizes",
            lhs: member_sum * big(du),
            rhs: weighted_alpha.clone(),
            denominator: big(du),
            expected: Expected::AtMost,
            applicable: true,
        },
        ChainStep {
            id: "saturation",
            description: "alpha sizes against C(n-1,k-1) for large families",
            lhs: weighted_alpha,
            rhs: big(du) * &c_k1d1 * &bound,
            denominator: big(du),
            expected: Expected::AtMost,
            applicable: big(family.len() as u64) >= bound,
        },
        ChainStep {
            id: "constant-term",
            description: "C(n-d-1,k-d-1) C(n,d) = C(n-1,k-1) C(k,d) n(k-d)/(k(n-d))",
            lhs: big(ku * (nu - du)) * &reduced_bound * binomial(nu, du),
            rhs: big(nu * (ku - du)) * &bound * &c_kd,
            denominator: big(ku * (nu - du)),
            expected: Expected::Equal,
            applicable: true,
        },
        ChainStep {
            id: "collapse",
            description: "n(k-d) + d(n-k) = k(n-d)",
            lhs: big(nu * (ku - du) + du * (nu - ku)),
            rhs: big(ku * (nu - du)),
            denominator: big(ku * (nu - du)),
            expected: Expected::Equal,
            applicable: true,
        },
        ChainStep {
            id: "bound",
            description: "|F| C(k,d) <= C(n-1,k-1) C(k,d)",
            lhs: big(family.len() as u64) * &c_kd,
            rhs: bound * &c_kd,
            denominator: one,
            expected: Expected::AtMost,
            applicable: true,
        },
    ];
    let verdict =
        per_shade_failures == 0 && steps.iter().filter(|s| s.applicable).all(ChainStep::holds);
    Ok(ChainReport {
        n,
        k,
        d,
        family_size: family.len(),
        steps,
        per_shade_failures,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerShadeOutcome {
    pub holds: bool,
    pub equality: bool,
    /// `(n−d)·|∇(D)|`.
    pub lhs_scaled: BigCount,
    /// `(n−d)·C(n−d−1,k−d−1) + (n−k)·|∇*(D)|`.
    pub rhs_scaled: BigCount,
    pub shade_size: usize,
    pub starred_size: usize,
    /// Every pair of shade members meeting exactly in `D` lies in `∇*(D)`.
    pub bridge_holds: bool,
}

pub fn per_shade_cycle_bound(
    family: &KUniformFamily,
    d_set: &ElementSet,
    d: usize,
) -> Result<PerShadeOutcome> {
    let (n, k) = (family.n() as u64, family.k() as u64);
    if d_set.len() != d || d_set.universe() != family.n() {
        return Err(Error::Precondition(format!(
            "|D| = {} but d = {d}",
            d_set.len()
        )));
    }
    if d as u64 >= k {
        return Err(Error::Precondition(format!(
            "need d < k, got d = {d}, k = {k}"
        )));
    }
    let members: Vec<(ElementSet, bool)> = family
        .iter()
        .filter(|m| d_set.is_subset(m))
        .map(|m| (*m, alpha_profile_unchecked(family, m).is_starred_for(d_set)))
        .collect();
    let starred_size = members.iter().filter(|(_, s)| *s).count();
    let bridge_holds = members.iter().enumerate().all(|(i, (a, sa))| {
        members[i + 1..]
            .iter()
            .all(|(b, sb)| a.intersection(b) != *d_set || (*sa && *sb))
    });
    let du = d as u64;
    let lhs = big((n - du) * members.len() as u64);
    let rhs = big(n - du) * binomial(n - du - 1, k - du - 1) + big((n - k) * starred_size as u64);
    Ok(PerShadeOutcome {
        holds: lhs <= rhs,
        equality: lhs == rhs,
        lhs_scaled: lhs,
        rhs_scaled: rhs,
        shade_size: members.len(),
        starred_size,
        bridge_holds,
    })
}

/// Packs the bits of `mask` outside `removed` into the low positions.
fn squeeze(mask: u64, removed: u64) -> u64 {
    let mut out = 0u64;
    let mut j = 0;
    for p in 0..64 {
        if removed >> p & 1 == 1 {
            continue;
        }
        out |= (mask >> p & 1) << j;
        j += 1;
    }
    out
}

/// `{A∖D : A ∈ ∇(D)}` and `{A∖D : A ∈ ∇*(D)}` over `[n]∖D`, relabelled to `[n−d]`.
pub fn reduce_shade(
    family: &KUniformFamily,
    d_set: &ElementSet,
    d: usize,
) -> Result<(KUniformFamily, KUniformFamily)> {
    let (n, k) = (family.n(), family.k());
    if d_set.len() != d || d >= k {
        return Err(Error::Precondition(format!(
            "need |D| = d < k, got |D| = {}, d = {d}, k = {k}",
            d_set.len()
        )));
    }
    let mut plain = Vec::new();
    let mut starred = Vec::new();
    for m in family.iter().filter(|m| d_set.is_subset(m)) {
        let reduced = squeeze(m.mask(), d_set.mask());
        plain.push(reduced);
        if alpha_profile_unchecked(family, m).is_starred_for(d_set) {
            starred.push(reduced);
        }
    }
    Ok((
        KUniformFamily::from_masks(n - d, k - d, plain)?,
        KUniformFamily::from_masks(n - d, k - d, starred)?,
    ))
}

/// The arc-counting check applied literally to the reduced shade of `D`.
pub fn per_shade_via_reduction(
    family: &KUniformFamily,
    d_set: &ElementSet,
    d: usize,
) -> Result<CycleBoundOutcome> {
    let (reduced, reduced_star) = reduce_shade(family, d_set, d)?;
    cycle_bound_check(&reduced, &reduced_star)
}

/// Structure forced on a family attaining the bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityAnalysis {
    /// `|G_d|`, the `d`-sets whose whole shade lies in the family.
    pub saturated_d: usize,
    /// `|G_{d+1}|`.
    pub saturated_d_plus_1: usize,
    /// Every `∇(D)` with `|D| = d` is either all `k`-supersets of `D` or a
    /// maximum `(d+1)`-star.
    pub dichotomy_holds: bool,
    /// Common element of `G_{d+1}`, if it is a star.
    pub center: Option<usize>,
    /// Members through `center`.
    pub center_degree: usize,
    pub family_is_star: bool,
}

pub fn equality_analysis(family: &KUniformFamily, d: usize) -> Result<EqualityAnalysis> {
    let (n, k) = (family.n(), family.k());
    if d == 0 || d + 1 > k {
        return Err(Error::Precondition(format!(
            "need 1 <= d < k, got d = {d}, k = {k}"
        )));
    }
    let g_d = saturated_shades(family, d)?;
    let g_d1 = saturated_shades(family, d + 1)?;
    let dichotomy_holds = enumerate_k_subsets(n, d)?.all(|dset| {
        let shade = family.filter(|m| dset.is_subset(m));
        if shade.len() as u64 == binomial_u64(n - d, k - d) {
            return true;
        }
        let common = shade.common_elements().difference(&dset);
        !shade.is_empty()
            && common
                .iter()
                .any(|x| is_maximum_s_star(&shade, &dset.with(x)))
    });
    let common = g_d1
        .iter()
        .fold(crate::combinatorics::low_mask(n), |acc, s| acc & s.mask());
    let center = (!g_d1.is_empty() && common != 0).then(|| common.trailing_zeros() as usize + 1);
    let center_degree = center.map_or(0, |c| family.iter().filter(|m| m.contains(c)).count());
    Ok(EqualityAnalysis {
        saturated_d: g_d.len(),
        saturated_d_plus_1: g_d1.len(),
        dichotomy_holds,
        center,
        center_degree,
        family_is_star: family.is_maximum_star(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn set(n: usize, e: &[usize]) -> ElementSet {
        ElementSet::from_elements(n, e).unwrap()
    }

    fn star(n: usize, k: usize, c: usize) -> KUniformFamily {
        KUniformFamily::full(n, k)
            .unwrap()
            .filter(|m| m.contains(c))
    }

    #[test]
    fn removability_bound_examples() {
        let full = KUniformFamily::full(8, 3).unwrap();
        let out = removability_bound_check(&full).unwrap();
        assert!(out.applicable && out.holds == Some(true));
        assert!(out.lhs_numerator.is_zero());
        let st = star(8, 3, 2);
        let out = removability_bound_check(&st).unwrap();
        assert_eq!(out.holds, Some(true));
        assert!(out.equality);
        assert_eq!(out.rhs, big(21u32));
        let small = st.without_member(&set(8, &[1, 2, 3]));
        let out = removability_bound_check(&small).unwrap();
        assert!(!out.applicable && out.holds.is_none());
        assert!(removability_bound_check(&KUniformFamily::full(4, 4).unwrap()).is_err());
    }

    #[test]
    fn complement_identity_examples() {
        let st = star(6, 2, 1);
        let out = complement_identity(&st).unwrap();
        assert!(out.size_identity && out.bridge_identity);
        let empty = KUniformFamily::empty(6, 2).unwrap();
        assert!(complement_identity(&empty).unwrap().holds());
        let full = KUniformFamily::full(7, 3).unwrap();
        assert!(complement_identity(&full).unwrap().holds());
        // n - k = 1: the lower class index degenerates
        assert!(complement_identity(&star(5, 4, 2)).unwrap().holds());
    }

    #[test]
    fn starred_count_bound_examples() {
        let st = star(9, 4, 1);
        let out = starred_count_bound_check(&st, 3).unwrap();
        assert!(out.holds && out.equality);
        assert_eq!(out.lhs, big(56u32) * binomial(3, 2));
        let full = KUniformFamily::full(8, 4).unwrap();
        let out = starred_count_bound_check(&full, 3).unwrap();
        assert!(out.equality && out.lhs.is_zero());
        assert!(starred_count_bound_check(&full, 4).is_err());
    }

    #[test]
    fn chain_on_star_is_all_equalities() {
        let st = star(8, 4, 1);
        let report = main_chain_check(&st, 3).unwrap();
        assert!(report.verdict);
        assert!(report.all_equalities(), "{report}");
        assert_eq!(report.step("bound").unwrap().lhs, big(35u32 * 4));
    }

    #[test]
    fn chain_on_star_minus_one_is_strict() {
        let st = star(10, 4, 1).without_member(&set(10, &[1, 2, 3, 4]));
        let report = main_chain_check(&st, 3).unwrap();
        assert!(report.verdict);
        assert_eq!(report.step("bound").unwrap().relation(), Ordering::Less);
        assert!(!report.step("saturation").unwrap().applicable);
    }

    #[test]
    fn chain_refuses_bad_input() {
        let full = KUniformFamily::full(8, 4).unwrap();
        assert!(main_chain_check(&full, 3).is_err());
        assert!(main_chain_check(&star(8, 4, 1), 2).is_err());
        assert!(main_chain_check(&star(7, 4, 1), 3).is_err());
    }

    #[test]
    fn report_table_format() {
        let text = main_chain_check(&star(8, 4, 1), 3).unwrap().to_string();
        assert!(text.starts_with("# chain n=8 k=4 d=3 |F|=35\n"));
        assert!(text.contains("shade-sum\t140\t140\t1\t=\t=\tok"));
        assert!(text.ends_with("verdict\tholds\n"));
    }

    #[test]
    fn per_shade_examples() {
        let st = star(10, 4, 1);
        let through = per_shade_cycle_bound(&st, &set(10, &[1, 4, 7]), 3).unwrap();
        // |∇| = C(7,1) = 7; RHS = 7·C(6,0) + 6·7 = 49 = 7·7
        assert_eq!(through.shade_size, 7);
        assert_eq!(through.starred_size, 7);
        assert!(through.holds && through.equality && through.bridge_holds);
        let away = per_shade_cycle_bound(&st, &set(10, &[2, 4, 7]), 3).unwrap();
        assert_eq!(away.shade_size, 1);
        assert_eq!(away.starred_size, 0);
        assert!(away.equality);
        let empty = KUniformFamily::empty(10, 4).unwrap();
        let out = per_shade_cycle_bound(&empty, &set(10, &[2, 4, 7]), 3).unwrap();
        assert!(out.holds && out.lhs_scaled.is_zero());
    }

    #[test]
    fn reduction_matches_direct_count() {
        let st = star(10, 4, 1);
        for dset in [set(10, &[1, 4, 7]), set(10, &[2, 4, 7])] {
            let direct = per_shade_cycle_bound(&st, &dset, 3).unwrap();
            let reduced = per_shade_via_reduction(&st, &dset, 3).unwrap();
            assert_eq!(direct.holds, reduced.holds);
            assert_eq!(direct.lhs_scaled, reduced.lhs_scaled);
            assert_eq!(direct.rhs_scaled, reduced.rhs_scaled);
        }
    }

    #[test]
    fn squeeze_relabels() {
        assert_eq!(squeeze(0b1011_0110, 0b0000_0110), 0b10_1100);
        assert_eq!(squeeze(0b1111, 0b0101), 0b11);
    }

    #[test]
    fn equality_structure_of_star() {
        let st = star(8, 4, 3);
        let eq = equality_analysis(&st, 3).unwrap();
        assert!(eq.dichotomy_holds);
        assert_eq!(eq.saturated_d, binomial_u64(7, 2) as usize);
        assert_eq!(eq.saturated_d_plus_1, binomial_u64(7, 3) as usize);
        assert_eq!(eq.center, Some(3));
        assert_eq!(eq.center_degree, 35);
        assert!(eq.family_is_star);
        let minus = st.without_member(&set(8, &[1, 2, 3, 4]));
        assert!(!equality_analysis(&minus, 3).unwrap().dichotomy_holds);
    }
}
