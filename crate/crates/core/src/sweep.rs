//! Exhaustive check of the arc-counting bound over every family of
//! `k`-subsets of a small universe.
//!
//! A family is an integer mask over the colex-ordered ground set of
//! `C(n,k) ≤ 20` sets, and masks are visited in increasing order. Progress
//! can be written to a plain-text checkpoint after each block and resumed
//! from the last completed mask.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::combinatorics::{binomial_u64, enumerate_k_subsets};
use crate::cycle::{all_cyclic_permutations, EXHAUSTIVE_CYCLE_LIMIT};
use crate::error::{Error, Result};
use crate::family::KUniformFamily;

/// Largest ground set the sweep accepts (`2^20` families).
pub const MAX_GROUND_SET: u64 = 20;

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    /// Also check both arc bounds for every (arrangement, family) pair.
    pub check_arc_bounds: bool,
    pub checkpoint: Option<PathBuf>,
    /// Families per block between checkpoint writes.
    pub block_size: u64,
    /// Stop once this mask is reached (the run can be resumed later).
    pub stop_at: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub n: usize,
    pub k: usize,
    pub families: u64,
    pub failures: u64,
    pub first_failure: Option<KUniformFamily>,
    /// Families meeting the bound with equality (only collected when `n > 2k`).
    pub equality_families: Vec<KUniformFamily>,
    /// Whether equality cases are exactly the full family and the `n` stars.
    pub dichotomy_holds: Option<bool>,
    pub arc_pairs: u64,
    pub arc_violations: u64,
    pub resumed_from: Option<u64>,
    /// False when the run stopped early at `stop_at`.
    pub complete: bool,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.complete
            && self.failures == 0
            && self.arc_violations == 0
            && self.dichotomy_holds != Some(false)
    }
}

/// Running totals; also the checkpoint payload.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Tally {
    families: u64,
    failures: u64,
    first_failure: Option<u64>,
    equality: Vec<u64>,
    arc_pairs: u64,
    arc_violations: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.families += other.families;
        self.failures += other.failures;
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.equality.extend(other.equality);
        self.arc_pairs += other.arc_pairs;
        self.arc_violations += other.arc_violations;
        self
    }
}

struct Ground {
    n: u64,
    k: u64,
    bound: u64,
    /// `disjoint[i]`: ground-set indices of sets disjoint from set `i`.
    disjoint: Vec<u32>,
    /// Ground-set indices forming k-arcs, one mask per arrangement.
    arcs: Vec<u32>,
    collect_equality: bool,
}

impl Ground {
    fn visit(&self, family: u32, tally: &mut Tally) {
        let mut starred = 0u32;
        let mut rest = family;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if family & self.disjoint[i] != 0 {
                starred |= 1 << i;
            }
        }
        let size = family.count_ones() as u64;
        let lhs = self.n * size;
        let rhs = self.n * self.bound + (self.n - self.k) * starred.count_ones() as u64;
        tally.families += 1;
        if lhs > rhs {
            tally.failures += 1;
            tally.first_failure = Some(
                tally
                    .first_failure
                    .map_or(family as u64, |f| f.min(family as u64)),
            );
        } else if lhs == rhs && self.collect_equality {
            tally.equality.push(family as u64);
        }
        if !self.arcs.is_empty() {
            let plain = family & !starred;
            for &arc in &self.arcs {
                let p = (plain & arc).count_ones() as u64;
                let s = (starred & arc).count_ones() as u64;
                let plain_bound = p <= self.k;
                let starred_bound = p == 0 || s + 2 * p <= 2 * self.k;
                if !(plain_bound && starred_bound) {
                    tally.arc_violations += 1;
                }
            }
            tally.arc_pairs += self.arcs.len() as u64;
        }
    }
}

fn render_checkpoint(n: usize, k: usize, next_mask: u64, t: &Tally) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# exhaustive sweep checkpoint");
    let _ = writeln!(s, "n {n}");
    let _ = writeln!(s, "k {k}");
    let _ = writeln!(s, "next_mask {next_mask}");
    let _ = writeln!(s, "families {}", t.families);
    let _ = writeln!(s, "failures {}", t.failures);
    let _ = writeln!(
        s,
        "first_failure {}",
        t.first_failure.map_or("-".to_string(), |f| f.to_string())
    );
    let _ = writeln!(s, "arc_pairs {}", t.arc_pairs);
    let _ = writeln!(s, "arc_violations {}", t.arc_violations);
    let eq: Vec<String> = t.equality.iter().map(|m| m.to_string()).collect();
    let _ = writeln!(s, "equality {}", eq.join(" "));
    s
}

fn parse_checkpoint(text: &str, n: usize, k: usize) -> Result<(u64, Tally)> {
    let mut next_mask = None;
    let mut t = Tally::default();
    let mut seen_n = None;
    let mut seen_k = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::Parse {
            line: i + 1,
            message: msg.to_string(),
        };
        let (key, value) = line.split_once(' ').unwrap_or((line, ""));
        let num = |v: &str| {
            v.trim()
                .parse::<u64>()
                .map_err(|_| bad("expected an integer"))
        };
        match key {
            "n" => seen_n = Some(num(value)?),
            "k" => seen_k = Some(num(value)?),
            "next_mask" => next_mask = Some(num(value)?),
            "families" => t.families = num(value)?,
            "failures" => t.failures = num(value)?,
            "first_failure" => {
                t.first_failure = if value.trim() == "-" {
                    None
                } else {
                    Some(num(value)?)
                }
            }
            "arc_pairs" => t.arc_pairs = num(value)?,
            "arc_violations" => t.arc_violations = num(value)?,
            "equality" => t.equality = value.split_whitespace().map(num).collect::<Result<_>>()?,
            _ => return Err(bad("unknown checkpoint key")),
        }
    }
    if seen_n != Some(n as u64) || seen_k != Some(k as u64) {
        return Err(Error::InvalidParameters(format!(
            "checkpoint is not for n = {n}, k = {k}"
        )));
    }
    let next_mask = next_mask.ok_or(Error::Parse {
        line: 0,
        message: "missing next_mask".into(),
    })?;
    Ok((next_mask, t))
}

fn write_checkpoint(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Runs (or resumes) the sweep over every `F ⊆ ([n] choose k)` with the
/// minimal admissible `F*`.
pub fn exhaustive_cycle_bound_sweep(
    n: usize,
    k: usize,
    options: &SweepOptions,
) -> Result<SweepReport> {
    KUniformFamily::empty(n, k)?;
    if n < 2 * k {
        return Err(Error::Precondition(format!(
            "need n >= 2k, got n = {n}, k = {k}"
        )));
    }
    let ground_len = binomial_u64(n, k);
    if ground_len > MAX_GROUND_SET {
        return Err(Error::Precondition(format!(
            "C({n},{k}) = {ground_len} sets exceeds the sweep ceiling of {MAX_GROUND_SET}"
        )));
    }
    if options.check_arc_bounds && n > EXHAUSTIVE_CYCLE_LIMIT {
        return Err(Error::Precondition(format!(
            "arc-bound checks need n <= {EXHAUSTIVE_CYCLE_LIMIT}"
        )));
    }
    let sets: Vec<u64> = enumerate_k_subsets(n, k)?.map(|s| s.mask()).collect();
    let index_of = |mask: u64| sets.binary_search(&mask).expect("arcs are k-sets") as u32;
    let disjoint: Vec<u32> = sets
        .iter()
        .map(|&a| {
            sets.iter()
                .enumerate()
                .filter(|&(_, &b)| a & b == 0)
                .fold(0u32, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let arcs: Vec<u32> = if options.check_arc_bounds {
        all_cyclic_permutations(n)
            .map(|s| {
                s.arc_masks(k)
                    .into_iter()
                    .fold(0u32, |acc, m| acc | 1 << index_of(m))
            })
            .collect()
    } else {
        Vec::new()
    };
    let ground = Ground {
        n: n as u64,
        k: k as u64,
        bound: binomial_u64(n - 1, k - 1),
        disjoint,
        arcs,
        collect_equality: n > 2 * k,
    };

    let end = 1u64 << ground_len;
    let (mut next, mut tally, resumed_from) = match &options.checkpoint {
        Some(path) if path.exists() => {
            let (next, t) = parse_checkpoint(&fs::read_to_string(path)?, n, k)?;
            (next.min(end), t, Some(next))
        }
        _ => (0, Tally::default(), None),
    };
    let block = if options.block_size == 0 {
        1 << 16
    } else {
        options.block_size
    };
    let limit = options.stop_at.map_or(end, |s| s.min(end));
    while next < limit {
        let stop = (next + block).min(limit);
        let part = (next..stop)
            .into_par_iter()
            .fold(Tally::default, |mut t, f| {
                ground.visit(f as u32, &mut t);
                t
            })
            .reduce(Tally::default, Tally::merge);
        tally = tally.merge(part);
        next = stop;
        if let Some(path) = &options.checkpoint {
            write_checkpoint(path, &render_checkpoint(n, k, next, &tally))?;
        }
    }

    let to_family = |mask: u64| {
        KUniformFamily::from_masks(
            n,
            k,
            (0..ground_len as usize)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| sets[i]),
        )
        .expect("ground set members are valid")
    };
    tally.equality.sort_unstable();
    tally.equality.dedup();
    let complete = next >= end;
    let dichotomy_holds = (complete && n > 2 * k).then(|| {
        let full = end - 1;
        let mut expected: Vec<u64> = (1..=n)
            .map(|c| {
                (0..ground_len as usize)
                    .filter(|&i| sets[i] >> (c - 1) & 1 == 1)
                    .fold(0u64, |acc, i| acc | 1 << i)
            })
            .collect();
        expected.push(full);
        expected.sort_unstable();
        expected.dedup();
        expected == tally.equality
    });
    Ok(SweepReport {
        n,
        k,
        families: tally.families,
        failures: tally.failures,
        first_failure: tally.first_failure.map(to_family),
        equality_families: tally.equality.iter().map(|&m| to_family(m)).collect(),
        dichotomy_holds,
        arc_pairs: tally.arc_pairs,
        arc_violations: tally.arc_violations,
        resumed_from,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::{cycle_bound_check, minimal_fstar};

    #[test]
    fn small_sweeps() {
        let r = exhaustive_cycle_bound_sweep(
            4,
            2,
            &SweepOptions {
                check_arc_bounds: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.families, 64);
        assert!(r.passed());
        assert_eq!(r.dichotomy_holds, None);
        assert_eq!(r.arc_pairs, 64 * 6);

        let r = exhaustive_cycle_bound_sweep(5, 2, &SweepOptions::default()).unwrap();
        assert_eq!(r.families, 1024);
        assert_eq!(r.failures, 0);
        assert_eq!(r.equality_families.len(), 6);
        assert_eq!(r.dichotomy_holds, Some(true));
    }

    #[test]
    fn fast_path_matches_general_checker() {
        let sets: Vec<u64> = enumerate_k_subsets(5, 2)
            .unwrap()
            .map(|s| s.mask())
            .collect();
        let mut equalities = 0;
        for bits in 0u32..1 << 10 {
            let f = KUniformFamily::from_masks(
                5,
                2,
                (0..10).filter(|i| bits >> i & 1 == 1).map(|i| sets[i]),
            )
            .unwrap();
            let out = cycle_bound_check(&f, &minimal_fstar(&f)).unwrap();
            assert!(out.holds && out.dichotomy_holds);
            equalities += usize::from(out.equality);
        }
        assert_eq!(equalities, 6);
    }

    #[test]
    fn rejects_large_instances() {
        assert!(exhaustive_cycle_bound_sweep(7, 3, &SweepOptions::default()).is_err());
        assert!(exhaustive_cycle_bound_sweep(5, 3, &SweepOptions::default()).is_err());
    }

    #[test]
    fn checkpoint_resume_matches_straight_run() {
        let dir = std::env::temp_dir().join(format!("sweep-ckpt-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("6-2.ckpt");
        let _ = fs::remove_file(&path);
        let straight = exhaustive_cycle_bound_sweep(
            6,
            2,
            &SweepOptions {
                check_arc_bounds: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(straight.passed());

        let interrupted = SweepOptions {
            check_arc_bounds: true,
            checkpoint: Some(path.clone()),
            block_size: 4096,
            stop_at: Some(3 * 4096),
        };
        let first = exhaustive_cycle_bound_sweep(6, 2, &interrupted).unwrap();
        assert!(!first.complete && !first.passed());
        assert_eq!(first.families, 3 * 4096);
        assert!(fs::read_to_string(&path)
            .unwrap()
            .contains("next_mask 12288"));

        let resume = SweepOptions {
            stop_at: None,
            ..interrupted
        };
        let resumed = exhaustive_cycle_bound_sweep(6, 2, &resume).unwrap();
        assert_eq!(resumed.resumed_from, Some(12288));
        assert!(resumed.complete);
        assert_eq!(resumed.families, straight.families);
        assert_eq!(resumed.equality_families, straight.equality_families);
        assert_eq!(resumed.arc_pairs, straight.arc_pairs);
        assert_eq!(resumed.dichotomy_holds, Some(true));

        let text = fs::read_to_string(&path).unwrap();
        assert!(parse_checkpoint(&text, 6, 3).is_err());
        assert_eq!(parse_checkpoint(&text, 6, 2).unwrap().0, 32768);
        fs::remove_dir_all(&dir).unwrap();
    }
}
