//! Plain-text family files.
//!
//! ```text
//! # comment
//! 5 2
//! 1 2
//! 1 3
//! ```
//!
//! The first non-comment line is `n k`; every further non-comment line lists
//! one member as `k` distinct ascending 1-based elements separated by single
//! spaces. Lines starting with `#` and blank lines are ignored. Serialization
//! writes members in colex order, so parsing and re-serializing a canonical
//! file reproduces it byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::combinatorics::ElementSet;
use crate::error::{Error, Result};
use crate::family::KUniformFamily;

pub fn parse_family(text: &str) -> Result<KUniformFamily> {
    let mut header: Option<(usize, usize)> = None;
    let mut members: Vec<ElementSet> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let numbers = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| bad(format!("`{t}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        match header {
            None => {
                let [n, k] = numbers[..] else {
                    return Err(bad("header must be `n k`".into()));
                };
                KUniformFamily::empty(n, k).map_err(|e| bad(e.to_string()))?;
                header = Some((n, k));
            }
            Some((n, k)) => {
                if numbers.len() != k {
                    return Err(bad(format!(
                        "expected {k} elements, found {}",
                        numbers.len()
                    )));
                }
                if numbers.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(bad("elements must be distinct and ascending".into()));
                }
                let set = ElementSet::from_elements(n, &numbers).map_err(|e| bad(e.to_string()))?;
                if members.contains(&set) {
                    return Err(bad(format!("member {set} listed twice")));
                }
                members.push(set);
            }
        }
    }
    let (n, k) = header.ok_or(Error::Parse {
        line: 0,
        message: "missing `n k` header".into(),
    })?;
    KUniformFamily::new(n, k, members)
}

pub fn serialize_family(family: &KUniformFamily) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", family.n(), family.k());
    out.push_str(&member_lines(family.members()));
    out
}

/// One line per set, elements separated by single spaces.
pub fn member_lines(sets: &[ElementSet]) -> String {
    let mut out = String::new();
    for m in sets {
        let labels: Vec<String> = m.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}

pub fn read_family(path: &Path) -> Result<KUniformFamily> {
    parse_family(&fs::read_to_string(path)?)
}

pub fn write_family(path: &Path, family: &KUniformFamily) -> Result<()> {
    fs::write(path, serialize_family(family))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let f = parse_family("# triangle\n\n4 2\n2 3\n# mid\n1 2\n1 3\n").unwrap();
        assert_eq!((f.n(), f.k(), f.len()), (4, 2, 3));
        assert_eq!(serialize_family(&f), "4 2\n1 2\n1 3\n2 3\n");
    }

    #[test]
    fn rejects_malformed_files() {
        for bad in [
            "",
            "# only comments\n",
            "4\n",
            "4 2 1\n",
            "4 0\n",
            "65 2\n",
            "4 2\n1 2 3\n",
            "4 2\n2 1\n",
            "4 2\n1 1\n",
            "4 2\n1 5\n",
            "4 2\n0 1\n",
            "4 2\n1 x\n",
            "4 2\n1 2\n1 2\n",
        ] {
            assert!(parse_family(bad).is_err(), "{bad:?}");
        }
        match parse_family("4 2\n1 2\n3 9\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_family_round_trips() {
        let f = parse_family("7 3\n").unwrap();
        assert!(f.is_empty());
        assert_eq!(serialize_family(&f), "7 3\n");
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(n in 2usize..12, seed in any::<u64>(), frac in 0.0f64..1.0) {
            let k = 1 + (seed as usize) % (n - 1);
            let total = crate::combinatorics::binomial_u64(n, k) as usize;
            let size = ((total as f64) * frac) as usize;
            let f = crate::search::random_family(n, k, size, seed).unwrap();
            let text = serialize_family(&f);
            let back = parse_family(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(serialize_family(&back), text);
        }
    }
}
