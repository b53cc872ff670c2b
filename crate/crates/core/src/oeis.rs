//! Reading OEIS b-files and comparing them with computed terms.
//!
//! A b-file has one `index value` pair per line; blank lines and lines
//! starting with `#` are ignored. Triangles are read by rows.

use std::fs;
use std::path::{Path, PathBuf};

use num::BigInt;
use serde::Serialize;

use crate::enumerate::count_bigraded;
use crate::error::{Error, Result};
use crate::forest::Family;
use crate::shape::{shape_counts, ShapeCounts};

/// Directory searched for `bNNNNNN.txt` files when none is given explicitly.
pub const BFILE_DIR_VAR: &str = "HYPEROP_BFILE_DIR";

pub fn parse_bfile(text: &str) -> Result<Vec<(i64, BigInt)>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let parsed = match (it.next(), it.next(), it.next()) {
            (Some(i), Some(v), None) => i.parse::<i64>().ok().zip(v.parse::<BigInt>().ok()),
            _ => None,
        };
        let (i, v) = parsed.ok_or_else(|| Error::BFile(format!("line {}: `{line}`", k + 1)))?;
        if let Some((prev, _)) = out.last() {
            if i != prev + 1 {
                return Err(Error::BFile(format!("line {}: index {i} does not follow {prev}", k + 1)));
            }
        }
        out.push((i, v));
    }
    Ok(out)
}

pub fn load_bfile(path: &Path) -> Result<Vec<(i64, BigInt)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::BFile(format!("{}: {e}", path.display())))?;
    parse_bfile(&text)
}

/// The usual file name of the b-file of `id`, e.g. `b005264.txt`.
pub fn bfile_name(id: &str) -> String {
    format!("b{}.txt", id.trim_start_matches('A'))
}

/// The directory named by [`BFILE_DIR_VAR`], if set.
pub fn bfile_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(BFILE_DIR_VAR).map(PathBuf::from)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub id: String,
    pub compared: usize,
    /// Index in the b-file of the first compared term.
    pub found_at: Option<i64>,
}

impl Comparison {
    pub fn matched(&self) -> bool {
        self.found_at.is_some()
    }
}

/// Looks for `terms` as a contiguous run of values in the b-file.
///
/// Offsets and row conventions of OEIS entries vary, so the run is located
/// rather than assumed; the index where it starts is reported.
pub fn compare(id: &str, bfile: &[(i64, BigInt)], terms: &[BigInt]) -> Comparison {
    let found_at = if terms.is_empty() || terms.len() > bfile.len() {
        None
    } else {
        bfile
            .windows(terms.len())
            .find(|w| w.iter().zip(terms).all(|((_, a), b)| a == b))
            .map(|w| w[0].0)
    };
    Comparison {
        id: id.to_string(),
        compared: terms.len(),
        found_at,
    }
}

/// Rows of a triangle flattened in order, also tried with each row reversed.
pub fn compare_triangle(id: &str, bfile: &[(i64, BigInt)], rows: &[Vec<BigInt>]) -> Comparison {
    let flat: Vec<BigInt> = rows.iter().flatten().cloned().collect();
    let c = compare(id, bfile, &flat);
    if c.matched() {
        return c;
    }
    let reversed: Vec<BigInt> = rows.iter().flat_map(|r| r.iter().rev().cloned()).collect();
    compare(id, bfile, &reversed)
}

/// What is compared against an OEIS entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Sequence(Vec<BigInt>),
    Triangle(Vec<Vec<BigInt>>),
    /// Sequences counting the same objects under different conventions;
    /// the first one found is reported.
    Either(Vec<Vec<BigInt>>),
}

fn big(v: impl IntoIterator<Item = u64>) -> Vec<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

/// The OEIS entries that enumeration results are compared with, and the
/// computed terms for arities `1..=max_n` (capped per family).
pub fn targets(max_n: usize) -> Result<Vec<(&'static str, &'static str, Target)>> {
    let upto = |family: Family| max_n.min(family.default_cap());
    let totals = |family: Family| -> Result<Vec<BigInt>> {
        (1..=upto(family))
            .map(|n| Ok(BigInt::from(count_bigraded(family, n)?.total())))
            .collect()
    };
    let greg_rows: Vec<Vec<BigInt>> = (1..=upto(Family::Greg))
        .map(|n| Ok(big(count_bigraded(Family::Greg, n)?.marginal_greg())))
        .collect::<Result<_>>()?;
    let fh_rows: Vec<Vec<BigInt>> = (1..=upto(Family::FH))
        .map(|n| Ok(big(count_bigraded(Family::FH, n)?.marginal_hypertree())))
        .collect::<Result<_>>()?;
    let shapes: Vec<ShapeCounts> = (1..=upto(Family::FH)).map(shape_counts).collect::<Result<_>>()?;
    let pick = |f: fn(&ShapeCounts) -> u64| big(shapes.iter().map(f));
    Ok(vec![
        ("A005264", "Greg trees by arity", Target::Sequence(totals(Family::Greg)?)),
        ("A048160", "Greg trees by arity and black vertices", Target::Triangle(greg_rows)),
        ("A364709", "forests of rooted hypertrees by arity and weight", Target::Triangle(fh_rows)),
        ("A364816", "forests of rooted Greg hypertrees by arity", Target::Sequence(totals(Family::FG)?)),
        (
            "A367752",
            "shapes of rooted hypertrees",
            Target::Either(vec![pick(|s| s.trees), pick(|s| s.trees_on_parts)]),
        ),
        (
            "A367753",
            "shapes of forests of rooted hypertrees",
            Target::Either(vec![pick(|s| s.forests), pick(|s| s.forests_on_parts)]),
        ),
    ])
}

pub fn compare_target(id: &str, bfile: &[(i64, BigInt)], target: &Target) -> Comparison {
    match target {
        Target::Sequence(terms) => compare(id, bfile, terms),
        Target::Triangle(rows) => compare_triangle(id, bfile, rows),
        Target::Either(options) => options
            .iter()
            .map(|terms| compare(id, bfile, terms))
            .find(Comparison::matched)
            .unwrap_or_else(|| compare(id, bfile, &options[0])),
    }
}

/// Compares every target whose b-file is present in `dir`; missing files
/// are returned separately.
pub fn compare_dir(dir: &Path, max_n: usize) -> Result<(Vec<Comparison>, Vec<String>)> {
    let mut done = Vec::new();
    let mut missing = Vec::new();
    for (id, _, target) in targets(max_n)? {
        let path = dir.join(bfile_name(id));
        if !path.exists() {
            missing.push(id.to_string());
            continue;
        }
        done.push(compare_target(id, &load_bfile(&path)?, &target));
    }
    Ok((done, missing))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# sample\n0 1\n1 1\n2 3\n3 22\n\n4 262\n";

    #[test]
    fn parses_and_rejects() {
        let b = parse_bfile(SAMPLE).unwrap();
        assert_eq!(b.len(), 5);
        assert_eq!(b[3], (3, BigInt::from(22)));
        assert!(parse_bfile("1 2 3\n").is_err());
        assert!(parse_bfile("1 2\n3 4\n").is_err());
        assert!(parse_bfile("1 x\n").is_err());
    }

    #[test]
    fn locates_runs() {
        let b = parse_bfile(SAMPLE).unwrap();
        let c = compare("A", &b, &big([1, 3, 22]));
        assert_eq!(c.found_at, Some(1));
        assert!(!compare("A", &b, &big([1, 3, 23])).matched());
        let rows = vec![big([1]), big([3, 1])];
        assert_eq!(compare_triangle("T", &parse_bfile("1 1\n2 1\n3 3\n").unwrap(), &rows).found_at, Some(1));
    }

    #[test]
    fn bfile_names() {
        assert_eq!(bfile_name("A005264"), "b005264.txt");
    }
}
