use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Outcome of one identity check. `witness` is present exactly when the check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn from_witness(name: &str, anchor: &str, witness: Option<String>) -> Self {
        Check { name: name.to_string(), anchor: anchor.to_string(), passed: witness.is_none(), witness }
    }

    pub fn pass(name: &str, anchor: &str) -> Self {
        Self::from_witness(name, anchor, None)
    }

    pub fn fail(name: &str, anchor: &str, witness: impl Into<String>) -> Self {
        Self::from_witness(name, anchor, Some(witness.into()))
    }

    pub fn from_bool(name: &str, anchor: &str, ok: bool, witness: impl FnOnce() -> String) -> Self {
        Self::from_witness(name, anchor, if ok { None } else { Some(witness()) })
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Splits a flat index into a multi-index, first factor slowest.
pub fn multi_index(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, d) in out.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

const MAX_LISTED: usize = 16;

/// Entrywise comparison; on mismatch lists `(multi-index, lhs, rhs)` triples.
pub fn compare(lhs: &[Scalar], rhs: &[Scalar], dims: &[usize]) -> Option<String> {
    if lhs.len() != rhs.len() {
        return Some(format!("length {} vs {}", lhs.len(), rhs.len()));
    }
    let bad: Vec<usize> = (0..lhs.len()).filter(|&i| lhs[i] != rhs[i]).collect();
    if bad.is_empty() {
        return None;
    }
    let mut parts: Vec<String> = bad
        .iter()
        .take(MAX_LISTED)
        .map(|&i| format!("{:?}: {} vs {}", multi_index(i, dims), lhs[i], rhs[i]))
        .collect();
    if bad.len() > MAX_LISTED {
        parts.push(format!("... {} more", bad.len() - MAX_LISTED));
    }
    Some(parts.join("; "))
}

/// First failure among indexed results, in index order.
pub fn first_failure<I>(results: I) -> Option<String>
where
    I: IntoIterator<Item = Option<String>>,
{
    results.into_iter().flatten().next()
}
