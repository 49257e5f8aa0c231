//! The coset-tower normal form for chains of type A or B: every element
//! decomposes uniquely as `w_1 w_2 ... w_r` with `w_i` a minimum-length
//! right coset representative of the rank-(i-1) parabolic inside the
//! rank-i one, and each representative has a unique reduced expression.

use thiserror::Error;

use super::graph::{CoxeterGraph, LinearType};
use super::group::{ElementId, GroupTable};

#[derive(Debug, Error)]
pub enum TowerError {
    #[error("normal form is only defined for bond matrices of type A or B")]
    NotLinear,
    #[error("coset representative of length {len} does not exist at level {level}")]
    BadRepresentative { level: usize, len: usize },
}

/// The unique reduced expression of the level-`r` representative of
/// length `len` (generators 0-based, level counted 1-based).
fn representative_word(kind: LinearType, r: usize, len: usize) -> Result<Vec<u8>, TowerError> {
    let max = match kind {
        LinearType::A => r,
        LinearType::B => 2 * r - 1,
    };
    if len > max {
        return Err(TowerError::BadRepresentative { level: r, len });
    }
    let mut word: Vec<u8> = Vec::with_capacity(len);
    // Descending sweep s_r, s_{r-1}, ..., then (type B) back up from s_2.
    for k in 0..len.min(r) {
        word.push((r - 1 - k) as u8);
    }
    for k in 0..len.saturating_sub(r) {
        word.push((k + 1) as u8);
    }
    Ok(word)
}

/// The reduced expressions of all minimum-length right coset
/// representatives at level `r`, in increasing length.
pub fn tower_words(graph: &CoxeterGraph, r: usize) -> Result<Vec<Vec<u8>>, TowerError> {
    let kind = graph.linear_type().ok_or(TowerError::NotLinear)?;
    let max = match kind {
        LinearType::A => r,
        LinearType::B => 2 * r - 1,
    };
    (0..=max)
        .map(|len| representative_word(kind, r, len))
        .collect()
}

/// The tower normal form of `w`: concatenation of the unique reduced
/// expressions of its coset representatives, one per level. For each
/// position `k` of the result, either letter `k` does not occur earlier
/// or it does not commute with letter `k - 1`.
pub fn normal_form(table: &GroupTable, w: ElementId) -> Result<Vec<u8>, TowerError> {
    let kind = table.graph().linear_type().ok_or(TowerError::NotLinear)?;
    let mut parts_rev: Vec<Vec<u8>> = Vec::new();
    let mut u = w;
    for r in (1..=table.rank()).rev() {
        // Strip left descents among the lower r-1 generators to reach the
        // minimum-length representative of the coset.
        let mut y = u;
        'strip: loop {
            for s in 0..(r - 1) as u8 {
                if table.has_left_descent(s, y) {
                    y = table.left_mul(s, y);
                    continue 'strip;
                }
            }
            break;
        }
        let word = representative_word(kind, r, table.length(y))?;
        debug_assert_eq!(table.element_of_word(&word), y);
        parts_rev.push(word);
        u = table.mul(u, table.inverse(y));
    }
    debug_assert_eq!(u, table.identity());
    let mut out = Vec::with_capacity(table.length(w));
    for part in parts_rev.into_iter().rev() {
        out.extend(part);
    }
    debug_assert_eq!(out.len(), table.length(w));
    debug_assert_eq!(table.element_of_word(&out), w);
    Ok(out)
}
