//! Word-level combinatorics: braid moves, commutation moves, and the
//! saturation of a word under them. Words are sequences of 0-based
//! generator indices.

use std::collections::{HashSet, VecDeque};

use super::graph::CoxeterGraph;

/// A contiguous alternating run `s s' s ...` of length `m(s, s') >= 3`
/// inside a word, i.e. a reduced expression of the longest element of a
/// non-commuting rank-2 parabolic subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingRun {
    pub pos: usize,
    pub s: u8,
    pub s_prime: u8,
    pub len: usize,
}

/// Finds the leftmost alternating run of full bond length in `word`.
pub fn find_alternating_run(graph: &CoxeterGraph, word: &[u8]) -> Option<AlternatingRun> {
    for pos in 0..word.len().saturating_sub(2) {
        let (a, b) = (word[pos], word[pos + 1]);
        if a == b {
            continue;
        }
        let m = graph.bond(a as usize, b as usize) as usize;
        if m >= 3 && matches_run(word, pos, a, b, m) {
            return Some(AlternatingRun {
                pos,
                s: a,
                s_prime: b,
                len: m,
            });
        }
    }
    None
}

fn matches_run(word: &[u8], pos: usize, a: u8, b: u8, m: usize) -> bool {
    if pos + m > word.len() {
        return false;
    }
    (0..m).all(|k| word[pos + k] == if k % 2 == 0 { a } else { b })
}

fn apply_moves(graph: &CoxeterGraph, word: &[u8], commutation_only: bool, out: &mut Vec<Vec<u8>>) {
    out.clear();
    for pos in 0..word.len().saturating_sub(1) {
        let (a, b) = (word[pos], word[pos + 1]);
        if a == b {
            continue;
        }
        let m = graph.bond(a as usize, b as usize) as usize;
        if commutation_only && m != 2 {
            continue;
        }
        if matches_run(word, pos, a, b, m) {
            let mut w = word.to_vec();
            for k in 0..m {
                w[pos + k] = if k % 2 == 0 { b } else { a };
            }
            out.push(w);
        }
    }
}

fn saturate(graph: &CoxeterGraph, word: &[u8], commutation_only: bool) -> Vec<Vec<u8>> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
    let mut scratch = Vec::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        apply_moves(graph, &w, commutation_only, &mut scratch);
        for nb in scratch.drain(..) {
            if seen.insert(nb.clone()) {
                queue.push_back(nb);
            }
        }
    }
    let mut class: Vec<Vec<u8>> = seen.into_iter().collect();
    class.sort_unstable();
    class
}

/// All words reachable from `word` by braid moves (commutations included),
/// sorted lexicographically. For a reduced word this is the full set of
/// reduced expressions of its element.
pub fn braid_class(graph: &CoxeterGraph, word: &[u8]) -> Vec<Vec<u8>> {
    saturate(graph, word, false)
}

/// All words reachable by commutation moves alone, sorted lexicographically.
pub fn commutation_class(graph: &CoxeterGraph, word: &[u8]) -> Vec<Vec<u8>> {
    saturate(graph, word, true)
}

/// Scans a sorted class for the first word containing an alternating run.
/// `None` means the class realizes a fully commutative element.
pub fn class_witness(graph: &CoxeterGraph, class: &[Vec<u8>]) -> Option<(Vec<u8>, AlternatingRun)> {
    class
        .iter()
        .find_map(|w| find_alternating_run(graph, w).map(|run| (w.clone(), run)))
}
