//! Enumeration of a finite Coxeter group by breadth-first closure, with
//! the word problem decided by braid-move saturation. Elements are stored
//! in (length, ShortLex canonical word) order.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::OnceLock;

use thiserror::Error;

use super::graph::CoxeterGraph;
use super::words::{braid_class, class_witness};

/// Dense index of a group element inside its [`GroupTable`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(pub u32);

impl ElementId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Evidence that an element is complex: a reduced expression containing a
/// contiguous alternating run `word[pos..pos + m(s, s')]`.
#[derive(Clone, Debug)]
pub struct BraidWitness {
    pub word: Vec<u8>,
    pub pos: usize,
    pub s: u8,
    pub s_prime: u8,
}

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("group order exceeds the cap of {cap} elements (infinite or too large)")]
    CapExceeded { cap: usize },
}

const UNSET: u32 = u32::MAX;

/// A fully enumerated finite Coxeter group: canonical reduced words,
/// generator multiplication on both sides, inverses, full-commutativity
/// flags and the Bruhat order. Immutable after construction.
pub struct GroupTable {
    graph: CoxeterGraph,
    words: Vec<Vec<u8>>,
    right: Vec<u32>,
    left: Vec<u32>,
    inv: Vec<u32>,
    fc: Vec<bool>,
    witness: Vec<Option<BraidWitness>>,
    content: Vec<u32>,
    length_ranges: Vec<Range<u32>>,
    bruhat: OnceLock<BitMatrix>,
}

struct BitMatrix {
    blocks: Vec<u64>,
    width: usize, // u64 blocks per row
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let width = n.div_ceil(64);
        BitMatrix {
            blocks: vec![0; n * width],
            width,
        }
    }

    fn set(&mut self, row: usize, col: usize) {
        self.blocks[row * self.width + col / 64] |= 1 << (col % 64);
    }

    fn get(&self, row: usize, col: usize) -> bool {
        self.blocks[row * self.width + col / 64] & (1 << (col % 64)) != 0
    }

    fn or_row_into(&mut self, src: usize, dst: usize) {
        let w = self.width;
        let (src, dst) = (src * w, dst * w);
        for k in 0..w {
            let bits = self.blocks[src + k];
            self.blocks[dst + k] |= bits;
        }
    }
}

impl GroupTable {
    /// Enumerates the group presented by `graph`, failing once more than
    /// `cap` elements have been found.
    pub fn enumerate(graph: CoxeterGraph, cap: usize) -> Result<Self, EnumerationError> {
        let rank = graph.rank();
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut right: Vec<u32> = vec![UNSET; rank];
        let mut fc = vec![true];
        let mut witness: Vec<Option<BraidWitness>> = vec![None];
        let mut level: Vec<u32> = vec![0];

        while !level.is_empty() {
            // Identify the elements one length up. Each braid class is
            // saturated exactly once; every reduced word in it goes into
            // the map so that later candidates hit without re-saturating.
            let mut word_to_class: HashMap<Vec<u8>, usize> = HashMap::new();
            let mut classes: Vec<(Vec<u8>, bool, Option<BraidWitness>)> = Vec::new();
            let mut edges: Vec<(u32, u8, usize)> = Vec::new();
            for &w in &level {
                for s in 0..rank as u8 {
                    if right[w as usize * rank + s as usize] != UNSET {
                        continue; // descent: edge filled from the level below
                    }
                    let mut cand = words[w as usize].clone();
                    cand.push(s);
                    let class_idx = match word_to_class.get(&cand) {
                        Some(&idx) => idx,
                        None => {
                            let class = braid_class(&graph, &cand);
                            let canon = class[0].clone();
                            let wit =
                                class_witness(&graph, &class).map(|(word, run)| BraidWitness {
                                    word,
                                    pos: run.pos,
                                    s: run.s,
                                    s_prime: run.s_prime,
                                });
                            let idx = classes.len();
                            classes.push((canon, wit.is_none(), wit));
                            if words.len() + classes.len() > cap {
                                return Err(EnumerationError::CapExceeded { cap });
                            }
                            for word in class {
                                word_to_class.insert(word, idx);
                            }
                            idx
                        }
                    };
                    edges.push((w, s, class_idx));
                }
            }
            if classes.is_empty() {
                break;
            }

            // Assign ids in ShortLex order of canonical words.
            let mut order: Vec<usize> = (0..classes.len()).collect();
            order.sort_unstable_by(|&a, &b| classes[a].0.cmp(&classes[b].0));
            let base = words.len() as u32;
            let mut id_of_class = vec![0u32; classes.len()];
            for (offset, &idx) in order.iter().enumerate() {
                id_of_class[idx] = base + offset as u32;
            }
            level = Vec::with_capacity(classes.len());
            for &idx in &order {
                let (canon, is_fc, wit) = std::mem::take(&mut classes[idx]);
                level.push(words.len() as u32);
                words.push(canon);
                fc.push(is_fc);
                witness.push(wit);
                right.extend(std::iter::repeat_n(UNSET, rank));
            }
            for (w, s, class_idx) in edges {
                let u = id_of_class[class_idx];
                right[w as usize * rank + s as usize] = u;
                right[u as usize * rank + s as usize] = w;
            }
        }

        let n = words.len();
        debug_assert!(right.iter().all(|&e| e != UNSET));

        // Inverses: w^-1 is the product of the reversed canonical word.
        let mut inv = vec![0u32; n];
        for (w, word) in words.iter().enumerate() {
            let mut acc = 0u32;
            for &s in word.iter().rev() {
                acc = right[acc as usize * rank + s as usize];
            }
            inv[w] = acc;
        }
        // Left multiplication through inverses: s w = (w^-1 s)^-1.
        let mut left = vec![0u32; n * rank];
        for w in 0..n {
            for s in 0..rank {
                left[w * rank + s] = inv[right[inv[w] as usize * rank + s] as usize];
            }
        }
        let content = words
            .iter()
            .map(|word| word.iter().fold(0u32, |acc, &s| acc | (1 << s)))
            .collect();

        let mut length_ranges: Vec<Range<u32>> = Vec::new();
        for (w, word) in words.iter().enumerate() {
            if word.len() == length_ranges.len() {
                length_ranges.push(w as u32..w as u32);
            }
            length_ranges.last_mut().unwrap().end = w as u32 + 1;
        }

        Ok(GroupTable {
            graph,
            words,
            right,
            left,
            inv,
            fc,
            witness,
            content,
            length_ranges,
            bruhat: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn identity(&self) -> ElementId {
        ElementId(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.words.len() as u32).map(ElementId)
    }

    /// The ShortLex-least reduced expression of `w`.
    pub fn word(&self, w: ElementId) -> &[u8] {
        &self.words[w.index()]
    }

    pub fn length(&self, w: ElementId) -> usize {
        self.words[w.index()].len()
    }

    pub fn right_mul(&self, w: ElementId, s: u8) -> ElementId {
        ElementId(self.right[w.index() * self.rank() + s as usize])
    }

    pub fn left_mul(&self, s: u8, w: ElementId) -> ElementId {
        ElementId(self.left[w.index() * self.rank() + s as usize])
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        ElementId(self.inv[w.index()])
    }

    pub fn is_fc(&self, w: ElementId) -> bool {
        self.fc[w.index()]
    }

    /// For a complex element, a reduced expression exhibiting a full
    /// alternating run.
    pub fn complex_witness(&self, w: ElementId) -> Option<&BraidWitness> {
        self.witness[w.index()].as_ref()
    }

    /// Bitmask of the generators appearing in any reduced expression of `w`.
    pub fn content(&self, w: ElementId) -> u32 {
        self.content[w.index()]
    }

    pub fn content_generators(&self, w: ElementId) -> Vec<u8> {
        let mask = self.content(w);
        (0..self.rank() as u8)
            .filter(|&s| mask & (1 << s) != 0)
            .collect()
    }

    pub fn has_right_descent(&self, w: ElementId, s: u8) -> bool {
        self.length(self.right_mul(w, s)) < self.length(w)
    }

    pub fn has_left_descent(&self, s: u8, w: ElementId) -> bool {
        self.length(self.left_mul(s, w)) < self.length(w)
    }

    /// Group product via the canonical word of `b`.
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.words[b.index()]
            .iter()
            .fold(a, |acc, &s| self.right_mul(acc, s))
    }

    /// The element represented by an arbitrary word (not necessarily reduced).
    pub fn element_of_word(&self, word: &[u8]) -> ElementId {
        word.iter()
            .fold(self.identity(), |acc, &s| self.right_mul(acc, s))
    }

    pub fn generator(&self, s: u8) -> ElementId {
        self.element_of_word(&[s])
    }

    /// The maximal-length element (unique in a finite group).
    pub fn longest_element(&self) -> ElementId {
        ElementId(self.words.len() as u32 - 1)
    }

    pub fn max_length(&self) -> usize {
        self.length_ranges.len().saturating_sub(1)
    }

    pub fn elements_of_length(&self, len: usize) -> impl Iterator<Item = ElementId> {
        let range = self.length_ranges.get(len).cloned().unwrap_or(0..0);
        range.map(ElementId)
    }

    pub fn fc_elements(&self) -> Vec<ElementId> {
        self.elements().filter(|&w| self.is_fc(w)).collect()
    }

    pub fn fc_count(&self) -> usize {
        self.fc.iter().filter(|&&b| b).count()
    }

    /// All reflections, i.e. conjugates of the generators.
    pub fn reflections(&self) -> Vec<ElementId> {
        let mut seen = vec![false; self.order()];
        let mut queue: Vec<ElementId> = Vec::new();
        for s in 0..self.rank() as u8 {
            let t = self.generator(s);
            if !seen[t.index()] {
                seen[t.index()] = true;
                queue.push(t);
            }
        }
        let mut i = 0;
        while i < queue.len() {
            let t = queue[i];
            i += 1;
            for s in 0..self.rank() as u8 {
                let c = self.left_mul(s, self.right_mul(t, s));
                if !seen[c.index()] {
                    seen[c.index()] = true;
                    queue.push(c);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    fn bruhat_matrix(&self) -> &BitMatrix {
        self.bruhat.get_or_init(|| {
            let n = self.order();
            let reflections = self.reflections();
            let mut mat = BitMatrix::new(n);
            // Ascend by length; ids are length-sorted, so covered elements
            // are already complete when their covers are processed.
            for w in 0..n {
                mat.set(w, w);
                let wid = ElementId(w as u32);
                for &t in &reflections {
                    let x = self.mul(wid, t);
                    if self.length(x) + 1 == self.length(wid) {
                        mat.or_row_into(x.index(), w);
                    }
                }
            }
            mat
        })
    }

    /// Bruhat-Chevalley order, computed by closing the covering relation
    /// `wt < w` over reflections `t` with a length drop of exactly one.
    /// Row `w` of the closure matrix holds the lower interval of `w`.
    pub fn bruhat_leq(&self, x: ElementId, w: ElementId) -> bool {
        self.bruhat_matrix().get(w.index(), x.index())
    }
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupTable({}, order {})",
            self.graph.label(),
            self.order()
        )
    }
}

/// Renders a word as 1-based generator indices ("121"), or "e" for the
/// empty word. Ranks above 9 use dot-separated indices.
pub fn format_word(word: &[u8], rank: usize) -> String {
    if word.is_empty() {
        return "e".into();
    }
    if rank <= 9 {
        word.iter().map(|&s| (b'1' + s) as char).collect()
    } else {
        word.iter()
            .map(|&s| (s + 1).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Parses the output of [`format_word`].
pub fn parse_word(text: &str, rank: usize) -> Option<Vec<u8>> {
    if text == "e" {
        return Some(Vec::new());
    }
    let letters: Option<Vec<u8>> = if rank <= 9 {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .and_then(|d| d.checked_sub(1))
                    .map(|d| d as u8)
            })
            .collect()
    } else {
        text.split('.')
            .map(|p| p.parse::<u8>().ok().and_then(|d| d.checked_sub(1)))
            .collect()
    };
    letters.filter(|ls| ls.iter().all(|&s| (s as usize) < rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: &str) -> GroupTable {
        GroupTable::enumerate(CoxeterGraph::parse(spec).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(group("A2").order(), 6);
        assert_eq!(group("A3").order(), 24);
        assert_eq!(group("B2").order(), 8);
        assert_eq!(group("B3").order(), 48);
        assert_eq!(group("I2:4").order(), 8);
        assert_eq!(group("I2:7").order(), 14);
        assert_eq!(group("D4").order(), 192);
    }

    #[test]
    fn longest_elements() {
        let a2 = group("A2");
        assert_eq!(a2.max_length(), 3);
        assert_eq!(a2.word(a2.longest_element()), &[0, 1, 0]);

        let b2 = group("B2");
        assert_eq!(b2.elements_of_length(4).count(), 1);
        assert_eq!(b2.word(b2.longest_element()), &[0, 1, 0, 1]);
    }

    #[test]
    fn cap_exceeded() {
        let g = CoxeterGraph::parse("A3").unwrap();
        assert!(matches!(
            GroupTable::enumerate(g, 10),
            Err(EnumerationError::CapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn length_changes_by_one() {
        for spec in ["A3", "B3", "I2:5"] {
            let t = group(spec);
            for w in t.elements() {
                for s in 0..t.rank() as u8 {
                    let ws = t.right_mul(w, s);
                    let diff = t.length(ws) as i64 - t.length(w) as i64;
                    assert!(diff == 1 || diff == -1);
                    let sw = t.left_mul(s, w);
                    let diff = t.length(sw) as i64 - t.length(w) as i64;
                    assert!(diff == 1 || diff == -1);
                }
            }
        }
    }

    #[test]
    fn inverses_and_products() {
        for spec in ["A3", "B3"] {
            let t = group(spec);
            for w in t.elements() {
                assert_eq!(t.mul(w, t.inverse(w)), t.identity());
                assert_eq!(t.length(t.inverse(w)), t.length(w));
            }
        }
    }

    #[test]
    fn all_reduced_words_multiply_back() {
        // Tits: the braid class of the canonical word exhausts the reduced
        // expressions; each one must evaluate to the element itself.
        for spec in ["A3", "B2"] {
            let t = group(spec);
            for w in t.elements() {
                for rw in braid_class(t.graph(), t.word(w)) {
                    assert_eq!(t.element_of_word(&rw), w);
                    assert_eq!(rw.len(), t.length(w));
                }
            }
        }
    }

    #[test]
    fn fully_commutative_flags() {
        let a2 = group("A2");
        assert!(a2.is_fc(a2.identity()));
        assert!(!a2.is_fc(a2.longest_element())); // s1 s2 s1 is complex
        assert_eq!(group("A3").fc_count(), 14);
        assert_eq!(group("B2").fc_count(), 7);
        let b2 = group("B2");
        let w = b2.element_of_word(&[0, 1, 0]);
        assert!(b2.is_fc(w)); // m(s1, s2) = 4, so a run needs four letters
    }

    #[test]
    fn complex_witness_is_a_reduced_run() {
        for spec in ["A3", "B3"] {
            let t = group(spec);
            for w in t.elements() {
                match t.complex_witness(w) {
                    None => assert!(t.is_fc(w)),
                    Some(wit) => {
                        assert!(!t.is_fc(w));
                        assert_eq!(t.element_of_word(&wit.word), w);
                        assert_eq!(wit.word.len(), t.length(w));
                        let m = t.graph().bond(wit.s as usize, wit.s_prime as usize) as usize;
                        assert!(m >= 3);
                        for k in 0..m {
                            let expect = if k % 2 == 0 { wit.s } else { wit.s_prime };
                            assert_eq!(wit.word[wit.pos + k], expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn content_examples() {
        let a2 = group("A2");
        assert_eq!(a2.content(a2.identity()), 0);
        assert_eq!(a2.content(a2.element_of_word(&[0, 1])), 0b11);
        let b2 = group("B2");
        assert_eq!(b2.content_generators(b2.longest_element()), vec![0, 1]);
    }

    #[test]
    fn bruhat_basics() {
        let a2 = group("A2");
        for w in a2.elements() {
            assert!(a2.bruhat_leq(a2.identity(), w));
        }
        let s1 = a2.generator(0);
        let s2 = a2.generator(1);
        assert!(!a2.bruhat_leq(s1, s2));
        assert!(!a2.bruhat_leq(s2, s1));
        let s1s2 = a2.element_of_word(&[0, 1]);
        let w0 = a2.longest_element();
        assert!(a2.bruhat_leq(s1s2, w0));
    }

    /// Independent subword-criterion oracle: the set of elements
    /// obtainable as products of subwords of the canonical word of w,
    /// which is exactly the lower Bruhat interval of w.
    fn subword_products(t: &GroupTable, w: ElementId) -> Vec<bool> {
        let mut reachable = vec![false; t.order()];
        reachable[t.identity().index()] = true;
        for &s in t.word(w) {
            let mut next = reachable.clone();
            for (z, &ok) in reachable.iter().enumerate() {
                if ok {
                    next[t.right_mul(ElementId(z as u32), s).index()] = true;
                }
            }
            reachable = next;
        }
        reachable
    }

    #[test]
    fn bruhat_agrees_with_subword_oracle() {
        // Every finite type in scope with order at most 400.
        for spec in [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "I2:5", "I2:6", "I2:7",
        ] {
            let t = group(spec);
            for w in t.elements() {
                let below = subword_products(&t, w);
                for x in t.elements() {
                    assert_eq!(
                        t.bruhat_leq(x, w),
                        below[x.index()],
                        "{spec}: {} vs {}",
                        format_word(t.word(x), t.rank()),
                        format_word(t.word(w), t.rank())
                    );
                }
            }
        }
    }

    #[test]
    fn word_formatting() {
        assert_eq!(format_word(&[], 3), "e");
        assert_eq!(format_word(&[0, 1, 0], 3), "121");
        assert_eq!(parse_word("121", 3), Some(vec![0, 1, 0]));
        assert_eq!(parse_word("e", 3), Some(vec![]));
        assert_eq!(parse_word("14", 3), None);
    }
}
