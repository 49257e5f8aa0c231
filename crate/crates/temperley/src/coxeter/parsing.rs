//! Parsing of a fully commutative element `w` whose right extension `ws`
//! becomes complex: the canonical word of `w` splits around a unique
//! non-commuting partner `s'` of `s`, in one of two shapes depending on
//! whether `s s'` has order 3 or 4.

use thiserror::Error;

use super::group::{ElementId, GroupTable};

/// The split positions index into the canonical word of `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoncommutativeParse {
    /// `w = w1 . s . w2 . s' . w3` with `m(s, s') = 3` and `s` commuting
    /// with everything in `w2` and `w3`.
    OrderThree {
        s_prime: u8,
        s_pos: usize,
        s_prime_pos: usize,
    },
    /// `w = w1 . s' . w2 . s . w3 . s' . w4` with `m(s, s') = 4`, `s`
    /// commuting with everything in `w3` and `w4`, and `s'` commuting
    /// with everything in `w2` and `w3`.
    OrderFour {
        s_prime: u8,
        first_pos: usize,
        s_pos: usize,
        second_pos: usize,
    },
}

impl NoncommutativeParse {
    pub fn s_prime(&self) -> u8 {
        match *self {
            NoncommutativeParse::OrderThree { s_prime, .. } => s_prime,
            NoncommutativeParse::OrderFour { s_prime, .. } => s_prime,
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("element is not fully commutative")]
    NotFullyCommutative,
    #[error("right extension stays fully commutative; nothing to parse")]
    ExtensionFullyCommutative,
    #[error("no valid parse found (or the partner is ambiguous)")]
    NoParse,
}

fn commutes_with_all(table: &GroupTable, s: u8, letters: &[u8]) -> bool {
    letters
        .iter()
        .all(|&t| table.graph().commutes(s as usize, t as usize))
}

/// Parses the canonical word of `w` against the generator `s`.
/// Preconditions: `w` fully commutative and `ws` complex.
pub fn parse_noncommutative(
    table: &GroupTable,
    w: ElementId,
    s: u8,
) -> Result<NoncommutativeParse, ParseError> {
    if !table.is_fc(w) {
        return Err(ParseError::NotFullyCommutative);
    }
    if table.is_fc(table.right_mul(w, s)) {
        return Err(ParseError::ExtensionFullyCommutative);
    }
    let word = table.word(w);
    let mut found: Vec<NoncommutativeParse> = Vec::new();
    for s_prime in 0..table.rank() as u8 {
        let m = table.graph().bond(s as usize, s_prime as usize);
        match m {
            3 => {
                // s sits at its last occurrence, s' at its own; everything
                // after s must commute with s.
                let (Some(i), Some(j)) = (rfind(word, s), rfind(word, s_prime)) else {
                    continue;
                };
                if i < j
                    && commutes_with_all(table, s, &word[i + 1..j])
                    && commutes_with_all(table, s, &word[j + 1..])
                {
                    found.push(NoncommutativeParse::OrderThree {
                        s_prime,
                        s_pos: i,
                        s_prime_pos: j,
                    });
                }
            }
            4 => {
                let (Some(j), Some(k)) = (rfind(word, s), rfind(word, s_prime)) else {
                    continue;
                };
                let Some(i) = rfind(&word[..j.min(k)], s_prime) else {
                    continue;
                };
                if i < j
                    && j < k
                    && commutes_with_all(table, s, &word[j + 1..k])
                    && commutes_with_all(table, s, &word[k + 1..])
                    && commutes_with_all(table, s_prime, &word[i + 1..j])
                    && commutes_with_all(table, s_prime, &word[j + 1..k])
                {
                    found.push(NoncommutativeParse::OrderFour {
                        s_prime,
                        first_pos: i,
                        s_pos: j,
                        second_pos: k,
                    });
                }
            }
            _ => {}
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        _ => Err(ParseError::NoParse),
    }
}

fn rfind(word: &[u8], s: u8) -> Option<usize> {
    word.iter().rposition(|&t| t == s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::graph::CoxeterGraph;
    use crate::coxeter::words::braid_class;

    fn group(spec: &str) -> GroupTable {
        GroupTable::enumerate(CoxeterGraph::parse(spec).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn a2_short_parse() {
        let t = group("A2");
        let w = t.element_of_word(&[0, 1]);
        let parse = parse_noncommutative(&t, w, 0).unwrap();
        assert_eq!(
            parse,
            NoncommutativeParse::OrderThree {
                s_prime: 1,
                s_pos: 0,
                s_prime_pos: 1
            }
        );
    }

    #[test]
    fn b2_long_parse() {
        let t = group("B2");
        let w = t.element_of_word(&[1, 0, 1]);
        let parse = parse_noncommutative(&t, w, 0).unwrap();
        assert_eq!(
            parse,
            NoncommutativeParse::OrderFour {
                s_prime: 1,
                first_pos: 0,
                s_pos: 1,
                second_pos: 2
            }
        );
    }

    #[test]
    fn precondition_errors() {
        let t = group("A2");
        let w0 = t.longest_element();
        assert!(matches!(
            parse_noncommutative(&t, w0, 0),
            Err(ParseError::NotFullyCommutative)
        ));
        let s1 = t.generator(0);
        assert!(matches!(
            parse_noncommutative(&t, s1, 1),
            Err(ParseError::ExtensionFullyCommutative)
        ));
    }

    /// Brute-force check of a parse against an arbitrary reduced word.
    fn parse_word_exhaustive(t: &GroupTable, word: &[u8], s: u8) -> Vec<u8> {
        let g = t.graph();
        let commutes =
            |a: u8, letters: &[u8]| letters.iter().all(|&b| g.commutes(a as usize, b as usize));
        let mut partners = Vec::new();
        let n = word.len();
        for i in 0..n {
            if word[i] != s {
                continue;
            }
            for j in i + 1..n {
                let sp = word[j];
                if g.bond(s as usize, sp as usize) == 3
                    && commutes(s, &word[i + 1..j])
                    && commutes(s, &word[j + 1..])
                {
                    partners.push(sp);
                }
            }
        }
        for i in 0..n {
            let sp = word[i];
            if g.bond(s as usize, sp as usize) != 4 {
                continue;
            }
            for j in i + 1..n {
                if word[j] != s {
                    continue;
                }
                for k in j + 1..n {
                    if word[k] == sp
                        && commutes(s, &word[j + 1..k])
                        && commutes(s, &word[k + 1..])
                        && commutes(sp, &word[i + 1..j])
                        && commutes(sp, &word[j + 1..k])
                    {
                        partners.push(sp);
                    }
                }
            }
        }
        partners.sort_unstable();
        partners.dedup();
        partners
    }

    #[test]
    fn parse_exists_and_partner_is_unique() {
        // For every fully commutative w and every s with ws complex, the
        // parse succeeds, exactly one partner validates, and the same
        // partner parses every reduced expression of w.
        for spec in ["A2", "A3", "A4", "B2", "B3", "B4", "D4"] {
            let t = group(spec);
            for w in t.elements() {
                if !t.is_fc(w) {
                    continue;
                }
                for s in 0..t.rank() as u8 {
                    if t.is_fc(t.right_mul(w, s)) {
                        continue;
                    }
                    let parse = parse_noncommutative(&t, w, s).unwrap();
                    let sp = parse.s_prime();
                    for rw in braid_class(t.graph(), t.word(w)) {
                        let partners = parse_word_exhaustive(&t, &rw, s);
                        assert_eq!(partners, vec![sp], "{spec}: word {rw:?}, s = {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn reported_positions_match_the_letters() {
        for spec in ["A3", "B3"] {
            let t = group(spec);
            for w in t.elements() {
                if !t.is_fc(w) {
                    continue;
                }
                for s in 0..t.rank() as u8 {
                    if t.is_fc(t.right_mul(w, s)) {
                        continue;
                    }
                    let word = t.word(w);
                    match parse_noncommutative(&t, w, s).unwrap() {
                        NoncommutativeParse::OrderThree {
                            s_prime,
                            s_pos,
                            s_prime_pos,
                        } => {
                            assert_eq!(word[s_pos], s);
                            assert_eq!(word[s_prime_pos], s_prime);
                            assert!(s_pos < s_prime_pos);
                        }
                        NoncommutativeParse::OrderFour {
                            s_prime,
                            first_pos,
                            s_pos,
                            second_pos,
                        } => {
                            assert_eq!(word[first_pos], s_prime);
                            assert_eq!(word[s_pos], s);
                            assert_eq!(word[second_pos], s_prime);
                            assert!(first_pos < s_pos && s_pos < second_pos);
                        }
                    }
                }
            }
        }
    }
}
