//! Reduction of products of monomial generators by the defining
//! presentation (bond orders 2, 3 and 4): `b_s b_s = q_c b_s`,
//! commutation across order-2 bonds, `b_s b_s' b_s = b_s` across order-3
//! bonds and `b_s b_s' b_s b_s' = 2 b_s b_s'` across order-4 bonds. Every
//! product normalizes to `a * q_c^m * b_x` with `x` fully commutative.

use thiserror::Error;

use crate::coxeter::words::commutation_class;
use crate::coxeter::{ElementId, GroupTable};

/// Normal form of a product of monomial generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BReduction {
    /// Integer factor (a power of two from the order-4 rule).
    pub scalar: u64,
    /// Exponent of the loop parameter `q_c`.
    pub qc_exp: u32,
    /// Index of the surviving monomial basis element.
    pub element: ElementId,
}

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("presentation rewriting needs all bond orders in {{2, 3, 4}}, found {found}")]
    UnsupportedBond { found: u32 },
    #[error("letter {letter} is out of range for rank {rank}")]
    LetterOutOfRange { letter: u8, rank: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Rule {
    Square,     // s s -> s, picking up q_c
    OrderThree, // s s' s -> s
    OrderFour,  // s s' s s' -> s s', picking up a factor 2
}

/// Reduces the product `b_{word[0]} b_{word[1]} ...` to its normal form.
/// Rewrites fire leftmost-innermost: the commutation class of the current
/// word is searched for the shortest applicable pattern, ties broken by
/// word then position, so the reduction is deterministic.
pub fn b_product_reduce(table: &GroupTable, word: &[u8]) -> Result<BReduction, RewriteError> {
    let graph = table.graph();
    if graph.max_bond() > 4 {
        return Err(RewriteError::UnsupportedBond {
            found: graph.max_bond(),
        });
    }
    for &s in word {
        if s as usize >= graph.rank() {
            return Err(RewriteError::LetterOutOfRange {
                letter: s,
                rank: graph.rank(),
            });
        }
    }

    let mut scalar: u64 = 1;
    let mut qc_exp: u32 = 0;
    let mut current = word.to_vec();
    'reduce: loop {
        let class = commutation_class(graph, &current);
        let mut best: Option<(Rule, &Vec<u8>, usize)> = None;
        for w in &class {
            for p in 0..w.len() {
                let rule = if p + 1 < w.len() && w[p] == w[p + 1] {
                    Rule::Square
                } else if p + 2 < w.len()
                    && w[p] == w[p + 2]
                    && w[p] != w[p + 1]
                    && graph.bond(w[p] as usize, w[p + 1] as usize) == 3
                {
                    Rule::OrderThree
                } else if p + 3 < w.len()
                    && w[p] == w[p + 2]
                    && w[p + 1] == w[p + 3]
                    && w[p] != w[p + 1]
                    && graph.bond(w[p] as usize, w[p + 1] as usize) == 4
                {
                    Rule::OrderFour
                } else {
                    continue;
                };
                let candidate = (rule, w, p);
                if best.is_none_or(|b| candidate < b) {
                    best = Some(candidate);
                }
            }
        }
        match best {
            None => break 'reduce,
            Some((rule, w, p)) => {
                let mut next = w.clone();
                match rule {
                    Rule::Square => {
                        next.remove(p + 1);
                        qc_exp += 1;
                    }
                    Rule::OrderThree => {
                        next.drain(p + 1..p + 3);
                    }
                    Rule::OrderFour => {
                        next.drain(p + 2..p + 4);
                        scalar *= 2;
                    }
                }
                current = next;
            }
        }
    }

    // No rule fires anywhere in the commutation class: the word is a
    // reduced expression of a fully commutative element.
    let element = table.element_of_word(&current);
    assert_eq!(table.length(element), current.len());
    assert!(table.is_fc(element));
    Ok(BReduction {
        scalar,
        qc_exp,
        element,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGraph;
    use crate::laurent::LaurentPoly;
    use crate::tl::TlAlgebra;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn group(spec: &str) -> GroupTable {
        GroupTable::enumerate(CoxeterGraph::parse(spec).unwrap(), 100_000).unwrap()
    }

    #[test]
    fn single_letter() {
        let t = group("A2");
        let r = b_product_reduce(&t, &[0]).unwrap();
        assert_eq!(
            r,
            BReduction {
                scalar: 1,
                qc_exp: 0,
                element: t.generator(0)
            }
        );
    }

    #[test]
    fn order_three_collapse() {
        let t = group("A2");
        let r = b_product_reduce(&t, &[0, 1, 0]).unwrap();
        assert_eq!(
            r,
            BReduction {
                scalar: 1,
                qc_exp: 0,
                element: t.generator(0)
            }
        );
    }

    #[test]
    fn order_four_doubling() {
        let t = group("B2");
        let r = b_product_reduce(&t, &[0, 1, 0, 1]).unwrap();
        assert_eq!(
            r,
            BReduction {
                scalar: 2,
                qc_exp: 0,
                element: t.element_of_word(&[0, 1])
            }
        );
    }

    #[test]
    fn square_accumulates_loop_parameter() {
        let t = group("A2");
        let r = b_product_reduce(&t, &[0, 0, 0]).unwrap();
        assert_eq!(
            r,
            BReduction {
                scalar: 1,
                qc_exp: 2,
                element: t.generator(0)
            }
        );
    }

    #[test]
    fn rejects_large_bonds() {
        let t = group("I2:5");
        assert!(matches!(
            b_product_reduce(&t, &[0, 1]),
            Err(RewriteError::UnsupportedBond { found: 5 })
        ));
    }

    #[test]
    fn agrees_with_quotient_route_on_random_words() {
        for spec in ["A3", "B3"] {
            let t = group(spec);
            let tl = TlAlgebra::new(&t);
            let mut rng = StdRng::seed_from_u64(47);
            for _ in 0..200 {
                let len = rng.gen_range(0..=8);
                let word: Vec<u8> = (0..len).map(|_| rng.gen_range(0..t.rank() as u8)).collect();
                let r = b_product_reduce(&t, &word).unwrap();
                let mut expected = tl.b_monomial(r.element).unwrap();
                let mut scale = LaurentPoly::int(r.scalar as i64);
                for _ in 0..r.qc_exp {
                    scale = &scale * &LaurentPoly::q_c();
                }
                expected = expected.scaled(&scale);
                assert_eq!(tl.b_product(&word), expected, "{spec}: word {word:?}");
            }
        }
    }
}
