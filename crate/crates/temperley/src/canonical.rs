//! Generic bar-fixed-point engine: given a free module with a basis
//! indexed by a graded poset and a semilinear involution that is
//! unitriangular on the basis, compute the unique bar-fixed basis that is
//! congruent to the standard one modulo strictly-negative powers of `v`.
//!
//! The same engine produces the Kazhdan-Lusztig basis of the Hecke
//! algebra and the canonical basis of the Temperley-Lieb quotient; only
//! the bar columns differ.

use num_traits::Zero;
use thiserror::Error;

use crate::laurent::LaurentPoly;

/// Sparse column: (index, coefficient) pairs sorted by index.
pub type Column = Vec<(usize, LaurentPoly)>;

/// Columns of the computed basis in standard-basis coordinates:
/// `cols[w]` lists `(y, p(y, w))` including the diagonal `(w, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IcColumns {
    pub cols: Vec<Column>,
}

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error("bar column of index {index} is not unitriangular")]
    NotUnitriangular { index: usize },
    #[error("defect at index {at} while processing {index} is not bar-antisymmetric")]
    DefectNotAntisymmetric { index: usize, at: usize },
    #[error("defect at index {at} while processing {index} has a nonzero constant term")]
    NonzeroConstantTerm { index: usize, at: usize },
    #[error("processing order must be a permutation of 0..{n}")]
    BadOrder { n: usize },
}

/// Computes the bar-fixed basis, processing indices in the given linear
/// extension `order` of the poset. `bar_col(w)` must return the
/// coordinates of the bar image of the `w`-th standard basis vector; it
/// is invoked once per index.
///
/// For each `w` the output column has diagonal coefficient 1 and all
/// off-diagonal coefficients in `v^-1 Z[v^-1]`; the defect equation
/// `alpha - bar(alpha) = beta` is solved by truncating `beta` to its
/// strictly negative exponents, which requires each encountered defect to
/// be bar-antisymmetric with zero constant term (checked at runtime).
pub fn ic_columns(
    n: usize,
    order: &[usize],
    mut bar_col: impl FnMut(usize) -> Column,
) -> Result<IcColumns, CanonicalError> {
    if order.len() != n {
        return Err(CanonicalError::BadOrder { n });
    }
    let mut pos = vec![usize::MAX; n];
    for (p, &idx) in order.iter().enumerate() {
        if idx >= n || pos[idx] != usize::MAX {
            return Err(CanonicalError::BadOrder { n });
        }
        pos[idx] = p;
    }

    // Bar columns, fetched lazily and reused across all later indices.
    let mut bar_cols: Vec<Option<Column>> = vec![None; n];
    let mut fetch =
        |idx: usize, bar_cols: &mut Vec<Option<Column>>| -> Result<(), CanonicalError> {
            if bar_cols[idx].is_none() {
                let col = bar_col(idx);
                let mut diag_ok = false;
                for &(y, ref coeff) in &col {
                    if y == idx {
                        diag_ok = coeff.is_one();
                    } else if pos[y] >= pos[idx] {
                        return Err(CanonicalError::NotUnitriangular { index: idx });
                    }
                }
                if !diag_ok {
                    return Err(CanonicalError::NotUnitriangular { index: idx });
                }
                bar_cols[idx] = Some(col);
            }
            Ok(())
        };

    let mut cols: Vec<Column> = vec![Vec::new(); n];
    for (p_w, &w) in order.iter().enumerate() {
        fetch(w, &mut bar_cols)?;
        // Defect g = bar(c) - c, keyed by position in the processing
        // order; starts from bar(x_w) - x_w.
        let mut defect: Vec<LaurentPoly> = vec![LaurentPoly::zero(); p_w];
        for &(y, ref coeff) in bar_cols[w].as_ref().unwrap() {
            if y != w {
                defect[pos[y]] += coeff;
            }
        }
        let mut coords: Vec<(usize, LaurentPoly)> = vec![(w, LaurentPoly::one())];
        for p in (0..p_w).rev() {
            let beta = std::mem::take(&mut defect[p]);
            if beta.is_zero() {
                continue;
            }
            let y = order[p];
            if beta.bar() != -&beta {
                return Err(CanonicalError::DefectNotAntisymmetric { index: w, at: y });
            }
            if !beta.coeff(0).is_zero() {
                return Err(CanonicalError::NonzeroConstantTerm { index: w, at: y });
            }
            let alpha = beta.neg_exp_part();
            let alpha_bar = alpha.bar();
            // c += alpha x_y cancels the defect at y and smears
            // bar(alpha) over the strictly lower part of bar(x_y).
            fetch(y, &mut bar_cols)?;
            for &(z, ref coeff) in bar_cols[y].as_ref().unwrap() {
                if z != y {
                    defect[pos[z]] += &(&alpha_bar * coeff);
                }
            }
            coords.push((y, alpha));
        }
        coords.sort_unstable_by_key(|&(y, _)| y);
        cols[w] = coords;
    }
    Ok(IcColumns { cols })
}

/// The identity processing order `0..n` (valid whenever indices are
/// listed in a linear extension of the poset, e.g. sorted by length).
pub fn natural_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// A second linear extension: each block of constant grade is reversed.
/// Distinct indices of equal grade are never comparable in the posets
/// used here, so this is again a linear extension.
pub fn reversed_blocks_order(grades: &[usize]) -> Vec<usize> {
    let n = grades.len();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && grades[j] == grades[i] {
            j += 1;
        }
        order.extend((i..j).rev());
        i = j;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    /// Rank-one Hecke-style context: x_0 = T_e, x_1 = v^-1 T_s with
    /// bar(x_1) = x_1 + (v^-1 - v) x_0.
    fn rank_one_bar(idx: usize) -> Column {
        match idx {
            0 => vec![(0, LaurentPoly::one())],
            _ => vec![(0, p(&[(-1, 1), (1, -1)])), (1, LaurentPoly::one())],
        }
    }

    #[test]
    fn minimum_index_is_fixed() {
        let out = ic_columns(2, &[0, 1], rank_one_bar).unwrap();
        assert_eq!(out.cols[0], vec![(0, LaurentPoly::one())]);
    }

    #[test]
    fn rank_one_correction() {
        let out = ic_columns(2, &[0, 1], rank_one_bar).unwrap();
        assert_eq!(
            out.cols[1],
            vec![(0, p(&[(-1, 1)])), (1, LaurentPoly::one())]
        );
    }

    #[test]
    fn rejects_non_unitriangular_bar() {
        let bad = |idx: usize| -> Column {
            match idx {
                0 => vec![(0, LaurentPoly::one()), (1, LaurentPoly::one())],
                _ => vec![(1, LaurentPoly::one())],
            }
        };
        assert!(matches!(
            ic_columns(2, &[0, 1], bad),
            Err(CanonicalError::NotUnitriangular { index: 0 })
        ));
    }

    #[test]
    fn rejects_broken_involution() {
        // bar(x_1) = x_1 + x_0 is triangular but yields a defect that is
        // not bar-antisymmetric.
        let bad = |idx: usize| -> Column {
            match idx {
                0 => vec![(0, LaurentPoly::one())],
                _ => vec![(0, LaurentPoly::one()), (1, LaurentPoly::one())],
            }
        };
        assert!(matches!(
            ic_columns(2, &[0, 1], bad),
            Err(CanonicalError::DefectNotAntisymmetric { .. })
        ));
    }

    #[test]
    fn reversed_blocks_is_a_permutation() {
        let grades = [0, 1, 1, 2, 2, 2, 3];
        let order = reversed_blocks_order(&grades);
        assert_eq!(order, vec![0, 2, 1, 5, 4, 3, 6]);
    }
}
