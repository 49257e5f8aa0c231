//! The generalized Temperley-Lieb quotient of a Hecke algebra: the
//! quotient map, the `t`-basis indexed by fully commutative elements, the
//! monomial basis, the bar involution and the canonical basis, together
//! with structure constants in any of the three bases.

mod kernel;
mod rewrite;

pub use kernel::{kernel_check, KernelReport};
pub use rewrite::{b_product_reduce, BReduction, RewriteError};

use std::collections::BTreeMap;

use serde_json::Value;
use thiserror::Error;

use crate::canonical::{self, CanonicalError};
use crate::coxeter::{ElementId, GroupTable};
use crate::hecke::{columns_from_json, columns_to_json, HeckeAlgebra, HeckeElt};
use crate::laurent::LaurentPoly;

/// An element of the quotient in the `t`-basis: a sparse map supported on
/// fully commutative group elements, with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TlElt {
    coords: BTreeMap<ElementId, LaurentPoly>,
}

impl TlElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: ElementId) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(w, LaurentPoly::one());
        TlElt { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, w: ElementId) -> LaurentPoly {
        self.coords.get(&w).cloned().unwrap_or_default()
    }

    pub fn coords(&self) -> impl DoubleEndedIterator<Item = (ElementId, &LaurentPoly)> + '_ {
        self.coords.iter().map(|(&w, c)| (w, c))
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn add_term(&mut self, w: ElementId, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coords.entry(w).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.coords.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &TlElt, scale: &LaurentPoly) {
        for (w, c) in other.coords() {
            self.add_term(w, scale * c);
        }
    }

    pub fn scaled(&self, scale: &LaurentPoly) -> TlElt {
        let mut out = TlElt::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn sub(&self, other: &TlElt) -> TlElt {
        let mut out = self.clone();
        for (w, c) in other.coords() {
            out.add_term(w, -c);
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum TlError {
    #[error("monomial basis elements are indexed by fully commutative elements")]
    NotFullyCommutative,
}

/// Which basis a table or structure-constant expansion refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TlBasis {
    /// Images of the `T`-basis.
    T,
    /// Monomial basis built from the `b_s`.
    Monomial,
    /// Canonical (bar-fixed) basis.
    Canonical,
}

impl TlBasis {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "t" => Some(TlBasis::T),
            "b" => Some(TlBasis::Monomial),
            "c" => Some(TlBasis::Canonical),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TlBasis::T => "t",
            TlBasis::Monomial => "b",
            TlBasis::Canonical => "c",
        }
    }
}

/// Coefficient table of the canonical basis in the `t`-basis scale
/// `{v^-l(w) t_w}`: `cols[i]` pairs `(x, p(x, w_i))` for the `i`-th fully
/// commutative element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TlCanonicalTable {
    pub fc: Vec<ElementId>,
    pub cols: Vec<Vec<(ElementId, LaurentPoly)>>,
}

impl TlCanonicalTable {
    pub fn to_json(&self, table: &GroupTable, kind: &str, version: u32) -> Value {
        columns_to_json(&self.cols, &self.fc, table, kind, version)
    }

    pub fn from_json(value: &Value, table: &GroupTable, kind: &str, version: u32) -> Option<Self> {
        let fc = table.fc_elements();
        let cols = columns_from_json(value, &fc, table, kind, version)?;
        Some(TlCanonicalTable { fc, cols })
    }
}

/// The Temperley-Lieb quotient attached to an enumerated group. The
/// images of all `T`-basis elements are tabulated eagerly at
/// construction, so the algebra is immutable and freely shareable
/// afterwards.
pub struct TlAlgebra<'a> {
    table: &'a GroupTable,
    hecke: HeckeAlgebra<'a>,
    theta: Vec<TlElt>,
    fc: Vec<ElementId>,
    fc_pos: Vec<u32>,
}

const NOT_FC: u32 = u32::MAX;

impl<'a> TlAlgebra<'a> {
    pub fn new(table: &'a GroupTable) -> Self {
        let hecke = HeckeAlgebra::new(table);
        let fc = table.fc_elements();
        let mut fc_pos = vec![NOT_FC; table.order()];
        for (i, &w) in fc.iter().enumerate() {
            fc_pos[w.index()] = i as u32;
        }

        // theta(T_w) ascending by length. A fully commutative w maps to
        // t_w. A complex w is rewritten through a witness factorization
        // w = x1 . w_{ss'} . x2, where the longest dihedral factor is
        // congruent to minus the sum of the shorter parabolic elements;
        // every index produced is strictly shorter, so its image is
        // already tabulated.
        let mut theta: Vec<TlElt> = Vec::with_capacity(table.order());
        for w in table.elements() {
            if table.is_fc(w) {
                theta.push(TlElt::basis(w));
                continue;
            }
            let wit = table
                .complex_witness(w)
                .expect("complex element has a witness");
            let m = table.graph().bond(wit.s as usize, wit.s_prime as usize) as usize;
            let prefix = &wit.word[..wit.pos];
            let suffix = &wit.word[wit.pos + m..];
            let mut image = TlElt::zero();
            for u in proper_parabolic_words(wit.s, wit.s_prime, m) {
                let mut h = HeckeElt::basis(table.element_of_word(prefix));
                for &s in u.iter().chain(suffix) {
                    h = hecke.mul_gen(crate::hecke::Side::Right, s, &h);
                }
                for (y, c) in h.coords() {
                    debug_assert!(table.length(y) < table.length(w));
                    image.add_scaled(&theta[y.index()], c);
                }
            }
            theta.push(image.scaled(&-&LaurentPoly::one()));
        }

        TlAlgebra {
            table,
            hecke,
            theta,
            fc,
            fc_pos,
        }
    }

    pub fn group(&self) -> &'a GroupTable {
        self.table
    }

    pub fn hecke(&self) -> &HeckeAlgebra<'a> {
        &self.hecke
    }

    pub fn fc_elements(&self) -> &[ElementId] {
        &self.fc
    }

    pub fn unit(&self) -> TlElt {
        TlElt::basis(self.table.identity())
    }

    /// The image of the basis element `T_w` in the `t`-basis.
    pub fn theta_t(&self, w: ElementId) -> &TlElt {
        &self.theta[w.index()]
    }

    /// The quotient map, extended linearly.
    pub fn theta(&self, h: &HeckeElt) -> TlElt {
        let mut out = TlElt::zero();
        for (w, c) in h.coords() {
            out.add_scaled(&self.theta[w.index()], c);
        }
        out
    }

    /// Right multiplication by `t_s`. Descents stay inside the `t`-basis
    /// (a prefix of a fully commutative element is fully commutative);
    /// ascents may leave it and go through the tabulated quotient map.
    pub fn mul_gen(&self, a: &TlElt, s: u8) -> TlElt {
        let q = LaurentPoly::q();
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = TlElt::zero();
        for (x, c) in a.coords() {
            let xs = self.table.right_mul(x, s);
            if self.table.length(xs) > self.table.length(x) {
                out.add_scaled(&self.theta[xs.index()], c);
            } else {
                // a prefix of a fully commutative element is itself one
                debug_assert!(self.table.is_fc(xs));
                out.add_term(xs, &q * c);
                out.add_term(x, &q_minus_one * c);
            }
        }
        out
    }

    /// Bilinear product induced by the quotient: basis indices of the
    /// right factor are lifted to their `T`-representatives.
    pub fn mul(&self, a: &TlElt, b: &TlElt) -> TlElt {
        let mut out = TlElt::zero();
        for (y, c) in b.coords() {
            let mut acc = a.clone();
            for &s in self.table.word(y) {
                acc = self.mul_gen(&acc, s);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// The monomial generator `b_s = v^-1 t_s + v^-1 t_e`.
    pub fn b_gen(&self, s: u8) -> TlElt {
        let mut out = TlElt::zero();
        out.add_term(self.table.generator(s), LaurentPoly::v_pow(-1));
        out.add_term(self.table.identity(), LaurentPoly::v_pow(-1));
        out
    }

    /// The monomial basis element `b_w`, the product of the `b_s` along a
    /// reduced expression of the fully commutative element `w` (the
    /// result does not depend on which one).
    pub fn b_monomial(&self, w: ElementId) -> Result<TlElt, TlError> {
        if !self.table.is_fc(w) {
            return Err(TlError::NotFullyCommutative);
        }
        Ok(self.b_product(self.table.word(w)))
    }

    /// The product of `b_s` along an arbitrary generator word.
    pub fn b_product(&self, word: &[u8]) -> TlElt {
        let v_inv = LaurentPoly::v_pow(-1);
        let mut acc = self.unit();
        for &s in word {
            // acc * b_s = v^-1 (acc t_s) + v^-1 acc
            let mut next = self.mul_gen(&acc, s).scaled(&v_inv);
            next.add_scaled(&acc, &v_inv);
            acc = next;
        }
        acc
    }

    /// The bar involution of the quotient: semilinear with
    /// `t_w -> theta(T_{w^-1}^-1)`; it is the image of the Hecke bar
    /// involution under the quotient map.
    pub fn bar(&self, x: &TlElt) -> TlElt {
        let mut out = TlElt::zero();
        for (w, c) in x.coords() {
            out.add_scaled(
                &self.theta(&self.hecke.invert_t(self.table.inverse(w))),
                &c.bar(),
            );
        }
        out
    }

    fn bar_column(&self, i: usize) -> canonical::Column {
        let w = self.fc[i];
        let lw = self.table.length(w) as i32;
        let image = self.theta(&self.hecke.invert_t(self.table.inverse(w)));
        image
            .coords()
            .map(|(y, c)| {
                let ly = self.table.length(y) as i32;
                (self.fc_pos[y.index()] as usize, c.shifted(lw + ly))
            })
            .collect()
    }

    /// The canonical-basis coefficient table over the fully commutative
    /// poset, via the same fixed-point engine as the Kazhdan-Lusztig
    /// table.
    pub fn canonical_table(&self) -> Result<TlCanonicalTable, CanonicalError> {
        self.canonical_table_with_order(&canonical::natural_order(self.fc.len()))
    }

    pub fn canonical_table_with_order(
        &self,
        order: &[usize],
    ) -> Result<TlCanonicalTable, CanonicalError> {
        let cols = canonical::ic_columns(self.fc.len(), order, |i| self.bar_column(i))?;
        Ok(TlCanonicalTable {
            fc: self.fc.clone(),
            cols: cols
                .cols
                .into_iter()
                .map(|col| col.into_iter().map(|(y, p)| (self.fc[y], p)).collect())
                .collect(),
        })
    }

    /// The canonical basis element `c_w = sum_x p(x, w) v^-l(x) t_x`.
    pub fn canonical_elt(&self, w: ElementId, table: &TlCanonicalTable) -> TlElt {
        let i = self.fc_pos[w.index()] as usize;
        let mut out = TlElt::zero();
        for &(x, ref p) in &table.cols[i] {
            out.add_term(x, p.shifted(-(self.table.length(x) as i32)));
        }
        out
    }

    /// Grades (lengths) of the fully commutative elements, for building
    /// alternative processing orders.
    pub fn fc_lengths(&self) -> Vec<usize> {
        self.fc.iter().map(|&w| self.table.length(w)).collect()
    }

    /// Expands an element in the chosen basis by a triangular solve (for
    /// the `t`-basis this is just the coordinate list).
    pub fn expand(
        &self,
        elt: &TlElt,
        basis: TlBasis,
        canonical: Option<&TlCanonicalTable>,
    ) -> Vec<(ElementId, LaurentPoly)> {
        match basis {
            TlBasis::T => elt.coords().map(|(w, c)| (w, c.clone())).collect(),
            TlBasis::Monomial => self.triangular_expand(elt, |w| {
                self.b_monomial(w)
                    .expect("monomial index is fully commutative")
            }),
            TlBasis::Canonical => {
                let table = canonical.expect("canonical table required");
                self.triangular_expand(elt, |w| self.canonical_elt(w, table))
            }
        }
    }

    /// Both the monomial and canonical bases have leading `t`-coefficient
    /// `v^-l(w)` at their index, so expansion is a top-down solve.
    fn triangular_expand(
        &self,
        elt: &TlElt,
        basis_elt: impl Fn(ElementId) -> TlElt,
    ) -> Vec<(ElementId, LaurentPoly)> {
        let mut residual = elt.clone();
        let mut out = Vec::new();
        while let Some((&y, _)) = residual.coords.iter().next_back() {
            let d = residual.coeff(y).shifted(self.table.length(y) as i32);
            residual = residual.sub(&basis_elt(y).scaled(&d));
            debug_assert!(residual.coeff(y).is_zero());
            out.push((y, d));
        }
        out.sort_unstable_by_key(|&(y, _)| y);
        out
    }

    /// The chosen basis as explicit `t`-basis elements, indexed like
    /// `fc_elements()`.
    pub fn basis_elements(
        &self,
        basis: TlBasis,
        canonical: Option<&TlCanonicalTable>,
    ) -> Vec<TlElt> {
        self.fc
            .iter()
            .map(|&w| match basis {
                TlBasis::T => TlElt::basis(w),
                TlBasis::Monomial => self.b_monomial(w).unwrap(),
                TlBasis::Canonical => self.canonical_elt(w, canonical.unwrap()),
            })
            .collect()
    }

    /// Full multiplication table of the chosen basis in itself:
    /// `out[i][j]` expands (basis_i * basis_j).
    pub fn structure_constants(
        &self,
        basis: TlBasis,
        canonical: Option<&TlCanonicalTable>,
    ) -> Vec<Vec<Vec<(ElementId, LaurentPoly)>>> {
        let elements = self.basis_elements(basis, canonical);
        elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| self.expand(&self.mul(a, b), basis, canonical))
                    .collect()
            })
            .collect()
    }

    /// The generators of the quotient ideal: one sum of parabolic basis
    /// elements per non-commuting generator pair.
    pub fn ideal_generators(&self) -> Vec<HeckeElt> {
        self.table
            .graph()
            .noncommuting_pairs()
            .iter()
            .map(|&(i, j)| {
                let m = self.table.graph().bond(i, j) as usize;
                let mut g = HeckeElt::zero();
                for word in parabolic_words(i as u8, j as u8, m) {
                    g.add_term(self.table.element_of_word(&word), LaurentPoly::one());
                }
                g
            })
            .collect()
    }
}

/// Reduced words of all `2m` elements of the rank-2 parabolic generated
/// by `s` and `s'` with bond `m`: alternating words of each length, both
/// starting letters, and the full-length word once.
fn parabolic_words(s: u8, s_prime: u8, m: usize) -> Vec<Vec<u8>> {
    let alternating = |first: u8, second: u8, len: usize| -> Vec<u8> {
        (0..len)
            .map(|k| if k % 2 == 0 { first } else { second })
            .collect()
    };
    let mut out = vec![Vec::new()];
    for len in 1..m {
        out.push(alternating(s, s_prime, len));
        out.push(alternating(s_prime, s, len));
    }
    out.push(alternating(s, s_prime, m));
    out
}

/// Same, except the longest element is omitted.
fn proper_parabolic_words(s: u8, s_prime: u8, m: usize) -> Vec<Vec<u8>> {
    let mut words = parabolic_words(s, s_prime, m);
    words.pop();
    words
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::words::braid_class;
    use crate::coxeter::CoxeterGraph;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn group(spec: &str) -> GroupTable {
        GroupTable::enumerate(CoxeterGraph::parse(spec).unwrap(), 100_000).unwrap()
    }

    fn random_hecke(rng: &mut StdRng, t: &GroupTable) -> HeckeElt {
        let mut h = HeckeElt::zero();
        for _ in 0..rng.gen_range(1..4) {
            let w = ElementId(rng.gen_range(0..t.order() as u32));
            h.add_term(
                w,
                LaurentPoly::from_terms([(rng.gen_range(-3..=3), rng.gen_range(-5..=5i64))]),
            );
        }
        h
    }

    #[test]
    fn theta_fixes_fully_commutative_elements() {
        for spec in ["A3", "B3"] {
            let t = group(spec);
            let tl = TlAlgebra::new(&t);
            for w in t.elements() {
                if t.is_fc(w) {
                    assert_eq!(*tl.theta_t(w), TlElt::basis(w));
                } else {
                    // Support strictly below w and fully commutative.
                    for (y, _) in tl.theta_t(w).coords() {
                        assert!(t.is_fc(y));
                        assert!(t.bruhat_leq(y, w));
                        assert!(y != w);
                    }
                }
            }
        }
    }

    #[test]
    fn theta_of_a2_longest_element() {
        let t = group("A2");
        let tl = TlAlgebra::new(&t);
        let image = tl.theta_t(t.longest_element());
        let minus_one = -&LaurentPoly::one();
        assert_eq!(image.support_len(), 5);
        for w in t.elements() {
            if w != t.longest_element() {
                assert_eq!(image.coeff(w), minus_one);
            }
        }
    }

    #[test]
    fn theta_annihilates_the_ideal() {
        for spec in ["A2", "B2", "B3"] {
            let t = group(spec);
            let tl = TlAlgebra::new(&t);
            let h = tl.hecke();
            let mut rng = StdRng::seed_from_u64(31);
            for g in tl.ideal_generators() {
                assert!(tl.theta(&g).is_zero());
                for _ in 0..10 {
                    let x = ElementId(rng.gen_range(0..t.order() as u32));
                    let y = ElementId(rng.gen_range(0..t.order() as u32));
                    let prod = h.mul(&h.mul(&h.t(x), &g), &h.t(y));
                    assert!(tl.theta(&prod).is_zero());
                }
            }
        }
    }

    #[test]
    fn theta_is_multiplicative() {
        let t = group("B2");
        let tl = TlAlgebra::new(&t);
        let h = tl.hecke();
        for x in t.elements() {
            for y in t.elements() {
                let lhs = tl.theta(&h.mul(&h.t(x), &h.t(y)));
                let rhs = tl.mul(tl.theta_t(x), tl.theta_t(y));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn tl_multiplication_examples() {
        let t = group("A2");
        let tl = TlAlgebra::new(&t);
        let s1 = t.generator(0);
        let x = tl.mul(&TlElt::basis(s1), &TlElt::basis(s1));
        assert_eq!(x.coeff(t.identity()), LaurentPoly::q());
        assert_eq!(x.coeff(s1), &LaurentPoly::q() - &LaurentPoly::one());
        for w in t.elements().filter(|&w| t.is_fc(w)) {
            assert_eq!(tl.mul(&tl.unit(), &TlElt::basis(w)), TlElt::basis(w));
        }

        // Reduction through the quotient map is the oracle.
        let b2 = group("B2");
        let tlb = TlAlgebra::new(&b2);
        let hb = tlb.hecke();
        let a = b2.element_of_word(&[0, 1, 0]);
        let b = b2.generator(1);
        assert_eq!(
            tlb.mul(&TlElt::basis(a), &TlElt::basis(b)),
            tlb.theta(&hb.mul(&hb.t(a), &hb.t(b)))
        );
    }

    #[test]
    fn tl_mul_associativity() {
        let t = group("B2");
        let tl = TlAlgebra::new(&t);
        let mut rng = StdRng::seed_from_u64(37);
        for _ in 0..15 {
            let a = tl.theta(&random_hecke(&mut rng, &t));
            let b = tl.theta(&random_hecke(&mut rng, &t));
            let c = tl.theta(&random_hecke(&mut rng, &t));
            assert_eq!(tl.mul(&tl.mul(&a, &b), &c), tl.mul(&a, &tl.mul(&b, &c)));
        }
    }

    #[test]
    fn monomial_generators() {
        let t = group("A2");
        let tl = TlAlgebra::new(&t);
        assert_eq!(tl.b_monomial(t.identity()).unwrap(), tl.unit());
        let b1 = tl.b_gen(0);
        assert_eq!(b1.coeff(t.generator(0)), LaurentPoly::v_pow(-1));
        assert_eq!(b1.coeff(t.identity()), LaurentPoly::v_pow(-1));
        // b_s^2 = q_c b_s
        assert_eq!(tl.mul(&b1, &b1), b1.scaled(&LaurentPoly::q_c()));
        assert!(tl.b_monomial(t.longest_element()).is_err());
    }

    #[test]
    fn monomial_is_reduced_word_independent() {
        // Groups of order up to 400.
        for spec in ["A3", "A4", "B3", "B4", "D4", "I2:5", "I2:7"] {
            let t = group(spec);
            let tl = TlAlgebra::new(&t);
            for &w in tl.fc_elements() {
                let expected = tl.b_monomial(w).unwrap();
                for word in braid_class(t.graph(), t.word(w)) {
                    assert_eq!(tl.b_product(&word), expected);
                }
            }
        }
    }

    #[test]
    fn bar_commutes_with_theta() {
        let t = group("B2");
        let tl = TlAlgebra::new(&t);
        let h = tl.hecke();
        assert_eq!(tl.bar(&tl.unit()), tl.unit());
        let ve = tl.unit().scaled(&LaurentPoly::v());
        assert_eq!(tl.bar(&ve), tl.unit().scaled(&LaurentPoly::v_pow(-1)));
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..20 {
            let x = random_hecke(&mut rng, &t);
            assert_eq!(tl.bar(&tl.theta(&x)), tl.theta(&h.bar(&x)));
        }
        for &w in tl.fc_elements() {
            let tw = TlElt::basis(w);
            assert_eq!(tl.bar(&tl.bar(&tw)), tw);
        }
    }

    #[test]
    fn canonical_basis_in_simply_laced_types_is_monomial() {
        for spec in ["A2", "A3"] {
            let t = group(spec);
            let tl = TlAlgebra::new(&t);
            let table = tl.canonical_table().unwrap();
            assert_eq!(tl.canonical_elt(t.identity(), &table), tl.unit());
            for &w in tl.fc_elements() {
                assert_eq!(
                    tl.canonical_elt(w, &table),
                    tl.b_monomial(w).unwrap(),
                    "{spec}: mismatch at {w:?}"
                );
            }
        }
    }

    #[test]
    fn canonical_basis_differs_from_monomial_in_b2() {
        let t = group("B2");
        let tl = TlAlgebra::new(&t);
        let table = tl.canonical_table().unwrap();
        let differing: Vec<ElementId> = tl
            .fc_elements()
            .iter()
            .copied()
            .filter(|&w| tl.canonical_elt(w, &table) != tl.b_monomial(w).unwrap())
            .collect();
        assert!(!differing.is_empty());
        // The witnesses are still bar-fixed.
        for &w in &differing {
            let c = tl.canonical_elt(w, &table);
            assert_eq!(tl.bar(&c), c);
        }
    }

    #[test]
    fn canonical_triangularity() {
        for spec in ["B2", "B3"] {
            let t = group(spec);
            let tl = TlAlgebra::new(&t);
            let table = tl.canonical_table().unwrap();
            for (i, col) in table.cols.iter().enumerate() {
                let w = table.fc[i];
                for &(x, ref p) in col {
                    assert!(t.is_fc(x));
                    assert!(t.bruhat_leq(x, w));
                    if x == w {
                        assert!(p.is_one());
                    } else {
                        assert!(p.in_v_inv_a_minus());
                    }
                }
            }
        }
    }

    #[test]
    fn structure_constants_examples() {
        let t = group("A2");
        let tl = TlAlgebra::new(&t);
        let table = tl.canonical_table().unwrap();
        // c_e c_w = c_w.
        let consts = tl.structure_constants(TlBasis::Canonical, Some(&table));
        let e = 0; // identity is the first fully commutative element
        for (j, &w) in tl.fc_elements().iter().enumerate() {
            assert_eq!(consts[e][j], vec![(w, LaurentPoly::one())]);
        }
        // b_{s1} b_{s2} = b_{s1 s2}.
        let bs = tl.structure_constants(TlBasis::Monomial, None);
        let i1 = tl
            .fc_elements()
            .iter()
            .position(|&w| w == t.generator(0))
            .unwrap();
        let i2 = tl
            .fc_elements()
            .iter()
            .position(|&w| w == t.generator(1))
            .unwrap();
        let s1s2 = t.element_of_word(&[0, 1]);
        assert_eq!(bs[i1][i2], vec![(s1s2, LaurentPoly::one())]);
    }

    #[test]
    fn kl_basis_images_stay_in_the_lattice() {
        // For every group element (complex indices included), the image
        // of its bar-fixed basis element expands over {v^-l(x) t_x} with
        // coefficients free of positive powers.
        use crate::hecke::HeckeAlgebra;
        for spec in ["A2", "B2", "B3"] {
            let t = group(spec);
            let tl = TlAlgebra::new(&t);
            let h = HeckeAlgebra::new(&t);
            let kl = h.kl_table().unwrap();
            for w in t.elements() {
                let image = tl.theta(&h.kl_basis(w, &kl));
                for (x, c) in image.coords() {
                    assert!(
                        c.shifted(t.length(x) as i32).in_a_minus(),
                        "{spec}: image of basis element {w:?} leaves the lattice at {x:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_table_json_round_trip() {
        // B3 interleaves complex and fully commutative elements across
        // lengths, so the column keys genuinely differ from element ids.
        let t = group("B3");
        let tl = TlAlgebra::new(&t);
        let table = tl.canonical_table().unwrap();
        assert!(tl
            .fc_elements()
            .iter()
            .enumerate()
            .any(|(i, w)| w.index() != i));
        let dump = table.to_json(&t, "tl-c", 1);
        for (col, &w) in dump["columns"]
            .as_array()
            .unwrap()
            .iter()
            .zip(tl.fc_elements())
        {
            assert_eq!(
                col[0].as_str().unwrap(),
                crate::coxeter::format_word(t.word(w), t.rank())
            );
        }
        let back = TlCanonicalTable::from_json(&dump, &t, "tl-c", 1).unwrap();
        assert_eq!(back, table);
        assert!(TlCanonicalTable::from_json(&dump, &t, "tl-c", 2).is_none());
    }

    #[test]
    fn expansion_round_trips() {
        let t = group("B2");
        let tl = TlAlgebra::new(&t);
        let table = tl.canonical_table().unwrap();
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..20 {
            let x = tl.theta(&random_hecke(&mut rng, &t));
            for basis in [TlBasis::T, TlBasis::Monomial, TlBasis::Canonical] {
                let expansion = tl.expand(&x, basis, Some(&table));
                let mut recovered = TlElt::zero();
                for &(w, ref d) in &expansion {
                    let elt = match basis {
                        TlBasis::T => TlElt::basis(w),
                        TlBasis::Monomial => tl.b_monomial(w).unwrap(),
                        TlBasis::Canonical => tl.canonical_elt(w, &table),
                    };
                    recovered.add_scaled(&elt, d);
                }
                assert_eq!(recovered, x);
            }
        }
    }
}
