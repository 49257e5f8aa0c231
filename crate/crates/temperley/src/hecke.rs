//! The Hecke algebra of a finite Coxeter group in the `T`-basis over
//! `Z[v, v^-1]` (with `q = v^2`): multiplication, basis inversion, the
//! bar involution and the Kazhdan-Lusztig basis.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::canonical::{self, CanonicalError, Column, IcColumns};
use crate::coxeter::{format_word, parse_word, ElementId, GroupTable};
use crate::laurent::LaurentPoly;

/// An element of the Hecke algebra as a sparse map from group elements to
/// `T`-basis coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct HeckeElt {
    coords: BTreeMap<ElementId, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: ElementId) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(w, LaurentPoly::one());
        HeckeElt { coords }
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

    pub fn add_scaled(&mut self, other: &HeckeElt, scale: &LaurentPoly) {
        for (w, c) in other.coords() {
            self.add_term(w, scale * c);
        }
    }

    pub fn scaled(&self, scale: &LaurentPoly) -> HeckeElt {
        let mut out = HeckeElt::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn sub(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        for (w, c) in other.coords() {
            out.add_term(w, -c);
        }
        out
    }
}

/// Which side a generator acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Triangular table of Kazhdan-Lusztig coefficients: `cols[w]` lists the
/// pairs `(x, P(x, w))` with nonzero coefficient, diagonal included.
/// Diagonal entries are 1 and off-diagonal entries lie in `v^-1 Z[v^-1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KlTable {
    pub cols: Vec<Vec<(ElementId, LaurentPoly)>>,
}

/// The Hecke algebra attached to an enumerated group. Caches the
/// inverses of the generators.
pub struct HeckeAlgebra<'a> {
    table: &'a GroupTable,
    gen_inv: Vec<HeckeElt>,
}

impl<'a> HeckeAlgebra<'a> {
    pub fn new(table: &'a GroupTable) -> Self {
        let q_inv = LaurentPoly::q_inv();
        let correction = &q_inv - &LaurentPoly::one();
        let gen_inv = (0..table.rank() as u8)
            .map(|s| {
                // T_s^-1 = q^-1 T_s + (q^-1 - 1) T_e
                let mut inv = HeckeElt::zero();
                inv.add_term(table.generator(s), q_inv.clone());
                inv.add_term(table.identity(), correction.clone());
                inv
            })
            .collect();
        HeckeAlgebra { table, gen_inv }
    }

    pub fn group(&self) -> &'a GroupTable {
        self.table
    }

    pub fn unit(&self) -> HeckeElt {
        HeckeElt::basis(self.table.identity())
    }

    pub fn t(&self, w: ElementId) -> HeckeElt {
        HeckeElt::basis(w)
    }

    /// Multiplication by the generator basis element `T_s` on either
    /// side: `T_s T_w = T_{sw}` on ascent, `q T_{sw} + (q - 1) T_w` on
    /// descent, extended linearly.
    pub fn mul_gen(&self, side: Side, s: u8, h: &HeckeElt) -> HeckeElt {
        let q = LaurentPoly::q();
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = HeckeElt::zero();
        for (w, c) in h.coords() {
            let ws = match side {
                Side::Left => self.table.left_mul(s, w),
                Side::Right => self.table.right_mul(w, s),
            };
            if self.table.length(ws) > self.table.length(w) {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(ws, &q * c);
                out.add_term(w, &q_minus_one * c);
            }
        }
        out
    }

    /// Bilinear product, computed by expanding the right factor along the
    /// canonical reduced word of each of its basis indices.
    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (y, c) in b.coords() {
            let mut acc = a.clone();
            for &s in self.table.word(y) {
                acc = self.mul_gen(Side::Right, s, &acc);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// `T_w^-1`, computed along the reversed canonical word of `w` from
    /// the cached generator inverses.
    pub fn invert_t(&self, w: ElementId) -> HeckeElt {
        let mut acc = self.unit();
        for &s in self.table.word(w).iter().rev() {
            acc = self.mul(&acc, &self.gen_inv[s as usize]);
        }
        acc
    }

    /// The bar involution: semilinear over `v -> v^-1` with
    /// `T_w -> T_{w^-1}^-1`.
    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (w, c) in h.coords() {
            out.add_scaled(&self.invert_t(self.table.inverse(w)), &c.bar());
        }
        out
    }

    /// Coordinates of `bar(v^-l(w) T_w)` in the rescaled standard basis
    /// `{v^-l(y) T_y}`, as a column for the fixed-point engine.
    fn bar_column(&self, w: ElementId) -> Column {
        let lw = self.table.length(w) as i32;
        let inv = self.invert_t(self.table.inverse(w));
        inv.coords()
            .map(|(y, c)| {
                let ly = self.table.length(y) as i32;
                (y.index(), c.shifted(lw + ly))
            })
            .collect()
    }

    /// The full Kazhdan-Lusztig coefficient table, via the bar-fixed-point
    /// engine over the length-sorted element order.
    pub fn kl_table(&self) -> Result<KlTable, CanonicalError> {
        self.kl_table_with_order(&canonical::natural_order(self.table.order()))
    }

    /// Same, processing indices in the supplied linear extension. The
    /// result is order-independent; exposing the order lets tests verify
    /// that.
    pub fn kl_table_with_order(&self, order: &[usize]) -> Result<KlTable, CanonicalError> {
        let cols = canonical::ic_columns(self.table.order(), order, |i| {
            self.bar_column(ElementId(i as u32))
        })?;
        Ok(self.kl_from_columns(cols))
    }

    fn kl_from_columns(&self, cols: IcColumns) -> KlTable {
        KlTable {
            cols: cols
                .cols
                .into_iter()
                .map(|col| {
                    col.into_iter()
                        .map(|(y, p)| (ElementId(y as u32), p))
                        .collect()
                })
                .collect(),
        }
    }

    /// The Kazhdan-Lusztig basis element for `w`:
    /// `sum_x P(x, w) v^-l(x) T_x`.
    pub fn kl_basis(&self, w: ElementId, kl: &KlTable) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for &(x, ref p) in &kl.cols[w.index()] {
            out.add_term(x, p.shifted(-(self.table.length(x) as i32)));
        }
        out
    }

    /// Expands `v^-l(w) T_w` in the Kazhdan-Lusztig basis by a triangular
    /// solve; the coefficient of the top index is always 1.
    pub fn inverse_kl_expansion(
        &self,
        w: ElementId,
        kl: &KlTable,
    ) -> Vec<(ElementId, LaurentPoly)> {
        // Work in the rescaled coordinates {v^-l(y) T_y}, where the
        // columns of `kl` are exactly the coordinates of the basis.
        let mut residual: BTreeMap<ElementId, LaurentPoly> = BTreeMap::new();
        residual.insert(w, LaurentPoly::one());
        let mut out = Vec::new();
        while let Some((&y, _)) = residual.iter().next_back() {
            let d = residual.remove(&y).unwrap();
            if d.is_zero() {
                continue;
            }
            for &(x, ref p) in &kl.cols[y.index()] {
                if x != y {
                    let entry = residual.entry(x).or_default();
                    *entry -= &(&d * p);
                    if entry.is_zero() {
                        residual.remove(&x);
                    }
                }
            }
            out.push((y, d));
        }
        out.sort_unstable_by_key(|&(y, _)| y);
        out
    }
}

impl KlTable {
    /// JSON dump keyed by canonical words, in (length, ShortLex) order.
    pub fn to_json(&self, table: &GroupTable, kind: &str, version: u32) -> Value {
        let keys: Vec<ElementId> = table.elements().collect();
        columns_to_json(&self.cols, &keys, table, kind, version)
    }

    pub fn from_json(value: &Value, table: &GroupTable, kind: &str, version: u32) -> Option<Self> {
        let keys: Vec<ElementId> = table.elements().collect();
        let cols = columns_from_json(value, &keys, table, kind, version)?;
        Some(KlTable { cols })
    }
}

pub(crate) fn columns_to_json(
    cols: &[Vec<(ElementId, LaurentPoly)>],
    keys: &[ElementId],
    table: &GroupTable,
    kind: &str,
    version: u32,
) -> Value {
    assert_eq!(cols.len(), keys.len());
    let rank = table.rank();
    let columns: Vec<Value> = cols
        .iter()
        .zip(keys)
        .map(|(col, &w)| {
            let entries: Vec<Value> = col
                .iter()
                .map(|(x, p)| json!([format_word(table.word(*x), rank), p.to_json()]))
                .collect();
            json!([format_word(table.word(w), rank), entries])
        })
        .collect();
    json!({
        "version": version,
        "graph": table.graph().label(),
        "kind": kind,
        "columns": columns,
    })
}

/// Parses a column dump back, verifying the version and graph stamps and
/// that the column keys are exactly `keys` in order.
pub(crate) fn columns_from_json(
    value: &Value,
    keys: &[ElementId],
    table: &GroupTable,
    kind: &str,
    version: u32,
) -> Option<Vec<Vec<(ElementId, LaurentPoly)>>> {
    let obj = value.as_object()?;
    if obj.get("version")?.as_u64()? != u64::from(version)
        || obj.get("kind")?.as_str()? != kind
        || obj.get("graph")?.as_str()? != table.graph().label()
    {
        return None;
    }
    let rank = table.rank();
    let raw_columns = obj.get("columns")?.as_array()?;
    if raw_columns.len() != keys.len() {
        return None;
    }
    let mut cols = Vec::new();
    for (col, &expected) in raw_columns.iter().zip(keys) {
        let pair = col.as_array().filter(|a| a.len() == 2)?;
        let w = table.element_of_word(&parse_word(pair[0].as_str()?, rank)?);
        if w != expected {
            return None;
        }
        let mut entries = Vec::new();
        for entry in pair[1].as_array()? {
            let entry = entry.as_array().filter(|a| a.len() == 2)?;
            let word = parse_word(entry[0].as_str()?, rank)?;
            let x = table.element_of_word(&word);
            if table.word(x) != word.as_slice() {
                return None; // not a canonical word
            }
            let poly = LaurentPoly::from_json(&entry[1]).ok()?;
            entries.push((x, poly));
        }
        cols.push(entries);
    }
    Some(cols)
}
