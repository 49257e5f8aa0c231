//! Exact arithmetic in the ring `A = Z[v, v^-1]` of integer Laurent
//! polynomials, together with the bar involution `v -> v^-1` and the
//! membership tests for the subring `A^- = Z[v^-1]` and its ideal `v^-1 A^-`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

/// A Laurent polynomial in `v` with arbitrary-precision integer
/// coefficients, stored as a sparse exponent -> coefficient map.
///
/// Invariant: the map never stores a zero coefficient; the empty map is
/// the zero polynomial.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(0, 1)
    }

    pub fn int(n: i64) -> Self {
        Self::term(0, n)
    }

    /// The generator `v`.
    pub fn v() -> Self {
        Self::v_pow(1)
    }

    /// The monomial `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::term(exp, 1)
    }

    /// The parameter `q = v^2`.
    pub fn q() -> Self {
        Self::v_pow(2)
    }

    /// `q^-1 = v^-2`.
    pub fn q_inv() -> Self {
        Self::v_pow(-2)
    }

    /// The loop parameter `[2] = v + v^-1`.
    pub fn q_c() -> Self {
        Self::from_terms([(1, 1), (-1, 1)])
    }

    pub fn term(exp: i32, coeff: i64) -> Self {
        let mut p = Self::default();
        p.add_term(exp, BigInt::from(coeff));
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(iter: I) -> Self {
        let mut p = Self::default();
        for (exp, c) in iter {
            p.add_term(exp, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0) == BigInt::from(1)
    }

    /// The coefficient of `v^exp` (zero if absent).
    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The bar involution: `v -> v^-1`, i.e. exponent negation.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shifted(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// The sum of the terms with strictly negative exponent.
    pub fn neg_exp_part(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .range(..0)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Membership in `A^- = Z[v^-1]`: every exponent is <= 0.
    pub fn in_a_minus(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= 0)
    }

    /// Membership in `v^-1 A^-`: every exponent is <= -1.
    pub fn in_v_inv_a_minus(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= -1)
    }

    /// Membership in `N[v, v^-1]`: every coefficient is >= 0.
    pub fn has_nonneg_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// JSON rendering: `[[exponent, coefficient], ...]` sorted by
    /// descending exponent. Coefficients that fit in an `i64` are emitted
    /// as numbers, larger ones as decimal strings.
    pub fn to_json(&self) -> Value {
        let arr: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(&e, c)| {
                let cv = match i64::try_from(c) {
                    Ok(n) => json!(n),
                    Err(_) => json!(c.to_string()),
                };
                json!([e, cv])
            })
            .collect();
        Value::Array(arr)
    }

    pub fn from_json(value: &Value) -> Result<Self, String> {
        let arr = value.as_array().ok_or("expected array of [exp, coeff]")?;
        let mut p = Self::default();
        for pair in arr {
            let pair = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or("expected [exp, coeff] pair")?;
            let exp = pair[0]
                .as_i64()
                .and_then(|e| i32::try_from(e).ok())
                .ok_or("bad exponent")?;
            let coeff = match &pair[1] {
                Value::Number(n) => BigInt::from(n.as_i64().ok_or("bad coefficient")?),
                Value::String(s) => s.parse::<BigInt>().map_err(|e| e.to_string())?,
                _ => return Err("bad coefficient".into()),
            };
            p.add_term(exp, coeff);
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (&e1, c1) in self.terms.iter() {
            for (&e2, c2) in rhs.terms.iter() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders with descending exponents, e.g. `v^2 + 2 + v^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&exp, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            let unit = mag == BigInt::from(1);
            if exp == 0 {
                write!(f, "{mag}")?;
            } else {
                if !unit {
                    write!(f, "{mag}")?;
                }
                if exp == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
