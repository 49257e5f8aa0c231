//! Exact-arithmetic Hecke algebras and generalized Temperley-Lieb
//! quotients over finite Coxeter groups.
//!
//! The crate enumerates a finite Coxeter group from its graph, builds the
//! Hecke algebra in the `T`-basis over `Z[v, v^-1]`, computes the
//! Kazhdan-Lusztig basis through a generic bar-fixed-point engine, forms
//! the Temperley-Lieb quotient with its `t`-, monomial and canonical
//! bases, and machine-checks the structural properties relating the two
//! algebras (projection of the Kazhdan-Lusztig basis, lattice bounds,
//! kernel spans, structure-constant positivity).

pub mod canonical;
pub mod coxeter;
pub mod hecke;
pub mod laurent;
pub mod tl;
pub mod verify;

pub use coxeter::{CoxeterGraph, ElementId, GroupTable};
pub use hecke::{HeckeAlgebra, HeckeElt, KlTable};
pub use laurent::LaurentPoly;
pub use tl::{TlAlgebra, TlCanonicalTable, TlElt};

/// Bump when any serialized table format changes; cache files carry it.
pub const TABLE_FORMAT_VERSION: u32 = 1;

/// Default enumeration cap: fail fast on accidental infinite types.
pub const DEFAULT_MAX_ORDER: usize = 100_000;
