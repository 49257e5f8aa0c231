//! Coxeter graphs, finite Coxeter groups and their word combinatorics:
//! enumeration, Bruhat order, full commutativity, the coset-tower normal
//! form and reduced-word parsing.

mod graph;
mod group;
mod parsing;
mod tower;
pub mod words;

pub use graph::{CoxeterGraph, GraphError, LinearType};
pub use group::{format_word, parse_word, BraidWitness, ElementId, EnumerationError, GroupTable};
pub use parsing::{parse_noncommutative, NoncommutativeParse, ParseError};
pub use tower::{normal_form, tower_words, TowerError};
