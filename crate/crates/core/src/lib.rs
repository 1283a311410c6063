//! Cogrowth of finitely generated semigroups.
//!
//! The crate counts words over a finite choice of generators by the element
//! they represent, and derives from those exact counts the local cogrowth
//! function `λ_s(n)`, the global cogrowth functions `γ(n)` and `γ'(n)`, their
//! rates, and the matching quantities of the right random-walk Markov operator
//! on `ℓ2(S¹)`. Finite semigroups given by a multiplication table can also be
//! checked for the structural predicates that usually accompany amenability
//! arguments (minimal ideal, left reversibility, the Klawe condition).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command-line front end live in the `cogrowth-cli` crate.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod cayley;
pub mod cogrowth;
pub mod error;
pub mod montecarlo;
pub mod numeric;
pub mod operator;

pub use algebra::{
    adjoin_identity, eval_word, make_family, make_rewriting, opposite, power_generators, Element,
    Engine, EngineKind, Family, Form, GeneratorChoice, Semigroup, Word,
};
pub use error::{Error, Result};

/// Default cap on the number of interned elements.
pub const DEFAULT_ELEMENT_CAP: usize = 5_000_000;
