//! Satisfaction of linear-time properties *within fairness* for finite-state
//! systems, together with behaviour abstraction by alphabetic homomorphisms.
//!
//! The crate decides relative liveness (`pre(L) = pre(L ∩ P)`) and relative
//! safety of ω-regular properties, checks weak continuation-closure of
//! abstraction homomorphisms, transforms PLTL formulas across the
//! abstraction boundary and synthesizes fair implementations.

pub mod abstraction;
pub mod alphabet;
pub mod automata;
pub mod error;
pub mod format;
pub mod pltl;
pub mod relprops;
pub mod sample;
pub mod synthesis;

pub use alphabet::{Alphabet, Symbol, Word};
pub use automata::{BuchiAutomaton, FinAutomaton, LassoWord};
pub use error::{Error, Result};
