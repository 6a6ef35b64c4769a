//! Abstraction homomorphisms and the preservation of properties satisfied
//! within fairness under them.

mod hom;
mod preserve;
mod wcc;
mod xtd;

pub use hom::{
    abstract_behavior, apply_hom_lasso, image_automaton, inverse_image_buchi, inverse_image_fin,
    HomImage, Homomorphism,
};
pub use preserve::{preserve_check, within_fairness_finitary, PreserveReport};
pub use wcc::{is_weakly_continuation_closed, WccReport, WccViolation};
pub use xtd::{compute_xtd, Extension};
