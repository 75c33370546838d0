//! Weighted free algebras, graded presentations, truncated completion and
//! normal-word bases.

mod basis;
mod construct;
mod elt;
pub mod parse;
mod presentation;
mod rewrite;

pub use basis::{Certification, GradedAlgebra, GradedBasis};
pub use construct::{ore_extension, tensor_product};
pub use elt::{word_string, FreeElt, Word};
pub use parse::{elt, emit_algebra_file, parse_algebra_file, parse_autos_file, parse_element, AlgebraFile, AutoSpec};
pub use presentation::{AlgebraPresentation, Generator};
pub use rewrite::{complete, complete_with_cap, MonomialOrder, RewriteSystem, Rule, DEFAULT_RULE_CAP};

#[cfg(test)]
mod tests;
