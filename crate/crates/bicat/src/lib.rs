//! bicat: a kernel for computing with finitely presented 2-categories.
//!
//! The crate decides bounded word problems for 1- and 2-cells of a
//! presented 2-category, enumerates cones and modifications over a
//! 2-functor, builds the nine slice 2-categories of cones (cone flavor ×
//! morphism flavor), and decides 2-/pseudo-/lax-limit and 2-/bi-terminal
//! predicates. Everything that depends on a search bound reports a
//! [`verdict::Certificate`] saying whether the answer is exact or merely
//! bound-certified.

pub mod cat;
pub mod corpus;
pub mod diagram;
pub mod dsl;
pub mod engine;
pub mod error;
pub mod presentation;
pub mod slice;
pub mod term;
pub mod universality;
pub mod verdict;

pub use cat::FiniteCategory;
pub use engine::Engine;
pub use error::{KernelError, Result};
pub use presentation::{Presentation, Word};
pub use term::Term;
pub use verdict::{Bounds, Certificate, Status, Verdict, Witness};
