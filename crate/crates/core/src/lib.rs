//! Partial strings over finite alphabets, logograms of word sets, and the
//! tools built on them: independence checks, witness/wizard classification
//! and kernels of probing decision programs.
//!
//! Positions are 1-based throughout. Region and solution indices are
//! 0-based in the API and rendered by solution label in reports.

pub mod budget;
pub mod error;
pub mod galois;
pub mod independence;
pub mod kernel;
pub mod logogram;
pub mod problems;
pub mod string;
pub mod universe;
pub mod wizardry;

pub use budget::Budget;
pub use error::{Error, Result};
pub use logogram::{
    closure_ab_contains, closure_ba, decides_target, entangles, in_logogram, is_complete, is_irreducible,
    isoexpansive, reduced_logogram, Antichain,
};
pub use problems::{problem_from_selector, ProblemSlice};
pub use string::{Alphabet, Letter, PartialString};
pub use universe::{expand, in_sigma_infinity, Slice, Word, WordSet};
