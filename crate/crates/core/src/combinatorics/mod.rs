//! Rows, tableaux, signs and the dominance order.
//!
//! A row is a sequence over the alphabet `1..=n`; a standard row is strictly
//! increasing. Standard rows are ordered by `R <= S` iff `R` is at least as
//! long as `S` and entrywise below it; a two-row tableau is standard when the
//! top row is below the bottom one. Non-standard two-row tableaux split
//! canonically at their first order violation, which is where the shuffling
//! relations attach.

mod perm;
mod row;
mod tableau;

pub use perm::Permutation;
pub use row::Row;
pub use tableau::{is_compatible, CanonicalSplit, Tableau};
