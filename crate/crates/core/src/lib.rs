//! Exact symbolic computation for the quadratic relations among pfaffians of
//! principal minors of antisymmetric matrices.
//!
//! The generators are the polynomials `pf_I`, indexed by standard rows over
//! `1..=n` via even completion. For every non-standard two-row tableau the
//! [`shuffle`] module builds the explicit quadratic that vanishes under the
//! pfaffian substitution; [`straighten`] rewrites arbitrary products of
//! generators into the standard monomial basis with those quadratics; and
//! [`oracle`] independently certifies, by exact rational linear algebra, that
//! the relations vanish, generate the whole kernel of the multiplication
//! map, and that standard monomials are linearly independent.
//!
//! Everything is exact: integer and rational arithmetic throughout, no
//! floating point, no tolerances.

pub mod combinatorics;
pub mod error;
pub mod oracle;
pub mod pfaffian;
pub mod polyring;
pub mod qpoly;
pub mod shuffle;
pub mod spinaction;
pub mod straighten;

pub use combinatorics::{is_compatible, CanonicalSplit, Permutation, Row, Tableau};
pub use error::{Error, Result};
pub use pfaffian::{
    numeric_pfaffian, tridiagonal_matrix, unit_pfaffian_matrix, PfaffianContext,
};
pub use polyring::{AntisymMatrix, Monomial, SparsePoly, VarIndex};
pub use qpoly::{check_alternating_identity, gauss_binom, gauss_binom_at_minus1, QPoly};
pub use shuffle::{
    enumerate_index_set, nonstandard_tableaux, relation_generators, shuffling_relation,
    shuffling_relation_pf, shuffling_relation_raw, shuffling_relation_truncated,
    truncation_counterexample, FormalQuadratic, TableauKey,
};
pub use straighten::{Expansion, ReductionOrder, Straightener, StraighteningResult, TableauMonomial};
