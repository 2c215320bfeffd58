//! Shuffling relations: the explicit quadratic attached to a non-standard
//! two-row tableau.
//!
//! Split the tableau as `(I J / H K)` at its first order violation. The
//! relation redistributes the symbols of `H` and `J` over the two rows and
//! lets any part of `K` migrate to the top row:
//!
//! ```text
//! sum  (-1)^{h(h+1)/2} [ |J\K|+h, h ]_{-1}  eps(H'J') eps(Z2 K1')  x(I J' K1' / H' K2')
//! ```
//!
//! over all quadruples of standard rows `(J', H', K1', K2')` with
//! `H' | J' = H | J`, `K1' | K2' = K`, `|H'| <= |H|`, subject to
//! `Z1 = I /\ H` staying inside `H'` and `Z2 = J /\ K` staying inside both
//! `J'` and `K2'`; here `h = |H| - |H'|`. The input tableau appears with
//! coefficient 1 and the whole sum vanishes under the pfaffian substitution.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{CanonicalSplit, Permutation, Row};
use crate::pfaffian::PfaffianContext;
use crate::polyring::SparsePoly;
use crate::qpoly::gauss_binom_at_minus1;

/// An unordered pair of standard rows in its canonical tableau arrangement:
/// the longer row first; for equal lengths the order-smaller row first when
/// the rows are comparable, otherwise the lexicographically larger first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TableauKey {
    top: Row,
    bottom: Row,
}

impl TableauKey {
    pub fn new(a: Row, b: Row) -> Self {
        debug_assert!(a.is_standard() && b.is_standard());
        let (top, bottom) = if a.len() > b.len() {
            (a, b)
        } else if b.len() > a.len() {
            (b, a)
        } else if a.leq(&b) {
            (a, b)
        } else if b.leq(&a) {
            (b, a)
        } else if a.entries() > b.entries() {
            (a, b)
        } else {
            (b, a)
        };
        TableauKey { top, bottom }
    }

    pub fn top(&self) -> &Row {
        &self.top
    }

    pub fn bottom(&self) -> &Row {
        &self.bottom
    }

    /// Standard as a two-row tableau: top below bottom in the row order.
    pub fn is_standard(&self) -> bool {
        self.top.leq(&self.bottom)
    }
}

impl fmt::Display for TableauKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.top, self.bottom)
    }
}

/// Integer combination of unordered pairs of standard rows: an element of
/// the degree-two symmetric power of the span of the generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalQuadratic {
    terms: BTreeMap<TableauKey, BigInt>,
}

impl FormalQuadratic {
    pub fn zero() -> Self {
        FormalQuadratic::default()
    }

    pub fn term(key: TableauKey, coeff: BigInt) -> Self {
        let mut q = FormalQuadratic::zero();
        q.add_term(key, coeff);
        q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &TableauKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TableauKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: TableauKey, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FormalQuadratic, scale: &BigInt) {
        for (k, c) in other.terms() {
            self.add_term(k.clone(), c * scale);
        }
    }

    /// Adds `coeff * x(a) x(b)` where the rows may be unsorted or carry
    /// repeats; repeats contribute nothing and sorting contributes its sign.
    pub fn add_product(&mut self, a: &Row, b: &Row, coeff: BigInt) {
        let (Some((ra, sa)), Some((rb, sb))) = (a.sort_with_sign(), b.sort_with_sign()) else {
            return;
        };
        let sign = BigInt::from((sa * sb) as i64);
        self.add_term(TableauKey::new(ra, rb), coeff * sign);
    }

    /// Entrywise symbol action, with each image row re-sorted and its sign
    /// absorbed into the coefficient.
    pub fn permute(&self, perm: &Permutation) -> FormalQuadratic {
        let mut out = FormalQuadratic::zero();
        for (k, c) in self.terms() {
            out.add_product(&perm.apply_row(k.top()), &perm.apply_row(k.bottom()), c.clone());
        }
        out
    }

    /// Inserts the symbol into both rows of every term; terms already
    /// containing it are killed (their image rows repeat).
    pub fn insert_symbol(&self, s: u8) -> FormalQuadratic {
        let mut out = FormalQuadratic::zero();
        for (k, c) in self.terms() {
            if k.top().contains(s) || k.bottom().contains(s) {
                continue;
            }
            out.add_term(
                TableauKey::new(k.top().insert(s), k.bottom().insert(s)),
                c.clone(),
            );
        }
        out
    }

    /// Deletes every occurrence of the symbol from both rows of every term.
    pub fn delete_symbol(&self, s: u8) -> FormalQuadratic {
        let mut out = FormalQuadratic::zero();
        for (k, c) in self.terms() {
            out.add_term(
                TableauKey::new(k.top().delete(s), k.bottom().delete(s)),
                c.clone(),
            );
        }
        out
    }

    /// Replaces each row by its complement in `1..=n`.
    pub fn complement_rows(&self, n: u8) -> FormalQuadratic {
        let mut out = FormalQuadratic::zero();
        for (k, c) in self.terms() {
            out.add_term(
                TableauKey::new(k.top().complement(n), k.bottom().complement(n)),
                c.clone(),
            );
        }
        out
    }

    /// The pfaffian substitution `x(I) x(J) -> pf_I * pf_J`, summed with the
    /// coefficients. Vanishing of the result is kernel membership.
    pub fn pfaffian_substitution(&self, ctx: &PfaffianContext) -> SparsePoly {
        let mut acc = SparsePoly::zero();
        for (k, c) in self.terms() {
            let prod = &ctx.pf_row(k.top()) * &ctx.pf_row(k.bottom());
            acc.add_scaled(&prod, c);
        }
        acc
    }
}

impl fmt::Display for FormalQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "x({k})")?;
            } else {
                write!(f, "{mag}*x({k})")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// JSON form of one quadratic term.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct QuadraticTermDto {
    pub rows: Vec<Vec<u8>>,
    pub coeff: String,
}

impl FormalQuadratic {
    pub fn to_dto(&self) -> Vec<QuadraticTermDto> {
        self.terms()
            .map(|(k, c)| QuadraticTermDto {
                rows: vec![k.top().entries().to_vec(), k.bottom().entries().to_vec()],
                coeff: c.to_string(),
            })
            .collect()
    }
}

/// One admissible redistribution of symbols in a canonical split.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShuffleIndex {
    /// Part of `H | J` staying in the bottom row (the split's `H'`).
    pub to_bottom: Row,
    /// Part of `H | J` going to the top row (the split's `J'`).
    pub to_top: Row,
    /// Part of `K` migrating to the top row (`K1'`).
    pub k_moved: Row,
    /// Part of `K` staying in the bottom row (`K2'`).
    pub k_kept: Row,
    /// How much shorter the new bottom head is: `|H| - |H'|`.
    pub shortfall: usize,
}

/// Enumerates exactly the admissible quadruples of a canonical split, each
/// once. Subsets are constructed so the containment conditions hold by
/// construction rather than by post-filtering.
pub fn enumerate_index_set(split: &CanonicalSplit) -> Vec<ShuffleIndex> {
    let pool: Vec<u8> = {
        let mut v = split.bottom_head.entries().to_vec();
        v.extend_from_slice(split.top_tail.entries());
        v.sort_unstable();
        v
    };
    let shared_head = split.shared_head(); // must stay in the bottom part
    let shared_tail = split.shared_tail(); // must stay out of the bottom part
    let head_len = split.bottom_head.len();
    let k_entries = split.bottom_tail.entries();
    let movable_k: Vec<u8> = k_entries
        .iter()
        .copied()
        .filter(|&e| !shared_tail.contains(e))
        .collect();

    let mut out = Vec::new();
    for mask in 0u32..(1 << pool.len()) {
        let to_bottom: Vec<u8> = pool
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask & (1 << idx) != 0)
            .map(|(_, &e)| e)
            .collect();
        if to_bottom.len() > head_len {
            continue;
        }
        if !shared_head
            .entries()
            .iter()
            .all(|&e| to_bottom.contains(&e))
        {
            continue;
        }
        if shared_tail.entries().iter().any(|&e| to_bottom.contains(&e)) {
            continue;
        }
        let to_top: Vec<u8> = pool
            .iter()
            .copied()
            .filter(|e| !to_bottom.contains(e))
            .collect();
        for kmask in 0u32..(1 << movable_k.len()) {
            let k_moved: Vec<u8> = movable_k
                .iter()
                .enumerate()
                .filter(|(idx, _)| kmask & (1 << idx) != 0)
                .map(|(_, &e)| e)
                .collect();
            let k_kept: Vec<u8> = k_entries
                .iter()
                .copied()
                .filter(|e| !k_moved.contains(e))
                .collect();
            out.push(ShuffleIndex {
                to_bottom: Row::new(to_bottom.clone()),
                to_top: Row::new(to_top.clone()),
                k_moved: Row::new(k_moved),
                k_kept: Row::new(k_kept),
                shortfall: head_len - to_bottom.len(),
            });
        }
    }
    out
}

/// The coefficient attached to one quadruple.
fn quadruple_coefficient(split: &CanonicalSplit, idx: &ShuffleIndex) -> i64 {
    let h = idx.shortfall as i64;
    let j_minus_k = split
        .top_tail
        .entries()
        .iter()
        .filter(|e| !split.bottom_tail.contains(**e))
        .count() as i64;
    let gauss = gauss_binom_at_minus1(j_minus_k + h, h);
    if gauss == 0 {
        return 0;
    }
    let twist = if (h * (h + 1) / 2) % 2 == 0 { 1 } else { -1 };
    let eps_redistribution = idx
        .to_bottom
        .concat(&idx.to_top)
        .sign()
        .expect("bottom and top parts partition a repetition-free pool") as i64;
    let eps_migration = split
        .shared_tail()
        .concat(&idx.k_moved)
        .sign()
        .expect("moved part avoids the shared tail") as i64;
    twist * gauss * eps_redistribution * eps_migration
}

/// Whether the two equal-length rows are a pure swap of a standard tableau,
/// i.e. the reversed arrangement is standard. The relation degenerates to
/// zero there: both arrangements are the same monomial.
fn is_pure_row_swap(top: &Row, bottom: &Row) -> bool {
    top.len() == bottom.len() && bottom.leq(top)
}

/// The shuffling relation of a non-standard two-row tableau with standard
/// rows. The tableau itself appears with coefficient 1; every other term has
/// top row strictly below the input top row and bottom row above the input
/// bottom row. Pure row swaps return zero: both arrangements are the same
/// monomial, which is already standard, so nothing needs rewriting. Panics
/// on standard input.
pub fn shuffling_relation(top: &Row, bottom: &Row) -> FormalQuadratic {
    if is_pure_row_swap(top, bottom) {
        assert!(!top.leq(bottom), "tableau {top};{bottom} is standard");
        return FormalQuadratic::zero();
    }
    shuffling_relation_raw(top, bottom)
}

/// The defining sum without the pure-row-swap short circuit. Swap
/// arrangements still index perfectly good relations (compatible
/// permutations can land on them), just ones whose leading monomial is
/// already standard.
pub fn shuffling_relation_raw(top: &Row, bottom: &Row) -> FormalQuadratic {
    assert!(
        !top.leq(bottom),
        "tableau {top};{bottom} is standard, no relation to build"
    );
    let split = CanonicalSplit::of(top, bottom);
    assemble(&split, &enumerate_index_set(&split), top, bottom)
}

/// The partial sum over quadruples that keep all of `K` in the bottom row.
pub fn shuffling_relation_truncated(top: &Row, bottom: &Row) -> FormalQuadratic {
    assert!(!top.leq(bottom), "tableau {top};{bottom} is standard");
    if is_pure_row_swap(top, bottom) {
        return FormalQuadratic::zero();
    }
    let split = CanonicalSplit::of(top, bottom);
    let kept: Vec<ShuffleIndex> = enumerate_index_set(&split)
        .into_iter()
        .filter(|idx| idx.k_moved.is_empty())
        .collect();
    assemble(&split, &kept, top, bottom)
}

fn assemble(
    split: &CanonicalSplit,
    quadruples: &[ShuffleIndex],
    top: &Row,
    bottom: &Row,
) -> FormalQuadratic {
    let mut out = FormalQuadratic::zero();
    for idx in quadruples {
        let coeff = quadruple_coefficient(split, idx);
        if coeff == 0 {
            continue;
        }
        let new_top = split.top_head.concat(&idx.to_top).concat(&idx.k_moved);
        let new_bottom = idx.to_bottom.concat(&idx.k_kept);
        let (sorted_top, sign_top) = new_top
            .sort_with_sign()
            .expect("assembled top row cannot repeat under the set conditions");
        let (sorted_bottom, sign_bottom) = new_bottom
            .sort_with_sign()
            .expect("assembled bottom row cannot repeat under the set conditions");
        debug_assert!(
            sorted_top.leq(top) && bottom.leq(&sorted_bottom),
            "term ({sorted_top};{sorted_bottom}) escapes the straightening order bounds of ({top};{bottom})"
        );
        let total = BigInt::from(coeff * (sign_top * sign_bottom) as i64);
        out.add_term(TableauKey::new(sorted_top, sorted_bottom), total);
    }
    out
}

/// The polynomial image of the relation: identically zero, since the sum
/// is a genuine relation among the pfaffians.
pub fn shuffling_relation_pf(top: &Row, bottom: &Row, ctx: &PfaffianContext) -> SparsePoly {
    shuffling_relation(top, bottom).pfaffian_substitution(ctx)
}

/// All non-standard two-row arrangements of standard rows over `1..=n`:
/// pairs with weakly decreasing lengths that violate the row order. Both
/// arrangements of an incomparable equal-length pair appear.
pub fn nonstandard_tableaux(n: u8) -> Vec<(Row, Row)> {
    let rows = Row::all_standard(n);
    let mut out = Vec::new();
    for top in &rows {
        for bottom in &rows {
            if top.len() >= bottom.len() && !top.leq(bottom) {
                out.push((top.clone(), bottom.clone()));
            }
        }
    }
    out
}

/// The non-standard tableaux whose relation is nonzero, with the relations:
/// pure row swaps are dropped. These span the kernel of the multiplication
/// map.
pub fn relation_generators(n: u8) -> Vec<((Row, Row), FormalQuadratic)> {
    nonstandard_tableaux(n)
        .into_iter()
        .filter(|(t, b)| !is_pure_row_swap(t, b))
        .map(|(t, b)| {
            let rel = shuffling_relation(&t, &b);
            ((t, b), rel)
        })
        .collect()
}

/// Record of the failed truncation: keeping only the terms that leave `K` in
/// the bottom row is not a relation. Eliminating the non-standard terms of
/// the difference against the relation of `(234/1)` leaves a nonzero
/// combination of standard monomials, so the truncation cannot lie in the
/// kernel.
#[derive(Clone, Debug)]
pub struct TruncationCounterexample {
    /// The relation of (23/14).
    pub full: FormalQuadratic,
    /// Its truncation to terms keeping `K` below.
    pub truncated: FormalQuadratic,
    /// full - truncated - relation(234/1): standard monomials only.
    pub residual: FormalQuadratic,
    /// Pfaffian image of the residual; nonzero.
    pub residual_pf: SparsePoly,
    /// Pfaffian image of the truncation; nonzero, so the truncation is not
    /// a relation.
    pub truncated_pf: SparsePoly,
}

/// Builds the counterexample at rank 4 from the tableau (23/14).
pub fn truncation_counterexample(ctx: &PfaffianContext) -> TruncationCounterexample {
    assert_eq!(ctx.rank(), 4, "the counterexample lives at rank 4");
    let top = Row::from_slice(&[2, 3]);
    let bottom = Row::from_slice(&[1, 4]);
    let full = shuffling_relation(&top, &bottom);
    let truncated = shuffling_relation_truncated(&top, &bottom);
    let inner = shuffling_relation(&Row::from_slice(&[2, 3, 4]), &Row::from_slice(&[1]));
    let mut residual = full.clone();
    residual.add_scaled(&truncated, &BigInt::from(-1));
    residual.add_scaled(&inner, &BigInt::from(-1));
    let residual_pf = residual.pfaffian_substitution(ctx);
    let truncated_pf = truncated.pfaffian_substitution(ctx);
    TruncationCounterexample {
        full,
        truncated,
        residual,
        residual_pf,
        truncated_pf,
    }
}
