//! The raising and lowering operators on the basis indexed by standard rows,
//! and the weight function.
//!
//! At rank `n` there are `n + 1` generators. For `i < n` the operator `e_i`
//! replaces `i + 1` by `i` when that keeps entries distinct; `e_n` appends
//! `n` to rows of odd length, `e_{n+1}` to rows of even length (both when `n`
//! is absent). The `f_i` are the mirrors. Weights live in half-integer
//! coordinates indexed by `1..=n+1`; we store doubled coordinates, `+1` on
//! the even completion of the row and `-1` off it. The simple-root
//! coordinate vectors are `e_i - e_{i+1}` for `i <= n` and `e_n + e_{n+1}`
//! for the last generator, which fixes the pairing `<h_i, wt>` without any
//! matrix realizations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinatorics::Row;
use crate::shuffle::{FormalQuadratic, TableauKey};

/// Integer combination of standard rows.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinCombRows {
    terms: BTreeMap<Row, BigInt>,
}

impl LinCombRows {
    pub fn one(row: Row) -> Self {
        let mut v = LinCombRows::default();
        v.add_term(row, BigInt::from(1));
        v
    }

    pub fn zero() -> Self {
        LinCombRows::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Row, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, row: &Row) -> BigInt {
        self.terms.get(row).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, row: Row, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(row) {
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
}

impl fmt::Display for LinCombRows {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x({r})")?;
            first = false;
        }
        Ok(())
    }
}

/// Raising rule on a basis row; `None` when the operator kills it.
/// Produced rows stay standard: a replacement slides an entry down onto a
/// free slot and an append adds the largest allowed symbol.
pub fn raise_row(n: u8, i: u8, row: &Row) -> Option<Row> {
    assert!(1 <= i && i <= n + 1, "generator index {i} outside 1..={}", n + 1);
    debug_assert!(row.is_standard());
    if i < n {
        if row.contains(i + 1) && !row.contains(i) {
            let replaced: Vec<u8> = row
                .entries()
                .iter()
                .map(|&e| if e == i + 1 { i } else { e })
                .collect();
            let (sorted, sign) = Row::new(replaced).sort_with_sign()?;
            debug_assert_eq!(sign, 1);
            Some(sorted)
        } else {
            None
        }
    } else if i == n {
        if !row.contains(n) && row.len() % 2 == 1 {
            Some(row.insert(n))
        } else {
            None
        }
    } else {
        if !row.contains(n) && row.len().is_multiple_of(2) {
            Some(row.insert(n))
        } else {
            None
        }
    }
}

/// Lowering rule on a basis row, the mirror of [`raise_row`].
pub fn lower_row(n: u8, i: u8, row: &Row) -> Option<Row> {
    assert!(1 <= i && i <= n + 1, "generator index {i} outside 1..={}", n + 1);
    debug_assert!(row.is_standard());
    if i < n {
        if row.contains(i) && !row.contains(i + 1) {
            let replaced: Vec<u8> = row
                .entries()
                .iter()
                .map(|&e| if e == i { i + 1 } else { e })
                .collect();
            let (sorted, sign) = Row::new(replaced).sort_with_sign()?;
            debug_assert_eq!(sign, 1);
            Some(sorted)
        } else {
            None
        }
    } else if i == n {
        if row.contains(n) && row.len().is_multiple_of(2) {
            Some(row.delete(n))
        } else {
            None
        }
    } else {
        if row.contains(n) && row.len() % 2 == 1 {
            Some(row.delete(n))
        } else {
            None
        }
    }
}

/// Linear extension of the raising rule.
pub fn apply_e(n: u8, i: u8, v: &LinCombRows) -> LinCombRows {
    let mut out = LinCombRows::zero();
    for (row, c) in v.terms() {
        if let Some(image) = raise_row(n, i, row) {
            out.add_term(image, c.clone());
        }
    }
    out
}

/// Linear extension of the lowering rule.
pub fn apply_f(n: u8, i: u8, v: &LinCombRows) -> LinCombRows {
    let mut out = LinCombRows::zero();
    for (row, c) in v.terms() {
        if let Some(image) = lower_row(n, i, row) {
            out.add_term(image, c.clone());
        }
    }
    out
}

/// A weight in doubled coordinates over positions `1..=n+1`, so a basis row
/// has every coordinate odd (`+1`/`-1`) and degree-two weights are even.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weight {
    doubled: Vec<i64>,
}

impl Weight {
    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.doubled.len(), other.doubled.len());
        Weight {
            doubled: self
                .doubled
                .iter()
                .zip(&other.doubled)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Weight of a standard row: `+1/2` on its even completion, `-1/2` off it,
/// stored doubled.
pub fn weight(n: u8, row: &Row) -> Weight {
    debug_assert!(row.is_standard());
    let completed = row.complete_even(n);
    let doubled = (1..=n + 1)
        .map(|p| if completed.contains(p) { 1 } else { -1 })
        .collect();
    Weight { doubled }
}

/// Doubled coordinates of the `i`-th simple root.
fn simple_root_doubled(n: u8, i: u8) -> Vec<i64> {
    assert!(1 <= i && i <= n + 1);
    let mut v = vec![0i64; n as usize + 1];
    if i <= n {
        v[i as usize - 1] = 2;
        v[i as usize] = -2;
    } else {
        v[n as usize - 1] = 2;
        v[n as usize] = 2;
    }
    v
}

/// The pairing `<h_i, w>` through the standard coordinate form: the dot
/// product of the simple root with the weight. Integer for basis rows and
/// their sums.
pub fn root_pairing(n: u8, i: u8, w: &Weight) -> i64 {
    let root = simple_root_doubled(n, i);
    let four_times: i64 = root
        .iter()
        .zip(w.doubled())
        .map(|(a, b)| a * b)
        .sum();
    assert!(four_times % 4 == 0, "pairing is integral on this lattice");
    four_times / 4
}

/// Derivation (Leibniz) extension of `e_i` to quadratic elements.
pub fn apply_e_quadratic(n: u8, i: u8, q: &FormalQuadratic) -> FormalQuadratic {
    apply_derivation(q, |row| raise_row(n, i, row))
}

/// Derivation extension of `f_i` to quadratic elements.
pub fn apply_f_quadratic(n: u8, i: u8, q: &FormalQuadratic) -> FormalQuadratic {
    apply_derivation(q, |row| lower_row(n, i, row))
}

/// Action of `h_i` on quadratic elements: each term scales by the pairing
/// of the root with its total weight.
pub fn apply_h_quadratic(n: u8, i: u8, q: &FormalQuadratic) -> FormalQuadratic {
    let mut out = FormalQuadratic::zero();
    for (key, c) in q.terms() {
        let w = weight(n, key.top()).add(&weight(n, key.bottom()));
        let scale = root_pairing(n, i, &w);
        out.add_term(key.clone(), c * BigInt::from(scale));
    }
    out
}

fn apply_derivation(
    q: &FormalQuadratic,
    rule: impl Fn(&Row) -> Option<Row>,
) -> FormalQuadratic {
    let mut out = FormalQuadratic::zero();
    for (key, c) in q.terms() {
        if let Some(image) = rule(key.top()) {
            out.add_term(TableauKey::new(image, key.bottom().clone()), c.clone());
        }
        if let Some(image) = rule(key.bottom()) {
            out.add_term(TableauKey::new(key.top().clone(), image), c.clone());
        }
    }
    out
}
