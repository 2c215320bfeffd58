use std::fmt;

use crate::error::{Error, Result};

use super::perm::Permutation;
use super::row::Row;

/// A tableau: rows of weakly decreasing length. Standard when every row is
/// standard and the rows increase in the row order (entries never decrease
/// down a column).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tableau {
    rows: Vec<Row>,
}

impl Tableau {
    pub fn new(rows: Vec<Row>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::RowLengths);
        }
        Ok(Tableau { rows })
    }

    /// Parses rows separated by ';', e.g. "23;14". An empty segment is the
    /// empty row, so "1234;" has the empty row second.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .split(';')
            .map(Row::parse)
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(rows)
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn degree(&self) -> usize {
        self.rows.len()
    }

    pub fn is_standard(&self) -> bool {
        self.rows.iter().all(Row::is_standard)
            && self.rows.windows(2).all(|w| w[0].leq(&w[1]))
    }

    pub fn two_rows(&self) -> Option<(&Row, &Row)> {
        match self.rows.as_slice() {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for r in &self.rows {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "{r}")?;
            first = false;
        }
        Ok(())
    }
}

/// The canonical subdivision of a non-standard two-row tableau at its first
/// order violation.
///
/// Writing the tableau as `(top_head top_tail / bottom_head bottom_tail)`,
/// the first `prefix_len` columns are weakly increasing downward, the head of
/// `top_tail` exceeds the last entry of `bottom_head`, and `bottom_head` is
/// one column longer than `top_head`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalSplit {
    pub top_head: Row,
    pub top_tail: Row,
    pub bottom_head: Row,
    pub bottom_tail: Row,
    pub prefix_len: usize,
}

impl CanonicalSplit {
    /// Splits `(top / bottom)`. Panics when the input is not a two-row
    /// tableau with standard rows, or when it is already standard.
    pub fn of(top: &Row, bottom: &Row) -> CanonicalSplit {
        assert!(top.is_standard() && bottom.is_standard(), "rows must be standard");
        assert!(top.len() >= bottom.len(), "rows must have weakly decreasing lengths");
        let violation = (0..bottom.len())
            .find(|&m| top.entries()[m] > bottom.entries()[m])
            .expect("tableau is standard, nothing to split");
        let r = violation;
        let split = CanonicalSplit {
            top_head: Row::from_slice(&top.entries()[..r]),
            top_tail: Row::from_slice(&top.entries()[r..]),
            bottom_head: Row::from_slice(&bottom.entries()[..r + 1]),
            bottom_tail: Row::from_slice(&bottom.entries()[r + 1..]),
            prefix_len: r,
        };
        debug_assert!(split.top_tail.len() > split.bottom_tail.len());
        debug_assert!(split.check_shape());
        split
    }

    fn check_shape(&self) -> bool {
        let i = self.top_head.entries();
        let h = self.bottom_head.entries();
        let hr1 = *h.last().unwrap();
        i.iter().zip(h).all(|(a, b)| a <= b)
            && self.top_tail.entries().first().is_some_and(|&j1| j1 > hr1)
            && self.bottom_tail.entries().first().is_none_or(|&k1| hr1 < k1)
    }

    pub fn top(&self) -> Row {
        self.top_head.concat(&self.top_tail)
    }

    pub fn bottom(&self) -> Row {
        self.bottom_head.concat(&self.bottom_tail)
    }

    /// Entries common to both rows up front: `top_head` meets `bottom_head`.
    pub fn shared_head(&self) -> Row {
        Row::new(
            self.top_head
                .entries()
                .iter()
                .copied()
                .filter(|&e| self.bottom_head.contains(e))
                .collect(),
        )
    }

    /// Entries common to both rows at the back: `top_tail` meets `bottom_tail`.
    pub fn shared_tail(&self) -> Row {
        Row::new(
            self.top_tail
                .entries()
                .iter()
                .copied()
                .filter(|&e| self.bottom_tail.contains(e))
                .collect(),
        )
    }
}

/// Whether a two-row non-standard tableau splits at the same column after the
/// entrywise action of `perm`, with all four pieces carried onto the sorted
/// images and the bottom tail image already increasing.
pub fn is_compatible(perm: &Permutation, top: &Row, bottom: &Row) -> bool {
    let split = CanonicalSplit::of(top, bottom);
    let (top_image, _) = perm
        .apply_row(top)
        .sort_with_sign()
        .expect("bijection preserves distinctness");
    let (bottom_image, _) = perm.apply_row(bottom).sort_with_sign().unwrap();
    if top_image.leq(&bottom_image) {
        return false;
    }
    let image_split = CanonicalSplit::of(&top_image, &bottom_image);
    let sorted = |r: &Row| perm.apply_row(r).sort_with_sign().unwrap().0;
    let tail_image = perm.apply_row(&split.bottom_tail);
    image_split.prefix_len == split.prefix_len
        && image_split.top_head == sorted(&split.top_head)
        && image_split.top_tail == sorted(&split.top_tail)
        && image_split.bottom_head == sorted(&split.bottom_head)
        && image_split.bottom_tail == tail_image
        && tail_image.is_standard()
}
