use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A row: a finite sequence of symbols from the alphabet `1..=n`.
///
/// The alphabet size `n` is not stored; operations that depend on it take it
/// as a parameter, because the same row means different things at different
/// ranks (its even completion changes, for instance).
///
/// A row is *standard* when its entries are strictly increasing; the empty
/// row is standard.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Row(Vec<u8>);

impl Row {
    pub fn new(entries: Vec<u8>) -> Self {
        Row(entries)
    }

    pub fn empty() -> Self {
        Row(Vec::new())
    }

    pub fn from_slice(entries: &[u8]) -> Self {
        Row(entries.to_vec())
    }

    /// Parses "2 3", "2,3" or compact "23" (single-digit symbols only).
    /// The empty string is the empty row.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Row::empty());
        }
        let mut entries = Vec::new();
        if text.contains(|c: char| c.is_whitespace() || c == ',') {
            for piece in text.split(|c: char| c.is_whitespace() || c == ',') {
                if piece.is_empty() {
                    continue;
                }
                let v: u8 = piece.parse().map_err(|_| Error::Parse {
                    what: "row",
                    detail: format!("bad entry {piece:?}"),
                })?;
                entries.push(v);
            }
        } else {
            for c in text.chars() {
                let v = c.to_digit(10).filter(|&d| d > 0).ok_or(Error::Parse {
                    what: "row",
                    detail: format!("bad digit {c:?} in {text:?}"),
                })?;
                entries.push(v as u8);
            }
        }
        Ok(Row(entries))
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: u8) -> bool {
        self.0.contains(&s)
    }

    /// Entries strictly increasing.
    pub fn is_standard(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn check_alphabet(&self, n: u8) -> Result<()> {
        for &e in &self.0 {
            if e == 0 || e > n {
                return Err(Error::EntryOutOfRange {
                    entry: e as u32,
                    n: n as u32,
                });
            }
        }
        Ok(())
    }

    /// Sorts the entries and returns the sign of the sorting permutation,
    /// or `None` when an entry repeats (the associated basis vector and
    /// pfaffian are then zero).
    ///
    /// The sign is computed by merge-sort inversion counting.
    pub fn sort_with_sign(&self) -> Option<(Row, i8)> {
        let mut data = self.0.clone();
        let mut scratch = vec![0u8; data.len()];
        let inversions = merge_count(&mut data, &mut scratch)?;
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((Row(data), sign))
    }

    /// The sign of the sorting permutation alone; `None` on repeats.
    pub fn sign(&self) -> Option<i8> {
        self.sort_with_sign().map(|(_, s)| s)
    }

    /// Concatenation: the entries of `other` listed after the entries of `self`.
    pub fn concat(&self, other: &Row) -> Row {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Row(v)
    }

    /// The partial order on standard rows: `self <= other` iff `self` is at
    /// least as long and entrywise below `other` on the common prefix.
    /// Longer rows sit lower in this order.
    pub fn leq(&self, other: &Row) -> bool {
        debug_assert!(self.is_standard() && other.is_standard());
        self.len() >= other.len()
            && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Comparable in the row order, in either direction.
    pub fn comparable(&self, other: &Row) -> bool {
        self.leq(other) || other.leq(self)
    }

    /// Inserts `s` after all entries `<= s` (position-stable insertion).
    /// Keeps standard rows standard when `s` is absent.
    pub fn insert(&self, s: u8) -> Row {
        let pos = self.0.iter().position(|&e| e > s).unwrap_or(self.len());
        let mut v = self.0.clone();
        v.insert(pos, s);
        Row(v)
    }

    /// Removes every occurrence of `s`.
    pub fn delete(&self, s: u8) -> Row {
        Row(self.0.iter().copied().filter(|&e| e != s).collect())
    }

    /// The increasing row on `{1..n} \ self`. Requires a standard row.
    pub fn complement(&self, n: u8) -> Row {
        debug_assert!(self.is_standard());
        Row((1..=n).filter(|s| !self.contains(*s)).collect())
    }

    /// Appends `n + 1` when the length is odd, so the result always has even
    /// length and indexes an even principal minor.
    pub fn complete_even(&self, n: u8) -> Row {
        if self.len() % 2 == 1 {
            let mut v = self.0.clone();
            v.push(n + 1);
            Row(v)
        } else {
            self.clone()
        }
    }

    /// All standard rows over `1..=n`, in canonical order.
    pub fn all_standard(n: u8) -> Vec<Row> {
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let row: Vec<u8> = (1..=n).filter(|s| mask & (1 << (s - 1)) != 0).collect();
            out.push(Row(row));
        }
        out.sort();
        out
    }
}

/// Canonical serialization order: length descending, then lexicographic
/// ascending. Used for deterministic output only; the dominance order on
/// standard rows is `Row::leq`.
impl Ord for Row {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .len()
            .cmp(&self.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Row {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&e| e <= 9) {
            for e in &self.0 {
                write!(f, "{e}")?;
            }
        } else {
            let mut first = true;
            for e in &self.0 {
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "Row()")
        } else {
            write!(f, "Row({self})")
        }
    }
}

/// Merge sort counting inversions; `None` when two entries are equal.
fn merge_count(data: &mut [u8], scratch: &mut [u8]) -> Option<u64> {
    let n = data.len();
    if n <= 1 {
        return Some(0);
    }
    let mid = n / 2;
    let mut inv = {
        let (left, right) = data.split_at_mut(mid);
        merge_count(left, &mut scratch[..mid])?+ merge_count(right, &mut scratch[mid..])?
    };
    let (mut i, mut j, mut k) = (0usize, mid, 0usize);
    while i < mid && j < n {
        match data[i].cmp(&data[j]) {
            Ordering::Equal => return None,
            Ordering::Less => {
                scratch[k] = data[i];
                i += 1;
            }
            Ordering::Greater => {
                scratch[k] = data[j];
                inv += (mid - i) as u64;
                j += 1;
            }
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&data[i..mid]);
    let tail = n - j;
    scratch[k + mid - i..k + mid - i + tail].copy_from_slice(&data[j..n]);
    data.copy_from_slice(&scratch[..n]);
    Some(inv)
}
