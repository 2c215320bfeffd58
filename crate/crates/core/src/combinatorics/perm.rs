use crate::error::{Error, Result};

use super::row::Row;

/// A permutation of `1..=n`, stored as the image list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: u8) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds from the image list `images[i-1] = sigma(i)`; must be a
    /// bijection of `1..=n`.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::Parse {
                    what: "permutation",
                    detail: format!("{images:?} is not a bijection of 1..={n}"),
                });
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition swapping `a` and `b` inside `1..=n`.
    pub fn transposition(n: u8, a: u8, b: u8) -> Self {
        let mut images: Vec<u8> = (1..=n).collect();
        images.swap(a as usize - 1, b as usize - 1);
        Permutation { images }
    }

    pub fn degree(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn apply(&self, s: u8) -> u8 {
        self.images[s as usize - 1]
    }

    /// Entrywise action on rows.
    pub fn apply_row(&self, row: &Row) -> Row {
        Row::new(row.entries().iter().map(|&e| self.apply(e)).collect())
    }

    /// `(self . other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = i as u8 + 1;
        }
        Permutation { images }
    }

    pub fn sign(&self) -> i8 {
        Row::new(self.images.clone()).sign().expect("bijection has no repeats")
    }

    /// All `n!` permutations of `1..=n`.
    pub fn all(n: u8) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u8> = (1..=n).collect();
        permute_rec(&mut current, 0, &mut out);
        out
    }
}

fn permute_rec(current: &mut Vec<u8>, k: usize, out: &mut Vec<Permutation>) {
    if k == current.len() {
        out.push(Permutation {
            images: current.clone(),
        });
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permute_rec(current, k + 1, out);
        current.swap(k, i);
    }
}
