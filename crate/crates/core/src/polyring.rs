//! Exact sparse polynomials in the variables `x_ij`, `1 <= i < j`, over the
//! integers, together with integer antisymmetric matrices for evaluation.
//!
//! A variable index is always stored with `i < j`; the transposed entry is
//! the caller's `-x_ij`. Monomials are sorted variable lists with repetition
//! (total degree stays small here, so no exponent packing), ordered graded
//! lexicographically for deterministic output.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// An off-diagonal position of an antisymmetric matrix, normalized above the
/// diagonal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct VarIndex {
    i: u8,
    j: u8,
}

impl VarIndex {
    /// Requires `i < j`; panics otherwise.
    pub fn new(i: u8, j: u8) -> Self {
        assert!(0 < i && i < j, "variable index needs 0 < i < j, got ({i},{j})");
        VarIndex { i, j }
    }

    /// Normalizes an arbitrary off-diagonal pair, returning the sign flip:
    /// `(j, i)` maps to `(VarIndex(i, j), -1)`.
    pub fn signed(i: u8, j: u8) -> (Self, i8) {
        assert!(i != j, "diagonal entries are identically zero");
        if i < j {
            (VarIndex::new(i, j), 1)
        } else {
            (VarIndex::new(j, i), -1)
        }
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i <= 9 && self.j <= 9 {
            write!(f, "x{}{}", self.i, self.j)
        } else {
            write!(f, "x[{},{}]", self.i, self.j)
        }
    }
}

/// A product of variables, kept sorted; repetition encodes exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    vars: Vec<VarIndex>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial { vars: Vec::new() }
    }

    pub fn var(v: VarIndex) -> Self {
        Monomial { vars: vec![v] }
    }

    pub fn from_vars(mut vars: Vec<VarIndex>) -> Self {
        vars.sort();
        Monomial { vars }
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[VarIndex] {
        &self.vars
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(&other.vars);
        vars.sort();
        Monomial { vars }
    }
}

/// Graded lexicographic: degree first, then the sorted variable lists.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.vars.cmp(&other.vars))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "1");
        }
        let mut idx = 0;
        let mut first = true;
        while idx < self.vars.len() {
            let v = self.vars[idx];
            let mut exp = 0;
            while idx < self.vars.len() && self.vars[idx] == v {
                exp += 1;
                idx += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if exp > 1 {
                write!(f, "^{exp}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Sparse polynomial: monomial -> nonzero integer coefficient, in canonical
/// monomial order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparsePoly {
    terms: std::collections::BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn one() -> Self {
        SparsePoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn var(v: VarIndex) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(Monomial::var(v), BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Adds `c * m`, dropping the entry when the sum cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparsePoly, scale: &BigInt) {
        if scale.is_zero() {
            return;
        }
        for (m, c) in other.terms() {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn scalar_mul(&self, scale: &BigInt) -> SparsePoly {
        let mut out = SparsePoly::zero();
        out.add_scaled(self, scale);
        out
    }

    /// Exact substitution `x_ij -> m[i][j]`.
    pub fn eval(&self, m: &AntisymMatrix) -> BigInt {
        let mut acc = BigInt::zero();
        for (mono, c) in self.terms() {
            let mut prod = c.clone();
            for v in mono.vars() {
                prod *= m.get(v.i() as usize, v.j() as usize);
            }
            acc += prod;
        }
        acc
    }

    #[cfg(test)]
    fn assert_no_zero_terms(&self) {
        assert!(self.terms.values().all(|c| !c.is_zero()));
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::from(-1));
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scalar_mul(&BigInt::from(-1))
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
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
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// JSON form of one polynomial term: variable index pairs plus a
/// string-encoded big integer coefficient.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PolyTermDto {
    pub vars: Vec<(u8, u8)>,
    pub coeff: String,
}

impl SparsePoly {
    pub fn to_dto(&self) -> Vec<PolyTermDto> {
        self.terms()
            .map(|(m, c)| PolyTermDto {
                vars: m.vars().iter().map(|v| (v.i(), v.j())).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

/// Integer antisymmetric matrix, stored as the strict upper triangle in
/// row-major order; `X[j][i] = -X[i][j]` and the diagonal is zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AntisymMatrix {
    dim: usize,
    upper: Vec<i64>,
}

impl AntisymMatrix {
    /// Builds from the strict upper triangle, row by row:
    /// `[x12, x13, ..., x1n, x23, ...]`.
    pub fn from_upper(dim: usize, upper: Vec<i64>) -> Self {
        assert_eq!(upper.len(), dim * (dim - 1) / 2, "upper triangle size");
        AntisymMatrix { dim, upper }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn upper_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i < j && j <= self.dim);
        let i0 = i - 1;
        let j0 = j - 1;
        i0 * self.dim - i0 * (i0 + 1) / 2 + (j0 - i0 - 1)
    }

    /// Entry at 1-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(
            1 <= i && i <= self.dim && 1 <= j && j <= self.dim,
            "index ({i},{j}) outside 1..={}",
            self.dim
        );
        match i.cmp(&j) {
            Ordering::Equal => 0,
            Ordering::Less => self.upper[self.upper_index(i, j)],
            Ordering::Greater => -self.upper[self.upper_index(j, i)],
        }
    }
}

/// Determinant of the generic symbolic antisymmetric matrix of the given
/// dimension, by cofactor expansion along the first row.
pub fn generic_determinant(dim: usize) -> SparsePoly {
    // generic entries as polynomials, including signs below the diagonal
    let entry = |i: usize, j: usize| -> SparsePoly {
        if i == j {
            SparsePoly::zero()
        } else {
            let (v, s) = VarIndex::signed(i as u8, j as u8);
            SparsePoly::var(v).scalar_mul(&BigInt::from(s))
        }
    };
    let rows: Vec<usize> = (1..=dim).collect();
    det_rec(&rows, &rows, &entry)
}

fn det_rec(
    rows: &[usize],
    cols: &[usize],
    entry: &dyn Fn(usize, usize) -> SparsePoly,
) -> SparsePoly {
    if rows.is_empty() {
        return SparsePoly::one();
    }
    let mut acc = SparsePoly::zero();
    let rest_rows: Vec<usize> = rows[1..].to_vec();
    for (t, &col) in cols.iter().enumerate() {
        let e = entry(rows[0], col);
        if e.is_zero() {
            continue;
        }
        let rest_cols: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&c| c != col)
            .collect();
        let minor = det_rec(&rest_rows, &rest_cols, entry);
        let signed = if t % 2 == 0 { e } else { -&e };
        acc = &acc + &(&signed * &minor);
    }
    acc
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
pub fn numeric_determinant(m: &AntisymMatrix) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (1..=n)
        .map(|i| (1..=n).map(|j| BigInt::from(m.get(i, j))).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}
