//! Independent verification by exact linear algebra.
//!
//! The relation matrix has one row per unordered pair of standard rows (the
//! monomials of degree two in the generators) and one column per polynomial
//! monomial occurring in any product `pf_I * pf_J`. Kernel membership of a
//! quadratic is literally the vanishing of its pfaffian substitution, so the
//! left nullspace of this matrix is the space of quadratic relations. The
//! nullspace is computed by fraction-free (Bareiss) elimination over the
//! integers with rational back-substitution, rescaled to primitive integer
//! vectors; no tolerances anywhere.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::Row;
use crate::error::{Error, Result};
use crate::pfaffian::PfaffianContext;
use crate::polyring::Monomial;
use crate::shuffle::{relation_generators, FormalQuadratic, TableauKey};

/// Default refusal bound for building relation matrices: pair counts grow as
/// squares of `2^n`.
pub const DEFAULT_RANK_BOUND: u8 = 5;

/// The multiplication matrix from degree-two symmetric tensors to
/// polynomials, over an explicit monomial column universe.
pub struct RelationMatrix {
    pairs: Vec<TableauKey>,
    columns: Vec<Monomial>,
    /// rows[p][c] = coefficient of columns[c] in the product of pair p.
    rows: Vec<Vec<BigInt>>,
}

impl RelationMatrix {
    /// Builds the matrix at the context's rank. Refuses ranks above the
    /// bound unless `allow_large` is set.
    pub fn build(ctx: &PfaffianContext, allow_large: bool) -> Result<RelationMatrix> {
        let n = ctx.rank();
        if n > DEFAULT_RANK_BOUND && !allow_large {
            return Err(Error::RankBound {
                n,
                bound: DEFAULT_RANK_BOUND,
            });
        }
        let rows = Row::all_standard(n);
        let mut pairs = Vec::new();
        for (i, a) in rows.iter().enumerate() {
            for b in &rows[i..] {
                pairs.push(TableauKey::new(a.clone(), b.clone()));
            }
        }
        pairs.sort();
        let products: Vec<BTreeMap<Monomial, BigInt>> = pairs
            .par_iter()
            .map(|pair| {
                let prod = &ctx.pf_row(pair.top()) * &ctx.pf_row(pair.bottom());
                prod.terms()
                    .map(|(m, c)| (m.clone(), c.clone()))
                    .collect()
            })
            .collect();
        // column universe: monomials actually occurring, in canonical order
        let mut columns: Vec<Monomial> = products
            .iter()
            .flat_map(|p| p.keys().cloned())
            .collect();
        columns.sort();
        columns.dedup();
        let index: BTreeMap<&Monomial, usize> =
            columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dense: Vec<Vec<BigInt>> = products
            .iter()
            .map(|p| {
                let mut row = vec![BigInt::zero(); columns.len()];
                for (m, c) in p {
                    row[index[m]] = c.clone();
                }
                row
            })
            .collect();
        Ok(RelationMatrix {
            pairs,
            columns,
            rows: dense,
        })
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn pairs(&self) -> &[TableauKey] {
        &self.pairs
    }

    /// Rank of the matrix (row rank = dimension of the span of the
    /// products).
    pub fn rank(&self) -> usize {
        rank_of(self.rows.clone())
    }

    /// A primitive integer basis of the space of coefficient vectors `a`
    /// with `sum_p a_p (pf-product of pair p) = 0`, as quadratics.
    pub fn kernel_basis(&self) -> Vec<FormalQuadratic> {
        // left nullspace: transpose so pairs become columns
        let transposed: Vec<Vec<BigInt>> = (0..self.columns.len())
            .map(|c| (0..self.pairs.len()).map(|p| self.rows[p][c].clone()).collect())
            .collect();
        nullspace(transposed, self.pairs.len())
            .into_iter()
            .map(|v| {
                let mut q = FormalQuadratic::zero();
                for (p, c) in v.into_iter().enumerate() {
                    q.add_term(self.pairs[p].clone(), c);
                }
                q
            })
            .collect()
    }

    /// The coefficient vector of a quadratic over the pair index, or an
    /// error naming the offending key when it mentions an unknown pair.
    pub fn vector_of(&self, q: &FormalQuadratic) -> Result<Vec<BigInt>> {
        let index: BTreeMap<&TableauKey, usize> =
            self.pairs.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut v = vec![BigInt::zero(); self.pairs.len()];
        for (k, c) in q.terms() {
            let Some(&i) = index.get(k) else {
                return Err(Error::OutOfRange(format!("pair {k} outside this rank")));
            };
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Exactly zero iff the quadratic is a relation among the products.
    pub fn apply(&self, q: &FormalQuadratic) -> Result<Vec<BigInt>> {
        let v = self.vector_of(q)?;
        let mut out = vec![BigInt::zero(); self.columns.len()];
        for (p, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, entry) in self.rows[p].iter().enumerate() {
                if !entry.is_zero() {
                    out[c] += a * entry;
                }
            }
        }
        Ok(out)
    }
}

/// Fraction-free row echelon reduction; returns the echelon matrix and the
/// pivot columns. Entries stay integral throughout (Bareiss division is
/// exact).
fn bareiss_echelon(mut m: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot_row);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Row rank by fraction-free elimination.
pub fn rank_of(m: Vec<Vec<BigInt>>) -> usize {
    bareiss_echelon(m).1.len()
}

/// Right nullspace of `m` (with `cols` columns): primitive integer vectors,
/// one per free column, via exact rational back-substitution.
pub fn nullspace(m: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let (ech, pivots) = bareiss_echelon(m);
    let pivot_set: Vec<Option<usize>> = {
        // pivot column -> echelon row
        let mut v = vec![None; cols];
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let free: Vec<usize> = (0..cols).filter(|c| pivot_set[*c].is_none()).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![BigRational::zero(); cols];
        x[f] = BigRational::one();
        // back-substitute pivot variables from the bottom up
        for (row, &col) in pivots.iter().enumerate().rev() {
            let mut acc = BigRational::zero();
            for j in col + 1..cols {
                if !ech[row][j].is_zero() && !x[j].is_zero() {
                    acc += BigRational::from(ech[row][j].clone()) * x[j].clone();
                }
            }
            x[col] = -acc / BigRational::from(ech[row][col].clone());
        }
        basis.push(clear_denominators(&x));
    }
    basis
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading entry.
fn clear_denominators(x: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in x {
        lcm = lcm.lcm(v.denom());
    }
    let mut ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let mut gcd = BigInt::zero();
    for v in &ints {
        gcd = gcd.gcd(v);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for v in &mut ints {
            *v /= &gcd;
        }
    }
    if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut ints {
                *v = -v.clone();
            }
        }
    }
    ints
}

/// Summary of one verification run, ready for machine-readable output.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: u8,
    pub pairs: usize,
    pub standard_pairs: usize,
    pub kernel_dim: usize,
    pub theta_count: usize,
    pub span_ok: bool,
    pub all_theta_vanish: bool,
    pub degree1_independent: bool,
    pub degree2_independent: bool,
}

/// Number of unordered pairs `I <= J` in the row order (the standard
/// degree-two monomials), counted combinatorially.
pub fn standard_pair_count(n: u8) -> usize {
    let rows = Row::all_standard(n);
    let mut count = 0usize;
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i..] {
            if a.comparable(b) {
                count += 1;
            }
        }
    }
    count
}

/// Runs the whole battery at one rank: kernel dimension, generation by the
/// shuffling relations, and linear independence of standard monomials.
pub fn verify(ctx: &PfaffianContext, allow_large: bool) -> Result<VerifyReport> {
    let n = ctx.rank();
    let matrix = RelationMatrix::build(ctx, allow_large)?;
    let kernel = matrix.kernel_basis();
    let generators = relation_generators(n);

    let all_theta_vanish = generators
        .par_iter()
        .all(|(_, rel)| rel.pfaffian_substitution(ctx).is_zero());

    // span equality: every relation is in the nullspace (it vanished above)
    // and the rank of the relation span matches the nullity
    let theta_vectors: Vec<Vec<BigInt>> = generators
        .iter()
        .map(|(_, rel)| matrix.vector_of(rel))
        .collect::<Result<_>>()?;
    let theta_rank = rank_of(theta_vectors);
    let membership = generators
        .par_iter()
        .map(|(_, rel)| matrix.apply(rel))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|image| image.iter().all(Zero::is_zero));
    let span_ok = theta_rank == kernel.len() && membership;

    // independence of the generators in degree one
    let rows = Row::all_standard(n);
    let degree1: Vec<Vec<BigInt>> = {
        let polys: Vec<_> = rows.iter().map(|r| ctx.pf_row(r)).collect();
        let mut columns: Vec<Monomial> = polys
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
            .collect();
        columns.sort();
        columns.dedup();
        let index: BTreeMap<&Monomial, usize> =
            columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        polys
            .iter()
            .map(|p| {
                let mut row = vec![BigInt::zero(); columns.len()];
                for (m, c) in p.terms() {
                    row[index[m]] = c.clone();
                }
                row
            })
            .collect()
    };
    let degree1_independent = rank_of(degree1) == rows.len();

    // independence of the standard degree-two monomials
    let standard_pairs = standard_pair_count(n);
    let standard_rows: Vec<Vec<BigInt>> = matrix
        .pairs()
        .iter()
        .enumerate()
        .filter(|(_, k)| k.is_standard())
        .map(|(i, _)| matrix.rows[i].clone())
        .collect();
    assert_eq!(standard_rows.len(), standard_pairs);
    let degree2_independent = rank_of(standard_rows) == standard_pairs;

    Ok(VerifyReport {
        n,
        pairs: matrix.pair_count(),
        standard_pairs,
        kernel_dim: kernel.len(),
        theta_count: generators.len(),
        span_ok,
        all_theta_vanish,
        degree1_independent,
        degree2_independent,
    })
}
