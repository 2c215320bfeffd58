//! Pfaffians of principal minors, symbolic and numeric.
//!
//! `Pf` of an even antisymmetric matrix satisfies `Pf(X)^2 = det X`. Index
//! lists select principal minors, are order-sensitive (`pf` of a permuted
//! list picks up the permutation sign) and vanish on repetition. A row `I`
//! over `1..=n` indexes the minor on its even completion, so odd rows reach
//! into the extra symbol `n + 1`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::Row;
use crate::polyring::{AntisymMatrix, SparsePoly, VarIndex};

/// Symbolic pfaffian evaluations at rank `n`: matrices are `(n+1) x (n+1)`
/// and rows live over `1..=n`. Caches the pfaffian of every sorted even
/// index subset it encounters; insertion races recompute equal values, so
/// the cache stays consistent under shared use.
pub struct PfaffianContext {
    n: u8,
    cache: Mutex<HashMap<Vec<u8>, SparsePoly>>,
}

impl PfaffianContext {
    pub fn new(n: u8) -> Self {
        PfaffianContext {
            n,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> u8 {
        self.n
    }

    /// Matrix dimension `n + 1`.
    pub fn dim(&self) -> u8 {
        self.n + 1
    }

    /// Pfaffian of the principal minor of the generic symbolic matrix on the
    /// given index list. Empty list gives 1, repeated indices give 0, and a
    /// permuted list equals the sign times the sorted value. Panics on an
    /// odd-length list or an index outside `1..=n+1`.
    pub fn generic_pfaffian(&self, indices: &[u8]) -> SparsePoly {
        assert!(indices.len().is_multiple_of(2), "pfaffian needs an even index list");
        for &i in indices {
            assert!(
                1 <= i && i <= self.dim(),
                "index {i} outside 1..={}",
                self.dim()
            );
        }
        match Row::new(indices.to_vec()).sort_with_sign() {
            None => SparsePoly::zero(),
            Some((sorted, sign)) => {
                let p = self.sorted_pfaffian(sorted.entries());
                if sign < 0 {
                    -&p
                } else {
                    p
                }
            }
        }
    }

    /// Cofactor recursion on a strictly increasing list, memoized by subset.
    fn sorted_pfaffian(&self, indices: &[u8]) -> SparsePoly {
        if indices.is_empty() {
            return SparsePoly::one();
        }
        if let Some(hit) = self.cache.lock().unwrap().get(indices) {
            return hit.clone();
        }
        let first = indices[0];
        let mut acc = SparsePoly::zero();
        for t in 1..indices.len() {
            let other = indices[t];
            let rest: Vec<u8> = indices[1..]
                .iter()
                .copied()
                .filter(|&u| u != other)
                .collect();
            let minor = self.sorted_pfaffian(&rest);
            let var = SparsePoly::var(VarIndex::new(first, other));
            let contribution = &var * &minor;
            // expansion sign alternates with the position of the partner
            if t % 2 == 1 {
                acc = &acc + &contribution;
            } else {
                acc = &acc - &contribution;
            }
        }
        self.cache
            .lock()
            .unwrap()
            .insert(indices.to_vec(), acc.clone());
        acc
    }

    /// Same recursion without the memo table, for consistency checks.
    pub fn generic_pfaffian_unmemoized(&self, indices: &[u8]) -> SparsePoly {
        fn rec(indices: &[u8]) -> SparsePoly {
            if indices.is_empty() {
                return SparsePoly::one();
            }
            let first = indices[0];
            let mut acc = SparsePoly::zero();
            for t in 1..indices.len() {
                let other = indices[t];
                let rest: Vec<u8> = indices[1..]
                    .iter()
                    .copied()
                    .filter(|&u| u != other)
                    .collect();
                let term = &SparsePoly::var(VarIndex::new(first, other)) * &rec(&rest);
                if t % 2 == 1 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }
        match Row::new(indices.to_vec()).sort_with_sign() {
            None => SparsePoly::zero(),
            Some((sorted, sign)) => {
                let p = rec(sorted.entries());
                if sign < 0 {
                    -&p
                } else {
                    p
                }
            }
        }
    }

    /// The polynomial `pf_I`: pfaffian of the minor on the even completion
    /// of `I`. Rows with repeats give 0; unsorted rows pick up the sorting
    /// sign.
    pub fn pf_row(&self, row: &Row) -> SparsePoly {
        row.check_alphabet(self.n)
            .expect("row entries must lie in 1..=n");
        let completed = row.complete_even(self.n);
        self.generic_pfaffian(completed.entries())
    }
}

/// Numeric pfaffian of the principal minor on the given index list, by the
/// same cofactor recursion over exact integers.
pub fn numeric_pfaffian(m: &AntisymMatrix, indices: &[u8]) -> BigInt {
    assert!(indices.len().is_multiple_of(2), "pfaffian needs an even index list");
    for &i in indices {
        assert!(
            1 <= i as usize && i as usize <= m.dim(),
            "index {i} outside 1..={}",
            m.dim()
        );
    }
    match Row::new(indices.to_vec()).sort_with_sign() {
        None => BigInt::zero(),
        Some((sorted, sign)) => {
            let value = numeric_rec(m, sorted.entries());
            if sign < 0 {
                -value
            } else {
                value
            }
        }
    }
}

fn numeric_rec(m: &AntisymMatrix, indices: &[u8]) -> BigInt {
    if indices.is_empty() {
        return BigInt::one();
    }
    let first = indices[0] as usize;
    let mut acc = BigInt::zero();
    for t in 1..indices.len() {
        let other = indices[t];
        let entry = m.get(first, other as usize);
        if entry == 0 {
            continue;
        }
        let rest: Vec<u8> = indices[1..]
            .iter()
            .copied()
            .filter(|&u| u != other)
            .collect();
        let term = BigInt::from(entry) * numeric_rec(m, &rest);
        if t % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The antisymmetric matrix with `+1` everywhere above the diagonal. Every
/// even principal minor of it has pfaffian exactly 1, which is what pins the
/// constant coefficient of a relation: substituting it sends every `pf_I`
/// to 1.
pub fn unit_pfaffian_matrix(dim: usize) -> AntisymMatrix {
    AntisymMatrix::from_upper(dim, vec![1; dim * (dim - 1) / 2])
}

/// The tridiagonal antisymmetric matrix with `+1` on the superdiagonal and
/// `-1` on the subdiagonal. Its leading even corners have pfaffian 1, and it
/// is the standard sparse example for evaluation.
pub fn tridiagonal_matrix(dim: usize) -> AntisymMatrix {
    let mut upper = Vec::with_capacity(dim * (dim - 1) / 2);
    for i in 1..=dim {
        for j in i + 1..=dim {
            upper.push(if j == i + 1 { 1 } else { 0 });
        }
    }
    AntisymMatrix::from_upper(dim, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{generic_determinant, numeric_determinant};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn row(s: &str) -> Row {
        Row::parse(s).unwrap()
    }

    fn x(i: u8, j: u8) -> SparsePoly {
        SparsePoly::var(VarIndex::new(i, j))
    }

    #[test]
    fn base_cases() {
        let ctx = PfaffianContext::new(4);
        assert_eq!(ctx.generic_pfaffian(&[]), SparsePoly::one());
        assert_eq!(ctx.generic_pfaffian(&[1, 3]), x(1, 3));
        assert_eq!(ctx.generic_pfaffian(&[3, 1]), -&x(1, 3));
        assert_eq!(ctx.generic_pfaffian(&[2, 2]), SparsePoly::zero());
    }

    #[test]
    fn four_index_expansion() {
        let ctx = PfaffianContext::new(4);
        let p = ctx.generic_pfaffian(&[1, 2, 3, 4]);
        let mut expect = &x(1, 2) * &x(3, 4);
        expect = &expect - &(&x(1, 3) * &x(2, 4));
        expect = &expect + &(&x(1, 4) * &x(2, 3));
        assert_eq!(p, expect);
    }

    #[test]
    fn pf_row_examples() {
        let ctx4 = PfaffianContext::new(4);
        assert_eq!(ctx4.pf_row(&row("12")), x(1, 2));
        assert_eq!(ctx4.pf_row(&row("34")), x(3, 4));
        let ctx3 = PfaffianContext::new(3);
        assert_eq!(ctx3.pf_row(&row("1")), x(1, 4)); // completed by n+1 = 4
        assert_eq!(ctx4.pf_row(&Row::empty()), SparsePoly::one());
        // sorting sign and repetition rules carry over from the index list
        assert_eq!(ctx4.pf_row(&row("21")), -&ctx4.pf_row(&row("12")));
        assert_eq!(ctx4.pf_row(&row("11")), SparsePoly::zero());
    }

    #[test]
    fn square_equals_determinant_symbolically() {
        for dim in [2usize, 4, 6] {
            let ctx = PfaffianContext::new(dim as u8 - 1);
            let indices: Vec<u8> = (1..=dim as u8).collect();
            let pf = ctx.generic_pfaffian(&indices);
            assert_eq!(&pf * &pf, generic_determinant(dim), "dim {dim}");
        }
    }

    #[test]
    fn square_equals_determinant_numerically() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let mut done = 0;
        while done < 120 {
            let dim = 2 * rng.gen_range(1..=5usize); // 2, 4, ..., 10
            let upper: Vec<i64> = (0..dim * (dim - 1) / 2)
                .map(|_| rng.gen_range(-9..=9))
                .collect();
            let m = AntisymMatrix::from_upper(dim, upper);
            let indices: Vec<u8> = (1..=dim as u8).collect();
            let pf = numeric_pfaffian(&m, &indices);
            assert_eq!(&pf * &pf, numeric_determinant(&m));
            done += 1;
        }
    }

    #[test]
    fn swap_flips_sign_randomized() {
        let ctx = PfaffianContext::new(5);
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let len = 2 * rng.gen_range(1..=3usize);
            let mut pool: Vec<u8> = (1..=6).collect();
            let mut indices = Vec::with_capacity(len);
            for _ in 0..len {
                let pick = rng.gen_range(0..pool.len());
                indices.push(pool.remove(pick));
            }
            let a = rng.gen_range(0..len);
            let mut b = rng.gen_range(0..len);
            while b == a {
                b = rng.gen_range(0..len);
            }
            let mut swapped = indices.clone();
            swapped.swap(a, b);
            assert_eq!(ctx.generic_pfaffian(&swapped), -&ctx.generic_pfaffian(&indices));
        }
    }

    #[test]
    fn memoized_matches_unmemoized() {
        let ctx = PfaffianContext::new(5);
        for indices in [vec![], vec![2, 5], vec![1, 2, 3, 4], vec![2, 3, 5, 6], vec![1, 2, 3, 4, 5, 6]] {
            assert_eq!(
                ctx.generic_pfaffian(&indices),
                ctx.generic_pfaffian_unmemoized(&indices)
            );
        }
    }

    #[test]
    fn unit_matrix_every_even_principal_pfaffian_is_one() {
        for n in 1..=8u8 {
            let m = unit_pfaffian_matrix(n as usize + 1);
            let dim = n as usize + 1;
            for mask in 0u32..(1 << dim) {
                if mask.count_ones() % 2 != 0 {
                    continue;
                }
                let indices: Vec<u8> =
                    (1..=dim as u8).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                assert_eq!(numeric_pfaffian(&m, &indices), BigInt::one(), "n={n} {indices:?}");
            }
        }
    }

    #[test]
    fn unit_matrix_pf_row_is_one_for_every_standard_row() {
        for n in 1..=6u8 {
            let ctx = PfaffianContext::new(n);
            let m = unit_pfaffian_matrix(n as usize + 1);
            for r in Row::all_standard(n) {
                assert_eq!(ctx.pf_row(&r).eval(&m), BigInt::one(), "n={n} row {r}");
            }
        }
    }

    #[test]
    fn tridiagonal_leading_corners() {
        let m = tridiagonal_matrix(6);
        assert_eq!(numeric_pfaffian(&m, &[1, 2]), BigInt::one());
        assert_eq!(numeric_pfaffian(&m, &[1, 2, 3, 4]), BigInt::one());
        assert_eq!(numeric_pfaffian(&m, &[1, 2, 3, 4, 5, 6]), BigInt::one());
        // off-corner minors of the tridiagonal matrix can vanish
        assert_eq!(numeric_pfaffian(&m, &[1, 3]), BigInt::zero());
    }

    /// Independent oracle: the pfaffian read off the m-th wedge power of the
    /// 2-form of the generic matrix, divided by m factorial.
    fn wedge_power_pfaffian(dim: usize) -> SparsePoly {
        use std::collections::HashMap;
        // multivector: bitmask of basis indices -> polynomial coefficient
        let mut acc: HashMap<u32, SparsePoly> = HashMap::new();
        acc.insert(0, SparsePoly::one());
        let m = dim / 2;
        for _ in 0..m {
            let mut next: HashMap<u32, SparsePoly> = HashMap::new();
            for (mask, coeff) in &acc {
                for i in 1..=dim as u32 {
                    for j in i + 1..=dim as u32 {
                        let bits = (1 << (i - 1)) | (1 << (j - 1));
                        if mask & bits != 0 {
                            continue;
                        }
                        // sign of sorting e_i and e_j (appended at the end)
                        // into place: swaps past every larger basis index
                        let above = |mask: u32, sym: u32| (mask >> sym).count_ones();
                        let s1 = above(*mask, i);
                        let s2 = above(mask | (1 << (i - 1)), j);
                        let sign = if (s1 + s2) % 2 == 0 { 1 } else { -1 };
                        let var = SparsePoly::var(VarIndex::new(i as u8, j as u8));
                        let term = (&var * coeff).scalar_mul(&BigInt::from(sign));
                        let entry = next.entry(mask | bits).or_insert_with(SparsePoly::zero);
                        *entry = &*entry + &term;
                    }
                }
            }
            acc = next;
        }
        let full = (1u32 << dim) - 1;
        let top = acc.remove(&full).unwrap_or_else(SparsePoly::zero);
        let mut factorial = BigInt::one();
        for f in 1..=m {
            factorial *= BigInt::from(f);
        }
        let mut out = SparsePoly::zero();
        for (mono, c) in top.terms() {
            let (q, r) = num_integer::div_rem(c.clone(), factorial.clone());
            assert!(r.is_zero(), "wedge power coefficient not divisible by m!");
            out.add_term(mono.clone(), q);
        }
        out
    }

    #[test]
    fn wedge_power_oracle_confirms_sign_convention() {
        for dim in [2usize, 4, 6] {
            let ctx = PfaffianContext::new(dim as u8 - 1);
            let indices: Vec<u8> = (1..=dim as u8).collect();
            assert_eq!(ctx.generic_pfaffian(&indices), wedge_power_pfaffian(dim), "dim {dim}");
        }
    }
}
