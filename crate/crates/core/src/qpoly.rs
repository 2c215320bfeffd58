//! Dense integer polynomials in one variable `q` and gaussian binomials.
//!
//! The gaussian binomial `[m k]_q` is `(1-q^m)...(1-q^{m-k+1})` over
//! `(1-q^k)...(1-q)` for `0 <= k <= m` and zero otherwise; it always divides
//! exactly, so the coefficients are integers. Evaluation at `q = -1` has the
//! closed form `binom(floor(m/2), floor(k/2))` when `m` is odd or `k` is
//! even, and `0` otherwise; those values drive the shuffling coefficients.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial over the integers; index = exponent, trailing zeros
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    /// The monomial `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact division; `None` when the remainder is nonzero or when dividing
    /// by zero.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            if (&top % &lead) != BigInt::zero() {
                return None;
            }
            let q = &top / &lead;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let delta = &q * dc;
                rem[k + i] -= delta;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPoly::from_coeffs(quot))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}*q^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// The gaussian binomial `[m k]_q`, computed by the Pascal recurrence
/// `[m k] = [m-1 k-1] + q^k [m-1 k]` with a process-wide memo table.
/// Zero outside `0 <= k <= m`.
pub fn gauss_binom(m: i64, k: i64) -> QPoly {
    if k < 0 || m < 0 || k > m {
        return QPoly::zero();
    }
    if k == 0 || k == m {
        return QPoly::one();
    }
    let key = (m, k);
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), QPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let left = gauss_binom(m - 1, k - 1);
    let right = &QPoly::monomial(BigInt::one(), k as usize) * &gauss_binom(m - 1, k);
    let result = &left + &right;
    cache.lock().unwrap().insert(key, result.clone());
    result
}

/// `[m k]_q` by the defining quotient of products, via exact division.
/// Retained as an independent route for cross-checking the recurrence.
pub fn gauss_binom_by_division(m: i64, k: i64) -> QPoly {
    if k < 0 || m < 0 || k > m {
        return QPoly::zero();
    }
    let factor = |e: i64| {
        // 1 - q^e
        &QPoly::one() - &QPoly::monomial(BigInt::one(), e as usize)
    };
    let mut numerator = QPoly::one();
    for e in (m - k + 1)..=m {
        numerator = &numerator * &factor(e);
    }
    let mut denominator = QPoly::one();
    for e in 1..=k {
        denominator = &denominator * &factor(e);
    }
    numerator
        .div_exact(&denominator)
        .expect("gaussian binomial division is exact")
}

/// `[m k]` evaluated at `q = -1`: `binom(floor(m/2), floor(k/2))` when `m` is
/// odd or `k` is even, zero otherwise, and zero outside `0 <= k <= m`.
pub fn gauss_binom_at_minus1(m: i64, k: i64) -> i64 {
    if k < 0 || m < 0 || k > m {
        return 0;
    }
    if m % 2 == 0 && k % 2 == 1 {
        return 0;
    }
    num_integer::binomial(m / 2, k / 2)
}

/// The alternating sum `sum_h (-1)^h q^{h(h-1)/2} [m s-h][m-s+h h]` as a
/// polynomial; it vanishes identically for `1 <= s <= m`.
pub fn alternating_sum(m: i64, s: i64) -> Result<QPoly> {
    if !(1 <= s && s <= m) {
        return Err(Error::OutOfRange(format!(
            "need 1 <= s <= m, got s = {s}, m = {m}"
        )));
    }
    let mut acc = QPoly::zero();
    for h in 0..=s {
        let mut term = &gauss_binom(m, s - h) * &gauss_binom(m - s + h, h);
        let twist = (h * (h - 1) / 2) as usize;
        term = &term * &QPoly::monomial(BigInt::one(), twist);
        if h % 2 == 1 {
            term = -&term;
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

/// True when the alternating sum above is the zero polynomial.
pub fn check_alternating_identity(m: i64, s: i64) -> Result<bool> {
    Ok(alternating_sum(m, s)?.is_zero())
}
