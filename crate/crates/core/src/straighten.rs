//! Rewriting products of generators into the standard monomial basis.
//!
//! A non-standard two-row tableau is eliminated through its shuffling
//! relation: the tableau carries coefficient 1 there, so it equals minus the
//! rest of the relation, and every other term has a strictly smaller top
//! row. The row poset is finite, so recursion bottoms out; a step budget
//! turns any violation of that argument into a loud failure instead of a
//! hang. Higher-degree monomials are handled by repeated elimination of
//! adjacent unordered pairs.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::Row;
use crate::error::{Error, Result};
use crate::pfaffian::PfaffianContext;
use crate::polyring::SparsePoly;
use crate::shuffle::{shuffling_relation, FormalQuadratic, TableauKey};

/// A degree-`d` monomial in the generators: rows kept in canonical order
/// (length descending, then lexicographic). The monomial is standard exactly
/// when consecutive rows are ordered, which for this arrangement means the
/// whole chain is.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TableauMonomial {
    rows: Vec<Row>,
}

impl TableauMonomial {
    pub fn new(mut rows: Vec<Row>) -> Self {
        debug_assert!(rows.iter().all(Row::is_standard));
        rows.sort();
        TableauMonomial { rows }
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn degree(&self) -> usize {
        self.rows.len()
    }

    pub fn is_standard(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].leq(&w[1]))
    }

    /// Index of the leftmost adjacent violation, if any.
    fn violations(&self) -> Vec<usize> {
        (0..self.rows.len().saturating_sub(1))
            .filter(|&i| !self.rows[i].leq(&self.rows[i + 1]))
            .collect()
    }
}

impl fmt::Display for TableauMonomial {
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

/// Integer combination of monomials of a fixed degree.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Expansion {
    terms: BTreeMap<TableauMonomial, BigInt>,
}

impl Expansion {
    pub fn zero() -> Self {
        Expansion::default()
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

    pub fn terms(&self) -> impl Iterator<Item = (&TableauMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &TableauMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: TableauMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The product of the pfaffians of each row, summed with coefficients.
    pub fn pfaffian_substitution(&self, ctx: &PfaffianContext) -> SparsePoly {
        let mut acc = SparsePoly::zero();
        for (m, c) in self.terms() {
            let mut prod = SparsePoly::one();
            for r in m.rows() {
                prod = &prod * &ctx.pf_row(r);
            }
            acc.add_scaled(&prod, c);
        }
        acc
    }
}

/// Which adjacent violation to eliminate next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    /// Always the leftmost violating pair (the default).
    Leftmost,
    /// Always the rightmost violating pair; a genuinely different reduction
    /// path for order-independence checks.
    Rightmost,
}

/// Result of a straightening run.
#[derive(Clone, Debug)]
pub struct StraighteningResult {
    pub expansion: Expansion,
    /// Number of shuffling relations applied, counting memoized expansions
    /// at their recorded cost.
    pub steps: u64,
}

/// Rewrites products into the standard basis, memoizing the expansion of
/// every two-row tableau it straightens. The memo is keyed by the unordered
/// pair, so both arrangements of a product share one entry.
pub struct Straightener {
    memo: HashMap<TableauKey, (FormalQuadratic, u64)>,
    budget: u64,
}

impl Default for Straightener {
    fn default() -> Self {
        Straightener::new(1_000_000)
    }
}

impl Straightener {
    pub fn new(budget: u64) -> Self {
        Straightener {
            memo: HashMap::new(),
            budget,
        }
    }

    /// Standard-basis expansion of `x(a) x(b)`: coefficients such that the
    /// product equals the expansion with every monomial standard. Already
    /// standard products return themselves with zero steps.
    pub fn straighten_pair(&mut self, a: &Row, b: &Row) -> Result<StraighteningResult> {
        let mut steps = 0u64;
        let quad = self.pair_expansion(&TableauKey::new(a.clone(), b.clone()), &mut steps)?;
        let mut expansion = Expansion::zero();
        for (k, c) in quad.terms() {
            expansion.add_term(
                TableauMonomial::new(vec![k.top().clone(), k.bottom().clone()]),
                c.clone(),
            );
        }
        Ok(StraighteningResult { expansion, steps })
    }

    fn pair_expansion(&mut self, key: &TableauKey, steps: &mut u64) -> Result<FormalQuadratic> {
        if key.is_standard() {
            return Ok(FormalQuadratic::term(key.clone(), BigInt::one()));
        }
        if let Some((hit, cost)) = self.memo.get(key) {
            *steps += cost;
            return Ok(hit.clone());
        }
        let mut local_steps = 1u64; // the relation applied right here
        let relation = shuffling_relation(key.top(), key.bottom());
        // pure swaps normalize to a standard key and never reach this point
        debug_assert!(!relation.is_zero());
        let mut acc = FormalQuadratic::zero();
        for (term, c) in relation.terms() {
            if term == key {
                continue;
            }
            // termination witness: the top row strictly descends
            assert!(
                term.top().leq(key.top()) && term.top() != key.top(),
                "term {term} does not descend below {key}"
            );
            let neg = -c;
            if term.is_standard() {
                acc.add_term(term.clone(), neg);
            } else {
                if local_steps >= self.budget {
                    return Err(Error::StepBudget {
                        budget: self.budget,
                        state: key.to_string(),
                    });
                }
                let sub = self.pair_expansion(term, &mut local_steps)?;
                acc.add_scaled(&sub, &neg);
            }
        }
        debug_assert!(acc.terms().all(|(k, _)| k.is_standard()));
        self.memo.insert(key.clone(), (acc.clone(), local_steps));
        *steps += local_steps;
        Ok(acc)
    }

    /// Standard-basis expansion of an arbitrary product of standard rows,
    /// eliminating adjacent violations until every monomial is standard.
    pub fn straighten_monomial(&mut self, rows: &[Row]) -> Result<StraighteningResult> {
        self.straighten_monomial_with(rows, ReductionOrder::Leftmost)
    }

    pub fn straighten_monomial_with(
        &mut self,
        rows: &[Row],
        order: ReductionOrder,
    ) -> Result<StraighteningResult> {
        self.straighten_monomial_choosing(rows, |_, violations| match order {
            ReductionOrder::Leftmost => violations[0],
            ReductionOrder::Rightmost => *violations.last().unwrap(),
        })
    }

    /// As above, but the caller picks which violation to eliminate at every
    /// step (the returned value must be one of the offered positions). The
    /// final expansion does not depend on the choices.
    pub fn straighten_monomial_choosing(
        &mut self,
        rows: &[Row],
        mut choose: impl FnMut(&TableauMonomial, &[usize]) -> usize,
    ) -> Result<StraighteningResult> {
        for r in rows {
            assert!(r.is_standard(), "input rows must be standard");
        }
        let mut steps = 0u64;
        let mut pending = Expansion::zero();
        pending.add_term(TableauMonomial::new(rows.to_vec()), BigInt::one());
        let mut done = Expansion::zero();
        let mut rounds = 0u64;
        while !pending.is_empty() {
            rounds += 1;
            if rounds > self.budget {
                let stuck = pending.terms().next().unwrap().0.to_string();
                return Err(Error::StepBudget {
                    budget: self.budget,
                    state: stuck,
                });
            }
            let (mono, coeff) = {
                let (m, c) = pending.terms().next().unwrap();
                (m.clone(), c.clone())
            };
            pending.add_term(mono.clone(), -&coeff);
            let violations = mono.violations();
            if violations.is_empty() {
                done.add_term(mono, coeff);
                continue;
            }
            let pick = choose(&mono, &violations);
            assert!(violations.contains(&pick), "chooser must pick an offered violation");
            let pair = self.straighten_pair(&mono.rows()[pick], &mono.rows()[pick + 1])?;
            steps += pair.steps;
            for (sub, c) in pair.expansion.terms() {
                let mut rows = mono.rows().to_vec();
                rows.remove(pick + 1);
                rows.remove(pick);
                rows.extend_from_slice(sub.rows());
                pending.add_term(TableauMonomial::new(rows), &coeff * c);
            }
        }
        debug_assert!(done.terms().all(|(m, _)| m.is_standard()));
        Ok(StraighteningResult {
            expansion: done,
            steps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::nonstandard_tableaux;

    fn row(s: &str) -> Row {
        Row::parse(s).unwrap()
    }

    fn mono(rows: &[&str]) -> TableauMonomial {
        TableauMonomial::new(rows.iter().map(|s| row(s)).collect())
    }

    #[test]
    fn standard_pair_is_identity() {
        let mut st = Straightener::default();
        let result = st.straighten_pair(&row("12"), &row("34")).unwrap();
        assert_eq!(result.steps, 0);
        assert_eq!(result.expansion.len(), 1);
        assert_eq!(result.expansion.coeff(&mono(&["12", "34"])), BigInt::one());
    }

    #[test]
    fn golden_pair_straightening() {
        let mut st = Straightener::default();
        let result = st.straighten_pair(&row("23"), &row("14")).unwrap();
        assert_eq!(result.steps, 2);
        let mut expect = Expansion::zero();
        expect.add_term(mono(&["13", "24"]), BigInt::from(1));
        expect.add_term(mono(&["12", "34"]), BigInt::from(-1));
        expect.add_term(mono(&["1234", ""]), BigInt::from(1));
        assert_eq!(result.expansion, expect);
    }

    #[test]
    fn rank_three_pair_straightening() {
        let mut st = Straightener::default();
        let result = st.straighten_pair(&row("23"), &row("1")).unwrap();
        assert_eq!(result.steps, 1);
        let mut expect = Expansion::zero();
        expect.add_term(mono(&["13", "2"]), BigInt::from(1));
        expect.add_term(mono(&["12", "3"]), BigInt::from(-1));
        expect.add_term(mono(&["123", ""]), BigInt::from(1));
        assert_eq!(result.expansion, expect);
    }

    #[test]
    fn pair_expansion_respects_order_bounds() {
        // every monomial in the expansion of x(I)x(J) has its rows below I
        // and J on one side and above on the other
        for n in 2..=4u8 {
            let mut st = Straightener::default();
            for (t, b) in nonstandard_tableaux(n) {
                let result = st.straighten_pair(&t, &b).unwrap();
                for (m, _) in result.expansion.terms() {
                    let small = &m.rows()[0];
                    let large = &m.rows()[1];
                    assert!(small.leq(&t) && small.leq(&b), "({t};{b}) -> {m}");
                    assert!(t.leq(large) && b.leq(large), "({t};{b}) -> {m}");
                }
            }
        }
    }

    #[test]
    fn pfaffian_identity_certifies_pair_straightening() {
        for n in 2..=4u8 {
            let ctx = PfaffianContext::new(n);
            let mut st = Straightener::default();
            for (t, b) in nonstandard_tableaux(n) {
                let result = st.straighten_pair(&t, &b).unwrap();
                let original = &ctx.pf_row(&t) * &ctx.pf_row(&b);
                let substituted = result.expansion.pfaffian_substitution(&ctx);
                assert_eq!(original, substituted, "({t};{b}) at rank {n}");
            }
        }
    }

    #[test]
    fn monomial_degree_one_and_consistency() {
        let mut st = Straightener::default();
        let single = st.straighten_monomial(&[row("23")]).unwrap();
        assert_eq!(single.steps, 0);
        assert_eq!(single.expansion.coeff(&mono(&["23"])), BigInt::one());

        let via_pair = st.straighten_pair(&row("23"), &row("14")).unwrap();
        let via_monomial = st.straighten_monomial(&[row("23"), row("14")]).unwrap();
        assert_eq!(via_pair.expansion, via_monomial.expansion);
    }

    #[test]
    fn idempotence_on_standard_input() {
        let mut st = Straightener::default();
        let result = st
            .straighten_monomial(&[row("123"), row("12"), row("3")])
            .unwrap();
        assert_eq!(result.steps, 0);
        assert_eq!(result.expansion.len(), 1);
    }

    #[test]
    fn degree_three_pfaffian_identity() {
        let ctx = PfaffianContext::new(3);
        let mut st = Straightener::default();
        let rows = [row("23"), row("1"), row("2")];
        let result = st.straighten_monomial(&rows).unwrap();
        assert!(result.expansion.terms().all(|(m, _)| m.is_standard()));
        let mut original = SparsePoly::one();
        for r in &rows {
            original = &original * &ctx.pf_row(r);
        }
        assert_eq!(original, result.expansion.pfaffian_substitution(&ctx));
    }

    #[test]
    fn reduction_order_does_not_matter() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut st = Straightener::default();
        let rows = [row("23"), row("14"), row("2")];
        let left = st
            .straighten_monomial_with(&rows, ReductionOrder::Leftmost)
            .unwrap();
        let right = st
            .straighten_monomial_with(&rows, ReductionOrder::Rightmost)
            .unwrap();
        assert_eq!(left.expansion, right.expansion);
        let mut rng = StdRng::seed_from_u64(42);
        let random = st
            .straighten_monomial_choosing(&rows, |_, violations| {
                violations[rng.gen_range(0..violations.len())]
            })
            .unwrap();
        assert_eq!(left.expansion, random.expansion);
    }

    #[test]
    fn expansion_terms_share_the_input_weight() {
        // the standard expansion lives in one weight component, unlike the
        // shuffling relation it came from
        use crate::spinaction::weight;
        for n in 2..=4u8 {
            let mut st = Straightener::default();
            for (t, b) in nonstandard_tableaux(n) {
                let input_weight = weight(n, &t).add(&weight(n, &b));
                let result = st.straighten_pair(&t, &b).unwrap();
                for (m, _) in result.expansion.terms() {
                    let w = weight(n, &m.rows()[0]).add(&weight(n, &m.rows()[1]));
                    assert_eq!(w, input_weight, "({t};{b}) -> {m} at rank {n}");
                }
            }
        }
    }

    #[test]
    fn rank_five_straightening_stays_within_budget() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let ctx = PfaffianContext::new(5);
        let rows = Row::all_standard(5);
        let mut rng = StdRng::seed_from_u64(5);
        let mut st = Straightener::default();
        for _ in 0..40 {
            let pair = [
                rows[rng.gen_range(0..rows.len())].clone(),
                rows[rng.gen_range(0..rows.len())].clone(),
            ];
            let result = st.straighten_monomial(&pair).unwrap();
            let mut original = SparsePoly::one();
            for r in &pair {
                original = &original * &ctx.pf_row(r);
            }
            assert_eq!(original, result.expansion.pfaffian_substitution(&ctx));
        }
        for _ in 0..10 {
            let triple: Vec<Row> = (0..3)
                .map(|_| rows[rng.gen_range(0..rows.len())].clone())
                .collect();
            let result = st.straighten_monomial(&triple).unwrap();
            assert!(result.expansion.terms().all(|(m, _)| m.is_standard()));
            let mut original = SparsePoly::one();
            for r in &triple {
                original = &original * &ctx.pf_row(r);
            }
            assert_eq!(original, result.expansion.pfaffian_substitution(&ctx));
        }
    }

    #[test]
    fn tiny_budget_fails_loudly() {
        let mut st = Straightener::new(1);
        let err = st.straighten_pair(&row("23"), &row("14")).unwrap_err();
        match err {
            Error::StepBudget { budget, .. } => assert_eq!(budget, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
