//! Hall-Littlewood polynomials `P_lambda(x; t)`.
//!
//! Two evaluation routes are kept side by side:
//!
//! * [`hl_direct_at_points`] symmetrises `x^lambda prod_{i<j} (x_i - t x_j)/(x_i - x_j)`
//!   over the full symmetric group. It costs `n!` and exists as the oracle.
//! * The branching rule `P_lambda(x_1..x_n) = sum_mu psi_{lambda/mu}(t) x_n^{|lambda/mu|}
//!   P_mu(x_1..x_{n-1})`, summed over horizontal strips `lambda/mu`. This drives both
//!   [`hl_branching_at_points`] and the principal specialisation [`hl_principal`].
//!
//! The skew coefficient is `psi_{lambda/mu}(t) = prod_j (1 - t^{m_j(mu)})` over the
//! columns `j` where the strip is absent from column `j` but present in column `j + 1`.

use std::collections::HashMap;
use std::rc::Rc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::series::IntSeries;

/// Polynomial in `t` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly(Vec<BigInt>);

impl TPoly {
    pub fn one() -> Self {
        TPoly(vec![BigInt::one()])
    }

    /// `1 - t^k`.
    pub fn one_minus_power(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] += 1;
        c[k] -= 1;
        TPoly(c).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        let mut c = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        TPoly(c).trimmed()
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripChild {
    pub child: Partition,
    pub coefficient: TPoly,
}

/// One branching step: every `mu` interlacing `parent`, with `psi_{parent/mu}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizontalStripExpansion {
    pub parent: Partition,
    pub children: Vec<StripChild>,
}

fn strip_coefficient(lambda: &Partition, mu: &Partition) -> TPoly {
    let width = lambda.largest();
    let strip_in = |j: u32| lambda.column(j) - mu.column(j);
    let mut psi = TPoly::one();
    for j in 1..width {
        if strip_in(j) == 0 && strip_in(j + 1) == 1 {
            psi = psi.mul(&TPoly::one_minus_power(mu.multiplicity(j)));
        }
    }
    psi
}

/// All `mu` with `lambda_i >= mu_i >= lambda_{i+1}`, largest first.
pub fn horizontal_strip_children(lambda: &Partition) -> HorizontalStripExpansion {
    let parts = lambda.parts();
    if parts.is_empty() {
        let child = Partition::empty();
        let coefficient = TPoly::one();
        return HorizontalStripExpansion { parent: child.clone(), children: vec![StripChild { child, coefficient }] };
    }
    let ranges: Vec<Vec<u32>> = (0..parts.len())
        .map(|i| {
            let lo = parts.get(i + 1).copied().unwrap_or(0);
            (lo..=parts[i]).rev().collect()
        })
        .collect();
    let children = ranges
        .into_iter()
        .multi_cartesian_product()
        .map(|mut mu| {
            while mu.last() == Some(&0) {
                mu.pop();
            }
            Partition::from_sorted(mu)
        })
        .map(|child| StripChild { coefficient: strip_coefficient(lambda, &child), child })
        .collect();
    HorizontalStripExpansion { parent: lambda.clone(), children }
}

/// `prod_{j=1}^{m} (1 + t + ... + t^{j-1})`, i.e. `(t; t)_m / (1 - t)^m` without the
/// division, so it is defined at `t = 1`.
fn t_factorial(m: usize, t: &BigRational) -> BigRational {
    let mut out = BigRational::one();
    let mut bracket = BigRational::zero();
    let mut power = BigRational::one();
    for _ in 0..m {
        bracket += &power;
        power *= t;
        out *= &bracket;
    }
    out
}

/// `P_lambda(x_1, ..., x_n; t)` straight from the symmetrisation formula.
pub fn hl_direct_at_points(lambda: &Partition, x: &[BigRational], t: &BigRational) -> Result<BigRational> {
    let n = x.len();
    if n < lambda.len() {
        return Err(Error::TooFewVariables { length: lambda.len(), variables: n });
    }
    if x.iter().tuple_combinations().any(|(a, b)| a == b) {
        return Err(Error::RepeatedPoints);
    }
    let mut v = t_factorial(n - lambda.len(), t);
    for m in lambda.multiplicities() {
        v *= t_factorial(m, t);
    }
    if v.is_zero() {
        return Err(Error::DegenerateParameter(t.to_string()));
    }

    let exponents: Vec<u32> = (1..=n).map(|i| lambda.part(i)).collect();
    let mut total = BigRational::zero();
    for w in (0..n).permutations(n) {
        let mut term = BigRational::one();
        for (i, &e) in exponents.iter().enumerate() {
            term *= num_traits::pow(x[w[i]].clone(), e as usize);
        }
        for (i, j) in (0..n).tuple_combinations() {
            let (xi, xj) = (&x[w[i]], &x[w[j]]);
            term *= (xi - t * xj) / (xi - xj);
        }
        total += term;
    }
    Ok(total / v)
}

#[derive(Default)]
struct ChildCache(HashMap<Partition, Rc<HorizontalStripExpansion>>);

impl ChildCache {
    fn get(&mut self, lambda: &Partition) -> Rc<HorizontalStripExpansion> {
        self.0
            .entry(lambda.clone())
            .or_insert_with(|| Rc::new(horizontal_strip_children(lambda)))
            .clone()
    }
}

/// `P_lambda(x_1, ..., x_n; t)` by iterating the branching rule.
pub fn hl_branching_at_points(lambda: &Partition, x: &[BigRational], t: &BigRational) -> Result<BigRational> {
    if x.len() < lambda.len() {
        return Err(Error::TooFewVariables { length: lambda.len(), variables: x.len() });
    }
    fn go(
        mu: &Partition,
        k: usize,
        x: &[BigRational],
        t: &BigRational,
        cache: &mut ChildCache,
        memo: &mut HashMap<(Partition, usize), BigRational>,
    ) -> BigRational {
        if mu.is_empty() {
            return BigRational::one();
        }
        if mu.len() > k {
            return BigRational::zero();
        }
        if let Some(v) = memo.get(&(mu.clone(), k)) {
            return v.clone();
        }
        let expansion = cache.get(mu);
        let mut acc = BigRational::zero();
        for StripChild { child, coefficient } in &expansion.children {
            if child.len() > k - 1 {
                continue;
            }
            let removed = (mu.size() - child.size()) as usize;
            let rest = go(child, k - 1, x, t, cache, memo);
            acc += coefficient.eval(t) * num_traits::pow(x[k - 1].clone(), removed) * rest;
        }
        memo.insert((mu.clone(), k), acc.clone());
        acc
    }
    Ok(go(lambda, x.len(), x, t, &mut ChildCache::default(), &mut HashMap::new()))
}

/// Principal specialisation `P_lambda(1, q, q^2, ...; q^e)` through `q^T`.
///
/// Uses `N` variables `x_i = q^{i-1}`: any monomial involving `x_{N+1}` has
/// degree at least `N`, so `N = T + 1` already gives the infinite-variable
/// series through `q^T`. The memo is keyed by `(mu, variables left)` and can be
/// shared across many `lambda` with the same `e` and `T`.
pub struct PrincipalEvaluator {
    t_exponent: usize,
    truncation: usize,
    variables: usize,
    children: ChildCache,
    memo: HashMap<(Partition, usize), IntSeries>,
}

impl PrincipalEvaluator {
    pub fn new(t_exponent: usize, truncation: usize) -> Self {
        Self::with_variables(t_exponent, truncation, truncation + 1)
    }

    pub fn with_variables(t_exponent: usize, truncation: usize, variables: usize) -> Self {
        assert!(t_exponent >= 1, "t = q^e needs e >= 1");
        PrincipalEvaluator {
            t_exponent,
            truncation,
            variables,
            children: ChildCache::default(),
            memo: HashMap::new(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn evaluate(&mut self, lambda: &Partition) -> IntSeries {
        self.eval_in(lambda, self.variables)
    }

    fn eval_in(&mut self, mu: &Partition, k: usize) -> IntSeries {
        let t = self.truncation;
        if mu.is_empty() {
            return IntSeries::one(t);
        }
        if mu.len() > k || mu.n_statistic() > t as u64 {
            return IntSeries::zero(t);
        }
        if let Some(v) = self.memo.get(&(mu.clone(), k)) {
            return v.clone();
        }
        let expansion = self.children.get(mu);
        let mut acc = IntSeries::zero(t);
        for StripChild { child, coefficient } in &expansion.children {
            if child.len() > k - 1 {
                continue;
            }
            let shift = (k as u64 - 1) * (mu.size() - child.size());
            if shift + child.n_statistic() > t as u64 {
                continue;
            }
            let rest = self.eval_in(child, k - 1);
            for (j, c) in coefficient.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc.add_shifted_scaled(&rest, c, shift as usize + self.t_exponent * j);
                }
            }
        }
        self.memo.insert((mu.clone(), k), acc.clone());
        acc
    }
}

pub fn hl_principal(lambda: &Partition, t_exponent: usize, truncation: usize) -> IntSeries {
    PrincipalEvaluator::new(t_exponent, truncation).evaluate(lambda)
}

pub fn hl_principal_with_variables(
    lambda: &Partition,
    t_exponent: usize,
    truncation: usize,
    variables: usize,
) -> IntSeries {
    PrincipalEvaluator::with_variables(t_exponent, truncation, variables).evaluate(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn empty_partition_is_one() {
        let x = [q(1, 2), q(2, 3), q(-5, 1)];
        assert_eq!(hl_direct_at_points(&Partition::empty(), &x, &q(1, 3)).unwrap(), q(1, 1));
        assert_eq!(hl_principal(&Partition::empty(), 2, 6), IntSeries::one(6));
    }

    #[test]
    fn two_variable_closed_forms() {
        let (x1, x2, t) = (q(2, 3), q(-3, 7), q(5, 4));
        let x = [x1.clone(), x2.clone()];
        let e2 = hl_direct_at_points(&p(&[1, 1]), &x, &t).unwrap();
        assert_eq!(e2, &x1 * &x2);
        let h = hl_direct_at_points(&p(&[2]), &x, &t).unwrap();
        assert_eq!(h, &x1 * &x1 + &x2 * &x2 + (q(1, 1) - &t) * &x1 * &x2);
    }

    #[test]
    fn direct_rejects_bad_input() {
        let t = q(1, 2);
        assert_eq!(
            hl_direct_at_points(&p(&[1, 1]), &[q(1, 1), q(1, 1)], &t),
            Err(Error::RepeatedPoints)
        );
        assert!(matches!(
            hl_direct_at_points(&p(&[1, 1, 1]), &[q(1, 1), q(2, 1)], &t),
            Err(Error::TooFewVariables { .. })
        ));
        assert!(matches!(
            hl_direct_at_points(&p(&[1, 1]), &[q(1, 1), q(2, 1)], &q(-1, 1)),
            Err(Error::DegenerateParameter(_))
        ));
    }

    #[test]
    fn strip_children_examples() {
        let e = horizontal_strip_children(&Partition::empty());
        assert_eq!(e.children, vec![StripChild { child: Partition::empty(), coefficient: TPoly::one() }]);

        let one: Vec<Partition> =
            horizontal_strip_children(&p(&[1])).children.into_iter().map(|c| c.child).collect();
        assert_eq!(one, vec![p(&[1]), Partition::empty()]);

        let two_two: Vec<Partition> =
            horizontal_strip_children(&p(&[2, 2])).children.into_iter().map(|c| c.child).collect();
        assert_eq!(two_two, vec![p(&[2, 2]), p(&[2, 1]), p(&[2])]);
    }

    #[test]
    fn strip_coefficient_for_single_row() {
        let kids = horizontal_strip_children(&p(&[2])).children;
        assert_eq!(kids[1].child, p(&[1]));
        assert_eq!(kids[1].coefficient, TPoly::one_minus_power(1));
        assert_eq!(kids[0].coefficient, TPoly::one());
        assert_eq!(kids[2].coefficient, TPoly::one());
    }

    #[test]
    fn branching_matches_direct_small() {
        let x = [q(1, 2), q(3, 1), q(-2, 5), q(7, 3)];
        let t = q(2, 3);
        for lam in [p(&[2, 1]), p(&[3, 1, 1]), p(&[2, 2, 1])] {
            for n in lam.len()..=4 {
                assert_eq!(
                    hl_branching_at_points(&lam, &x[..n], &t).unwrap(),
                    hl_direct_at_points(&lam, &x[..n], &t).unwrap(),
                    "{lam} in {n} variables"
                );
            }
        }
    }

    #[test]
    fn principal_rogers_ramanujan_terms() {
        // P_{(2)}(1, q, ...; q) = 1/(1 - q)
        let t = 10;
        assert_eq!(hl_principal(&p(&[2]), 1, t), IntSeries::from_i64s(&[1; 11], t));
        // P_{(2,2)}(1, q, ...; q) = q^2/((1 - q)(1 - q^2))
        let denom = &IntSeries::from_i64s(&[1, -1], t) * &IntSeries::from_i64s(&[1, 0, -1], t);
        let rhs = denom.inverse().unwrap().shift(2);
        assert_eq!(hl_principal(&p(&[2, 2]), 1, t), rhs);
    }
}
