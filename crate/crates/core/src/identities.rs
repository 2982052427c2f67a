//! Named identities between products of `R_nu` series and `Psi_m`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::{c_table, sum_side, Nu, PeriodicExponents, RRSpec};
use crate::partitions::m_regular_counts;
use crate::series::IntSeries;

/// `prod numerator / prod denominator` of product sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientExpression {
    pub numerator: Vec<RRSpec>,
    pub denominator: Vec<RRSpec>,
}

impl QuotientExpression {
    pub fn new(numerator: Vec<RRSpec>, denominator: Vec<RRSpec>) -> Self {
        QuotientExpression { numerator, denominator }
    }

    /// Common modulus of every factor, if there is one.
    pub fn shared_modulus(&self) -> Option<usize> {
        let mut moduli = self.numerator.iter().chain(&self.denominator).map(RRSpec::kappa);
        let first = moduli.next()?;
        moduli.all(|k| k == first).then_some(first)
    }

    /// Combined exponent vector when all factors share a modulus.
    pub fn exponents(&self) -> Option<PeriodicExponents> {
        let kappa = self.shared_modulus()?;
        let mut acc = PeriodicExponents::zero(kappa);
        for s in &self.numerator {
            acc = &acc + &c_table(s);
        }
        for s in &self.denominator {
            acc = &acc - &c_table(s);
        }
        Some(acc)
    }

    /// Same-modulus quotients cancel at the exponent level; otherwise each
    /// factor is expanded and divided as a series.
    pub fn evaluate(&self, truncation: usize) -> IntSeries {
        if let Some(exps) = self.exponents() {
            return exps.expand(truncation);
        }
        let mut num = IntSeries::one(truncation);
        for s in &self.numerator {
            num = &num * &c_table(s).expand(truncation);
        }
        let mut den = IntSeries::one(truncation);
        for s in &self.denominator {
            den = &den * &c_table(s).expand(truncation);
        }
        &num * &den.inverse().expect("product sides have constant term 1")
    }
}

pub fn evaluate_quotient(expr: &QuotientExpression, truncation: usize) -> IntSeries {
    expr.evaluate(truncation)
}

/// Outcome of comparing an identity's two sides through `q^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: IntSeries,
    pub rhs: IntSeries,
    pub first_mismatch: Option<usize>,
    /// For same-modulus quotients, whether the exponent vector equals the
    /// expected one exactly.
    pub exponent_match: Option<bool>,
}

impl IdentityCheck {
    fn compare(lhs: IntSeries, rhs: IntSeries, exponent_match: Option<bool>) -> Self {
        let first_mismatch = lhs.first_mismatch(&rhs);
        IdentityCheck {
            holds: first_mismatch.is_none() && exponent_match != Some(false),
            lhs,
            rhs,
            first_mismatch,
            exponent_match,
        }
    }

    pub fn truncation(&self) -> usize {
        self.lhs.truncation().min(self.rhs.truncation())
    }
}

/// `Psi_m` from the m-regular counting table, independent of any product formula.
pub fn psi_oracle(m: u32, truncation: usize) -> IntSeries {
    IntSeries::new(m_regular_counts(m, truncation), truncation)
}

/// Exponent vector of `Psi_m` over modulus `m`: zero at residue 0, `-1` elsewhere.
pub fn psi_exponents(m: usize) -> PeriodicExponents {
    let mut v = vec![-1; m];
    v[0] = 0;
    PeriodicExponents::from_values(v)
}

fn spec(nu: Nu, a: u32, b: u32) -> Result<RRSpec> {
    RRSpec::new(nu, a, b)
}

/// `R_(1,0)(2, m/2-3) R_(2,-2)(m/2-2, 2) / R_(2,-2)(m/2-3, 3)`.
pub fn even_identity(m: u32) -> Result<QuotientExpression> {
    if m % 2 != 0 || m < 8 {
        return Err(Error::OutOfRange(format!("even identity needs even m >= 8, got m = {m}")));
    }
    let h = m / 2;
    Ok(QuotientExpression::new(
        vec![spec(Nu::OneZero, 2, h - 3)?, spec(Nu::TwoMinusTwo, h - 2, 2)?],
        vec![spec(Nu::TwoMinusTwo, h - 3, 3)?],
    ))
}

/// `R_(1,-1)((m-1)/2-1, 1) R_(2,-1)((m-1)/4, (m-1)/4) / R_(2,-1)((m-1)/4+1, (m-1)/4-1)`.
pub fn odd_identity(m: u32) -> Result<QuotientExpression> {
    if m % 4 != 1 || m < 9 {
        return Err(Error::OutOfRange(format!(
            "odd identity needs m = 1 mod 4 and m >= 9 (the denominator has b = (m-1)/4 - 1), got m = {m}"
        )));
    }
    let q = (m - 1) / 4;
    Ok(QuotientExpression::new(
        vec![spec(Nu::OneMinusOne, (m - 1) / 2 - 1, 1)?, spec(Nu::TwoMinusOne, q, q)?],
        vec![spec(Nu::TwoMinusOne, q + 1, q - 1)?],
    ))
}

/// The kernel element for `m = 3 mod 4`, which equals 1.
pub fn kernel_identity(m: u32) -> Result<QuotientExpression> {
    if m % 4 != 3 || m < 11 {
        return Err(Error::OutOfRange(format!(
            "kernel identity needs m = 3 mod 4 and m >= 11, got m = {m}"
        )));
    }
    let (h, q) = ((m - 3) / 2, (m - 3) / 4);
    Ok(QuotientExpression::new(
        vec![spec(Nu::OneMinusOne, h - 1, 2)?, spec(Nu::TwoMinusOne, q, q + 1)?],
        vec![
            spec(Nu::OneMinusOne, 1, h)?,
            spec(Nu::TwoMinusOne, 1, h)?,
            spec(Nu::TwoMinusOne, q - 1, q + 2)?,
        ],
    ))
}

fn check_against_psi(expr: &QuotientExpression, m: u32, truncation: usize) -> IdentityCheck {
    let exponent_match = expr.exponents().map(|e| e == psi_exponents(m as usize));
    IdentityCheck::compare(expr.evaluate(truncation), psi_oracle(m, truncation), exponent_match)
}

pub fn verify_even_identity(m: u32, truncation: usize) -> Result<IdentityCheck> {
    Ok(check_against_psi(&even_identity(m)?, m, truncation))
}

pub fn verify_odd_identity(m: u32, truncation: usize) -> Result<IdentityCheck> {
    Ok(check_against_psi(&odd_identity(m)?, m, truncation))
}

pub fn verify_kernel_identity(m: u32, truncation: usize) -> Result<IdentityCheck> {
    let expr = kernel_identity(m)?;
    let exponent_match = expr.exponents().map(|e| e.is_zero());
    Ok(IdentityCheck::compare(expr.evaluate(truncation), IntSeries::one(truncation), exponent_match))
}

/// `R_(1,-1)(2, 2) = Psi_9`.
pub fn dyson_check(truncation: usize) -> IdentityCheck {
    let s = RRSpec::new(Nu::OneMinusOne, 2, 2).expect("admissible");
    IdentityCheck::compare(c_table(&s).expand(truncation), psi_oracle(9, truncation), None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhReport {
    pub product: IdentityCheck,
    /// Indices `n` with `5n + 4 <= T` for which `d_5(5n + 4)` is not divisible by 5.
    pub congruence_failures: Vec<usize>,
}

impl GhReport {
    pub fn holds(&self) -> bool {
        self.product.holds && self.congruence_failures.is_empty()
    }
}

/// `G(q) H(q) = Psi_5`, together with `d_5(5n + 4) = 0 mod 5`.
pub fn gh_product_check(truncation: usize) -> GhReport {
    let g = RRSpec::new(Nu::OneMinusOne, 1, 1).expect("admissible");
    let h = RRSpec::new(Nu::TwoMinusOne, 1, 1).expect("admissible");
    let lhs = &c_table(&g).expand(truncation) * &c_table(&h).expand(truncation);
    let psi = psi_oracle(5, truncation);
    let five = BigInt::from(5);
    let congruence_failures = (0..)
        .map(|n| 5 * n + 4)
        .take_while(|&j| j <= truncation)
        .filter(|&j| !(lhs.coeff(j) % &five).is_zero())
        .map(|j| (j - 4) / 5)
        .collect();
    GhReport { product: IdentityCheck::compare(lhs, psi, None), congruence_failures }
}

type Poly = Vec<BigInt>;

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn poly_shift(a: &Poly, k: usize) -> Poly {
    let mut out = vec![BigInt::zero(); k];
    out.extend(a.iter().cloned());
    out
}

/// Depth-`k` convergent of `1/(1 + q/(1 + q^2/(1 + ...)))` with the innermost
/// tail replaced by 1, as an exact rational function expanded through `q^T`.
pub fn cf_convergent(depth: usize, truncation: usize) -> IntSeries {
    if depth == 0 {
        return IntSeries::one(truncation);
    }
    // Level j is 1 + q^{j+1} / (level j+1); level `depth` is the constant 1.
    let mut num: Poly = vec![BigInt::one()];
    let mut den: Poly = vec![BigInt::one()];
    for j in (0..depth).rev() {
        let next_num = poly_add(&num, &poly_shift(&den, j + 1));
        den = num;
        num = next_num;
    }
    // Value is 1 / level_0 = den / num.
    let n = IntSeries::new(num, truncation);
    let d = IntSeries::new(den, truncation);
    &d * &n.inverse().expect("convergent denominators have constant term 1")
}

/// `H(q)/G(q)` from the two sum sides.
pub fn rogers_ramanujan_ratio(truncation: usize) -> IntSeries {
    let g = sum_side(&RRSpec::new(Nu::OneMinusOne, 1, 1).expect("admissible"), truncation);
    let h = sum_side(&RRSpec::new(Nu::TwoMinusOne, 1, 1).expect("admissible"), truncation);
    &h * &g.inverse().expect("G has constant term 1")
}

/// First power of `q` where the depth-`k` convergent differs from `ratio`.
pub fn cf_disagreement(depth: usize, ratio: &IntSeries) -> Option<usize> {
    cf_convergent(depth, ratio.truncation()).first_mismatch(ratio)
}
