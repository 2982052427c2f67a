//! Truncated formal power series in `q` with exact coefficients.
//!
//! A series carries its truncation order `T` explicitly and stores the
//! coefficients of `q^0 ..= q^T`. Binary operations truncate to the smaller
//! order of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact coefficient ring for [`Series`].
pub trait Coefficient:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> std::ops::AddAssign<&'a Self>
    + for<'a> std::ops::SubAssign<&'a Self>
{
    /// `self += a * b` without cloning the operands.
    fn add_product(&mut self, a: &Self, b: &Self);

    /// Multiplicative inverse, if `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn times(&self, other: &Self) -> Self;
}

impl Coefficient for BigInt {
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl Coefficient for BigRational {
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

/// `c_0 + c_1 q + ... + c_T q^T + O(q^{T+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

pub type IntSeries = Series<BigInt>;
pub type RatSeries = Series<BigRational>;

impl<C: Coefficient> Series<C> {
    /// Builds a series of truncation order `truncation`, padding with zeros
    /// or dropping terms beyond `q^truncation` as needed.
    pub fn new(mut coeffs: Vec<C>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, C::zero());
        Series { coeffs }
    }

    pub fn zero(truncation: usize) -> Self {
        Series { coeffs: vec![C::zero(); truncation + 1] }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(0, C::one(), truncation)
    }

    /// `coeff * q^power`, which is zero when `power > truncation`.
    pub fn monomial(power: usize, coeff: C, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if power <= truncation {
            s.coeffs[power] = coeff;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `q^n`, zero beyond the stored range.
    pub fn coeff(&self, n: usize) -> C {
        self.coeffs.get(n).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        let t = truncation.min(self.truncation());
        Series { coeffs: self.coeffs[..=t].to_vec() }
    }

    /// Multiplies by `q^k`, keeping the truncation order.
    pub fn shift(&self, k: usize) -> Self {
        let t = self.truncation();
        let mut out = Self::zero(t);
        for (n, c) in self.coeffs.iter().enumerate().take((t + 1).saturating_sub(k)) {
            out.coeffs[n + k] = c.clone();
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.times(s)).collect() }
    }

    /// Index of the first differing coefficient within the common range.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    /// Equality through `q^min(T_a, T_b)`.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }

    fn nonzero_terms(&self) -> Vec<(usize, &C)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Cauchy product truncated at `min(T_a, T_b)`. Zero coefficients of the
    /// sparser operand are skipped, so multiplying by a lacunary series costs
    /// `O(T * support)`.
    pub fn mul_series(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        let (sparse, dense) = if self.nonzero_terms().len() <= other.nonzero_terms().len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = Self::zero(t);
        for (i, a) in sparse.nonzero_terms() {
            if i > t {
                break;
            }
            for (j, b) in dense.coeffs[..=t - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j].add_product(a, b);
                }
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| Error::NonUnitConstant(self.coeffs[0].to_string()))?;
        let t = self.truncation();
        let terms: Vec<(usize, &C)> =
            self.nonzero_terms().into_iter().filter(|&(k, _)| k > 0).collect();
        let mut out = Self::zero(t);
        out.coeffs[0] = inv0.clone();
        for n in 1..=t {
            let mut acc = C::zero();
            for &(k, a) in &terms {
                if k > n {
                    break;
                }
                acc.add_product(a, &out.coeffs[n - k]);
            }
            out.coeffs[n] = -acc.times(&inv0);
        }
        Ok(out)
    }

    /// `self += scale * q^offset * src`, truncated at `self`'s order.
    pub fn add_shifted_scaled(&mut self, src: &Self, scale: &C, offset: usize) {
        let t = self.truncation();
        if offset > t {
            return;
        }
        for (n, c) in src.coeffs.iter().enumerate().take(t - offset + 1) {
            if !c.is_zero() {
                self.coeffs[n + offset].add_product(scale, c);
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.truncation());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_series(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_series(&base);
            }
        }
        result
    }

    /// In place multiplication by `(1 - q^t)`.
    pub fn mul_one_minus_q_pow(&mut self, t: usize) {
        assert!(t >= 1);
        for n in (t..self.coeffs.len()).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            hi[0] -= &lo[n - t];
        }
    }

    /// In place division by `(1 - q^t)`.
    pub fn div_one_minus_q_pow(&mut self, t: usize) {
        assert!(t >= 1);
        for n in t..self.coeffs.len() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            hi[0] += &lo[n - t];
        }
    }
}

impl IntSeries {
    pub fn from_i64s(values: &[i64], truncation: usize) -> Self {
        Series::new(values.iter().map(|&v| BigInt::from(v)).collect(), truncation)
    }

    pub fn to_rational(&self) -> RatSeries {
        Series { coeffs: self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect() }
    }

    /// Coefficients rendered as decimal strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    /// Coefficientwise reduction into `[0, p)`.
    pub fn reduce_mod(&self, p: &BigInt) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    let r = c % p;
                    if r.is_negative() {
                        r + p
                    } else {
                        r
                    }
                })
                .collect(),
        }
    }
}

impl RatSeries {
    /// Converts back to integer coefficients, failing on the first
    /// coefficient with a nontrivial denominator.
    pub fn to_integral(&self) -> Result<IntSeries> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::NonIntegral { index, value: c.to_string() })
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(|coeffs| Series { coeffs })
    }
}

impl<C: Coefficient> Add for &Series<C> {
    type Output = Series<C>;

    fn add(self, rhs: Self) -> Series<C> {
        let t = self.truncation().min(rhs.truncation());
        let mut out = self.truncate(t);
        for (o, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *o += r;
        }
        out
    }
}

impl<C: Coefficient> Sub for &Series<C> {
    type Output = Series<C>;

    fn sub(self, rhs: Self) -> Series<C> {
        let t = self.truncation().min(rhs.truncation());
        let mut out = self.truncate(t);
        for (o, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *o -= r;
        }
        out
    }
}

impl<C: Coefficient> Mul for &Series<C> {
    type Output = Series<C>;

    fn mul(self, rhs: Self) -> Series<C> {
        self.mul_series(rhs)
    }
}

impl<C: Coefficient> Neg for &Series<C> {
    type Output = Series<C>;

    fn neg(self) -> Series<C> {
        Series { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.truncation() + 1)
    }
}

/// `(1 - q^t)^e` through `q^truncation`. Negative powers are the inverse of
/// the positive expansion.
pub fn expand_binomial_power(t: usize, e: i64, truncation: usize) -> IntSeries {
    assert!(t >= 1, "binomial base exponent must be positive");
    let k = e.unsigned_abs();
    let mut positive = IntSeries::zero(truncation);
    let mut binom = BigInt::one();
    let mut j: u64 = 0;
    while j <= k && (j as usize) * t <= truncation {
        let sign = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
        positive.coeffs[j as usize * t] = sign;
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        j += 1;
    }
    if e >= 0 {
        positive
    } else {
        positive.inverse().expect("constant term is 1")
    }
}

/// `prod_{t=1}^{T} (1 - q^t)^{c(t)}` through `q^T`. Factors with `t > T`
/// cannot contribute.
pub fn expand_exponent_product<F>(c: F, truncation: usize) -> IntSeries
where
    F: Fn(usize) -> i64,
{
    let mut out = IntSeries::one(truncation);
    for t in 1..=truncation {
        let e = c(t);
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                out.mul_one_minus_q_pow(t);
            } else {
                out.div_one_minus_q_pow(t);
            }
        }
    }
    out
}

/// `(q^s; q^kappa)_inf = prod_{n >= 0} (1 - q^{kappa n + s})` through `q^T`.
pub fn pochhammer_expand(s: usize, kappa: usize, truncation: usize) -> IntSeries {
    assert!(s >= 1 && kappa >= 1, "pochhammer arguments must be positive");
    if s == kappa {
        return euler_product(kappa, truncation);
    }
    let mut out = IntSeries::one(truncation);
    let mut t = s;
    while t <= truncation {
        out.mul_one_minus_q_pow(t);
        t += kappa;
    }
    out
}

/// `(q^k; q^k)_inf` from the pentagonal number theorem:
/// `sum_j (-1)^j q^{k j(3j-1)/2}` over all integers `j`.
fn euler_product(k: usize, truncation: usize) -> IntSeries {
    let mut out = IntSeries::zero(truncation);
    out.coeffs[0] = BigInt::one();
    for j in 1usize.. {
        let g1 = k * j * (3 * j - 1) / 2;
        if g1 > truncation {
            break;
        }
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        out.coeffs[g1] = sign.clone();
        let g2 = k * j * (3 * j + 1) / 2;
        if g2 <= truncation {
            out.coeffs[g2] = sign;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> IntSeries {
        IntSeries::from_i64s(v, v.len() - 1)
    }

    /// Product of `(1 - q^t)` factors multiplied out one at a time, as an
    /// independent check on the fast paths.
    fn direct_pochhammer(s: usize, kappa: usize, t: usize) -> Vec<i64> {
        let mut c = vec![0i64; t + 1];
        c[0] = 1;
        let mut f = s;
        while f <= t {
            for n in (f..=t).rev() {
                c[n] -= c[n - f];
            }
            f += kappa;
        }
        c
    }

    #[test]
    fn add_cancels_and_truncates() {
        assert_eq!(&s(&[1, 1]) + &s(&[1, -1]), s(&[2, 0]));
        let zero = IntSeries::zero(3);
        assert_eq!(&zero + &s(&[1, 2, 3, 4]), s(&[1, 2, 3, 4]));
        assert_eq!(&s(&[1, 0, 0, 0, 2]) + &s(&[0, 3, 0, 0, 0]), s(&[1, 3, 0, 0, 2]));
        assert_eq!((&s(&[1, 1, 1]) + &s(&[1, 1])).truncation(), 1);
    }

    #[test]
    fn mul_telescopes() {
        let t = 6;
        let geo = IntSeries::from_i64s(&[1; 7], t);
        let one_minus_q = IntSeries::from_i64s(&[1, -1], t);
        assert_eq!(&one_minus_q * &geo, IntSeries::one(t));
        assert_eq!(&geo * &IntSeries::one(t), geo);
    }

    #[test]
    fn inverse_examples() {
        let inv = IntSeries::from_i64s(&[1, -1], 3).inverse().unwrap();
        assert_eq!(inv, s(&[1, 1, 1, 1]));
        assert_eq!(IntSeries::one(5).inverse().unwrap(), IntSeries::one(5));
        let euler = expand_exponent_product(|_| 1, 6);
        assert_eq!(euler.inverse().unwrap(), s(&[1, 1, 2, 3, 5, 7, 11]));
    }

    #[test]
    fn inverse_rejects_non_unit() {
        let err = IntSeries::from_i64s(&[2, 1], 3).inverse().unwrap_err();
        assert!(matches!(err, Error::NonUnitConstant(_)));
        let neg = IntSeries::from_i64s(&[-1, 1], 3).inverse().unwrap();
        assert_eq!(neg, s(&[-1, -1, -1, -1]));
    }

    #[test]
    fn binomial_powers() {
        assert_eq!(expand_binomial_power(1, 2, 3), s(&[1, -2, 1, 0]));
        assert_eq!(expand_binomial_power(3, 0, 5), IntSeries::one(5));
        assert_eq!(expand_binomial_power(1, -1, 4), s(&[1, 1, 1, 1, 1]));
        assert_eq!(expand_binomial_power(2, 3, 6), s(&[1, 0, -3, 0, 3, 0, -1]));
    }

    #[test]
    fn exponent_products() {
        assert_eq!(expand_exponent_product(|_| 0, 5), IntSeries::one(5));
        let table = [0, -1, 0, 0, -1];
        let g = expand_exponent_product(|t| table[t % 5], 10);
        assert_eq!(g, s(&[1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_expand(1, 1, 5), s(&[1, -1, -1, 0, 0, 1]));
        assert_eq!(pochhammer_expand(6, 1, 5), IntSeries::one(5));
        assert_eq!(pochhammer_expand(2, 5, 7), s(&[1, 0, -1, 0, 0, 0, 0, -1]));
    }

    #[test]
    fn pentagonal_fast_path_matches_direct_product() {
        for k in 1..5 {
            for t in [0usize, 1, 7, 40] {
                let fast = pochhammer_expand(k, k, t);
                assert_eq!(fast, IntSeries::from_i64s(&direct_pochhammer(k, k, t), t));
            }
        }
        for (a, m) in [(1, 5), (3, 7), (2, 2)] {
            assert_eq!(
                pochhammer_expand(a, m, 30),
                IntSeries::from_i64s(&direct_pochhammer(a, m, 30), 30)
            );
        }
    }

    #[test]
    fn shift_and_mismatch() {
        let a = s(&[1, 2, 3]);
        assert_eq!(a.shift(1), s(&[0, 1, 2]));
        assert_eq!(a.shift(5), IntSeries::zero(2));
        assert_eq!(a.first_mismatch(&s(&[1, 2, 4])), Some(2));
        assert!(a.agrees_with(&s(&[1, 2])));
    }

    #[test]
    fn rational_integrality() {
        let r = s(&[1, 2]).to_rational();
        assert_eq!(r.to_integral().unwrap(), s(&[1, 2]));
        let half = RatSeries::new(vec![BigRational::one(), BigRational::new(1.into(), 2.into())], 1);
        assert!(matches!(half.to_integral(), Err(Error::NonIntegral { index: 1, .. })));
    }

    #[test]
    fn display_renders_truncation() {
        assert_eq!(s(&[1, -1, 0, 2]).to_string(), "1 + -1*q + 2*q^3 + O(q^4)");
    }
}
