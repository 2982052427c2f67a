//! Coefficient recursion for `f = 1 + sum a(n) q^n = prod_t (1 - q^t)^{c(t)}`.
//!
//! With `b(n) = sum_{d | n} c(d) d`, logarithmic differentiation gives
//! `0 = b(n) + b(n-1) a(1) + ... + b(1) a(n-1) + n a(n)`, which unrolls to
//! `a(n) = Fhat_n(a(1), ..., a(n-1)) - b(n)/n`, where `Fhat_n` sums over every
//! partition of `n` except `(n)` itself.
//!
//! The Newton identities relating power sums `s_i` and elementary symmetric
//! values `sigma_i` are implemented twice (recurrence and closed partition sum)
//! and used as an independent check: with `sigma_i = a(i)` one has
//! `b(n) = (-1)^n s_n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partitions::enumerate_partitions;
use crate::series::{IntSeries, RatSeries};

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// One monomial of `Fhat_n`: `coefficient * prod x_i^{m_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FhatTerm {
    /// `multiplicities[i - 1] = m_i` for `i = 1..n-1`.
    pub multiplicities: Vec<u32>,
    /// `(-1)^M (M - 1)! / prod m_i!` with `M = sum m_i`.
    pub coefficient: BigRational,
}

impl FhatTerm {
    pub fn weight(&self) -> usize {
        self.multiplicities.iter().enumerate().map(|(i, &m)| (i + 1) * m as usize).sum()
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let mut v = self.coefficient.clone();
        for (xi, &m) in x.iter().zip(&self.multiplicities) {
            if m > 0 {
                v *= num_traits::pow(xi.clone(), m as usize);
            }
        }
        v
    }
}

impl std::fmt::Display for FhatTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.coefficient)?;
        for (i, &m) in self.multiplicities.iter().enumerate() {
            match m {
                0 => {}
                1 => write!(f, "*x{}", i + 1)?,
                _ => write!(f, "*x{}^{}", i + 1, m)?,
            }
        }
        Ok(())
    }
}

/// `(-1)^M (M-1)! / prod m_i!` for a multiplicity vector.
fn term_coefficient(mults: &[u32], sign_exponent: u32) -> BigRational {
    let total: usize = mults.iter().map(|&m| m as usize).sum();
    let denom = mults.iter().fold(BigInt::one(), |acc, &m| acc * factorial(m as usize));
    let c = BigRational::new(factorial(total - 1), denom);
    if sign_exponent % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Monomials of `Fhat_n`, one per partition of `n` with largest part at most `n - 1`.
pub fn fhat_terms(n: usize) -> Result<Vec<FhatTerm>> {
    if n < 2 {
        return Err(Error::FhatOrder(n));
    }
    Ok(enumerate_partitions(n as u32, n as u32 - 1)
        .into_iter()
        .map(|lambda| {
            let mut mults: Vec<u32> = lambda.multiplicities().into_iter().map(|m| m as u32).collect();
            mults.resize(n - 1, 0);
            let total: u32 = mults.iter().sum();
            FhatTerm { coefficient: term_coefficient(&mults, total), multiplicities: mults }
        })
        .collect())
}

pub fn fhat_eval(n: usize, x: &[BigRational]) -> Result<BigRational> {
    let terms = fhat_terms(n)?;
    if x.len() != n - 1 {
        return Err(Error::Arity { n, expected: n - 1, got: x.len() });
    }
    Ok(terms.iter().map(|t| t.eval(x)).sum())
}

/// `b(n) = sum_{d | n} c(d) d`.
pub fn b_from_c<F: Fn(usize) -> i64>(c: F, n: usize) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(c(d)) * d).sum()
}

/// `b(1..=count)`, indexed from zero with `b[0] = 0`.
pub fn b_sequence<F: Fn(usize) -> i64>(c: F, count: usize) -> Vec<BigInt> {
    let mut b = vec![BigInt::zero(); count + 1];
    for d in 1..=count {
        let cd = c(d);
        if cd == 0 {
            continue;
        }
        let w = BigInt::from(cd) * d;
        for n in (d..=count).step_by(d) {
            b[n] += &w;
        }
    }
    b
}

/// Integer monomial sums for `n * Fhat_n` at integer arguments avoid rational
/// arithmetic: `(M-1)! n / prod m_i!` is an integer because `M <= n` and
/// `prod m_i!` divides `M!`.
fn fhat_times_n_integral(n: usize, x: &[BigInt]) -> BigInt {
    let mut total = BigInt::zero();
    let nf = BigInt::from(n);
    for lambda in enumerate_partitions(n as u32, n as u32 - 1) {
        let mults = lambda.multiplicities();
        let m_total: usize = mults.iter().sum();
        let denom = mults.iter().fold(BigInt::one(), |acc, &m| acc * factorial(m));
        let (coef, rem) = (factorial(m_total - 1) * &nf).div_rem(&denom);
        debug_assert!(rem.is_zero());
        let mut mono = coef;
        for (i, &m) in mults.iter().enumerate() {
            if m > 0 {
                mono *= num_traits::pow(x[i].clone(), m);
            }
        }
        if m_total % 2 == 1 {
            total -= mono;
        } else {
            total += mono;
        }
    }
    total
}

/// `a(0) = 1, a(1), ..., a(count)` from the exponents `c`.
///
/// `a(1) = -c(1)` and, for `n >= 2`, `a(n) = Fhat_n(a(1..n)) - b(n)/n`; each
/// value is checked to be integral before it is used further.
pub fn recurse_coefficients<F: Fn(usize) -> i64>(c: F, count: usize) -> Result<IntSeries> {
    let b = b_sequence(&c, count);
    let mut a = vec![BigInt::one()];
    for n in 1..=count {
        let numerator = if n == 1 { -&b[1] } else { fhat_times_n_integral(n, &a[1..n]) - &b[n] };
        let (q, r) = numerator.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::NonIntegral {
                index: n,
                value: BigRational::new(numerator, n.into()).to_string(),
            });
        }
        a.push(q);
    }
    Ok(IntSeries::new(a, count))
}

/// Same recursion carried out entirely in rationals through [`fhat_eval`],
/// without any integrality shortcut.
pub fn recurse_coefficients_rational<F: Fn(usize) -> i64>(c: F, count: usize) -> Result<RatSeries> {
    let b = b_sequence(&c, count);
    let mut a = vec![BigRational::one()];
    for n in 1..=count {
        let tail = BigRational::new(b[n].clone(), n.into());
        let an = if n == 1 { -tail } else { fhat_eval(n, &a[1..n])? - tail };
        a.push(an);
    }
    Ok(RatSeries::new(a, count))
}

/// `b(n) + sum_{k=1}^{n-1} b(n-k) a(k) + n a(n)`, zero when `a` and `b` come
/// from the same product.
pub fn convolution_residual(a: &[BigInt], b: &[BigInt], n: usize) -> BigInt {
    let mut r = &b[n] + &a[n] * BigInt::from(n);
    for k in 1..n {
        r += &b[n - k] * &a[k];
    }
    r
}

/// Power sums from elementary symmetric values, both routes side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPair {
    /// `s_1 ..= s_n`.
    pub power_sums: Vec<BigRational>,
    /// `sigma_1 ..= sigma_n`.
    pub elementary: Vec<BigRational>,
}

impl SymmetricPair {
    /// `s_n - s_{n-1} sigma_1 + ... + (-1)^{n-1} s_1 sigma_{n-1} + (-1)^n n sigma_n`.
    pub fn newton_residual(&self, n: usize) -> BigRational {
        let (s, e) = (&self.power_sums, &self.elementary);
        let mut r = s[n - 1].clone();
        for k in 1..n {
            let term = &s[n - k - 1] * &e[k - 1];
            if k % 2 == 1 {
                r -= term;
            } else {
                r += term;
            }
        }
        let last = &e[n - 1] * rat(n);
        if n % 2 == 1 {
            r -= last;
        } else {
            r += last;
        }
        r
    }
}

/// `s_1..s_n` from Newton's recurrence.
pub fn newton_power_sums(sigma: &[BigRational]) -> Vec<BigRational> {
    let mut s: Vec<BigRational> = Vec::with_capacity(sigma.len());
    for n in 1..=sigma.len() {
        // s_n = sum_{k=1}^{n-1} (-1)^{k-1} sigma_k s_{n-k} + (-1)^{n-1} n sigma_n
        let mut v = BigRational::zero();
        for k in 1..n {
            let term = &sigma[k - 1] * &s[n - k - 1];
            if k % 2 == 1 {
                v += term;
            } else {
                v -= term;
            }
        }
        let last = &sigma[n - 1] * rat(n);
        if n % 2 == 1 {
            v += last;
        } else {
            v -= last;
        }
        s.push(v);
    }
    s
}

/// `s_n = n sum_{|mu| = n} (-1)^{m_2 + m_4 + ...} (M-1)!/prod m_i! prod sigma_i^{m_i}`.
pub fn explicit_power_sums(sigma: &[BigRational]) -> Vec<BigRational> {
    (1..=sigma.len())
        .map(|n| {
            let mut total = BigRational::zero();
            for lambda in enumerate_partitions(n as u32, n as u32) {
                let mults: Vec<u32> = lambda.multiplicities().into_iter().map(|m| m as u32).collect();
                let even_parts: u32 = mults.iter().skip(1).step_by(2).sum();
                let mut term = term_coefficient(&mults, even_parts);
                for (i, &m) in mults.iter().enumerate() {
                    if m > 0 {
                        term *= num_traits::pow(sigma[i].clone(), m as usize);
                    }
                }
                total += term;
            }
            total * rat(n)
        })
        .collect()
}

/// Computes power sums by both routes and fails if they differ.
pub fn newton_roundtrip(sigma: &[BigRational]) -> Result<SymmetricPair> {
    let rec = newton_power_sums(sigma);
    let explicit = explicit_power_sums(sigma);
    if let Some(i) = rec.iter().zip(&explicit).position(|(a, b)| a != b) {
        return Err(Error::Inconsistent(format!(
            "power sum s_{} differs: recurrence {} vs explicit {}",
            i + 1,
            rec[i],
            explicit[i]
        )));
    }
    Ok(SymmetricPair { power_sums: rec, elementary: sigma.to_vec() })
}

/// Checks `b(n) = (-1)^n s_n` for `n = 1..=count`, where `s` are the power sums
/// attached to `sigma_i = a(i)`. Returns the first failing index.
pub fn power_sum_sign_mismatch(a: &[BigInt], b: &[BigInt], count: usize) -> Option<usize> {
    let sigma: Vec<BigRational> = a[1..=count].iter().cloned().map(rat).collect();
    let s = newton_power_sums(&sigma);
    (1..=count).find(|&n| {
        let signed = if n % 2 == 0 { s[n - 1].clone() } else { -s[n - 1].clone() };
        signed != rat(b[n].clone())
    })
}
