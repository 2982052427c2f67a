//! The four Rogers-Ramanujan families `R_nu(a, b; q)`.
//!
//! The sum side is `sum_{lambda_1 <= a} q^{c|lambda|} P_{2 lambda}(1, q, q^2, ...; q^{2b+d})`.
//! The product side is an infinite product `prod_t (1 - q^t)^{c(t)}` whose
//! exponent `c(t)` depends only on `t mod kappa`; it is carried as a
//! [`PeriodicExponents`] vector and only turned into a series on demand.
//!
//! The product formulas come in two dual shapes, one indexed by `b` and one by
//! `a`. Both are implemented so that they can be checked against each other.
//! The odd-modulus family labelled `(c, d)` = `(1, 1)` and `(1, 2)` in some
//! references are bound here to `nu = (1, -1)` and `(2, -1)`: both use
//! `t = q^{2b-1}`, with `q^{|lambda|}` and `q^{2|lambda|}` respectively.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hall_littlewood::PrincipalEvaluator;
use crate::partitions::{enumerate_partitions, Partition};
use crate::series::{expand_exponent_product, IntSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Nu {
    /// `(1, -1)`, odd modulus `2a + 2b + 1`.
    OneMinusOne,
    /// `(2, -1)`, odd modulus `2a + 2b + 1`.
    TwoMinusOne,
    /// `(1, 0)`, even modulus `2a + 2b + 2`.
    OneZero,
    /// `(2, -2)`, even modulus `2a + 2b`; needs `b >= 2`.
    TwoMinusTwo,
}

impl Nu {
    pub const ALL: [Nu; 4] = [Nu::OneMinusOne, Nu::TwoMinusOne, Nu::OneZero, Nu::TwoMinusTwo];

    pub fn from_pair(c: i64, d: i64) -> Result<Nu> {
        match (c, d) {
            (1, -1) => Ok(Nu::OneMinusOne),
            (2, -1) => Ok(Nu::TwoMinusOne),
            (1, 0) => Ok(Nu::OneZero),
            (2, -2) => Ok(Nu::TwoMinusTwo),
            _ => Err(Error::InvalidSpec(format!(
                "nu = ({c},{d}) is not one of (1,-1), (2,-1), (1,0), (2,-2)"
            ))),
        }
    }

    /// `(c, d)`.
    pub fn pair(self) -> (i64, i64) {
        match self {
            Nu::OneMinusOne => (1, -1),
            Nu::TwoMinusOne => (2, -1),
            Nu::OneZero => (1, 0),
            Nu::TwoMinusTwo => (2, -2),
        }
    }

    pub fn c(self) -> u64 {
        self.pair().0 as u64
    }

    pub fn d(self) -> i64 {
        self.pair().1
    }
}

impl fmt::Display for Nu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, d) = self.pair();
        write!(f, "({c},{d})")
    }
}

impl std::str::FromStr for Nu {
    type Err = Error;

    /// Parses `"c,d"`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Nu> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::InvalidSpec(format!("cannot parse nu from {s:?}; expected \"c,d\""));
        let (c, d) = inner.split_once(',').ok_or_else(bad)?;
        let c = c.trim().parse::<i64>().map_err(|_| bad())?;
        let d = d.trim().parse::<i64>().map_err(|_| bad())?;
        Nu::from_pair(c, d)
    }
}

/// An admissible triple `(nu, a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RRSpec {
    nu: Nu,
    a: u32,
    b: u32,
}

impl RRSpec {
    pub fn new(nu: Nu, a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidSpec(format!("{nu} requires a >= 1 and b >= 1, got a = {a}, b = {b}")));
        }
        if nu == Nu::TwoMinusTwo && b < 2 {
            return Err(Error::InvalidSpec(format!("(2,-2) requires b >= 2, got b = {b}")));
        }
        Ok(RRSpec { nu, a, b })
    }

    pub fn nu(&self) -> Nu {
        self.nu
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Period of the product-side exponents.
    pub fn kappa(&self) -> usize {
        let s = 2 * (self.a + self.b) as usize;
        match self.nu {
            Nu::OneMinusOne | Nu::TwoMinusOne => s + 1,
            Nu::OneZero => s + 2,
            Nu::TwoMinusTwo => s,
        }
    }

    /// `2b + d`, the power of `q` substituted for the Hall-Littlewood parameter.
    pub fn t_exponent(&self) -> usize {
        (2 * i64::from(self.b) + self.nu.d()) as usize
    }

    /// Admissible specs with `a, b` in `1..=max`, in a fixed order.
    pub fn all_up_to(max: u32) -> Vec<RRSpec> {
        let mut out = Vec::new();
        for nu in Nu::ALL {
            for a in 1..=max {
                for b in 1..=max {
                    if let Ok(s) = RRSpec::new(nu, a, b) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RRSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}({},{})", self.nu, self.a, self.b)
    }
}

pub fn kappa(spec: &RRSpec) -> usize {
    spec.kappa()
}

/// `c(t) = values[t mod modulus]`, encoding `prod_t (1 - q^t)^{c(t)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicExponents {
    modulus: usize,
    values: Vec<i64>,
}

impl PeriodicExponents {
    pub fn zero(modulus: usize) -> Self {
        assert!(modulus >= 1);
        PeriodicExponents { modulus, values: vec![0; modulus] }
    }

    pub fn from_values(values: Vec<i64>) -> Self {
        assert!(!values.is_empty());
        PeriodicExponents { modulus: values.len(), values }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `c(t)` for any `t >= 0`.
    pub fn at(&self, t: usize) -> i64 {
        self.values[t % self.modulus]
    }

    /// Adds `k` to every residue satisfying `pred`.
    fn bump(&mut self, k: i64, pred: impl Fn(usize) -> bool) {
        for (r, v) in self.values.iter_mut().enumerate() {
            if pred(r) {
                *v += k;
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(PeriodicExponents { modulus: self.modulus, values })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Residues in `0..modulus` where the exponent vanishes.
    pub fn zero_residues(&self) -> Vec<usize> {
        (0..self.modulus).filter(|&r| self.values[r] == 0).collect()
    }

    pub fn expand(&self, truncation: usize) -> IntSeries {
        expand_exponent_product(|t| self.at(t), truncation)
    }
}

impl Add for &PeriodicExponents {
    type Output = PeriodicExponents;

    /// Panics on mismatched moduli; use [`PeriodicExponents::try_add`] otherwise.
    fn add(self, rhs: Self) -> PeriodicExponents {
        self.try_add(rhs).expect("equal moduli")
    }
}

impl Sub for &PeriodicExponents {
    type Output = PeriodicExponents;

    fn sub(self, rhs: Self) -> PeriodicExponents {
        self.try_sub(rhs).expect("equal moduli")
    }
}

impl Neg for &PeriodicExponents {
    type Output = PeriodicExponents;

    fn neg(self) -> PeriodicExponents {
        PeriodicExponents { modulus: self.modulus, values: self.values.iter().map(|v| -v).collect() }
    }
}

/// `theta(q^s; q^kappa) = (q^s; q^kappa)_inf (q^{kappa-s}; q^kappa)_inf`.
pub fn theta_exponents(s: i64, kappa: usize) -> Result<PeriodicExponents> {
    let k = kappa as i64;
    let r = s.rem_euclid(k);
    if r == 0 {
        return Err(Error::DegenerateTheta { residue: s, modulus: kappa });
    }
    let mut out = PeriodicExponents::zero(kappa);
    out.values[r as usize] += 1;
    out.values[(k - r) as usize] += 1;
    Ok(out)
}

/// Which of the two dual product displays to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductForm {
    /// Product indexed by `i <= a`.
    AIndexed,
    /// Product indexed by `i <= b`.
    BIndexed,
}

struct Builder {
    acc: PeriodicExponents,
}

impl Builder {
    fn new(kappa: usize) -> Self {
        Builder { acc: PeriodicExponents::zero(kappa) }
    }

    fn kappa(&self) -> usize {
        self.acc.modulus
    }

    /// `(q^step; q^step)_inf^e` with `step | kappa`.
    fn pochhammer(&mut self, step: usize, e: i64) {
        debug_assert_eq!(self.kappa() % step, 0);
        self.acc.bump(e, |r| r % step == 0);
    }

    /// `theta(q^s; q^kappa)` for each listed `s`.
    fn theta(&mut self, args: &[i64]) {
        for &s in args {
            let th = theta_exponents(s, self.kappa()).expect("framework theta arguments are nonzero");
            self.acc = &self.acc + &th;
        }
    }

    /// `theta(q^s; q^{kappa/2})` folded onto modulus `kappa`.
    fn theta_half(&mut self, s: usize) {
        let half = self.kappa() / 2;
        let (lo, hi) = (s % half, (half - s % half) % half);
        assert!(lo != 0, "half-modulus theta argument {s} is 0 mod {half}");
        self.acc.bump(1, |r| r % half == lo);
        self.acc.bump(1, |r| r % half == hi);
    }

    /// The standard prefactor `(q^kappa; q^kappa)^e / (q)^e`.
    fn prefactor(&mut self, e: i64) {
        let k = self.kappa();
        self.pochhammer(k, e);
        self.pochhammer(1, -e);
    }

    /// `prod_{1 <= i < j <= n} theta(q^{j-i}, q^{i+j+offset}; q^kappa)`.
    fn pair_thetas(&mut self, n: u32, offset: i64) {
        for i in 1..=i64::from(n) {
            for j in (i + 1)..=i64::from(n) {
                self.theta(&[j - i, i + j + offset]);
            }
        }
    }
}

/// Exponent vector of the product side, built from the selected display.
pub fn product_exponents(spec: &RRSpec, form: ProductForm) -> PeriodicExponents {
    let (a, b) = (spec.a, spec.b);
    let mut pb = Builder::new(spec.kappa());
    match (spec.nu, form) {
        (Nu::OneMinusOne, ProductForm::BIndexed) => {
            pb.prefactor(b.into());
            for i in 1..=b {
                pb.theta(&[i64::from(i + a)]);
            }
            pb.pair_thetas(b, -1);
        }
        (Nu::OneMinusOne | Nu::OneZero, ProductForm::AIndexed) => {
            pb.prefactor(a.into());
            for i in 1..=a {
                pb.theta(&[i64::from(i + 1)]);
            }
            pb.pair_thetas(a, 1);
        }
        (Nu::TwoMinusOne, ProductForm::BIndexed) => {
            pb.prefactor(b.into());
            for i in 1..=b {
                pb.theta(&[i64::from(i)]);
            }
            pb.pair_thetas(b, 0);
        }
        (Nu::TwoMinusOne | Nu::TwoMinusTwo, ProductForm::AIndexed) => {
            pb.prefactor(a.into());
            for i in 1..=a {
                pb.theta(&[i64::from(i)]);
            }
            pb.pair_thetas(a, 0);
        }
        (Nu::OneZero, ProductForm::BIndexed) => {
            // (q^2;q^2) (q^{k/2};q^{k/2}) (q^k;q^k)^{b-1} / (q)^{b+1}
            let k = pb.kappa();
            pb.pochhammer(2, 1);
            pb.pochhammer(k / 2, 1);
            pb.pochhammer(k, i64::from(b) - 1);
            pb.pochhammer(1, -(i64::from(b) + 1));
            for i in 1..=b {
                pb.theta_half(i as usize);
            }
            pb.pair_thetas(b, 0);
        }
        (Nu::TwoMinusTwo, ProductForm::BIndexed) => {
            // (q^k;q^k)^b / ((q^2;q^2) (q)^{b-1})
            let k = pb.kappa();
            pb.pochhammer(k, b.into());
            pb.pochhammer(2, -1);
            pb.pochhammer(1, -(i64::from(b) - 1));
            pb.pair_thetas(b, -1);
        }
    }
    pb.acc
}

/// `t -> c_nu(a, b; t)`, as a periodic table.
pub fn c_table(spec: &RRSpec) -> PeriodicExponents {
    product_exponents(spec, ProductForm::BIndexed)
}

/// Exponent from the closed forms available when `a = 1` or `b = 1` for the
/// odd-modulus families; `None` where no closed form applies.
pub fn closed_form_exponent(spec: &RRSpec, t: usize) -> Option<i64> {
    let k = spec.kappa() as i64;
    let r = t as i64 % k;
    let vanishes_at = |z: i64| r == 0 || r == z % k || r == (k - z) % k;
    let zero = match spec.nu {
        Nu::OneMinusOne if spec.a == 1 => vanishes_at(2),
        Nu::OneMinusOne if spec.b == 1 => vanishes_at(i64::from(spec.a) + 1),
        Nu::TwoMinusOne if spec.a == 1 || spec.b == 1 => vanishes_at(1),
        _ => return None,
    };
    Some(if zero { 0 } else { -1 })
}

pub fn product_side(spec: &RRSpec, truncation: usize) -> IntSeries {
    c_table(spec).expand(truncation)
}

/// Sum side through `q^T`: partitions with `c|lambda| > T` are pruned.
pub fn sum_side(spec: &RRSpec, truncation: usize) -> IntSeries {
    let c = spec.nu.c();
    let mut hl = PrincipalEvaluator::new(spec.t_exponent(), truncation);
    let mut total = IntSeries::zero(truncation);
    let max_size = truncation as u64 / c;
    for size in 0..=max_size {
        for lambda in enumerate_partitions(size as u32, spec.a) {
            let doubled = lambda.double();
            // q^{c|lambda|} P_{2 lambda} starts at degree c|lambda| + n(2 lambda).
            if c * size + doubled.n_statistic() > truncation as u64 {
                continue;
            }
            let term = hl.evaluate(&doubled);
            total.add_shifted_scaled(&term, &1.into(), (c * size) as usize);
        }
    }
    total
}

/// The partitions contributing to [`sum_side`] through `q^T`.
pub fn sum_side_support(spec: &RRSpec, truncation: usize) -> Vec<Partition> {
    let c = spec.nu.c();
    (0..=truncation as u64 / c)
        .flat_map(|size| enumerate_partitions(size as u32, spec.a))
        .filter(|l| c * l.size() + l.double().n_statistic() <= truncation as u64)
        .collect()
}
