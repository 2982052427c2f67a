//! m-regular partition congruences and the modular-forms bookkeeping around them.
//!
//! Everything here is finite verification: a congruence is reported as
//! "verified through N", never as proven.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{pochhammer_expand, IntSeries};

/// Smallest number of witnesses [`scan_progressions`] accepts.
pub const MIN_SAMPLES_FLOOR: usize = 10;

/// `Psi_m(q) = (q^m; q^m)_inf / (q; q)_inf = sum d_m(n) q^n` through `q^T`.
///
/// Both Pochhammer symbols are lacunary (pentagonal exponents), so this costs
/// `O(T^{3/2})` coefficient operations.
pub fn psi_series(m: u32, truncation: usize) -> IntSeries {
    assert!(m >= 2, "Psi_m needs m >= 2");
    let partitions = pochhammer_expand(1, 1, truncation).inverse().expect("unit constant term");
    &pochhammer_expand(m as usize, m as usize, truncation) * &partitions
}

/// `d_m(stride * n + offset) = 0 (mod modulus)` for all `n >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CongruenceClaim {
    pub m: u32,
    pub stride: u64,
    pub offset: u64,
    pub modulus: u64,
}

impl CongruenceClaim {
    pub fn new(m: u32, stride: u64, offset: u64, modulus: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::OutOfRange(format!("m must be at least 2, got {m}")));
        }
        if stride == 0 || offset >= stride {
            return Err(Error::OutOfRange(format!(
                "need stride >= 1 and 0 <= offset < stride, got stride {stride}, offset {offset}"
            )));
        }
        if !is_prime(modulus) {
            return Err(Error::OutOfRange(format!("modulus {modulus} is not prime")));
        }
        Ok(CongruenceClaim { m, stride, offset, modulus })
    }

    /// Arguments `stride * n + offset <= bound`.
    pub fn arguments(&self, bound: usize) -> impl Iterator<Item = usize> {
        (self.offset as usize..=bound).step_by(self.stride as usize)
    }
}

impl std::fmt::Display for CongruenceClaim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "d_{}({}n+{}) = 0 mod {}", self.m, self.stride, self.offset, self.modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: u64,
    pub argument: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claim: CongruenceClaim,
    pub samples_checked: usize,
    /// Largest argument `An + B` that was examined.
    pub verified_through: Option<usize>,
    pub counterexample: Option<Counterexample>,
}

impl ClaimReport {
    pub fn verified(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks a claim against precomputed `d_m` coefficients.
pub fn verify_claim_against(claim: &CongruenceClaim, d: &IntSeries) -> ClaimReport {
    let p = BigInt::from(claim.modulus);
    let mut samples_checked = 0;
    let mut verified_through = None;
    for arg in claim.arguments(d.truncation()) {
        samples_checked += 1;
        let v = &d.coeffs()[arg];
        if !(v % &p).is_zero() {
            return ClaimReport {
                claim: *claim,
                samples_checked,
                verified_through,
                counterexample: Some(Counterexample {
                    n: (arg as u64 - claim.offset) / claim.stride,
                    argument: arg,
                    value: v.to_string(),
                }),
            };
        }
        verified_through = Some(arg);
    }
    ClaimReport { claim: *claim, samples_checked, verified_through, counterexample: None }
}

pub fn verify_claim(claim: &CongruenceClaim, truncation: usize) -> ClaimReport {
    verify_claim_against(claim, &psi_series(claim.m, truncation))
}

/// An empirically observed progression; no proof is implied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Candidate {
    pub claim: CongruenceClaim,
    pub samples: usize,
}

/// All `(A, B)` with `A <= a_max`, `B < A`, at least `min_samples` arguments
/// `An + B <= T`, and every sampled `d_m(An + B)` divisible by `p`.
pub fn scan_progressions(
    m: u32,
    p: u64,
    a_max: u64,
    truncation: usize,
    min_samples: usize,
) -> Result<Vec<Candidate>> {
    if min_samples < MIN_SAMPLES_FLOOR {
        return Err(Error::OutOfRange(format!(
            "min_samples must be at least {MIN_SAMPLES_FLOOR}, got {min_samples}"
        )));
    }
    CongruenceClaim::new(m, 1, 0, p)?;
    let pb = BigInt::from(p);
    let vanishes: Vec<bool> = psi_series(m, truncation).coeffs().iter().map(|c| (c % &pb).is_zero()).collect();
    let pairs: Vec<(u64, u64)> = (1..=a_max).flat_map(|a| (0..a).map(move |b| (a, b))).collect();
    let mut found: Vec<Candidate> = pairs
        .into_par_iter()
        .filter_map(|(stride, offset)| {
            let claim = CongruenceClaim { m, stride, offset, modulus: p };
            let args: Vec<usize> = claim.arguments(truncation).collect();
            (args.len() >= min_samples && args.iter().all(|&j| vanishes[j]))
                .then_some(Candidate { claim, samples: args.len() })
        })
        .collect();
    found.sort();
    Ok(found)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `[SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)`.
pub fn gamma0_index(level: u64) -> u64 {
    prime_factors(level).iter().map(|&(p, e)| p.pow(e - 1) * (p + 1)).product()
}

/// `ceil(k * index(N) / 12)`.
pub fn sturm_bound(weight: u64, level: u64) -> u64 {
    (weight * gamma0_index(level)).div_ceil(12)
}

/// `prod_{delta | N} eta(delta z)^{r_delta}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaQuotientSpec {
    pub level: u64,
    pub exponents: BTreeMap<u64, i64>,
}

impl EtaQuotientSpec {
    pub fn new(level: u64, exponents: BTreeMap<u64, i64>) -> Result<Self> {
        if level == 0 {
            return Err(Error::OutOfRange("level must be positive".into()));
        }
        if let Some(&delta) = exponents.keys().find(|&&d| d == 0 || level % d != 0) {
            return Err(Error::NotADivisor { divisor: delta, level });
        }
        Ok(EtaQuotientSpec { level, exponents })
    }

    /// `eta^{m-1}(24 z)` on `Gamma_0(576)`.
    pub fn eta_power(m: u32) -> Self {
        EtaQuotientSpec { level: 576, exponents: BTreeMap::from([(24, i64::from(m) - 1)]) }
    }

    /// `sum r_delta`, twice the weight.
    pub fn twice_weight(&self) -> i64 {
        self.exponents.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaQuotientReport {
    pub twice_weight: i64,
    /// Present when the weight is an integer.
    pub weight: Option<i64>,
    /// `sum delta r_delta = 0 mod 24`.
    pub cond24_delta: bool,
    /// `sum (N/delta) r_delta = 0 mod 24`.
    pub cond24_co_delta: bool,
    /// `(-1)^k s` with `s = prod delta^{|r_delta|}`, which has the square class
    /// of `prod delta^{r_delta}` and so defines the same Kronecker character.
    /// Absent for half-integral weight.
    #[serde(serialize_with = "decimal_opt")]
    pub character_discriminant: Option<BigInt>,
}

fn decimal_opt<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

pub fn eta_quotient_conditions(spec: &EtaQuotientSpec) -> Result<EtaQuotientReport> {
    let spec = EtaQuotientSpec::new(spec.level, spec.exponents.clone())?;
    let mut by_delta = BigInt::zero();
    let mut by_co_delta = BigInt::zero();
    let mut s = BigInt::one();
    for (&delta, &r) in &spec.exponents {
        by_delta += BigInt::from(delta) * r;
        by_co_delta += BigInt::from(spec.level / delta) * r;
        s *= num_traits::pow(BigInt::from(delta), r.unsigned_abs() as usize);
    }
    let twice_weight = spec.twice_weight();
    let weight = (twice_weight % 2 == 0).then_some(twice_weight / 2);
    let character_discriminant = weight.map(|k| if k.is_odd() { -s.clone() } else { s.clone() });
    let divisible = |v: &BigInt| (v % 24u32).is_zero();
    Ok(EtaQuotientReport {
        twice_weight,
        weight,
        cond24_delta: divisible(&by_delta),
        cond24_co_delta: divisible(&by_co_delta),
        character_discriminant,
    })
}

/// Kronecker symbol `(a | n)`.
pub fn kronecker_symbol(a: &BigInt, n: &BigInt) -> i8 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    let mut result: i8 = 1;
    let mut n = n.clone();
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let twos = n.trailing_zeros().unwrap_or(0);
    if twos > 0 {
        if a.is_even() {
            return 0;
        }
        n >>= twos;
        let a8 = a.mod_floor(&BigInt::from(8)).to_u8().expect("residue mod 8");
        if twos % 2 == 1 && (a8 == 3 || a8 == 5) {
            result = -result;
        }
    }
    // Jacobi symbol with n odd and positive.
    let mut a = a.mod_floor(&n);
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        a >>= z;
        let n8 = (&n % 8u32).to_u8().expect("residue mod 8");
        if z % 2 == 1 && (n8 == 3 || n8 == 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigInt::from(3) && (&n % 4u32) == BigInt::from(3) {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// `b_m(0..=T)` with `eta^{m-1}(24z) = sum b_m(j) q^j`, so that
/// `b_m(24n + m - 1)` is the coefficient of `q^n` in `prod (1 - q^t)^{m-1}`.
pub fn eta_power_series(m: u32, truncation: usize) -> IntSeries {
    assert!(m >= 2, "eta power needs m >= 2");
    let lead = m as usize - 1;
    let mut out = vec![BigInt::zero(); truncation + 1];
    if truncation >= lead {
        let inner = (truncation - lead) / 24;
        let base = pochhammer_expand(1, 1, inner).pow(m - 1);
        for (n, c) in base.into_coeffs().into_iter().enumerate() {
            out[24 * n + lead] = c;
        }
    }
    IntSeries::new(out, truncation)
}

/// Nebentypus character for [`hecke_apply`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Character {
    Trivial,
    /// `d -> (D | d)`.
    Kronecker(BigInt),
}

impl Character {
    pub fn value(&self, d: u64) -> i64 {
        match self {
            Character::Trivial => 1,
            Character::Kronecker(disc) => i64::from(kronecker_symbol(disc, &BigInt::from(d))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeInput {
    pub coefficients: Vec<BigInt>,
    pub prime: u64,
    pub weight: u32,
    pub character: Character,
}

/// `c(n) = a(pn) + chi(p) p^{k-1} a(n/p)` for `0 <= n <= T/p`, with
/// `a(n/p) = 0` unless `p | n`.
pub fn hecke_apply(input: &HeckeInput) -> Result<Vec<BigInt>> {
    let p = input.prime;
    if !is_prime(p) {
        return Err(Error::OutOfRange(format!("Hecke operator needs a prime, got {p}")));
    }
    if input.weight < 1 {
        return Err(Error::OutOfRange("Hecke operator weight must be at least 1".into()));
    }
    let a = &input.coefficients;
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let t = a.len() - 1;
    let p = p as usize;
    let factor = BigInt::from(input.character.value(p as u64)) * num_traits::pow(BigInt::from(p), input.weight as usize - 1);
    Ok((0..=t / p)
        .map(|n| {
            let mut c = a[p * n].clone();
            if n % p == 0 {
                c += &factor * &a[n / p];
            }
            c
        })
        .collect())
}

/// `theta(z) = sum_{n in Z} q^{n^2}` through `q^T`.
pub fn jacobi_theta_series(truncation: usize) -> IntSeries {
    let mut c = vec![BigInt::zero(); truncation + 1];
    c[0] = BigInt::one();
    for n in (1..).take_while(|n| n * n <= truncation) {
        c[n * n] = BigInt::from(2);
    }
    IntSeries::new(c, truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::m_regular_counts;

    fn k(a: i64, n: i64) -> i8 {
        kronecker_symbol(&BigInt::from(a), &BigInt::from(n))
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_series(5, 4), IntSeries::from_i64s(&[1, 1, 2, 3, 5], 4));
        assert_eq!(psi_series(2, 5), IntSeries::from_i64s(&[1, 1, 1, 2, 2, 3], 5));
        for m in 2..8 {
            assert_eq!(psi_series(m, 60).coeffs(), m_regular_counts(m, 60).as_slice());
        }
    }

    #[test]
    fn claim_validation() {
        assert!(CongruenceClaim::new(5, 121, 9, 5).is_ok());
        assert!(CongruenceClaim::new(5, 4, 4, 5).is_err());
        assert!(CongruenceClaim::new(5, 4, 3, 6).is_err());
        assert!(CongruenceClaim::new(1, 4, 3, 5).is_err());
    }

    #[test]
    fn claim_counterexample() {
        let r = verify_claim(&CongruenceClaim::new(5, 5, 0, 5).unwrap(), 50);
        let ce = r.counterexample.unwrap();
        assert_eq!((ce.n, ce.argument, ce.value.as_str()), (0, 0, "1"));
        // d_5(0) = 1 fails first; starting from n = 1, d_5(5) = 6 also fails.
        let d = psi_series(5, 50);
        assert_eq!(d.coeff(5), BigInt::from(6));
    }

    #[test]
    fn small_claims_verify() {
        let r = verify_claim(&CongruenceClaim::new(9, 4, 3, 3).unwrap(), 400);
        assert!(r.verified());
        assert_eq!(r.samples_checked, 100);
        assert_eq!(r.verified_through, Some(399));
    }

    #[test]
    fn scanner_edges() {
        assert!(scan_progressions(5, 5, 1, 100, 10).unwrap().is_empty());
        assert!(scan_progressions(5, 5, 4, 100, 9).is_err());
        let found = scan_progressions(9, 3, 4, 400, 10).unwrap();
        assert!(found.iter().any(|c| (c.claim.stride, c.claim.offset) == (4, 3)));
    }

    #[test]
    fn index_and_sturm() {
        assert_eq!(gamma0_index(1), 1);
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(gamma0_index(p), p + 1);
        }
        assert_eq!(gamma0_index(576), 1152);
        assert_eq!(sturm_bound(2, 576), 192);
        assert_eq!(sturm_bound(1, 1), 1);
    }

    #[test]
    fn eta_conditions() {
        let r = eta_quotient_conditions(&EtaQuotientSpec::eta_power(5)).unwrap();
        assert!(r.cond24_delta && r.cond24_co_delta);
        assert_eq!(r.weight, Some(2));
        assert_eq!(r.character_discriminant, Some(BigInt::from(24).pow(4)));
        let z = eta_quotient_conditions(&EtaQuotientSpec::new(12, BTreeMap::new()).unwrap()).unwrap();
        assert_eq!((z.weight, z.cond24_delta, z.cond24_co_delta), (Some(0), true, true));
        assert_eq!(z.character_discriminant, Some(BigInt::one()));
        assert!(EtaQuotientSpec::new(10, BTreeMap::from([(3, 1)])).is_err());
        let half = eta_quotient_conditions(&EtaQuotientSpec::eta_power(4)).unwrap();
        assert_eq!(half.weight, None);
    }

    #[test]
    fn kronecker_examples() {
        for a in -5..6 {
            assert_eq!(k(a, 1), 1);
        }
        assert_eq!(k(3, 5), -1);
        assert_eq!(k(4, 7), 1);
        assert_eq!(k(2, 7), 1);
        assert_eq!(k(2, 3), -1);
        assert_eq!(k(-1, 3), -1);
        assert_eq!(k(5, 8), -1);
        assert_eq!(k(6, 9), 0);
        assert_eq!(k(-5, -1), -1);
        assert_eq!(k(1, 0), 1);
        assert_eq!(k(2, 0), 0);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        for p in [3u64, 5, 7, 11, 13, 29, 31] {
            for a in 0..(3 * p) {
                let pow = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
                let euler = if pow.is_zero() { 0 } else if pow.is_one() { 1 } else { -1 };
                assert_eq!(k(a as i64, p as i64), euler, "({a}|{p})");
            }
        }
    }

    #[test]
    fn eta_power_support() {
        let b = eta_power_series(5, 60);
        assert_eq!(b.coeff(4), BigInt::from(1));
        assert_eq!(b.coeff(28), BigInt::from(-4));
        assert!((0..4).all(|j| b.coeff(j).is_zero()));
        assert!((0..=60).filter(|j| j % 24 != 4).all(|j| b.coeff(j).is_zero()));
    }

    #[test]
    fn hecke_examples() {
        let zero = HeckeInput { coefficients: vec![BigInt::zero(); 9], prime: 3, weight: 2, character: Character::Trivial };
        assert!(hecke_apply(&zero).unwrap().iter().all(Zero::is_zero));
        let mut a = vec![BigInt::zero(); 5];
        a[1] = BigInt::one();
        let q = HeckeInput { coefficients: a, prime: 2, weight: 1, character: Character::Trivial };
        let out = hecke_apply(&q).unwrap();
        assert_eq!(out, vec![BigInt::zero(), BigInt::zero(), BigInt::one()]);
        assert!(hecke_apply(&HeckeInput { prime: 4, ..q }).is_err());
    }

    #[test]
    fn theta_series() {
        let th = jacobi_theta_series(16);
        assert_eq!(th.coeff(0), BigInt::one());
        assert_eq!(th.coeff(4), BigInt::from(2));
        assert_eq!(th.coeff(2), BigInt::zero());
        assert_eq!(th.reduce_mod(&BigInt::from(2)), IntSeries::one(16));
    }
}
