//! Integer partitions and the counting functions used as ground truth.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A partition stored as its nonincreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zero parts are dropped; anything else out of order is rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(part^count)`.
    pub fn rectangle(part: u32, count: usize) -> Self {
        if part == 0 {
            return Self::empty();
        }
        Partition(vec![part; count])
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero parts, `l(lambda)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `|lambda|`.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `lambda_i` with the 1-based convention, zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return u32::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// `m_i(lambda)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// `[m_1, m_2, ..., m_{largest}]`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.largest() as usize];
        for &p in &self.0 {
            m[p as usize - 1] += 1;
        }
        m
    }

    /// Conjugate partition entry `lambda'_j`: number of parts `>= j`.
    pub fn column(&self, j: u32) -> usize {
        self.0.iter().take_while(|&&p| p >= j).count()
    }

    /// `n(lambda) = sum_i (i - 1) lambda_i`, the least `q`-degree of the
    /// principal specialisation of any symmetric polynomial dominated by
    /// `lambda`.
    pub fn n_statistic(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * u64::from(p)).sum()
    }

    /// `2 lambda`.
    pub fn double(&self) -> Self {
        Partition(self.0.iter().map(|&p| 2 * p).collect())
    }

    /// Inverse of [`Partition::double`] when every part is even.
    pub fn halve(&self) -> Option<Self> {
        if self.0.iter().all(|p| p % 2 == 0) {
            Some(Partition(self.0.iter().map(|&p| p / 2).collect()))
        } else {
            None
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Partitions of `weight` with every part at most `max_part`, in
/// lexicographically decreasing order.
pub fn enumerate_partitions(weight: u32, max_part: u32) -> Vec<Partition> {
    fn go(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weight, max_part, &mut Vec::new(), &mut out);
    out
}

/// `p(0), ..., p(n_max)` by Euler's pentagonal recurrence.
pub fn partition_counts(n_max: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n_max + 1];
    p[0] = BigInt::one();
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for j in 1usize.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[n] = acc;
    }
    p
}

pub fn partition_count(n: usize) -> BigInt {
    partition_counts(n).pop().expect("nonempty table")
}

/// Number of partitions of each `n <= n_max` with no part divisible by `m`,
/// by filling the restricted-parts table one admissible part at a time.
pub fn m_regular_counts(m: u32, n_max: usize) -> Vec<BigInt> {
    assert!(m >= 2, "m-regular counts need m >= 2");
    let mut d = vec![BigInt::zero(); n_max + 1];
    d[0] = BigInt::one();
    for part in (1..=n_max).filter(|k| k % m as usize != 0) {
        for n in part..=n_max {
            let (lo, hi) = d.split_at_mut(n);
            hi[0] += &lo[n - part];
        }
    }
    d
}

pub fn m_regular_count(m: u32, n: usize) -> BigInt {
    m_regular_counts(m, n).pop().expect("nonempty table")
}
