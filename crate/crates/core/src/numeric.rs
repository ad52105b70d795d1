//! Exact arithmetic shared by the other modules: big integers and rationals,
//! binomials, and memoized tables of Bernoulli, Eulerian and Stirling
//! (second kind) numbers.

use std::sync::{OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{FrobError, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Converts a rational to an integer, failing unless the denominator is 1.
pub fn to_integer(value: &BigRational, context: &str) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(FrobError::InternalInconsistency(format!(
            "{context} evaluated to the non-integer {value}"
        )))
    }
}

/// Divides exactly, failing if `divisor` does not divide `value`.
pub fn exact_div(value: &BigInt, divisor: &BigInt, context: &str) -> Result<BigInt> {
    let (q, r) = value.div_rem(divisor);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(FrobError::InternalInconsistency(format!(
            "{context}: {value} is not divisible by {divisor}"
        )))
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// x (x-1) ... (x-m+1)
pub fn falling_factorial(x: &BigInt, m: u64) -> BigInt {
    (0..m).fold(BigInt::one(), |acc, i| acc * (x - i))
}

pub fn pow(base: &BigInt, exp: u64) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn rational_pow(base: &BigRational, exp: u64) -> BigRational {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn int(value: i64) -> BigInt {
    BigInt::from(value)
}

pub fn ratio(numer: BigInt, denom: BigInt) -> BigRational {
    BigRational::new(numer, denom)
}

/// Growable tables of special numbers. Each table is extended on demand
/// under a write lock; lookups that hit the current prefix only take the
/// read lock.
#[derive(Debug, Default)]
pub struct SpecialNumberCache {
    bernoulli: RwLock<Vec<BigRational>>,
    eulerian: RwLock<Vec<Vec<BigInt>>>,
    stirling2: RwLock<Vec<Vec<BigInt>>>,
}

impl SpecialNumberCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// B_k with the convention x/(e^x - 1), so B_1 = -1/2.
    pub fn bernoulli(&self, k: u64) -> BigRational {
        let k = k as usize;
        if let Some(b) = self.bernoulli.read().unwrap().get(k) {
            return b.clone();
        }
        let mut table = self.bernoulli.write().unwrap();
        while table.len() <= k {
            let n = table.len() as u64;
            if n == 0 {
                table.push(BigRational::one());
                continue;
            }
            // sum_{j=0}^{n} C(n+1, j) B_j = 0
            let mut acc = BigRational::zero();
            for (j, b) in table.iter().enumerate() {
                if !b.is_zero() {
                    acc += BigRational::from_integer(binomial(n + 1, j as u64)) * b;
                }
            }
            table.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        table[k].clone()
    }

    /// Eulerian number <n, m>: permutations of n elements with m ascents.
    /// Zero outside 0 <= m < max(n, 1).
    pub fn eulerian(&self, n: u64, m: i64) -> BigInt {
        if m < 0 || m as u64 >= n.max(1) {
            return BigInt::zero();
        }
        let (n, m) = (n as usize, m as usize);
        if let Some(row) = self.eulerian.read().unwrap().get(n) {
            return row[m].clone();
        }
        let mut table = self.eulerian.write().unwrap();
        while table.len() <= n {
            let r = table.len();
            let row = if r == 0 {
                vec![BigInt::one()]
            } else {
                let prev = &table[r - 1];
                let at = |j: usize| prev.get(j).cloned().unwrap_or_default();
                (0..r)
                    .map(|j| {
                        let left = if j == 0 { BigInt::zero() } else { at(j - 1) * (r - j) };
                        at(j) * (j + 1) + left
                    })
                    .collect()
            };
            table.push(row);
        }
        table[n][m].clone()
    }

    /// Stirling number of the second kind {n, m}.
    pub fn stirling2(&self, n: u64, m: u64) -> BigInt {
        if m > n {
            return BigInt::zero();
        }
        let (n, m) = (n as usize, m as usize);
        if let Some(row) = self.stirling2.read().unwrap().get(n) {
            return row[m].clone();
        }
        let mut table = self.stirling2.write().unwrap();
        while table.len() <= n {
            let r = table.len();
            let row = if r == 0 {
                vec![BigInt::one()]
            } else {
                let prev = &table[r - 1];
                let at = |j: usize| prev.get(j).cloned().unwrap_or_default();
                (0..=r)
                    .map(|j| {
                        let left = if j == 0 { BigInt::zero() } else { at(j - 1) };
                        at(j) * j + left
                    })
                    .collect()
            };
            table.push(row);
        }
        table[n][m].clone()
    }
}

pub fn special_numbers() -> &'static SpecialNumberCache {
    static CACHE: OnceLock<SpecialNumberCache> = OnceLock::new();
    CACHE.get_or_init(SpecialNumberCache::new)
}

pub fn bernoulli(k: u64) -> BigRational {
    special_numbers().bernoulli(k)
}

pub fn eulerian(n: u64, m: i64) -> BigInt {
    special_numbers().eulerian(n, m)
}

pub fn stirling2(n: u64, m: u64) -> BigInt {
    special_numbers().stirling2(n, m)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
