//! Closed forms for the triple (a, a+d, a+2d) with gcd(a, d) = 1, a >= 3,
//! valid for 0 <= p <= floor(a/2), plus the classical baselines for two
//! generators and for arithmetic and almost-arithmetic sequences.
//!
//! Writing r(x2, x3) = x2 (a+d) + x3 (a+2d), the p-Apéry set is a
//! staircase of 2p cells followed by a two-column block:
//!
//! - odd a: staircase (l, (a-1)/2 + p - l) for l = 0..2p, block columns
//!   x2 = 2p (x3 = 0..=(a-1)/2 - p) and x2 = 2p+1 (x3 = 0..(a-1)/2 - p);
//! - even a: staircase pairs (2l, a/2 + p - 2l - 1), (2l+1, a/2 + p - 2l - 1)
//!   for l = 0..p, block columns x2 = 2p and 2p+1 (x3 = 0..a/2 - p).
//!
//! Power and weighted sums are obtained by feeding this enumeration to the
//! Apéry-set formulas in [`crate::apery`].

use crate::apery::{check_weight, AperySet};
use crate::error::{FrobError, Result};
use crate::instance::Instance;
use crate::numeric::{exact_div, gcd, int, to_integer, BigInt, BigRational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArithTriple {
    a: u64,
    d: u64,
}

/// One Apéry element in (x2, x3) coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyCell {
    pub x2: u64,
    pub x3: u64,
    pub value: BigInt,
}

impl ArithTriple {
    pub fn new(a: u64, d: u64) -> Result<Self> {
        if a < 3 {
            return Err(FrobError::DomainError(format!("need a >= 3, got a = {a}")));
        }
        if d == 0 {
            return Err(FrobError::DomainError("need d > 0".into()));
        }
        if gcd(a, d) != 1 {
            return Err(FrobError::NotCoprime(a, d));
        }
        Ok(Self { a, d })
    }

    pub fn from_instance(instance: &Instance) -> Option<Self> {
        let (a, d) = instance.as_arithmetic_triple()?;
        Self::new(a, d).ok()
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn generators(&self) -> [u64; 3] {
        [self.a, self.a + self.d, self.a + 2 * self.d]
    }

    pub fn instance(&self) -> Instance {
        Instance::new(self.generators().to_vec()).expect("gcd(a, d) = 1")
    }

    /// Largest p covered by the closed forms, floor(a/2).
    pub fn max_p(&self) -> u64 {
        self.a / 2
    }

    fn check_range(&self, p: u64) -> Result<()> {
        if p > self.max_p() {
            Err(FrobError::OutOfValidatedRange { p, max: self.max_p() })
        } else {
            Ok(())
        }
    }

    fn is_odd(&self) -> bool {
        self.a % 2 == 1
    }

    fn cell(&self, x2: u64, x3: u64) -> AperyCell {
        let [_, b, c] = self.generators();
        AperyCell {
            x2,
            x3,
            value: BigInt::from(x2) * b + BigInt::from(x3) * c,
        }
    }

    /// The a cells of the p-Apéry set: staircase first, then the block.
    pub fn apery_cells(&self, p: u64) -> Result<Vec<AperyCell>> {
        self.check_range(p)?;
        let a = self.a;
        let mut cells = Vec::with_capacity(a as usize);
        if self.is_odd() {
            let h = (a - 1) / 2;
            for l in 0..2 * p {
                cells.push(self.cell(l, h + p - l));
            }
            for x3 in 0..=h - p {
                cells.push(self.cell(2 * p, x3));
            }
            for x3 in 0..h - p {
                cells.push(self.cell(2 * p + 1, x3));
            }
        } else {
            let h = a / 2;
            for l in 0..p {
                let x3 = h + p - 2 * l - 1;
                cells.push(self.cell(2 * l, x3));
                cells.push(self.cell(2 * l + 1, x3));
            }
            for x2 in [2 * p, 2 * p + 1] {
                for x3 in 0..h - p {
                    cells.push(self.cell(x2, x3));
                }
            }
        }
        Ok(cells)
    }

    /// p-Apéry set from the staircase/block enumeration, with coordinates.
    pub fn apery_closed(&self, p: u64) -> Result<AperySet> {
        let cells = self.apery_cells(p)?;
        let coords = cells.iter().map(|c| (c.x2, c.x3)).collect();
        let values = cells.into_iter().map(|c| c.value).collect();
        AperySet::from_values(self.instance(), p, values, Some(coords))
    }

    /// Sum of the p-Apéry elements:
    /// (a/4) ((a+d)^2 - (d+1)^2 [+1 if a even] - 4p^2 + 4(2a+2d-1) p).
    pub fn apery_element_sum(&self, p: u64) -> Result<BigInt> {
        self.check_range(p)?;
        let (a, d, p) = (int(self.a as i64), int(self.d as i64), int(p as i64));
        let parity = if self.is_odd() { int(0) } else { int(1) };
        let inner = (&a + &d) * (&a + &d) - (&d + 1) * (&d + 1) + parity - int(4) * &p * &p
            + int(4) * (int(2) * &a + int(2) * &d - 1) * &p;
        exact_div(&(a * inner), &int(4), "Apéry element sum")
    }

    /// g_p = (a+2d) p + floor((a-2)/2) a + (a-1) d.
    pub fn gp_closed(&self, p: u64) -> Result<BigInt> {
        self.check_range(p)?;
        let (a, d) = (self.a, self.d);
        Ok(BigInt::from(a + 2 * d) * p + BigInt::from((a - 2) / 2) * a + BigInt::from(a - 1) * d)
    }

    /// n_p = (2a+2d-1-p) p + ((a-1)(a+2d-1) [+1 if a even]) / 4.
    pub fn np_closed(&self, p: u64) -> Result<BigInt> {
        self.check_range(p)?;
        let (a, d, pp) = (int(self.a as i64), int(self.d as i64), int(p as i64));
        let parity = if self.is_odd() { 0 } else { 1 };
        let constant = exact_div(
            &((&a - 1) * (&a + int(2) * &d - 1) + parity),
            &int(4),
            "constant term of n_p",
        )?;
        Ok((int(2) * &a + int(2) * &d - 1 - &pp) * pp + constant)
    }

    /// s_p as a cubic polynomial in p, one branch per parity of a:
    ///
    /// C/24 + L/6 p + (3a^2 + a(6d-1) + 4d^2 - d)/2 p^2 - 4(a+d)/3 p^3
    ///
    /// where C = (a-1)(a+2d-1)(a^2+2ad-a-d-2), plus 3(a^2+2ad-a-d) for even
    /// a, and L = 3a^3 + 9a^2(d-1) + 2a(3d^2-9d+1) - 6d^2 + 2d for odd a,
    /// 3a^3 + 9a^2(d-1) + a(6d^2-18d+5) - 6d^2 + 5d for even a.
    pub fn sp_closed(&self, p: u64) -> Result<BigInt> {
        self.check_range(p)?;
        let (a, d, pp) = (int(self.a as i64), int(self.d as i64), int(p as i64));
        let q = |n: BigInt, den: i64| BigRational::new(n, int(den));
        let base = (&a - 1) * (&a + int(2) * &d - 1)
            * (&a * &a + int(2) * &a * &d - &a - &d - 2);
        let (constant, linear) = if self.is_odd() {
            (
                base,
                int(3) * &a * &a * &a + int(9) * &a * &a * (&d - 1)
                    + int(2) * &a * (int(3) * &d * &d - int(9) * &d + 1)
                    - int(6) * &d * &d
                    + int(2) * &d,
            )
        } else {
            (
                base + int(3) * (&a * &a + int(2) * &a * &d - &a - &d),
                int(3) * &a * &a * &a + int(9) * &a * &a * (&d - 1)
                    + &a * (int(6) * &d * &d - int(18) * &d + 5)
                    - int(6) * &d * &d
                    + int(5) * &d,
            )
        };
        let quadratic = int(3) * &a * &a + &a * (int(6) * &d - 1) + int(4) * &d * &d - &d;
        let cubic = int(4) * (&a + &d);
        let value = q(constant, 24) + q(linear * &pp, 6) + q(quadratic * &pp * &pp, 2)
            - q(cubic * &pp * &pp * &pp, 3);
        let value = to_integer(&value, "closed-form s_p")?;
        debug_assert_eq!(
            Some(&value),
            self.apery_closed(p).and_then(|s| s.sp()).ok().as_ref(),
            "closed-form s_p disagrees with the Apéry enumeration for a = {}, d = {}, p = {p}",
            self.a,
            self.d
        );
        Ok(value)
    }

    /// s_p^(mu) from the enumerated Apéry set. mu = 0 gives n_p.
    pub fn power_sum_closed(&self, p: u64, mu: u64) -> Result<BigInt> {
        self.apery_closed(p)?.power_sum(mu)
    }

    /// s_{lambda,p}^(mu) from the enumerated Apéry set.
    pub fn weighted_sum_closed(&self, p: u64, lambda: i64, mu: u64) -> Result<BigInt> {
        check_weight(lambda, self.a)?;
        self.apery_closed(p)?.weighted_power_sum(lambda, mu)
    }
}

/// (q, r) with a - 1 = q (k - 1) + r and 0 <= r < k - 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelmerDivision {
    pub q: u64,
    pub r: u64,
}

impl SelmerDivision {
    pub fn new(a: u64, k: u64) -> Result<Self> {
        if a < 1 || k < 2 {
            return Err(FrobError::DomainError(format!("need a >= 1 and k >= 2, got a = {a}, k = {k}")));
        }
        Ok(Self {
            q: (a - 1) / (k - 1),
            r: (a - 1) % (k - 1),
        })
    }
}

/// Classical (g, n, s) for two coprime generators a < b.
pub fn sylvester_two_var(a: u64, b: u64) -> Result<(BigInt, BigInt, BigInt)> {
    if a < 2 || a >= b {
        return Err(FrobError::DomainError(format!("need 2 <= a < b, got ({a}, {b})")));
    }
    if gcd(a, b) != 1 {
        return Err(FrobError::NotCoprime(a, b));
    }
    let (a, b) = (int(a as i64), int(b as i64));
    let prod = (&a - 1) * (&b - 1);
    let g = &prod - 1;
    let n = exact_div(&prod, &int(2), "two-generator genus")?;
    let s = exact_div(
        &(&prod * (int(2) * &a * &b - &a - &b - 1)),
        &int(12),
        "two-generator Sylvester sum",
    )?;
    Ok((g, n, s))
}

fn check_sequence(a: u64, d: u64, k: u64) -> Result<()> {
    if gcd(a, d) != 1 || d == 0 {
        return Err(FrobError::DomainError(format!("need gcd(a, d) = 1, got a = {a}, d = {d}")));
    }
    if k < 2 || k > a {
        return Err(FrobError::DomainError(format!("need 2 <= k <= a, got k = {k}, a = {a}")));
    }
    Ok(())
}

/// Frobenius number of a, a+d, ..., a+(k-1)d:
/// floor((a-2)/(k-1)) a + (a-1) d.
pub fn roberts_g(a: u64, d: u64, k: u64) -> Result<BigInt> {
    check_sequence(a, d, k)?;
    Ok(BigInt::from((a - 2) / (k - 1)) * a + BigInt::from(a - 1) * d)
}

/// Frobenius number of a, ha+d, ..., ha+(k-1)d:
/// (h floor((a-2)/(k-1)) + h - 1) a + (a-1) d.
pub fn selmer_g(a: u64, d: u64, h: u64, k: u64) -> Result<BigInt> {
    check_sequence(a, d, k)?;
    if h == 0 {
        return Err(FrobError::DomainError("need h >= 1".into()));
    }
    Ok(BigInt::from(h * ((a - 2) / (k - 1)) + h - 1) * a + BigInt::from(a - 1) * d)
}

/// Genus of a, a+d, ..., a+(k-1)d: ((a-1)(q+d) + r(q+1)) / 2.
pub fn selmer_n(a: u64, d: u64, k: u64) -> Result<BigInt> {
    check_sequence(a, d, k)?;
    let SelmerDivision { q, r } = SelmerDivision::new(a, k)?;
    exact_div(
        &(BigInt::from(a - 1) * (q + d) + BigInt::from(r) * (q + 1)),
        &int(2),
        "Selmer genus",
    )
}

pub fn gp_closed(triple: &ArithTriple, p: u64) -> Result<BigInt> {
    triple.gp_closed(p)
}

pub fn np_closed(triple: &ArithTriple, p: u64) -> Result<BigInt> {
    triple.np_closed(p)
}

pub fn sp_closed(triple: &ArithTriple, p: u64) -> Result<BigInt> {
    triple.sp_closed(p)
}

pub fn apery_closed(triple: &ArithTriple, p: u64) -> Result<AperySet> {
    triple.apery_closed(p)
}

pub fn power_sum_closed(triple: &ArithTriple, p: u64, mu: u64) -> Result<BigInt> {
    triple.power_sum_closed(p, mu)
}

pub fn weighted_sum_closed(triple: &ArithTriple, p: u64, lambda: i64, mu: u64) -> Result<BigInt> {
    triple.weighted_sum_closed(p, lambda, mu)
}
