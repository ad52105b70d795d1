//! p-Apéry sets and the sum formulas evaluated on them.
//!
//! For p >= 0 and a_1 = min(A), the p-Apéry set holds, for each residue i
//! modulo a_1, the least m_i with d(m_i; A) >= p + 1 (with m_0 = 0 when
//! p = 0). Because d is nondecreasing along a residue class, the integers
//! with at most p representations in class i are exactly i, i + a_1, ...,
//! m_i - a_1. Every quantity below follows from that.

use num_traits::{One, Zero};

use crate::error::{FrobError, Result};
use crate::instance::Instance;
use crate::numeric::{
    bernoulli, binomial, eulerian, int, pow, rational_pow, to_integer, BigInt, BigRational,
};
use crate::oracle::DenumerantTable;

/// Coordinates `(x2, x3)` of an element built from the second and third generators.
type Cell = (u64, u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperySet {
    instance: Instance,
    p: u64,
    /// `elements[i]` is congruent to i modulo a_1.
    elements: Vec<BigInt>,
    /// (x_2, x_3) with m_i = x_2 (a+d) + x_3 (a+2d); closed-form sets only.
    coords: Option<Vec<(u64, u64)>>,
}

fn rat(value: BigInt) -> BigRational {
    BigRational::from_integer(value)
}

fn residue(value: &BigInt, modulus: u64) -> usize {
    let r = value % BigInt::from(modulus);
    usize::try_from(r).expect("Apéry elements are nonnegative")
}

impl AperySet {
    /// Scans each residue class of the denumerant table for its first
    /// element with at least p + 1 representations.
    pub fn scan(table: &mut DenumerantTable, p: u64) -> Self {
        let a1 = table.instance().smallest();
        let threshold = int(p as i64 + 1);
        let elements = (0..a1)
            .map(|i| {
                let mut n = i;
                while *table.count(n) < threshold {
                    n += a1;
                }
                BigInt::from(n)
            })
            .collect();
        Self {
            instance: table.instance().clone(),
            p,
            elements,
            coords: None,
        }
    }

    /// Builds a set from unordered values, placing each by its residue.
    /// Fails if the residues modulo a_1 are not a complete system.
    pub fn from_values(
        instance: Instance,
        p: u64,
        values: Vec<BigInt>,
        coords: Option<Vec<(u64, u64)>>,
    ) -> Result<Self> {
        let a1 = instance.smallest();
        if values.len() as u64 != a1 || coords.as_ref().is_some_and(|c| c.len() != values.len()) {
            return Err(FrobError::InternalInconsistency(format!(
                "Apéry set for {instance} needs {a1} elements, got {}",
                values.len()
            )));
        }
        let mut slots: Vec<Option<(BigInt, Option<Cell>)>> = vec![None; a1 as usize];
        for (k, v) in values.into_iter().enumerate() {
            let r = residue(&v, a1);
            if slots[r].is_some() {
                return Err(FrobError::InternalInconsistency(format!(
                    "residue {r} repeated in Apéry set for {instance}, p = {p}"
                )));
            }
            slots[r] = Some((v, coords.as_ref().map(|c| c[k])));
        }
        let (elements, cells): (Vec<BigInt>, Vec<Option<(u64, u64)>>) =
            slots.into_iter().map(|s| s.unwrap()).unzip();
        let coords = cells.into_iter().collect::<Option<Vec<_>>>();
        Ok(Self {
            instance,
            p,
            elements,
            coords,
        })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elements(&self) -> &[BigInt] {
        &self.elements
    }

    pub fn coords(&self) -> Option<&[(u64, u64)]> {
        self.coords.as_deref()
    }

    pub fn max_element(&self) -> &BigInt {
        self.elements.iter().max().unwrap()
    }

    fn a1(&self) -> BigInt {
        BigInt::from(self.instance.smallest())
    }

    /// Sum of m_i^e.
    pub fn power_total(&self, e: u64) -> BigInt {
        self.elements.iter().map(|m| pow(m, e)).sum()
    }

    /// Checks residue coverage, membership and minimality against a
    /// denumerant table for the same instance.
    pub fn check_invariants(&self, table: &mut DenumerantTable) -> Result<()> {
        let a1 = self.instance.smallest();
        let fail = |msg: String| {
            Err(FrobError::InternalInconsistency(format!(
                "Apéry set for {}, p = {}: {msg}",
                self.instance, self.p
            )))
        };
        if table.instance() != &self.instance {
            return fail("table belongs to another instance".into());
        }
        if self.elements.len() as u64 != a1 {
            return fail(format!("{} elements", self.elements.len()));
        }
        let bound = int(self.p as i64);
        for (i, m) in self.elements.iter().enumerate() {
            if residue(m, a1) != i {
                return fail(format!("element {m} is not congruent to {i}"));
            }
            let n = u64::try_from(m).unwrap();
            if *table.count(n) <= bound {
                return fail(format!("{m} has too few representations"));
            }
            if n >= a1 {
                if *table.count(n - a1) > bound {
                    return fail(format!("{m} is not minimal in its class"));
                }
            } else if n == 0 && self.p != 0 {
                return fail("0 appears with p > 0".into());
            }
        }
        Ok(())
    }

    /// g_p = max m_i - a_1.
    pub fn gp(&self) -> BigInt {
        self.max_element() - self.a1()
    }

    /// n_p = (1/a_1) sum m_i - (a_1 - 1)/2.
    pub fn np(&self) -> Result<BigInt> {
        let a1 = self.a1();
        let value = rat(self.power_total(1)) / rat(a1.clone())
            - BigRational::new(a1 - 1, int(2));
        to_integer(&value, "n_p from the Apéry set")
    }

    /// s_p = (1/(2 a_1)) sum m_i^2 - (1/2) sum m_i + (a_1^2 - 1)/12.
    pub fn sp(&self) -> Result<BigInt> {
        let a1 = self.a1();
        let value = BigRational::new(self.power_total(2), int(2) * &a1)
            - BigRational::new(self.power_total(1), int(2))
            + BigRational::new(&a1 * &a1 - 1, int(12));
        to_integer(&value, "s_p from the Apéry set")
    }

    /// s_p^(mu) through the Bernoulli-number formula. mu = 0 gives n_p.
    pub fn power_sum(&self, mu: u64) -> Result<BigInt> {
        if mu == 0 {
            return self.np();
        }
        let a1 = rat(self.a1());
        let mut acc = BigRational::zero();
        for kappa in 0..=mu {
            let b = bernoulli(kappa);
            if b.is_zero() {
                continue;
            }
            // a_1^(kappa - 1), with kappa = 0 giving 1/a_1
            let scale = if kappa == 0 {
                a1.recip()
            } else {
                rational_pow(&a1, kappa - 1)
            };
            acc += rat(binomial(mu + 1, kappa)) * b * scale * rat(self.power_total(mu + 1 - kappa));
        }
        let bmu = bernoulli(mu + 1);
        let value = acc / rat(int(mu as i64 + 1))
            + bmu / rat(int(mu as i64 + 1)) * (rational_pow(&a1, mu + 1) - BigRational::one());
        to_integer(&value, "power sum from the Apéry set")
    }

    /// s_{lambda,p}^(mu) through the Eulerian-number formula.
    ///
    /// Requires lambda != 0, 1 and lambda^(a_1) != 1.
    pub fn weighted_power_sum(&self, lambda: i64, mu: u64) -> Result<BigInt> {
        check_weight(lambda, self.instance.smallest())?;
        if mu == 0 {
            return Err(FrobError::DomainError("weighted sums need mu >= 1".into()));
        }
        let a1 = self.instance.smallest();
        let lam = int(lambda);
        let lam_a1 = pow(&lam, a1);
        let denom = rat(&lam_a1 - 1);

        // T_e = sum_i m_i^e lambda^(m_i); 0^0 = 1
        let weights: Vec<BigInt> = self
            .elements
            .iter()
            .map(|m| pow(&lam, u64::try_from(m).unwrap()))
            .collect();
        let weighted_total = |e: u64| -> BigInt {
            self.elements
                .iter()
                .zip(&weights)
                .map(|(m, w)| pow(m, e) * w)
                .sum()
        };

        let neg_a1 = int(-(a1 as i64));
        let mut acc = BigRational::zero();
        for n in 0..=mu {
            let inner: BigInt = (0..=n)
                .map(|j| eulerian(n, (n - j) as i64) * pow(&lam_a1, j))
                .sum();
            if inner.is_zero() {
                continue;
            }
            let coeff = rat(pow(&neg_a1, n) * binomial(mu, n)) / rational_pow(&denom, n + 1);
            acc += coeff * rat(inner * weighted_total(mu - n));
        }

        let tail: BigInt = (0..=mu)
            .map(|j| eulerian(mu, (mu - j) as i64) * pow(&lam, j))
            .sum();
        let sign = if (mu + 1).is_multiple_of(2) { int(1) } else { int(-1) };
        acc += rat(sign * tail) / rational_pow(&rat(&lam - 1), mu + 1);

        to_integer(&acc, "weighted power sum from the Apéry set")
    }
}

/// lambda must avoid 0 and 1, and lambda^(a_1) must not be 1.
pub fn check_weight(lambda: i64, a1: u64) -> Result<()> {
    match lambda {
        0 | 1 => Err(FrobError::InvalidWeight {
            lambda,
            reason: "lambda must not be 0 or 1",
        }),
        -1 if a1.is_multiple_of(2) => Err(FrobError::InvalidWeight {
            lambda,
            reason: "lambda^(a_1) = 1 for even a_1",
        }),
        _ => Ok(()),
    }
}

pub fn apery_set(instance: &Instance, p: u64) -> AperySet {
    AperySet::scan(&mut DenumerantTable::new(instance.clone()), p)
}

pub fn gp_from_apery(set: &AperySet) -> BigInt {
    set.gp()
}

pub fn np_from_apery(set: &AperySet) -> Result<BigInt> {
    set.np()
}

pub fn sp_from_apery(set: &AperySet) -> Result<BigInt> {
    set.sp()
}

pub fn power_sum(set: &AperySet, mu: u64) -> Result<BigInt> {
    set.power_sum(mu)
}

pub fn weighted_power_sum(set: &AperySet, lambda: i64, mu: u64) -> Result<BigInt> {
    set.weighted_power_sum(lambda, mu)
}
