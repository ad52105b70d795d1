//! Ground truth by direct definition.
//!
//! d(n; A) is tabulated with the coin-change recurrence, one layer per
//! generator. Every quantity is then read off the set
//! {n >= 0 : d(n; A) <= p}, which is finite because d(n; A) is nondecreasing
//! along each residue class modulo a_1 and unbounded.

use num_traits::{One, Zero};

use crate::error::{FrobError, Result};
use crate::instance::Instance;
use crate::numeric::{int, pow, BigInt};

/// Denumerant counts d(n; A) for n below the current horizon.
///
/// `layers[j][n]` counts representations of n using only the first j+1
/// generators, so the last layer is d(n; A). Extending the horizon appends
/// to every layer in generator order; existing entries never change.
#[derive(Debug, Clone)]
pub struct DenumerantTable {
    instance: Instance,
    layers: Vec<Vec<BigInt>>,
}

const INITIAL_HORIZON: usize = 64;

impl DenumerantTable {
    pub fn new(instance: Instance) -> Self {
        let layers = vec![Vec::new(); instance.arity()];
        let mut table = Self { instance, layers };
        table.ensure(INITIAL_HORIZON - 1);
        table
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    /// Number of entries currently tabulated.
    pub fn horizon(&self) -> usize {
        self.layers[0].len()
    }

    pub fn counts(&self) -> &[BigInt] {
        self.layers.last().unwrap()
    }

    /// Grows the table (by doubling) until `n` is covered.
    pub fn ensure(&mut self, n: usize) {
        let old = self.horizon();
        if n < old {
            return;
        }
        let new = (n + 1).max(2 * old).max(INITIAL_HORIZON);
        let gens = self.instance.generators().to_vec();
        for (j, &a) in gens.iter().enumerate() {
            let a = a as usize;
            let (prev, rest) = self.layers.split_at_mut(j);
            let layer = &mut rest[0];
            layer.reserve(new - old);
            for m in old..new {
                let mut v = match prev.last() {
                    Some(below) => below[m].clone(),
                    None if m == 0 => BigInt::one(),
                    None => BigInt::zero(),
                };
                if m >= a {
                    v += &layer[m - a];
                }
                layer.push(v);
            }
        }
    }

    /// d(n; A).
    pub fn count(&mut self, n: u64) -> &BigInt {
        self.ensure(n as usize);
        &self.counts()[n as usize]
    }

    /// All n >= 0 with d(n; A) <= p, ascending.
    ///
    /// The scan stops after a_1 consecutive values with d(n; A) >= p + 1:
    /// every residue class then has a saturated member, and counts never
    /// decrease along a class.
    pub fn nonrep_set(&mut self, p: u64) -> Vec<u64> {
        let bound = int(p as i64);
        let a1 = self.instance.smallest();
        let mut members = Vec::new();
        let mut run = 0u64;
        let mut n = 0u64;
        while run < a1 {
            if *self.count(n) <= bound {
                members.push(n);
                run = 0;
            } else {
                run += 1;
            }
            n += 1;
        }
        members
    }

    fn nonempty_set(&mut self, p: u64) -> Result<Vec<u64>> {
        let set = self.nonrep_set(p);
        if set.is_empty() {
            Err(FrobError::EmptySet { p })
        } else {
            Ok(set)
        }
    }

    /// g_p(A): the largest n with at most p representations.
    pub fn gp(&mut self, p: u64) -> Result<BigInt> {
        let set = self.nonempty_set(p)?;
        Ok(BigInt::from(*set.last().unwrap()))
    }

    /// n_p(A): how many n have at most p representations.
    pub fn np(&mut self, p: u64) -> Result<BigInt> {
        Ok(BigInt::from(self.nonempty_set(p)?.len()))
    }

    /// s_p(A): the sum of all n with at most p representations.
    pub fn sp(&mut self, p: u64) -> Result<BigInt> {
        Ok(self.nonempty_set(p)?.into_iter().map(BigInt::from).sum())
    }

    /// s_p^(mu)(A) = sum of n^mu over the set, mu >= 1.
    pub fn power_sum(&mut self, p: u64, mu: u64) -> Result<BigInt> {
        if mu == 0 {
            return Err(FrobError::DomainError("power sums need mu >= 1".into()));
        }
        let set = self.nonempty_set(p)?;
        Ok(set.into_iter().map(|n| pow(&BigInt::from(n), mu)).sum())
    }

    /// s_{lambda,p}^(mu)(A) = sum of lambda^n n^mu over the set.
    pub fn weighted_sum(&mut self, p: u64, lambda: i64, mu: u64) -> Result<BigInt> {
        if lambda == 0 || lambda == 1 {
            return Err(FrobError::InvalidWeight {
                lambda,
                reason: "lambda must not be 0 or 1",
            });
        }
        if mu == 0 {
            return Err(FrobError::DomainError("weighted sums need mu >= 1".into()));
        }
        let set = self.nonempty_set(p)?;
        let base = int(lambda);
        Ok(set
            .into_iter()
            .map(|n| pow(&base, n) * pow(&BigInt::from(n), mu))
            .sum())
    }

    /// g_p^*(A): the largest n with exactly p representations, if any.
    ///
    /// Every n > g_p(A) has at least p + 1 representations, so the search
    /// stops at g_p(A).
    pub fn g_star(&mut self, p: u64) -> Option<BigInt> {
        let limit = match self.nonrep_set(p).last() {
            Some(&g) => g,
            None => return None,
        };
        let target = int(p as i64);
        (0..=limit).rev().find(|&n| *self.count(n) == target).map(BigInt::from)
    }
}

/// d(n; A) from a fresh table.
pub fn denumerant(n: u64, instance: &Instance) -> BigInt {
    DenumerantTable::new(instance.clone()).count(n).clone()
}

pub fn nonrep_set_p(instance: &Instance, p: u64) -> Vec<u64> {
    DenumerantTable::new(instance.clone()).nonrep_set(p)
}

pub fn oracle_gp(instance: &Instance, p: u64) -> Result<BigInt> {
    DenumerantTable::new(instance.clone()).gp(p)
}

pub fn oracle_np(instance: &Instance, p: u64) -> Result<BigInt> {
    DenumerantTable::new(instance.clone()).np(p)
}

pub fn oracle_sp(instance: &Instance, p: u64) -> Result<BigInt> {
    DenumerantTable::new(instance.clone()).sp(p)
}

pub fn oracle_power_sum(instance: &Instance, p: u64, mu: u64) -> Result<BigInt> {
    DenumerantTable::new(instance.clone()).power_sum(p, mu)
}

pub fn oracle_weighted_sum(instance: &Instance, p: u64, lambda: i64, mu: u64) -> Result<BigInt> {
    DenumerantTable::new(instance.clone()).weighted_sum(p, lambda, mu)
}

pub fn g_star(instance: &Instance, p: u64) -> Option<BigInt> {
    DenumerantTable::new(instance.clone()).g_star(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inst(g: &[u64]) -> Instance {
        Instance::new(g.to_vec()).unwrap()
    }

    fn naive(n: u64, gens: &[u64]) -> u64 {
        match gens {
            [] => (n == 0) as u64,
            [a] => n.is_multiple_of(*a) as u64,
            [a, rest @ ..] => (0..=n / a).map(|x| naive(n - x * a, rest)).sum(),
        }
    }

    #[test]
    fn denumerant_values() {
        let a = inst(&[2, 5, 7]);
        assert_eq!(denumerant(43, &a), int(17));
        assert_eq!(denumerant(42, &a), int(18));
        assert_eq!(denumerant(0, &a), int(1));
        assert_eq!(denumerant(1, &a), int(0));
    }

    #[test]
    fn horizon_grows_by_doubling() {
        let mut t = DenumerantTable::new(inst(&[3, 4, 5]));
        assert_eq!(t.horizon(), 64);
        t.count(64);
        assert_eq!(t.horizon(), 128);
        t.count(1000);
        assert_eq!(t.horizon(), 1001);
        let fresh = DenumerantTable::new(inst(&[3, 4, 5]));
        assert_eq!(&t.counts()[..64], fresh.counts());
    }

    #[test]
    fn nonrep_examples() {
        assert_eq!(nonrep_set_p(&inst(&[2, 3]), 0), vec![1]);
        let mut expected: Vec<u64> = (0..=59).collect();
        expected.extend([61, 62, 63, 64, 65, 67, 68, 69, 73, 74, 75, 79, 85]);
        let got = nonrep_set_p(&inst(&[6, 11, 16]), 3);
        assert_eq!(got.len(), 73);
        assert_eq!(got, expected);
    }

    #[test]
    fn paper_instances() {
        let mut t = DenumerantTable::new(inst(&[11, 15, 19]));
        assert_eq!(t.gp(5).unwrap(), int(179));
        assert_eq!(t.np(5).unwrap(), int(165));
        assert_eq!(t.sp(5).unwrap(), int(13605));
        assert_eq!(t.power_sum(5, 3).unwrap(), int(189158535));
        assert_eq!(
            t.weighted_sum(5, 2, 3).unwrap().to_string(),
            "4669129542047649756353852336451726355433630648909109181546522"
        );

        let mut t = DenumerantTable::new(inst(&[6, 11, 16]));
        assert_eq!(t.gp(3).unwrap(), int(85));
        assert_eq!(t.np(3).unwrap(), int(73));
        assert_eq!(t.sp(3).unwrap(), int(2675));
        assert_eq!(t.power_sum(3, 3).unwrap(), int(7652009));
        assert_eq!(
            t.weighted_sum(3, 2, 3).unwrap().to_string(),
            "24083450837052351738334815453210"
        );
        assert_eq!(t.power_sum(3, 1).unwrap(), t.sp(3).unwrap());
    }

    #[test]
    fn two_generator_small() {
        let mut t = DenumerantTable::new(inst(&[2, 3]));
        assert_eq!(t.gp(0).unwrap(), int(1));
        assert_eq!(t.np(0).unwrap(), int(1));
        assert_eq!(t.sp(0).unwrap(), int(1));
        assert_eq!(t.weighted_sum(0, -1, 1).unwrap(), int(-1));
    }

    #[test]
    fn empty_set_and_bad_weights() {
        let mut t = DenumerantTable::new(inst(&[1, 2]));
        assert_eq!(t.gp(0), Err(FrobError::EmptySet { p: 0 }));
        assert_eq!(t.np(0), Err(FrobError::EmptySet { p: 0 }));
        assert_eq!(t.power_sum(0, 2), Err(FrobError::EmptySet { p: 0 }));
        assert_eq!(t.g_star(0), None);
        // d(n; 1, 2) = floor(n/2) + 1
        assert_eq!(t.gp(3).unwrap(), int(5));
        let mut t = DenumerantTable::new(inst(&[2, 3]));
        assert!(matches!(t.weighted_sum(0, 1, 1), Err(FrobError::InvalidWeight { .. })));
        assert!(matches!(t.weighted_sum(0, 0, 1), Err(FrobError::InvalidWeight { .. })));
    }

    #[test]
    fn g_star_remark() {
        let mut t = DenumerantTable::new(inst(&[2, 5, 7]));
        assert_eq!(t.g_star(17), Some(int(43)));
        assert_eq!(t.g_star(18), Some(int(42)));
        assert_eq!(t.g_star(22), None);
        for p in 0..=22 {
            if let Some(star) = t.g_star(p) {
                assert!(t.gp(p).unwrap() >= star);
            }
        }
    }

    #[test]
    fn zero_is_in_every_set_with_p_positive() {
        for g in [&[2u64, 3][..], &[3, 4, 5], &[1, 2], &[6, 11, 16]] {
            for p in 1..5 {
                assert_eq!(nonrep_set_p(&inst(g), p)[0], 0);
            }
        }
    }

    fn instances() -> impl Strategy<Value = Instance> {
        prop::collection::btree_set(1u64..=20, 2..=4)
            .prop_map(|s| s.into_iter().collect::<Vec<_>>())
            .prop_filter_map("gcd 1", |g| Instance::new(g).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn dp_matches_naive_recursion(a in instances()) {
            let mut t = DenumerantTable::new(a.clone());
            for n in 0..=200u64 {
                prop_assert_eq!(t.count(n).clone(), BigInt::from(naive(n, a.generators())));
            }
        }

        #[test]
        fn counts_nondecreasing_along_residue_classes(a in instances()) {
            let mut t = DenumerantTable::new(a.clone());
            t.ensure(400 + a.smallest() as usize);
            let c = t.counts();
            for n in 0..400 {
                prop_assert!(c[n + a.smallest() as usize] >= c[n]);
            }
        }

        #[test]
        fn nonrep_set_is_exact(a in instances(), p in 0u64..6) {
            let mut t = DenumerantTable::new(a.clone());
            let set = t.nonrep_set(p);
            let top = set.last().copied().unwrap_or(0) + 3 * a.smallest() + 50;
            let brute: Vec<u64> = (0..=top).filter(|&n| naive(n, a.generators()) <= p).collect();
            prop_assert_eq!(&set, &brute);
            if !set.is_empty() {
                prop_assert_eq!(t.np(p).unwrap(), BigInt::from(set.len()));
            }
        }
    }
}
