//! Single requests routed to one or more computation paths.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::apery::{check_weight, AperySet};
use crate::arithmetic::ArithTriple;
use crate::error::{FrobError, Result};
use crate::instance::Instance;
use crate::numeric::BigInt;
use crate::oracle::DenumerantTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Gp,
    Np,
    Sp,
    Power { mu: u64 },
    Weighted { lambda: i64, mu: u64 },
}

impl Quantity {
    pub fn name(&self) -> &'static str {
        match self {
            Quantity::Gp => "gp",
            Quantity::Np => "np",
            Quantity::Sp => "sp",
            Quantity::Power { .. } => "power",
            Quantity::Weighted { .. } => "weighted",
        }
    }

    pub fn mu(&self) -> Option<u64> {
        match *self {
            Quantity::Power { mu } | Quantity::Weighted { mu, .. } => Some(mu),
            _ => None,
        }
    }

    pub fn lambda(&self) -> Option<i64> {
        match *self {
            Quantity::Weighted { lambda, .. } => Some(lambda),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    ClosedForm,
    Apery,
    Oracle,
}

impl Provenance {
    pub const ALL: [Provenance; 3] = [Provenance::ClosedForm, Provenance::Apery, Provenance::Oracle];

    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed_form",
            Provenance::Apery => "apery",
            Provenance::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = FrobError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" | "closed_form" => Ok(Provenance::ClosedForm),
            "apery" => Ok(Provenance::Apery),
            "oracle" => Ok(Provenance::Oracle),
            _ => Err(FrobError::DomainError(format!("unknown path {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub instance: Instance,
    pub p: u64,
    pub quantity: Quantity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub query: Query,
    pub value: BigInt,
    pub provenance: Provenance,
}

impl Query {
    pub fn new(instance: Instance, p: u64, quantity: Quantity) -> Self {
        Self { instance, p, quantity }
    }

    /// The triple (a, d) if the closed forms cover this query.
    pub fn closed_form_triple(&self) -> Option<ArithTriple> {
        ArithTriple::from_instance(&self.instance).filter(|t| self.p <= t.max_p())
    }

    fn weight_ok(&self) -> bool {
        match self.quantity.lambda() {
            Some(lambda) => check_weight(lambda, self.instance.smallest()).is_ok(),
            None => true,
        }
    }

    /// Paths able to answer this query, in default preference order.
    pub fn applicable_paths(&self) -> Vec<Provenance> {
        let mut paths = Vec::new();
        if self.weight_ok() {
            if self.closed_form_triple().is_some() {
                paths.push(Provenance::ClosedForm);
            }
            paths.push(Provenance::Apery);
        }
        paths.push(Provenance::Oracle);
        paths
    }

    pub fn default_path(&self) -> Provenance {
        self.applicable_paths()[0]
    }

    pub fn evaluate(&self, provenance: Provenance) -> Result<QueryResult> {
        self.evaluate_with(provenance, &mut DenumerantTable::new(self.instance.clone()))
    }

    /// Evaluates against a caller-owned table for the same instance.
    pub fn evaluate_with(&self, provenance: Provenance, table: &mut DenumerantTable) -> Result<QueryResult> {
        debug_assert_eq!(table.instance(), &self.instance);
        let value = match provenance {
            Provenance::ClosedForm => self.closed_form()?,
            Provenance::Apery => self.via_apery(table)?,
            Provenance::Oracle => self.via_oracle(table)?,
        };
        Ok(QueryResult {
            query: self.clone(),
            value,
            provenance,
        })
    }

    fn closed_form(&self) -> Result<BigInt> {
        let triple = match ArithTriple::from_instance(&self.instance) {
            Some(t) => t,
            None => {
                return Err(FrobError::DomainError(format!(
                    "{} is not an arithmetic triple (a, a+d, a+2d) with a >= 3",
                    self.instance
                )))
            }
        };
        let p = self.p;
        match self.quantity {
            Quantity::Gp => triple.gp_closed(p),
            Quantity::Np => triple.np_closed(p),
            Quantity::Sp => triple.sp_closed(p),
            Quantity::Power { mu } => triple.power_sum_closed(p, mu),
            Quantity::Weighted { lambda, mu } => triple.weighted_sum_closed(p, lambda, mu),
        }
    }

    fn via_apery(&self, table: &mut DenumerantTable) -> Result<BigInt> {
        if let Some(lambda) = self.quantity.lambda() {
            check_weight(lambda, self.instance.smallest())?;
        }
        let set = AperySet::scan(table, self.p);
        // the sums below are conventions, not values, when no integer
        // has at most p representations
        if set.np()?.is_zero() {
            return Err(FrobError::EmptySet { p: self.p });
        }
        match self.quantity {
            Quantity::Gp => Ok(set.gp()),
            Quantity::Np => set.np(),
            Quantity::Sp => set.sp(),
            Quantity::Power { mu } => set.power_sum(mu),
            Quantity::Weighted { lambda, mu } => set.weighted_power_sum(lambda, mu),
        }
    }

    fn via_oracle(&self, table: &mut DenumerantTable) -> Result<BigInt> {
        let p = self.p;
        match self.quantity {
            Quantity::Gp => table.gp(p),
            Quantity::Np => table.np(p),
            Quantity::Sp => table.sp(p),
            Quantity::Power { mu: 0 } => table.np(p),
            Quantity::Power { mu } => table.power_sum(p, mu),
            Quantity::Weighted { lambda, mu } => table.weighted_sum(p, lambda, mu),
        }
    }
}
