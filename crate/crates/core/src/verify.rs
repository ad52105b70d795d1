//! Cross-validation sweeps over arithmetic triples.
//!
//! Each check computes one quantity along every available path and records
//! a [`Mismatch`] when the values differ or any path fails.

use std::fmt;

use crate::apery::AperySet;
use crate::arithmetic::{roberts_g, selmer_n, sylvester_two_var, ArithTriple};
use crate::error::Result;
use crate::instance::Instance;
use crate::numeric::{gcd, BigInt};
use crate::oracle::DenumerantTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub generators: Vec<u64>,
    pub p: u64,
    pub check: String,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} p={} {}: {}", self.generators, self.p, self.check, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn record(&mut self, generators: &[u64], p: u64, check: impl Into<String>, detail: Option<String>) {
        self.checked += 1;
        if let Some(detail) = detail {
            self.mismatches.push(Mismatch {
                generators: generators.to_vec(),
                p,
                check: check.into(),
                detail,
            });
        }
    }

    /// Records agreement of all labelled results.
    fn agree(&mut self, generators: &[u64], p: u64, check: impl Into<String>, results: Vec<(&str, Result<BigInt>)>) {
        let detail = describe_disagreement(&results);
        self.record(generators, p, check, detail);
    }
}

fn describe_disagreement(results: &[(&str, Result<BigInt>)]) -> Option<String> {
    let first = results.first()?.1.as_ref().ok();
    let consistent = first.is_some() && results.iter().all(|(_, r)| r.as_ref().ok() == first);
    if consistent {
        return None;
    }
    let parts: Vec<String> = results
        .iter()
        .map(|(label, r)| match r {
            Ok(v) => format!("{label}={v}"),
            Err(e) => format!("{label}=error({e})"),
        })
        .collect();
    Some(parts.join(" "))
}

/// Extra quantities checked by [`verify_triple`] beyond g_p, n_p and s_p.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Exponents mu for power and weighted sums.
    pub mus: Vec<u64>,
    /// Weights lambda; -1 is added automatically for odd a.
    pub lambdas: Vec<i64>,
}

impl VerifyOptions {
    pub fn weighted() -> Self {
        Self {
            mus: vec![1, 2, 3],
            lambdas: vec![-2, 2, 3],
        }
    }
}

/// All valid triples with 3 <= a <= a_max, 1 <= d <= d_max, gcd(a, d) = 1.
pub fn triples(a_max: u64, d_max: u64) -> Vec<ArithTriple> {
    (3..=a_max)
        .flat_map(|a| (1..=d_max).filter_map(move |d| ArithTriple::new(a, d).ok()))
        .collect()
}

/// Runs every check for one triple over 0 <= p <= floor(a/2), sharing one
/// denumerant table between the Apéry scan and the oracle.
pub fn verify_triple(triple: &ArithTriple, options: &VerifyOptions) -> Report {
    let mut report = Report::default();
    let instance = triple.instance();
    let gens = triple.generators();
    let (a, d) = (triple.a(), triple.d());
    let mut table = DenumerantTable::new(instance.clone());

    for p in 0..=triple.max_p() {
        let scanned = AperySet::scan(&mut table, p);

        report.agree(&gens, p, "gp", vec![
            ("closed", triple.gp_closed(p)),
            ("apery", Ok(scanned.gp())),
            ("oracle", table.gp(p)),
        ]);
        report.agree(&gens, p, "np", vec![
            ("closed", triple.np_closed(p)),
            ("apery", scanned.np()),
            ("oracle", table.np(p)),
        ]);
        report.agree(&gens, p, "sp", vec![
            ("closed", triple.sp_closed(p)),
            ("apery", scanned.sp()),
            ("oracle", table.sp(p)),
        ]);

        // structure of the enumerated set
        match triple.apery_closed(p) {
            Ok(closed) => {
                let cells = triple.apery_cells(p).map(|c| c.len() as u64).unwrap_or(0);
                report.record(&gens, p, "apery_cells", (cells != a).then(|| format!("{cells} cells")));
                report.record(
                    &gens,
                    p,
                    "apery_invariants",
                    closed.check_invariants(&mut table).err().map(|e| e.to_string()),
                );
                report.record(
                    &gens,
                    p,
                    "apery_elements",
                    (closed.elements() != scanned.elements()).then(|| {
                        format!("closed {:?} vs scanned {:?}", closed.elements(), scanned.elements())
                    }),
                );
                let total: BigInt = closed.elements().iter().sum();
                report.agree(&gens, p, "apery_sum", vec![
                    ("enumerated", Ok(total)),
                    ("formula", triple.apery_element_sum(p)),
                ]);
            }
            Err(e) => report.record(&gens, p, "apery_closed", Some(e.to_string())),
        }

        report.agree(&gens, p, "power_sum_mu1", vec![
            ("lemma", scanned.power_sum(1)),
            ("sp", scanned.sp()),
        ]);

        if p == 0 {
            report.agree(&gens, p, "roberts_g", vec![
                ("roberts", roberts_g(a, d, 3)),
                ("closed", triple.gp_closed(0)),
            ]);
            report.agree(&gens, p, "selmer_n", vec![
                ("selmer", selmer_n(a, d, 3)),
                ("closed", triple.np_closed(0)),
                ("oracle", table.np(0)),
            ]);
        }

        for &mu in &options.mus {
            report.agree(&gens, p, format!("power mu={mu}"), vec![
                ("closed", triple.power_sum_closed(p, mu)),
                ("apery", scanned.power_sum(mu)),
                ("oracle", table.power_sum(p, mu)),
            ]);
            let mut lambdas = options.lambdas.clone();
            if a % 2 == 1 && !lambdas.contains(&-1) && !lambdas.is_empty() {
                lambdas.push(-1);
            }
            for lambda in lambdas {
                report.agree(&gens, p, format!("weighted lambda={lambda} mu={mu}"), vec![
                    ("closed", triple.weighted_sum_closed(p, lambda, mu)),
                    ("apery", scanned.weighted_power_sum(lambda, mu)),
                    ("oracle", table.weighted_sum(p, lambda, mu)),
                ]);
            }
        }
    }
    report
}

/// Two-generator formulas against the oracle for coprime 2 <= a < b <= max.
pub fn verify_two_var(max: u64) -> Report {
    let mut report = Report::default();
    for a in 2..=max {
        for b in a + 1..=max {
            if gcd(a, b) != 1 {
                continue;
            }
            let mut table = DenumerantTable::new(Instance::new(vec![a, b]).unwrap());
            let (g, n, s) = match sylvester_two_var(a, b) {
                Ok(v) => (Ok(v.0), Ok(v.1), Ok(v.2)),
                Err(e) => (Err(e.clone()), Err(e.clone()), Err(e)),
            };
            report.agree(&[a, b], 0, "two_var_g", vec![("formula", g), ("oracle", table.gp(0))]);
            report.agree(&[a, b], 0, "two_var_n", vec![("formula", n), ("oracle", table.np(0))]);
            report.agree(&[a, b], 0, "two_var_s", vec![("formula", s), ("oracle", table.sp(0))]);
        }
    }
    report
}
