use std::fmt;
use std::str::FromStr;

use crate::error::{FrobError, Result};
use crate::numeric::gcd;

/// A generator tuple a_1 < a_2 < ... < a_k with k >= 2 and gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instance {
    generators: Vec<u64>,
}

impl Instance {
    pub fn new(generators: Vec<u64>) -> Result<Self> {
        if generators.len() < 2 {
            return Err(FrobError::InvalidInstance(format!(
                "need at least two generators, got {}",
                generators.len()
            )));
        }
        if generators.contains(&0) {
            return Err(FrobError::InvalidInstance("generators must be positive".into()));
        }
        if generators.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FrobError::InvalidInstance(format!(
                "generators must be strictly increasing: {generators:?}"
            )));
        }
        if generators.iter().fold(0, |g, &a| gcd(g, a)) != 1 {
            return Err(FrobError::InvalidInstance(format!(
                "generators {generators:?} have a common factor"
            )));
        }
        Ok(Self { generators })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// The smallest generator, the modulus of the Apéry set.
    pub fn smallest(&self) -> u64 {
        self.generators[0]
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    /// Recovers (a, d) when the generators are a, a+d, a+2d.
    pub fn as_arithmetic_triple(&self) -> Option<(u64, u64)> {
        match self.generators[..] {
            [a, b, c] if c - b == b - a => Some((a, b - a)),
            _ => None,
        }
    }
}

impl FromStr for Instance {
    type Err = FrobError;

    /// Parses a comma-separated list such as `11,15,19`.
    fn from_str(s: &str) -> Result<Self> {
        let generators = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| FrobError::InvalidInstance(format!("bad generator {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Instance::new(generators)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
