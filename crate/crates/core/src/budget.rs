//! Caps on the work a single computation may perform.
//!
//! Defaults can be overridden through the `SUBGROUPSUMS_BUDGET` environment
//! variable, a comma separated list of `key=value` pairs, for example
//! `SUBGROUPSUMS_BUDGET=brute=5e7,convolution=1e11`. Recognised keys are
//! `field`, `brute`, `direct`, `convolution` and `partitions`.

use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "SUBGROUPSUMS_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest admissible field size q.
    pub field_size: u64,
    /// Enumerated subsets for the brute-force oracles.
    pub brute_force: u64,
    /// Terms in a direct character-sum summation.
    pub direct_sum: u64,
    /// Bigint additions spent in value-distribution convolutions.
    pub convolution: u64,
    /// Cycle types enumerated by one sieve evaluation.
    pub partitions: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            field_size: 1 << 20,
            brute_force: 10_000_000,
            direct_sum: 50_000_000,
            convolution: 20_000_000_000,
            partitions: 20_000_000,
        }
    }
}

impl Budget {
    /// Defaults, overridden by `SUBGROUPSUMS_BUDGET` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Budget::default().with_overrides(&spec),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidBudget(format!("expected key=value, got {item:?}")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidBudget(format!("bad number in {item:?}")))?;
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidBudget(format!("bad number in {item:?}")));
            }
            let value = value as u64;
            match key.trim() {
                "field" => self.field_size = value,
                "brute" => self.brute_force = value,
                "direct" => self.direct_sum = value,
                "convolution" => self.convolution = value,
                "partitions" => self.partitions = value,
                other => return Err(Error::InvalidBudget(format!("unknown key {other:?}"))),
            }
        }
        Ok(self)
    }

    pub(crate) fn check(what: &'static str, needed: f64, cap: u64) -> Result<()> {
        if needed > cap as f64 {
            Err(Error::BudgetExceeded { what, needed, cap })
        } else {
            Ok(())
        }
    }
}
