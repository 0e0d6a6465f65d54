//! Bounded profile spaces over a domain.

use crate::agenda::Domain;
use crate::error::{Error, Result};
use crate::profile::Profile;

/// Default cap on `profiles × candidates` evaluations for one scan.
pub const DEFAULT_BUDGET: u128 = 50_000_000;

/// All profiles over a domain with between 1 and `n_max` agents.
///
/// Profiles are listed by size, then lexicographically by domain index. In
/// multiset mode only non-decreasing index sequences are produced, which is
/// exhaustive for anonymous rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    pub n_max: usize,
    pub ordered: bool,
    pub budget: u128,
}

impl SearchSpace {
    pub fn new(n_max: usize) -> Self {
        SearchSpace {
            n_max,
            ordered: false,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn ordered(mut self, ordered: bool) -> Self {
        self.ordered = ordered;
        self
    }

    pub fn budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// Number of profiles in the space for a domain of `k` judgments.
    pub fn profile_count(&self, k: usize) -> u128 {
        (1..=self.n_max)
            .map(|n| {
                if self.ordered {
                    pow(k as u128, n)
                } else {
                    multisets(k as u128, n as u128)
                }
            })
            .fold(0u128, u128::saturating_add)
    }

    /// Errors unless `profile_count × per_profile` fits the budget.
    pub fn check_budget(&self, d: &Domain, per_profile: u128) -> Result<()> {
        if self.n_max == 0 {
            return Err(Error::InvalidParameter("n_max must be at least 1".into()));
        }
        let needed = self.profile_count(d.len()).saturating_mul(per_profile.max(1));
        if needed > self.budget {
            return Err(Error::BudgetExceeded {
                needed,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Every profile in canonical order.
    pub fn profiles(&self, d: &Domain) -> Result<Vec<Profile>> {
        self.check_budget(d, 1)?;
        let k = d.len();
        let mut out = Vec::new();
        for n in 1..=self.n_max {
            let mut idx = vec![0usize; n];
            loop {
                out.push(Profile::new(idx.iter().map(|&i| d.members()[i]))?);
                if !self.advance(&mut idx, k) {
                    break;
                }
            }
        }
        Ok(out)
    }

    fn advance(&self, idx: &mut [usize], k: usize) -> bool {
        let mut pos = idx.len();
        while pos > 0 {
            pos -= 1;
            if idx[pos] + 1 < k {
                idx[pos] += 1;
                let reset = if self.ordered { 0 } else { idx[pos] };
                for later in &mut idx[pos + 1..] {
                    *later = reset;
                }
                return true;
            }
        }
        false
    }
}

fn pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// `C(k + n - 1, n)`
fn multisets(k: u128, n: u128) -> u128 {
    if k == 0 {
        return 0;
    }
    let mut acc = 1u128;
    for t in 1..=n {
        acc = acc.saturating_mul(k + t - 1) / t;
    }
    acc
}
