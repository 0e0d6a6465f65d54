//! Outcome determination for MaxHam, MaxEq, the MaxEq-then-MaxHam
//! refinement, and finite table rules.
//!
//! Every rule enumerates the domain and returns the complete argmin set in
//! ascending order; ties are never broken.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::agenda::{Domain, Outcome};
use crate::error::{Error, Result};
use crate::judgment::Judgment;
use crate::profile::Profile;

/// Domains at least this large are scored in parallel.
const PARALLEL_SCAN_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleSpec {
    MaxHam,
    MaxEq,
    /// MaxEq winners minimising the maximum distance.
    MaxEqThenMaxHam,
    Table(TableRule),
}

impl RuleSpec {
    pub fn name(&self) -> &'static str {
        match self {
            RuleSpec::MaxHam => "maxham",
            RuleSpec::MaxEq => "maxeq",
            RuleSpec::MaxEqThenMaxHam => "maxeq-lex",
            RuleSpec::Table(_) => "table",
        }
    }
}

impl fmt::Display for RuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An anonymous rule given extensionally, keyed by the set of distinct
/// submitted judgments. How many agents submit each judgment is ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableRule {
    entries: BTreeMap<Vec<Judgment>, Outcome>,
}

impl TableRule {
    pub fn new() -> Self {
        TableRule::default()
    }

    /// Sets the outcome for profiles whose distinct judgments are `support`.
    pub fn insert(&mut self, support: impl IntoIterator<Item = Judgment>, outcome: Outcome) {
        let mut key: Vec<Judgment> = support.into_iter().collect();
        key.sort_unstable();
        key.dedup();
        self.entries.insert(key, outcome);
    }

    /// Tabulates `f` on every nonempty subset of `domain` with at most
    /// `max_support` elements.
    pub fn from_fn(domain: &Domain, max_support: usize, mut f: impl FnMut(&[Judgment]) -> Outcome) -> Self {
        let mut table = TableRule::new();
        for support in subsets_up_to(domain.members(), max_support) {
            let outcome = f(&support);
            table.entries.insert(support, outcome);
        }
        table
    }

    pub fn get(&self, p: &Profile) -> Result<&Outcome> {
        let support = p.support();
        self.entries.get(&support).ok_or_else(|| {
            let text: Vec<String> = support.iter().map(ToString::to_string).collect();
            Error::MissingTableEntry(format!("{{{}}}", text.join(", ")))
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Judgment], &Outcome)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// A rule on `{00, 01, 11}` that satisfies participation under the
    /// pessimistic extension but is open to antipodal manipulation.
    pub fn participation_counterexample() -> Self {
        let o = |v: &[&str]| Outcome::parse(v.iter().copied()).expect("valid literals");
        let s = |v: &[&str]| -> Vec<Judgment> { v.iter().map(|x| x.parse().unwrap()).collect() };
        let mut t = TableRule::new();
        for key in [&["00"][..], &["11"], &["01", "00"], &["00", "11"]] {
            t.insert(s(key), o(&["01", "11"]));
        }
        t.insert(s(&["01"]), o(&["00", "11"]));
        t.insert(s(&["01", "11"]), o(&["01"]));
        t.insert(s(&["01", "00", "11"]), o(&["01"]));
        t
    }
}

/// Nonempty subsets of `items` (sorted input gives sorted subsets) of size
/// at most `max_size`, in lexicographic order of index sets.
pub(crate) fn subsets_up_to(items: &[Judgment], max_size: usize) -> Vec<Vec<Judgment>> {
    fn rec(items: &[Judgment], start: usize, max: usize, cur: &mut Vec<Judgment>, out: &mut Vec<Vec<Judgment>>) {
        for k in start..items.len() {
            cur.push(items[k]);
            out.push(cur.clone());
            if cur.len() < max {
                rec(items, k + 1, max, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if max_size > 0 {
        rec(items, 0, max_size, &mut Vec::new(), &mut out);
    }
    out
}

/// Per-candidate distance summary against a profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoreBreakdown {
    pub judgment: Judgment,
    pub distances: Vec<usize>,
    pub maxdist: usize,
    pub mindist: usize,
    pub inequity: usize,
}

impl ScoreBreakdown {
    pub fn new(p: &Profile, j: Judgment) -> Result<Self> {
        check_width(p, &j)?;
        let distances: Vec<usize> = p.iter().map(|x| x.distance(&j)).collect();
        let maxdist = *distances.iter().max().expect("profiles are nonempty");
        let mindist = *distances.iter().min().expect("profiles are nonempty");
        Ok(ScoreBreakdown {
            judgment: j,
            distances,
            maxdist,
            mindist,
            inequity: maxdist - mindist,
        })
    }
}

fn check_width(p: &Profile, j: &Judgment) -> Result<()> {
    if p.width() != j.len() {
        Err(Error::DimensionMismatch {
            expected: p.width(),
            actual: j.len(),
        })
    } else {
        Ok(())
    }
}

/// (max, min) distance from `j` to the judgments of `support`.
#[inline]
fn extremes(support: &[Judgment], j: &Judgment) -> (usize, usize) {
    support.iter().fold((0, usize::MAX), |(hi, lo), x| {
        let d = x.distance(j);
        (hi.max(d), lo.min(d))
    })
}

/// Largest distance from `j` to any agent.
pub fn maxdist(p: &Profile, j: &Judgment) -> Result<usize> {
    check_width(p, j)?;
    Ok(extremes(p.judgments(), j).0)
}

/// Largest pairwise gap between agents' distances to `j`.
pub fn inequity(p: &Profile, j: &Judgment) -> Result<usize> {
    check_width(p, j)?;
    let (hi, lo) = extremes(p.judgments(), j);
    Ok(hi - lo)
}

/// Score of each domain member under `objective`, with the minimal ones kept.
fn argmin<K, F>(d: &Domain, objective: F) -> Vec<(Judgment, K)>
where
    K: Ord + Copy + Send,
    F: Fn(&Judgment) -> K + Sync,
{
    let scored: Vec<(Judgment, K)> = if d.len() >= PARALLEL_SCAN_THRESHOLD {
        d.members().par_iter().map(|j| (*j, objective(j))).collect()
    } else {
        d.iter().map(|j| (*j, objective(j))).collect()
    };
    let best = scored.iter().map(|(_, k)| *k).min().expect("domains are nonempty");
    scored.into_iter().filter(|(_, k)| *k == best).collect()
}

fn validate(d: &Domain, p: &Profile) -> Result<Vec<Judgment>> {
    p.check_within(d)?;
    Ok(p.support())
}

fn winners<K>(scored: Vec<(Judgment, K)>) -> Outcome {
    Outcome::from_sorted(scored.into_iter().map(|(j, _)| j).collect())
}

/// Domain judgments minimising the maximum distance to any agent.
pub fn max_ham(d: &Domain, p: &Profile) -> Result<Outcome> {
    let support = validate(d, p)?;
    Ok(winners(argmin(d, |j| extremes(&support, j).0)))
}

/// Domain judgments minimising the gap between the farthest and closest agent.
pub fn max_eq(d: &Domain, p: &Profile) -> Result<Outcome> {
    let support = validate(d, p)?;
    Ok(winners(argmin(d, |j| {
        let (hi, lo) = extremes(&support, j);
        hi - lo
    })))
}

/// MaxEq winners with the smallest maximum distance.
pub fn max_eq_lex(d: &Domain, p: &Profile) -> Result<Outcome> {
    let support = validate(d, p)?;
    Ok(winners(argmin(d, |j| {
        let (hi, lo) = extremes(&support, j);
        (hi - lo, hi)
    })))
}

/// Smallest inequity any domain judgment achieves.
pub fn min_inequity(d: &Domain, p: &Profile) -> Result<usize> {
    let support = validate(d, p)?;
    let best = argmin(d, |j| {
        let (hi, lo) = extremes(&support, j);
        hi - lo
    });
    Ok(best[0].1)
}

/// Whether some domain judgment is equally far from every agent.
pub fn exists_equidistant(d: &Domain, p: &Profile) -> Result<bool> {
    Ok(min_inequity(d, p)? == 0)
}

pub fn apply_rule(rule: &RuleSpec, d: &Domain, p: &Profile) -> Result<Outcome> {
    match rule {
        RuleSpec::MaxHam => max_ham(d, p),
        RuleSpec::MaxEq => max_eq(d, p),
        RuleSpec::MaxEqThenMaxHam => max_eq_lex(d, p),
        RuleSpec::Table(table) => {
            p.check_within(d)?;
            let outcome = table.get(p)?;
            if let Some(j) = outcome.iter().find(|j| !d.contains(j)) {
                return Err(Error::NotInDomain(*j));
            }
            Ok(outcome.clone())
        }
    }
}

/// Score rows for every domain judgment, in domain order.
pub fn score_breakdown(d: &Domain, p: &Profile) -> Result<Vec<ScoreBreakdown>> {
    p.check_within(d)?;
    d.iter().map(|j| ScoreBreakdown::new(p, *j)).collect()
}
