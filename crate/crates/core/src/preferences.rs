//! Hamming preferences over judgments and their lifting to tie-sets.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::agenda::Outcome;
use crate::error::{Error, Result};
use crate::judgment::{hamming, Judgment};

/// How a preference over single judgments extends to sets of judgments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    /// The worst element of `X` beats the worst element of `Y`.
    Pessimistic,
    /// The best element of `X` beats the best element of `Y`.
    Optimistic,
    /// Some `J ∈ X` beats some `J' ∈ Y` with `{J, J'} ⊄ X ∩ Y`.
    Decisive,
}

impl ExtensionKind {
    pub const ALL: [ExtensionKind; 3] = [
        ExtensionKind::Pessimistic,
        ExtensionKind::Optimistic,
        ExtensionKind::Decisive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExtensionKind::Pessimistic => "pessimistic",
            ExtensionKind::Optimistic => "optimistic",
            ExtensionKind::Decisive => "decisive",
        }
    }
}

impl fmt::Display for ExtensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExtensionKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ExtensionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown extension {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    StrictlyBetter,
    Indifferent,
    StrictlyWorse,
}

/// How an agent with judgment `truth` ranks `a` against `b`.
pub fn prefers(truth: &Judgment, a: &Judgment, b: &Judgment) -> Result<Comparison> {
    let da = hamming(truth, a)?;
    let db = hamming(truth, b)?;
    Ok(match da.cmp(&db) {
        Ordering::Less => Comparison::StrictlyBetter,
        Ordering::Equal => Comparison::Indifferent,
        Ordering::Greater => Comparison::StrictlyWorse,
    })
}

fn check(truth: &Judgment, x: &Outcome, y: &Outcome) -> Result<()> {
    for j in x.iter().chain(y.iter()) {
        hamming(truth, j)?;
    }
    Ok(())
}

/// Strict set preference `x ≻ y` for an agent whose judgment is `truth`.
pub fn set_prefers(kind: ExtensionKind, truth: &Judgment, x: &Outcome, y: &Outcome) -> Result<bool> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyOutcome);
    }
    check(truth, x, y)?;
    Ok(strictly_prefers(kind, truth, x, y))
}

/// [`set_prefers`] for inputs already known to be width-consistent.
pub(crate) fn strictly_prefers(kind: ExtensionKind, truth: &Judgment, x: &Outcome, y: &Outcome) -> bool {
    let d = |j: &Judgment| truth.distance(j);
    match kind {
        ExtensionKind::Pessimistic => {
            let worst_x = x.iter().map(d).max().expect("nonempty");
            let worst_y = y.iter().map(d).max().expect("nonempty");
            worst_x < worst_y
        }
        ExtensionKind::Optimistic => {
            let best_x = x.iter().map(d).min().expect("nonempty");
            let best_y = y.iter().map(d).min().expect("nonempty");
            best_x < best_y
        }
        ExtensionKind::Decisive => witness_pair(truth, x, y).is_some(),
    }
}

/// First `(J, J')` in canonical order with `J ∈ x`, `J' ∈ y`, `J` strictly
/// closer to `truth` than `J'`, and `{J, J'}` not inside `x ∩ y`.
pub fn witness_pair(truth: &Judgment, x: &Outcome, y: &Outcome) -> Option<(Judgment, Judgment)> {
    x.iter().find_map(|a| {
        y.iter()
            .find(|b| truth.distance(a) < truth.distance(b) && !(x.contains(b) && y.contains(a)))
            .map(|b| (*a, *b))
    })
}

/// Checks, on this instance, that the extension agrees with the judgment
/// preference on singletons drawn from `x ∪ y`, and that a strict set
/// preference `x ≻ y` comes with a witnessing pair outside `x ∩ y`.
pub fn extension_contract_holds(kind: ExtensionKind, truth: &Judgment, x: &Outcome, y: &Outcome) -> bool {
    if x.is_empty() || y.is_empty() || check(truth, x, y).is_err() {
        return false;
    }
    let union: Vec<Judgment> = x.iter().chain(y.iter()).copied().collect();
    for a in &union {
        for b in &union {
            let lifted = strictly_prefers(kind, truth, &Outcome::singleton(*a), &Outcome::singleton(*b));
            if lifted != (truth.distance(a) < truth.distance(b)) {
                return false;
            }
        }
    }
    !strictly_prefers(kind, truth, x, y) || witness_pair(truth, x, y).is_some()
}
