//! Agendas, admissible domains and rule outcomes.

use std::fmt;

use serde::Serialize;

use crate::constraints::Formula;
use crate::error::{Error, Result};
use crate::judgment::{Judgment, MAX_ISSUES};

/// Ordered issue labels plus an optional integrity constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agenda {
    issues: Vec<String>,
    constraint: Option<Formula>,
}

impl Agenda {
    pub fn new<S: Into<String>>(issues: impl IntoIterator<Item = S>, constraint: Option<Formula>) -> Result<Self> {
        let issues: Vec<String> = issues.into_iter().map(Into::into).collect();
        if issues.is_empty() {
            return Err(Error::EmptyAgenda);
        }
        if issues.len() > MAX_ISSUES {
            return Err(Error::TooManyIssues {
                max: MAX_ISSUES,
                actual: issues.len(),
            });
        }
        for (k, label) in issues.iter().enumerate() {
            if !is_identifier(label) || label == "true" || label == "false" {
                return Err(Error::InvalidIssueLabel(label.clone()));
            }
            if issues[..k].contains(label) {
                return Err(Error::DuplicateIssue(label.clone()));
            }
        }
        if let Some(f) = &constraint {
            for var in f.variables() {
                if !issues.iter().any(|l| l == var) {
                    return Err(Error::UnknownVariable(var.to_owned()));
                }
            }
        }
        Ok(Agenda { issues, constraint })
    }

    /// Agenda `x1, ..., xm` without constraint.
    pub fn free(m: usize) -> Result<Self> {
        Agenda::new((1..=m).map(|k| format!("x{k}")), None)
    }

    pub fn len(&self) -> usize {
        self.issues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn issues(&self) -> &[String] {
        &self.issues
    }

    pub fn constraint(&self) -> Option<&Formula> {
        self.constraint.as_ref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.issues.iter().position(|l| l == label)
    }
}

/// `[A-Za-z][A-Za-z0-9_]*`
pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A nonempty set of admissible judgments of a common width, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Domain {
    members: Vec<Judgment>,
}

impl Domain {
    /// Validates and canonicalises an explicitly listed domain.
    pub fn new(members: impl IntoIterator<Item = Judgment>) -> Result<Self> {
        let mut members: Vec<Judgment> = members.into_iter().collect();
        let first = *members.first().ok_or(Error::EmptyDomain)?;
        if let Some(bad) = members.iter().find(|j| j.len() != first.len()) {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                actual: bad.len(),
            });
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateJudgment(w[0]));
        }
        Ok(Domain { members })
    }

    /// Parses bitstring literals.
    pub fn parse<'a>(members: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        Domain::new(members.into_iter().map(str::parse).collect::<Result<Vec<Judgment>>>()?)
    }

    /// All of `{0,1}^m`, subject to the enumeration cap.
    pub fn free(m: usize, cap: usize) -> Result<Self> {
        if m > cap {
            return Err(Error::CapacityExceeded { m, cap });
        }
        if m == 0 {
            return Err(Error::EmptyAgenda);
        }
        Ok(Domain {
            members: Judgment::all(m)?.collect(),
        })
    }

    /// Already sorted, deduplicated and width-consistent members.
    pub(crate) fn from_sorted(members: Vec<Judgment>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyDomain);
        }
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Ok(Domain { members })
    }

    pub fn width(&self) -> usize {
        self.members[0].len()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: &Judgment) -> bool {
        self.members.binary_search(j).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Judgment> {
        self.members.iter()
    }

    pub fn members(&self) -> &[Judgment] {
        &self.members
    }

    /// True when every member's antipode is also a member.
    pub fn is_antipodally_closed(&self) -> bool {
        self.members.iter().all(|j| self.contains(&j.antipodal()))
    }
}

impl<'a> IntoIterator for &'a Domain {
    type Item = &'a Judgment;
    type IntoIter = std::slice::Iter<'a, Judgment>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// The nonempty tie-set returned by a rule, in ascending order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Outcome {
    winners: Vec<Judgment>,
}

impl Outcome {
    pub fn new(winners: impl IntoIterator<Item = Judgment>) -> Result<Self> {
        let mut winners: Vec<Judgment> = winners.into_iter().collect();
        if winners.is_empty() {
            return Err(Error::EmptyOutcome);
        }
        let width = winners[0].len();
        if let Some(bad) = winners.iter().find(|j| j.len() != width) {
            return Err(Error::DimensionMismatch {
                expected: width,
                actual: bad.len(),
            });
        }
        winners.sort_unstable();
        winners.dedup();
        Ok(Outcome { winners })
    }

    pub fn parse<'a>(winners: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        Outcome::new(winners.into_iter().map(str::parse).collect::<Result<Vec<Judgment>>>()?)
    }

    pub fn singleton(j: Judgment) -> Self {
        Outcome { winners: vec![j] }
    }

    /// Caller guarantees sorted, nonempty, duplicate-free input.
    pub(crate) fn from_sorted(winners: Vec<Judgment>) -> Self {
        debug_assert!(!winners.is_empty());
        debug_assert!(winners.windows(2).all(|w| w[0] < w[1]));
        Outcome { winners }
    }

    pub fn len(&self) -> usize {
        self.winners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.winners.is_empty()
    }

    pub fn contains(&self, j: &Judgment) -> bool {
        self.winners.binary_search(j).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Judgment> {
        self.winners.iter()
    }

    pub fn winners(&self) -> &[Judgment] {
        &self.winners
    }

    pub fn is_subset_of(&self, other: &Outcome) -> bool {
        self.winners.iter().all(|j| other.contains(j))
    }

    pub fn is_within(&self, domain: &Domain) -> bool {
        self.winners.iter().all(|j| domain.contains(j))
    }
}

impl<'a> IntoIterator for &'a Outcome {
    type Item = &'a Judgment;
    type IntoIter = std::slice::Iter<'a, Judgment>;

    fn into_iter(self) -> Self::IntoIter {
        self.winners.iter()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, j) in self.winners.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Outcome{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agenda_validation() {
        assert_eq!(Agenda::new(Vec::<String>::new(), None), Err(Error::EmptyAgenda));
        assert_eq!(
            Agenda::new(["p", "q", "p"], None),
            Err(Error::DuplicateIssue("p".into()))
        );
        assert_eq!(Agenda::new(["1p"], None), Err(Error::InvalidIssueLabel("1p".into())));
        let f: Formula = "p & s".parse().unwrap();
        assert_eq!(
            Agenda::new(["p", "q"], Some(f)),
            Err(Error::UnknownVariable("s".into()))
        );
        let a = Agenda::new(["p", "q_2"], None).unwrap();
        assert_eq!(a.index_of("q_2"), Some(1));
    }

    #[test]
    fn domain_is_sorted_and_validated() {
        let d = Domain::parse(["111", "000", "010"]).unwrap();
        assert_eq!(d.members()[0].to_string(), "000");
        assert!(d.contains(&"010".parse().unwrap()));
        assert!(!d.contains(&"011".parse().unwrap()));
        assert_eq!(Domain::new(vec![]), Err(Error::EmptyDomain));
        assert!(matches!(Domain::parse(["00", "00"]), Err(Error::DuplicateJudgment(_))));
        assert!(matches!(
            Domain::parse(["00", "000"]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn free_domain_respects_cap() {
        assert_eq!(Domain::free(2, 20).unwrap().len(), 4);
        assert_eq!(Domain::free(21, 20), Err(Error::CapacityExceeded { m: 21, cap: 20 }));
    }

    #[test]
    fn outcome_canonical_form() {
        let o = Outcome::parse(["11", "01", "11"]).unwrap();
        assert_eq!(o.to_string(), "{01, 11}");
        assert_eq!(Outcome::new(vec![]), Err(Error::EmptyOutcome));
    }
}
