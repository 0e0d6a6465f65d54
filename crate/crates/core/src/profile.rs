//! Profiles of individual judgments and the issue-wise majority.

use std::fmt;

use serde::Serialize;

use crate::agenda::Domain;
use crate::error::{Error, Result};
use crate::judgment::Judgment;

/// Agents' judgments in agent order. Agents are numbered from 1.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Profile {
    judgments: Vec<Judgment>,
}

impl Profile {
    pub fn new(judgments: impl IntoIterator<Item = Judgment>) -> Result<Self> {
        let judgments: Vec<Judgment> = judgments.into_iter().collect();
        let first = judgments.first().ok_or(Error::EmptyProfile)?;
        if let Some(bad) = judgments.iter().find(|j| j.len() != first.len()) {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                actual: bad.len(),
            });
        }
        Ok(Profile { judgments })
    }

    pub fn parse<'a>(judgments: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        Profile::new(
            judgments
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<Judgment>>>()?,
        )
    }

    /// Number of agents.
    pub fn len(&self) -> usize {
        self.judgments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.judgments.is_empty()
    }

    pub fn width(&self) -> usize {
        self.judgments[0].len()
    }

    pub fn judgments(&self) -> &[Judgment] {
        &self.judgments
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Judgment> {
        self.judgments.iter()
    }

    /// Judgment of agent `i` (1-based).
    pub fn agent(&self, i: usize) -> Result<Judgment> {
        self.check_agent(i)?;
        Ok(self.judgments[i - 1])
    }

    fn check_agent(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            Err(Error::AgentOutOfRange {
                agent: i,
                n: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Errors unless every judgment is admissible in `domain`.
    pub fn check_within(&self, domain: &Domain) -> Result<()> {
        if self.width() != domain.width() {
            return Err(Error::DimensionMismatch {
                expected: domain.width(),
                actual: self.width(),
            });
        }
        match self.judgments.iter().find(|j| !domain.contains(j)) {
            Some(j) => Err(Error::NotInDomain(*j)),
            None => Ok(()),
        }
    }

    /// The profile without agent `i`; the remaining agents keep their order.
    pub fn remove_agent(&self, i: usize) -> Result<Profile> {
        self.check_agent(i)?;
        if self.len() == 1 {
            return Err(Error::WouldEmptyProfile);
        }
        let mut judgments = self.judgments.clone();
        judgments.remove(i - 1);
        Ok(Profile { judgments })
    }

    /// Inserts `j` so that it becomes agent `i`; inverse of [`Profile::remove_agent`].
    pub fn insert_agent(&self, i: usize, j: Judgment) -> Result<Profile> {
        if i == 0 || i > self.len() + 1 {
            return Err(Error::AgentOutOfRange {
                agent: i,
                n: self.len() + 1,
            });
        }
        self.check_width(&j)?;
        let mut judgments = self.judgments.clone();
        judgments.insert(i - 1, j);
        Ok(Profile { judgments })
    }

    /// The profile where agent `i` reports `j` instead.
    pub fn replace_agent(&self, i: usize, j: Judgment) -> Result<Profile> {
        self.check_agent(i)?;
        self.check_width(&j)?;
        let mut judgments = self.judgments.clone();
        judgments[i - 1] = j;
        Ok(Profile { judgments })
    }

    /// Appends `j` as a new last agent.
    pub fn with_added(&self, j: Judgment) -> Result<Profile> {
        self.insert_agent(self.len() + 1, j)
    }

    fn check_width(&self, j: &Judgment) -> Result<()> {
        if j.len() != self.width() {
            Err(Error::DimensionMismatch {
                expected: self.width(),
                actual: j.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Distinct judgments submitted, ascending.
    pub fn support(&self) -> Vec<Judgment> {
        let mut s = self.judgments.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Issue-wise strict majority. Exact splits reject the issue.
    pub fn majority_judgment(&self) -> Judgment {
        let n = self.len();
        let m = self.width();
        let mut values = vec![false; m];
        for (k, v) in values.iter_mut().enumerate() {
            let yes = self.judgments.iter().filter(|j| j.get(k)).count();
            *v = 2 * yes > n;
        }
        Judgment::from_bools(&values).expect("width already validated")
    }
}

/// Issue-wise strict-majority judgment of `p`.
pub fn majority_judgment(p: &Profile) -> Judgment {
    p.majority_judgment()
}

/// `p` with agent `i` (1-based) removed.
pub fn remove_agent(p: &Profile, i: usize) -> Result<Profile> {
    p.remove_agent(i)
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, j) in self.judgments.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pf(v: &[&str]) -> Profile {
        Profile::parse(v.iter().copied()).unwrap()
    }

    #[test]
    fn majority_examples() {
        assert_eq!(pf(&["111", "010", "011"]).majority_judgment().to_string(), "011");
        assert_eq!(pf(&["111", "000"]).majority_judgment().to_string(), "000");
        assert_eq!(pf(&["101"]).majority_judgment().to_string(), "101");
    }

    #[test]
    fn remove_agent_examples() {
        let p = pf(&["00", "01", "11"]);
        assert_eq!(p.remove_agent(2).unwrap(), pf(&["00", "11"]));
        assert_eq!(pf(&["00", "01"]).remove_agent(1).unwrap(), pf(&["01"]));
        assert_eq!(p.remove_agent(0), Err(Error::AgentOutOfRange { agent: 0, n: 3 }));
        assert_eq!(p.remove_agent(4), Err(Error::AgentOutOfRange { agent: 4, n: 3 }));
        assert_eq!(pf(&["00"]).remove_agent(1), Err(Error::WouldEmptyProfile));
    }

    #[test]
    fn check_within_reports_first_outsider() {
        let d = Domain::parse(["00", "11"]).unwrap();
        assert!(pf(&["00", "11"]).check_within(&d).is_ok());
        assert_eq!(
            pf(&["00", "01"]).check_within(&d),
            Err(Error::NotInDomain("01".parse().unwrap()))
        );
    }

    #[test]
    fn empty_and_ragged_profiles_rejected() {
        assert_eq!(Profile::new(vec![]), Err(Error::EmptyProfile));
        assert!(Profile::parse(["01", "011"]).is_err());
    }

    fn profile_strategy() -> impl Strategy<Value = Profile> {
        (1usize..=8, 1usize..=6).prop_flat_map(|(m, n)| {
            proptest::collection::vec(0u64..(1 << m), n).prop_map(move |bits| {
                Profile::new(bits.into_iter().map(|b| Judgment::from_index(m, b).unwrap())).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn remove_then_insert_round_trips(p in profile_strategy(), pick in any::<prop::sample::Index>()) {
            prop_assume!(p.len() >= 2);
            let i = pick.index(p.len()) + 1;
            let removed = p.remove_agent(i).unwrap();
            prop_assert_eq!(removed.insert_agent(i, p.agent(i).unwrap()).unwrap(), p);
        }

        #[test]
        fn unanimous_majority_is_the_common_judgment(p in profile_strategy(), n in 1usize..6) {
            let j = p.judgments()[0];
            let unanimous = Profile::new(std::iter::repeat_n(j, n)).unwrap();
            prop_assert_eq!(unanimous.majority_judgment(), j);
        }
    }
}
