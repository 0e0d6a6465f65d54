//! JSON instance files: an agenda, its admissible judgments and a profile.
//!
//! ```json
//! { "issues": ["p", "q", "r"], "constraint": "r <-> p & q", "profile": ["111", "010"] }
//! ```
//!
//! At most one of `constraint` and `domain` may be given. With neither, every
//! judgment is admissible.

use serde::{Deserialize, Serialize};

use crate::agenda::{Agenda, Domain};
use crate::asp::Admissible;
use crate::constraints::{enumerate_domain, parse_formula};
use crate::error::{Error, Result};
use crate::judgment::Judgment;
use crate::profile::Profile;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub issues: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<Judgment>>,
    #[serde(default)]
    pub profile: Vec<Judgment>,
}

/// A validated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub agenda: Agenda,
    pub domain: Domain,
    pub profile: Profile,
    /// Whether the domain was listed explicitly.
    pub explicit_domain: bool,
}

impl Instance {
    pub fn admissible(&self) -> Admissible<'_> {
        if self.explicit_domain {
            Admissible::Explicit(&self.domain)
        } else {
            Admissible::Agenda
        }
    }
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Instance(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }

    /// Validates the agenda and admissible judgments, ignoring the profile.
    /// The domain is enumerated, capped at `cap` issues, unless listed.
    pub fn resolve_domain(&self, cap: usize) -> Result<(Agenda, Domain, bool)> {
        if self.constraint.is_some() && self.domain.is_some() {
            return Err(Error::Instance("give either a constraint or a domain, not both".into()));
        }
        let constraint = self.constraint.as_deref().map(parse_formula).transpose()?;
        let agenda = Agenda::new(self.issues.iter().cloned(), constraint)?;
        let domain = match &self.domain {
            Some(members) => Domain::new(members.iter().copied())?,
            None => enumerate_domain(&agenda, cap)?,
        };
        if domain.width() != agenda.len() {
            return Err(Error::DimensionMismatch {
                expected: agenda.len(),
                actual: domain.width(),
            });
        }
        Ok((agenda, domain, self.domain.is_some()))
    }

    pub fn resolve(&self, cap: usize) -> Result<Instance> {
        let (agenda, domain, explicit_domain) = self.resolve_domain(cap)?;
        let profile = Profile::new(self.profile.iter().copied())?;
        profile.check_within(&domain)?;
        Ok(Instance {
            agenda,
            domain,
            profile,
            explicit_domain,
        })
    }

    /// The file describing an instance.
    pub fn from_instance(agenda: &Agenda, domain: Option<&Domain>, profile: &Profile) -> Self {
        InstanceFile {
            issues: agenda.issues().to_vec(),
            constraint: agenda.constraint().map(ToString::to_string),
            domain: domain.map(|d| d.members().to_vec()),
            profile: profile.judgments().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_instance() {
        let f = InstanceFile::from_json(
            r#"{"issues": ["p", "q", "r"], "constraint": "r <-> p & q", "profile": ["111", "010"]}"#,
        )
        .unwrap();
        let inst = f.resolve(20).unwrap();
        assert_eq!(inst.domain.len(), 4);
        assert!(!inst.explicit_domain);
        assert_eq!(InstanceFile::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn explicit_domain_instance() {
        let f = InstanceFile::from_json(r#"{"issues": ["a", "b"], "domain": ["00", "11"], "profile": ["00", "11"]}"#)
            .unwrap();
        assert!(f.resolve(20).unwrap().explicit_domain);
    }

    #[test]
    fn invalid_instances() {
        let both = r#"{"issues": ["a"], "constraint": "a", "domain": ["1"], "profile": ["1"]}"#;
        assert!(InstanceFile::from_json(both).unwrap().resolve(20).is_err());
        let outside = r#"{"issues": ["a", "b"], "constraint": "a", "profile": ["01"]}"#;
        assert_eq!(
            InstanceFile::from_json(outside).unwrap().resolve(20),
            Err(Error::NotInDomain("01".parse().unwrap()))
        );
        let ragged = r#"{"issues": ["a", "b"], "profile": ["011"]}"#;
        assert!(InstanceFile::from_json(ragged).unwrap().resolve(20).is_err());
        assert!(InstanceFile::from_json(r#"{"issues": ["a"], "profile": ["2"]}"#).is_err());
        assert!(InstanceFile::from_json(r#"{"issues": ["a"], "profile": [], "extra": 1}"#).is_err());
        let wide = r#"{"issues": ["a", "b"], "profile": ["01"]}"#;
        assert!(matches!(
            InstanceFile::from_json(wide).unwrap().resolve(1),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
