//! Strategic manipulation by a single agent: misreporting, abstaining, and
//! reporting the antipodal judgment.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::agenda::{Domain, Outcome};
use crate::axioms::Verdict;
use crate::error::{Error, Result};
use crate::judgment::Judgment;
use crate::preferences::{set_prefers, witness_pair, ExtensionKind};
use crate::profile::Profile;
use crate::rules::{apply_rule, RuleSpec};
use crate::search::SearchSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ManipulationKind {
    General,
    NoShow,
    Antipodal,
}

impl ManipulationKind {
    pub const ALL: [ManipulationKind; 3] = [
        ManipulationKind::General,
        ManipulationKind::NoShow,
        ManipulationKind::Antipodal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ManipulationKind::General => "general",
            ManipulationKind::NoShow => "no-show",
            ManipulationKind::Antipodal => "antipodal",
        }
    }

    /// The rule property that forbids this kind of manipulation.
    pub fn property(self) -> RuleProperty {
        match self {
            ManipulationKind::General => RuleProperty::Strategyproofness,
            ManipulationKind::NoShow => RuleProperty::Participation,
            ManipulationKind::Antipodal => RuleProperty::AntipodalStrategyproofness,
        }
    }
}

impl fmt::Display for ManipulationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ManipulationKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ManipulationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown manipulation kind {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleProperty {
    Strategyproofness,
    Participation,
    #[serde(rename = "antipodal-sp")]
    AntipodalStrategyproofness,
}

impl RuleProperty {
    pub fn name(self) -> &'static str {
        match self {
            RuleProperty::Strategyproofness => "strategyproofness",
            RuleProperty::Participation => "participation",
            RuleProperty::AntipodalStrategyproofness => "antipodal-sp",
        }
    }

    pub fn kind(self) -> ManipulationKind {
        match self {
            RuleProperty::Strategyproofness => ManipulationKind::General,
            RuleProperty::Participation => ManipulationKind::NoShow,
            RuleProperty::AntipodalStrategyproofness => ManipulationKind::Antipodal,
        }
    }
}

impl fmt::Display for RuleProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleProperty {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            RuleProperty::Strategyproofness,
            RuleProperty::Participation,
            RuleProperty::AntipodalStrategyproofness,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| format!("unknown property {s:?}"))
    }
}

/// A profitable deviation by `manipulator` from the truthful `profile`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManipulationFinding {
    pub kind: ManipulationKind,
    pub extension: ExtensionKind,
    pub profile: Profile,
    /// 1-based.
    pub manipulator: usize,
    /// Absent for no-show manipulation.
    pub untruthful: Option<Judgment>,
    pub before: Outcome,
    pub after: Outcome,
    /// `J ∈ after` and `J' ∈ before` with `J` strictly closer to the truth
    /// and the pair not inside both outcomes.
    pub witness: Option<(Judgment, Judgment)>,
}

impl ManipulationFinding {
    pub fn truthful(&self) -> Judgment {
        self.profile.judgments()[self.manipulator - 1]
    }

    /// The profile after the deviation.
    pub fn deviated_profile(&self) -> Result<Profile> {
        match self.untruthful {
            Some(j) => self.profile.replace_agent(self.manipulator, j),
            None => self.profile.remove_agent(self.manipulator),
        }
    }

    /// Recomputes both outcomes and the set preference from scratch.
    pub fn reverify(&self, rule: &RuleSpec, d: &Domain) -> Result<bool> {
        let truth = self.truthful();
        let untruthful_ok = match (self.kind, self.untruthful) {
            (ManipulationKind::NoShow, None) => true,
            (ManipulationKind::Antipodal, Some(j)) => j == truth.antipodal(),
            (ManipulationKind::General, Some(j)) => j != truth,
            _ => false,
        };
        let before = apply_rule(rule, d, &self.profile)?;
        let after = apply_rule(rule, d, &self.deviated_profile()?)?;
        Ok(untruthful_ok
            && before == self.before
            && after == self.after
            && set_prefers(self.extension, &truth, &after, &before)?)
    }
}

/// Result of an antipodal check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "finding")]
pub enum AntipodalResult {
    /// The antipode of the agent's judgment is not admissible.
    Inapplicable,
    None,
    Found(ManipulationFinding),
}

impl AntipodalResult {
    pub fn finding(self) -> Option<ManipulationFinding> {
        match self {
            AntipodalResult::Found(f) => Some(f),
            _ => None,
        }
    }
}

struct Setup {
    truth: Judgment,
    before: Outcome,
}

fn setup(rule: &RuleSpec, d: &Domain, p: &Profile, i: usize) -> Result<Setup> {
    let truth = p.agent(i)?;
    let before = apply_rule(rule, d, p)?;
    Ok(Setup { truth, before })
}

#[allow(clippy::too_many_arguments)]
fn try_deviation(
    kind: ManipulationKind,
    rule: &RuleSpec,
    ext: ExtensionKind,
    d: &Domain,
    p: &Profile,
    i: usize,
    s: &Setup,
    untruthful: Option<Judgment>,
) -> Result<Option<ManipulationFinding>> {
    let deviated = match untruthful {
        Some(j) => p.replace_agent(i, j)?,
        None => p.remove_agent(i)?,
    };
    let after = apply_rule(rule, d, &deviated)?;
    if !set_prefers(ext, &s.truth, &after, &s.before)? {
        return Ok(None);
    }
    let witness = (ext == ExtensionKind::Decisive)
        .then(|| witness_pair(&s.truth, &after, &s.before))
        .flatten();
    Ok(Some(ManipulationFinding {
        kind,
        extension: ext,
        profile: p.clone(),
        manipulator: i,
        untruthful,
        before: s.before.clone(),
        after,
        witness,
    }))
}

/// Every profitable misreport by agent `i`, in domain order.
pub fn find_all_manipulations(
    rule: &RuleSpec,
    ext: ExtensionKind,
    d: &Domain,
    p: &Profile,
    i: usize,
) -> Result<Vec<ManipulationFinding>> {
    p.check_within(d)?;
    let s = setup(rule, d, p, i)?;
    let mut out = Vec::new();
    for j in d.iter().filter(|j| **j != s.truth) {
        if let Some(f) = try_deviation(ManipulationKind::General, rule, ext, d, p, i, &s, Some(*j))? {
            out.push(f);
        }
    }
    Ok(out)
}

/// The most profitable misreport `J'ᵢ ∈ d` that agent `i` strictly prefers.
///
/// Among all profitable misreports, the one whose resulting outcome has the
/// smallest worst-case distance to the truth wins, then the smallest
/// best-case distance, then the earliest in domain order.
pub fn find_manipulation(
    rule: &RuleSpec,
    ext: ExtensionKind,
    d: &Domain,
    p: &Profile,
    i: usize,
) -> Result<Option<ManipulationFinding>> {
    let all = find_all_manipulations(rule, ext, d, p, i)?;
    Ok(all.into_iter().min_by_key(|f| {
        let truth = f.truthful();
        let dist = f.after.iter().map(|j| truth.distance(j));
        (dist.clone().max(), dist.min())
    }))
}

/// Whether agent `i` strictly prefers the outcome without their vote.
pub fn find_noshow(
    rule: &RuleSpec,
    ext: ExtensionKind,
    d: &Domain,
    p: &Profile,
    i: usize,
) -> Result<Option<ManipulationFinding>> {
    p.check_within(d)?;
    if p.len() < 2 {
        return Err(Error::WouldEmptyProfile);
    }
    let s = setup(rule, d, p, i)?;
    try_deviation(ManipulationKind::NoShow, rule, ext, d, p, i, &s, None)
}

/// Whether agent `i` strictly prefers the outcome after reporting the
/// bitwise complement of their judgment.
pub fn find_antipodal(
    rule: &RuleSpec,
    ext: ExtensionKind,
    d: &Domain,
    p: &Profile,
    i: usize,
) -> Result<AntipodalResult> {
    p.check_within(d)?;
    let s = setup(rule, d, p, i)?;
    let flipped = s.truth.antipodal();
    if !d.contains(&flipped) {
        return Ok(AntipodalResult::Inapplicable);
    }
    Ok(
        match try_deviation(ManipulationKind::Antipodal, rule, ext, d, p, i, &s, Some(flipped))? {
            Some(f) => AntipodalResult::Found(f),
            None => AntipodalResult::None,
        },
    )
}

/// The first finding of `kind` for any agent of `p`.
pub fn find_in_profile(
    kind: ManipulationKind,
    rule: &RuleSpec,
    ext: ExtensionKind,
    d: &Domain,
    p: &Profile,
) -> Result<Option<ManipulationFinding>> {
    for i in 1..=p.len() {
        let found = match kind {
            ManipulationKind::General => find_manipulation(rule, ext, d, p, i)?,
            ManipulationKind::NoShow if p.len() < 2 => None,
            ManipulationKind::NoShow => find_noshow(rule, ext, d, p, i)?,
            ManipulationKind::Antipodal => find_antipodal(rule, ext, d, p, i)?.finding(),
        };
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: RuleProperty,
    pub rule: String,
    pub extension: ExtensionKind,
    pub verdict: Verdict,
    pub finding: Option<ManipulationFinding>,
    pub profiles_searched: u128,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSearchedSpace
    }
}

/// Scans `space` for the canonically first violation of `property`.
pub fn check_rule_in(
    property: RuleProperty,
    rule: &RuleSpec,
    ext: ExtensionKind,
    d: &Domain,
    space: &SearchSpace,
) -> Result<PropertyReport> {
    let per_profile = match property {
        RuleProperty::Strategyproofness => (d.len() * space.n_max * d.len()) as u128,
        _ => (space.n_max * d.len()) as u128,
    };
    space.check_budget(d, per_profile)?;
    let profiles = space.profiles(d)?;
    let kind = property.kind();
    let finding = profiles
        .par_iter()
        .map(|p| find_in_profile(kind, rule, ext, d, p))
        .find_map_first(|r| r.transpose())
        .transpose()?;
    Ok(PropertyReport {
        property,
        rule: rule.name().to_owned(),
        extension: ext,
        verdict: if finding.is_some() {
            Verdict::Counterexample
        } else {
            Verdict::HoldsOnSearchedSpace
        },
        finding,
        profiles_searched: profiles.len() as u128,
    })
}

pub fn check_rule(
    property: RuleProperty,
    rule: &RuleSpec,
    ext: ExtensionKind,
    d: &Domain,
    n_max: usize,
) -> Result<PropertyReport> {
    check_rule_in(property, rule, ext, d, &SearchSpace::new(n_max))
}

/// Status of "no antipodal finding unless some no-show finding" on a space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub rule: String,
    pub extension: ExtensionKind,
    pub participation: Option<ManipulationFinding>,
    pub antipodal: Option<ManipulationFinding>,
}

impl ImplicationReport {
    /// False exactly when participation held but antipodal strategyproofness failed.
    pub fn holds(&self) -> bool {
        self.participation.is_some() || self.antipodal.is_none()
    }
}

pub fn check_part_implies_antipodal_with(
    rule: &RuleSpec,
    ext: ExtensionKind,
    d: &Domain,
    space: &SearchSpace,
) -> Result<ImplicationReport> {
    let part = check_rule_in(RuleProperty::Participation, rule, ext, d, space)?;
    let anti = check_rule_in(RuleProperty::AntipodalStrategyproofness, rule, ext, d, space)?;
    Ok(ImplicationReport {
        rule: rule.name().to_owned(),
        extension: ext,
        participation: part.finding,
        antipodal: anti.finding,
    })
}

/// The implication under the decisive extension.
pub fn check_part_implies_antipodal(rule: &RuleSpec, d: &Domain, n_max: usize) -> Result<ImplicationReport> {
    check_part_implies_antipodal_with(rule, ExtensionKind::Decisive, d, &SearchSpace::new(n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::TableRule;

    fn dom(v: &[&str]) -> Domain {
        Domain::parse(v.iter().copied()).unwrap()
    }

    fn pf(v: &[&str]) -> Profile {
        Profile::parse(v.iter().copied()).unwrap()
    }

    fn j(s: &str) -> Judgment {
        s.parse().unwrap()
    }

    fn misreport_domain() -> Domain {
        dom(&["000000", "110000", "111000", "111111"])
    }

    fn antipodal_domain() -> Domain {
        dom(&["00110", "00000", "01110", "10000", "11111"])
    }

    #[test]
    fn misreport_fixture_both_rules() {
        let p = pf(&["111000", "000000"]);
        for rule in [RuleSpec::MaxHam, RuleSpec::MaxEq] {
            let f = find_manipulation(&rule, ExtensionKind::Decisive, &misreport_domain(), &p, 1)
                .unwrap()
                .unwrap();
            assert_eq!(f.untruthful, Some(j("111111")));
            assert_eq!(f.before.to_string(), "{110000}");
            assert_eq!(f.after.to_string(), "{111000}");
            assert_eq!(f.witness, Some((j("111000"), j("110000"))));
            assert!(f.reverify(&rule, &misreport_domain()).unwrap());
        }
    }

    #[test]
    fn unanimous_profiles_admit_no_manipulation() {
        let d = misreport_domain();
        let p = pf(&["111000", "111000"]);
        for ext in ExtensionKind::ALL {
            for i in 1..=2 {
                assert_eq!(find_manipulation(&RuleSpec::MaxHam, ext, &d, &p, i).unwrap(), None);
            }
        }
    }

    #[test]
    fn antipodal_fixture() {
        let p = pf(&["00000", "01110"]);
        let f = find_antipodal(&RuleSpec::MaxEq, ExtensionKind::Decisive, &antipodal_domain(), &p, 1)
            .unwrap()
            .finding()
            .unwrap();
        assert_eq!(f.before.to_string(), "{00110}");
        assert_eq!(f.after.to_string(), "{10000}");
        assert_eq!(f.truthful().checked_distance(&f.before.winners()[0]), Some(2));
        assert_eq!(f.truthful().checked_distance(&f.after.winners()[0]), Some(1));
        assert!(f.reverify(&RuleSpec::MaxEq, &antipodal_domain()).unwrap());
        assert_eq!(
            find_antipodal(&RuleSpec::MaxHam, ExtensionKind::Decisive, &antipodal_domain(), &p, 1).unwrap(),
            AntipodalResult::None
        );
    }

    #[test]
    fn antipodal_inapplicable_outside_domain() {
        let p = pf(&["00110", "01110"]);
        assert_eq!(
            find_antipodal(&RuleSpec::MaxEq, ExtensionKind::Decisive, &antipodal_domain(), &p, 1).unwrap(),
            AntipodalResult::Inapplicable
        );
    }

    #[test]
    fn noshow_needs_two_agents() {
        let p = pf(&["00000"]);
        assert_eq!(
            find_noshow(&RuleSpec::MaxEq, ExtensionKind::Decisive, &antipodal_domain(), &p, 1),
            Err(Error::WouldEmptyProfile)
        );
    }

    #[test]
    fn example_table_rule_participation() {
        let d = dom(&["00", "01", "11"]);
        let rule = RuleSpec::Table(TableRule::participation_counterexample());
        let r = check_rule(RuleProperty::Participation, &rule, ExtensionKind::Pessimistic, &d, 3).unwrap();
        assert!(r.holds());
        let f = find_antipodal(&rule, ExtensionKind::Decisive, &d, &pf(&["01", "00"]), 2)
            .unwrap()
            .finding()
            .unwrap();
        assert_eq!(f.before.to_string(), "{01, 11}");
        assert_eq!(f.after.to_string(), "{01}");
    }

    #[test]
    fn implication_fails_for_example_table_under_pessimistic() {
        let d = dom(&["00", "01", "11"]);
        let rule = RuleSpec::Table(TableRule::participation_counterexample());
        let r = check_part_implies_antipodal_with(&rule, ExtensionKind::Pessimistic, &d, &SearchSpace::new(3)).unwrap();
        assert!(r.participation.is_none());
        assert!(r.antipodal.is_some());
        assert!(!r.holds());
    }

    #[test]
    fn rule_level_counterexamples() {
        let r = check_rule(
            RuleProperty::AntipodalStrategyproofness,
            &RuleSpec::MaxEq,
            ExtensionKind::Decisive,
            &antipodal_domain(),
            2,
        )
        .unwrap();
        assert!(!r.holds());
        assert!(r
            .finding
            .unwrap()
            .reverify(&RuleSpec::MaxEq, &antipodal_domain())
            .unwrap());
        let r = check_rule(
            RuleProperty::Strategyproofness,
            &RuleSpec::MaxHam,
            ExtensionKind::Decisive,
            &misreport_domain(),
            2,
        )
        .unwrap();
        assert!(!r.holds());
    }

    #[test]
    fn maxeq_noshow_fixture() {
        let d = dom(&["001", "010", "100"]);
        let p = pf(&["001", "010", "100"]);
        for ext in [ExtensionKind::Pessimistic, ExtensionKind::Decisive] {
            let f = find_noshow(&RuleSpec::MaxEq, ext, &d, &p, 1).unwrap().unwrap();
            assert_eq!(f.before.to_string(), "{001, 010, 100}");
            assert_eq!(f.after.to_string(), "{001}");
            assert!(f.reverify(&RuleSpec::MaxEq, &d).unwrap());
            let r = check_rule(RuleProperty::Participation, &RuleSpec::MaxEq, ext, &d, 3).unwrap();
            assert!(!r.holds());
        }
        // The truthful judgment already wins before abstaining.
        assert_eq!(
            find_noshow(&RuleSpec::MaxEq, ExtensionKind::Optimistic, &d, &p, 1).unwrap(),
            None
        );
    }

    #[test]
    fn maxham_participation_on_fixture_domains() {
        for d in [misreport_domain(), antipodal_domain()] {
            for ext in ExtensionKind::ALL {
                let r = check_rule(RuleProperty::Participation, &RuleSpec::MaxHam, ext, &d, 3).unwrap();
                assert!(r.holds(), "{ext} {:?}", r.finding);
                assert!(check_part_implies_antipodal(&RuleSpec::MaxHam, &d, 3).unwrap().holds());
            }
        }
    }

    #[test]
    fn all_mode_lists_every_misreport() {
        let p = pf(&["111000", "000000"]);
        let all =
            find_all_manipulations(&RuleSpec::MaxHam, ExtensionKind::Decisive, &misreport_domain(), &p, 1).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].untruthful, Some(j("111111")));
        // reporting 000000 or 110000 ties every candidate under MaxEq, so the whole
        // domain (truth included) is returned
        let all =
            find_all_manipulations(&RuleSpec::MaxEq, ExtensionKind::Decisive, &misreport_domain(), &p, 1).unwrap();
        let reports: Vec<String> = all.iter().map(|f| f.untruthful.unwrap().to_string()).collect();
        assert_eq!(reports, ["000000", "110000", "111111"]);
        assert!(all
            .iter()
            .all(|f| f.reverify(&RuleSpec::MaxEq, &misreport_domain()).unwrap()));
    }

    #[test]
    fn kind_and_property_names() {
        for k in ManipulationKind::ALL {
            assert_eq!(k.name().parse::<ManipulationKind>().unwrap(), k);
            assert_eq!(k.property().kind(), k);
            assert_eq!(k.property().name().parse::<RuleProperty>().unwrap(), k.property());
        }
    }
}

#[cfg(test)]
mod scans {
    use super::*;
    use crate::reference;

    #[test]
    fn every_finding_verifies() {
        let props = [
            RuleProperty::Strategyproofness,
            RuleProperty::Participation,
            RuleProperty::AntipodalStrategyproofness,
        ];
        for s in reference::subsets(&reference::bitstrings(3), 2..=4) {
            let d = Domain::parse(s.iter().map(String::as_str)).unwrap();
            for prop in props {
                for ext in ExtensionKind::ALL {
                    for rule in [RuleSpec::MaxHam, RuleSpec::MaxEq] {
                        let r = check_rule_in(prop, &rule, ext, &d, &SearchSpace::new(3)).unwrap();
                        if let Some(f) = &r.finding {
                            assert!(f.reverify(&rule, &d).unwrap(), "{prop} {rule} {ext} {f:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn strategyproofness_fails_on_the_misreport_domain() {
        let d = Domain::parse(["000000", "110000", "111000", "111111"]).unwrap();
        for rule in [RuleSpec::MaxHam, RuleSpec::MaxEq] {
            let r = check_rule_in(
                RuleProperty::Strategyproofness,
                &rule,
                ExtensionKind::Decisive,
                &d,
                &SearchSpace::new(2),
            )
            .unwrap();
            assert!(!r.holds());
            let f = r.finding.unwrap();
            assert!(f.untruthful.is_some_and(|u| u != f.truthful()));
        }
    }
}
