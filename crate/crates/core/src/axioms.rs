//! Exhaustive refuters for the egalitarian, majoritarian and belief-merging
//! style properties of a rule on a bounded profile space.
//!
//! A "holds" verdict only means no counterexample exists among the searched
//! profiles. Every counterexample carries a witness that
//! [`verify_witness`] re-checks from the defining condition.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::agenda::{Domain, Outcome};
use crate::error::{Error, Result};
use crate::judgment::{hamming, Judgment};
use crate::profile::Profile;
use crate::rules::{apply_rule, RuleSpec};
use crate::search::SearchSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Maximin,
    Equity,
    Majoritarian,
    SenHammond,
    PigouDalton,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Maximin,
        Axiom::Equity,
        Axiom::Majoritarian,
        Axiom::SenHammond,
        Axiom::PigouDalton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Maximin => "maximin",
            Axiom::Equity => "equity",
            Axiom::Majoritarian => "majoritarian",
            Axiom::SenHammond => "sen-hammond",
            Axiom::PigouDalton => "pigou-dalton",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnSearchedSpace,
    Counterexample,
}

/// A violating configuration.
///
/// | axiom | `judgments` | `agents` |
/// |---|---|---|
/// | maximin | `[J, J']`, `J ∈ F(Pf)` | `[j]` |
/// | equity | `[J, J']`, `J ∈ F(Pf)` | `[i', j']` |
/// | majoritarian | `[m(Pf)]` | `[]` |
/// | sen-hammond | `[J, J']`, `J ∈ F(Pf)`, `J' ∉ F(Pf)` | `[i, j]` |
/// | pigou-dalton | `[J, J']`, both in `F(Pf)` | `[i, j]` |
///
/// Agents are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub profile: Profile,
    pub outcome: Outcome,
    pub judgments: Vec<Judgment>,
    pub agents: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub rule: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub profiles_searched: u128,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSearchedSpace
    }
}

/// Distances from every agent (rows) to every domain member (columns).
struct Table<'a> {
    d: &'a Domain,
    rows: Vec<Vec<usize>>,
}

impl<'a> Table<'a> {
    fn new(d: &'a Domain, p: &Profile) -> Self {
        let rows = p.iter().map(|a| d.iter().map(|c| a.distance(c)).collect()).collect();
        Table { d, rows }
    }

    fn maxdist(&self, c: usize) -> usize {
        self.rows.iter().map(|r| r[c]).max().expect("nonempty profile")
    }

    fn inequity(&self, c: usize) -> usize {
        let lo = self.rows.iter().map(|r| r[c]).min().expect("nonempty profile");
        self.maxdist(c) - lo
    }

    fn column(&self, j: &Judgment) -> usize {
        self.d.members().binary_search(j).expect("outcome inside domain")
    }
}

/// The first violation of `axiom` on this one profile, if any.
pub fn violation(axiom: Axiom, rule: &RuleSpec, d: &Domain, p: &Profile) -> Result<Option<Witness>> {
    let outcome = apply_rule(rule, d, p)?;
    let t = Table::new(d, p);
    let witness = |judgments: Vec<Judgment>, agents: Vec<usize>| Witness {
        profile: p.clone(),
        outcome: outcome.clone(),
        judgments,
        agents,
    };
    let found = match axiom {
        Axiom::Maximin => {
            let best = (0..d.len()).min_by_key(|&c| t.maxdist(c)).expect("nonempty domain");
            outcome
                .iter()
                .find(|j| t.maxdist(t.column(j)) > t.maxdist(best))
                .map(|j| {
                    let c = t.column(j);
                    let worst = t.rows.iter().position(|r| r[c] == t.maxdist(c)).expect("attained");
                    witness(vec![*j, d.members()[best]], vec![worst + 1])
                })
        }
        Axiom::Equity => {
            let best = (0..d.len()).min_by_key(|&c| t.inequity(c)).expect("nonempty domain");
            outcome
                .iter()
                .find(|j| t.inequity(t.column(j)) > t.inequity(best))
                .map(|j| {
                    let c = t.column(j);
                    let col: Vec<usize> = t.rows.iter().map(|r| r[c]).collect();
                    let far = col.iter().position(|&x| x == *col.iter().max().unwrap()).unwrap();
                    let near = col.iter().position(|&x| x == *col.iter().min().unwrap()).unwrap();
                    witness(vec![*j, d.members()[best]], vec![far + 1, near + 1])
                })
        }
        Axiom::Majoritarian => {
            let m = p.majority_judgment();
            (d.contains(&m) && outcome != Outcome::singleton(m)).then(|| witness(vec![m], vec![]))
        }
        Axiom::SenHammond => pair_scan(&t, |i, j, a, b| {
            let (ja, jb) = (d.members()[a], d.members()[b]);
            outcome.contains(&ja) && !outcome.contains(&jb) && sen_hammond_premise(&t.rows, i, j, a, b)
        })
        .map(|(i, j, a, b)| witness(vec![d.members()[a], d.members()[b]], vec![i + 1, j + 1])),
        Axiom::PigouDalton => pair_scan(&t, |i, j, a, b| {
            let (ja, jb) = (d.members()[a], d.members()[b]);
            outcome.contains(&ja) && outcome.contains(&jb) && pigou_dalton_premise(&t.rows, i, j, a, b)
        })
        .map(|(i, j, a, b)| witness(vec![d.members()[a], d.members()[b]], vec![i + 1, j + 1])),
    };
    Ok(found)
}

/// First `(i, j, J, J')` index tuple satisfying `pred`, agents `i ≠ j`.
fn pair_scan(t: &Table<'_>, pred: impl Fn(usize, usize, usize, usize) -> bool) -> Option<(usize, usize, usize, usize)> {
    let n = t.rows.len();
    let k = t.d.len();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            for a in 0..k {
                for b in 0..k {
                    if pred(i, j, a, b) {
                        return Some((i, j, a, b));
                    }
                }
            }
        }
    }
    None
}

/// `rows[x][c]` is the distance from agent `x` to candidate `c`.
fn others_equidistant(rows: &[Vec<usize>], i: usize, j: usize, a: usize, b: usize) -> bool {
    rows.iter().enumerate().all(|(x, r)| x == i || x == j || r[a] == r[b])
}

fn sen_hammond_premise(rows: &[Vec<usize>], i: usize, j: usize, a: usize, b: usize) -> bool {
    let (ri, rj) = (&rows[i], &rows[j]);
    ri[a] < ri[b] && ri[b] < rj[b] && rj[b] < rj[a] && others_equidistant(rows, i, j, a, b)
}

/// Agent `i` loses exactly what agent `j` gains when moving from `a` to `b`.
fn pigou_dalton_premise(rows: &[Vec<usize>], i: usize, j: usize, a: usize, b: usize) -> bool {
    let (ri, rj) = (&rows[i], &rows[j]);
    ri[a] < ri[b]
        && ri[b] <= rj[b]
        && rj[b] < rj[a]
        && ri[b] - ri[a] == rj[a] - rj[b]
        && others_equidistant(rows, i, j, a, b)
}

fn per_profile_cost(axiom: Axiom, d: &Domain, n_max: usize) -> u128 {
    let k = d.len() as u128;
    match axiom {
        Axiom::SenHammond | Axiom::PigouDalton => k * k * (n_max as u128).pow(2),
        _ => k,
    }
}

/// Scans `space` for the canonically first violation of `axiom`.
pub fn check_axiom(axiom: Axiom, rule: &RuleSpec, d: &Domain, space: &SearchSpace) -> Result<AxiomReport> {
    space.check_budget(d, per_profile_cost(axiom, d, space.n_max))?;
    let profiles = space.profiles(d)?;
    let found = profiles
        .par_iter()
        .map(|p| violation(axiom, rule, d, p))
        .find_map_first(|r| r.transpose())
        .transpose()?;
    Ok(AxiomReport {
        axiom,
        rule: rule.name().to_owned(),
        verdict: if found.is_some() {
            Verdict::Counterexample
        } else {
            Verdict::HoldsOnSearchedSpace
        },
        witness: found,
        profiles_searched: profiles.len() as u128,
    })
}

pub fn check_maximin(rule: &RuleSpec, d: &Domain, n_max: usize) -> Result<AxiomReport> {
    check_axiom(Axiom::Maximin, rule, d, &SearchSpace::new(n_max))
}

pub fn check_equity(rule: &RuleSpec, d: &Domain, n_max: usize) -> Result<AxiomReport> {
    check_axiom(Axiom::Equity, rule, d, &SearchSpace::new(n_max))
}

pub fn check_majoritarian(rule: &RuleSpec, d: &Domain, n_max: usize) -> Result<AxiomReport> {
    check_axiom(Axiom::Majoritarian, rule, d, &SearchSpace::new(n_max))
}

pub fn check_sen_hammond(rule: &RuleSpec, d: &Domain, n_max: usize) -> Result<AxiomReport> {
    check_axiom(Axiom::SenHammond, rule, d, &SearchSpace::new(n_max))
}

pub fn check_pigou_dalton(rule: &RuleSpec, d: &Domain, n_max: usize) -> Result<AxiomReport> {
    check_axiom(Axiom::PigouDalton, rule, d, &SearchSpace::new(n_max))
}

/// Recomputes the outcome and re-evaluates the axiom's defining condition
/// on the witness using only pairwise distances.
pub fn verify_witness(axiom: Axiom, rule: &RuleSpec, d: &Domain, w: &Witness) -> Result<bool> {
    let outcome = apply_rule(rule, d, &w.profile)?;
    if outcome != w.outcome {
        return Ok(false);
    }
    let agents = w.profile.judgments();
    let h = |x: &Judgment, y: &Judgment| hamming(x, y);
    let agent = |i: usize| w.profile.agent(i);
    let shape = |nj: usize, na: usize| w.judgments.len() == nj && w.agents.len() == na;
    let bad = || Error::Instance(format!("witness does not fit axiom {axiom}"));
    Ok(match axiom {
        Axiom::Maximin => {
            if !shape(2, 1) {
                return Err(bad());
            }
            let (j, jp) = (w.judgments[0], w.judgments[1]);
            let worst = h(&agent(w.agents[0])?, &j)?;
            let mut ok = outcome.contains(&j) && d.contains(&jp);
            for ai in agents {
                ok &= h(ai, &jp)? < worst;
            }
            ok
        }
        Axiom::Equity => {
            if !shape(2, 2) {
                return Err(bad());
            }
            let (j, jp) = (w.judgments[0], w.judgments[1]);
            let gap = h(&agent(w.agents[0])?, &j)?.abs_diff(h(&agent(w.agents[1])?, &j)?);
            let mut ok = outcome.contains(&j) && d.contains(&jp);
            for ai in agents {
                for aj in agents {
                    ok &= h(ai, &jp)?.abs_diff(h(aj, &jp)?) < gap;
                }
            }
            ok
        }
        Axiom::Majoritarian => {
            if !shape(1, 0) {
                return Err(bad());
            }
            let m = w.profile.majority_judgment();
            w.judgments[0] == m && d.contains(&m) && outcome != Outcome::singleton(m)
        }
        Axiom::SenHammond | Axiom::PigouDalton => {
            if !shape(2, 2) {
                return Err(bad());
            }
            let (i, j) = (w.agents[0], w.agents[1]);
            let (ja, jb) = (w.judgments[0], w.judgments[1]);
            if i == j || !d.contains(&ja) || !d.contains(&jb) {
                return Ok(false);
            }
            let rows: Vec<Vec<usize>> = agents
                .iter()
                .map(|x| Ok(vec![h(x, &ja)?, h(x, &jb)?]))
                .collect::<Result<_>>()?;
            let (i, j) = (i - 1, j - 1);
            if i >= rows.len() || j >= rows.len() {
                return Ok(false);
            }
            if axiom == Axiom::SenHammond {
                sen_hammond_premise(&rows, i, j, 0, 1) && outcome.contains(&ja) && !outcome.contains(&jb)
            } else {
                pigou_dalton_premise(&rows, i, j, 0, 1) && outcome.contains(&ja) && outcome.contains(&jb)
            }
        }
    })
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

    fn split_domain() -> Domain {
        dom(&["110000", "001100", "010000", "111111"])
    }

    #[test]
    fn maximin_fixture() {
        let p = pf(&["110000", "001100"]);
        let w = violation(Axiom::Maximin, &RuleSpec::MaxEq, &split_domain(), &p)
            .unwrap()
            .unwrap();
        assert_eq!(w.judgments[0].to_string(), "111111");
        assert_eq!(w.judgments[1].to_string(), "010000");
        assert!(verify_witness(Axiom::Maximin, &RuleSpec::MaxEq, &split_domain(), &w).unwrap());
        assert!(check_maximin(&RuleSpec::MaxHam, &split_domain(), 3).unwrap().holds());
        let r = check_maximin(&RuleSpec::MaxEq, &split_domain(), 2).unwrap();
        assert!(!r.holds());
        assert!(verify_witness(
            Axiom::Maximin,
            &RuleSpec::MaxEq,
            &split_domain(),
            r.witness.as_ref().unwrap()
        )
        .unwrap());
    }

    #[test]
    fn equity_fixture() {
        let p = pf(&["110000", "001100"]);
        let w = violation(Axiom::Equity, &RuleSpec::MaxHam, &split_domain(), &p)
            .unwrap()
            .unwrap();
        assert_eq!(w.judgments, vec!["010000".parse().unwrap(), "111111".parse().unwrap()]);
        assert!(verify_witness(Axiom::Equity, &RuleSpec::MaxHam, &split_domain(), &w).unwrap());
        assert!(check_equity(&RuleSpec::MaxEq, &split_domain(), 3).unwrap().holds());
        assert!(check_equity(&RuleSpec::MaxEqThenMaxHam, &split_domain(), 3)
            .unwrap()
            .holds());
        assert!(!check_equity(&RuleSpec::MaxHam, &split_domain(), 2).unwrap().holds());
    }

    #[test]
    fn first_judgment_table_violates_maximin() {
        let d = dom(&["000", "011", "111"]);
        let first = d.members()[0];
        let t = TableRule::from_fn(&d, 3, |_| Outcome::singleton(first));
        let r = check_maximin(&RuleSpec::Table(t.clone()), &d, 2).unwrap();
        assert!(!r.holds());
        assert!(verify_witness(Axiom::Maximin, &RuleSpec::Table(t), &d, r.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn egalitarian_rules_are_not_majoritarian() {
        let d = Domain::free(2, 20).unwrap();
        for rule in [RuleSpec::MaxHam, RuleSpec::MaxEq] {
            let r = check_majoritarian(&rule, &d, 3).unwrap();
            assert!(!r.holds());
            assert!(verify_witness(Axiom::Majoritarian, &rule, &d, r.witness.as_ref().unwrap()).unwrap());
        }
    }

    /// With at most two agents the strict majority is the issue-wise AND of
    /// the submitted judgments, so a support-keyed table can express it.
    #[test]
    fn majority_table_is_majoritarian() {
        let d = Domain::free(2, 20).unwrap();
        let t = TableRule::from_fn(&d, 2, |s| {
            let bits = s.iter().fold(u64::MAX, |acc, j| acc & j.index());
            Outcome::singleton(Judgment::from_index(2, bits & 0b11).unwrap())
        });
        let rule = RuleSpec::Table(t);
        assert!(check_majoritarian(&rule, &d, 2).unwrap().holds());
        let ordered = check_axiom(Axiom::Majoritarian, &rule, &d, &SearchSpace::new(2).ordered(true));
        assert!(ordered.unwrap().holds());
    }

    #[test]
    fn sen_hammond_holds_for_both_rules() {
        let d = dom(&["000", "001", "011", "111", "100"]);
        for rule in [RuleSpec::MaxHam, RuleSpec::MaxEq] {
            assert!(check_sen_hammond(&rule, &d, 3).unwrap().holds(), "{rule}");
        }
    }

    #[test]
    fn crafted_table_violates_sen_hammond() {
        // agents 0000 and 1110: J = 0000 and J' = 1000 satisfy 0 < 1 < 2 < 3
        let d = dom(&["0000", "1000", "1110"]);
        let mut t = TableRule::from_fn(&d, 3, |s| Outcome::singleton(s[0]));
        let support: Vec<Judgment> = ["0000", "1110"].iter().map(|s| s.parse().unwrap()).collect();
        t.insert(support, Outcome::parse(["0000"]).unwrap());
        let rule = RuleSpec::Table(t);
        let w = violation(Axiom::SenHammond, &rule, &d, &pf(&["0000", "1110"]))
            .unwrap()
            .unwrap();
        assert_eq!(w.agents, vec![1, 2]);
        assert_eq!(w.judgments[1].to_string(), "1000");
        assert!(verify_witness(Axiom::SenHammond, &rule, &d, &w).unwrap());
    }

    #[test]
    fn pigou_dalton_fixture() {
        let names = [
            "00000000111",
            "00000001110",
            "00000010011",
            "00000111000",
            "11111001111",
        ];
        let d = dom(&names);
        let p = pf(&names[2..]);
        let w = violation(Axiom::PigouDalton, &RuleSpec::MaxHam, &d, &p)
            .unwrap()
            .unwrap();
        assert_eq!(w.judgments[0].to_string(), names[0]);
        assert_eq!(w.judgments[1].to_string(), names[1]);
        assert_eq!(w.agents, vec![1, 2]);
        assert!(verify_witness(Axiom::PigouDalton, &RuleSpec::MaxHam, &d, &w).unwrap());
        assert!(!check_pigou_dalton(&RuleSpec::MaxHam, &d, 3).unwrap().holds());
    }

    #[test]
    fn vacuous_pigou_dalton() {
        let d = dom(&["00", "11"]);
        assert!(check_pigou_dalton(&RuleSpec::MaxHam, &d, 3).unwrap().holds());
    }

    #[test]
    fn tampered_witness_fails_verification() {
        let p = pf(&["110000", "001100"]);
        let mut w = violation(Axiom::Maximin, &RuleSpec::MaxEq, &split_domain(), &p)
            .unwrap()
            .unwrap();
        w.judgments.swap(0, 1);
        assert!(!verify_witness(Axiom::Maximin, &RuleSpec::MaxEq, &split_domain(), &w).unwrap());
    }

    #[test]
    fn axiom_names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert!("arbitration".parse::<Axiom>().is_err());
    }
}
