//! The equidistance gadget built from a 3CNF formula, and a brute-force
//! 1-in-3-satisfiability oracle to validate it against.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::agenda::{Agenda, Domain};
use crate::error::{Error, Result};
use crate::judgment::Judgment;
use crate::profile::Profile;
use crate::rules::min_inequity;

/// Largest variable count the oracle enumerates.
pub const ORACLE_CAP: usize = 20;

/// A conjunction of clauses with exactly three literals each. Literals are
/// signed 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ThreeCnf {
    n: usize,
    clauses: Vec<[i32; 3]>,
}

impl ThreeCnf {
    /// Rejects zero or out-of-range literals and clauses that mention a
    /// variable twice, whether with the same or opposite sign.
    pub fn new(n: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedClause("formula needs at least one variable".into()));
        }
        for c in &clauses {
            for lit in c {
                if *lit == 0 || lit.unsigned_abs() as usize > n {
                    return Err(Error::MalformedClause(format!("literal {lit} out of range 1..={n}")));
                }
            }
            let v = c.map(i32::unsigned_abs);
            if v[0] == v[1] || v[0] == v[2] || v[1] == v[2] {
                return Err(Error::MalformedClause(format!("{:?} repeats a variable", c)));
            }
        }
        Ok(ThreeCnf { n, clauses })
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// Parses DIMACS CNF. Every clause must have exactly three literals.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut literals: Vec<i32> = Vec::new();
        let mut clauses = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if header.is_some() || parts.len() != 3 || parts[0] != "cnf" {
                    return Err(Error::Dimacs(format!("bad header {line:?}")));
                }
                let num = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Dimacs(format!("bad header {line:?}")))
                };
                header = Some((num(parts[1])?, num(parts[2])?));
                continue;
            }
            if header.is_none() {
                return Err(Error::Dimacs("clause before header".into()));
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| Error::Dimacs(format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    let clause: [i32; 3] = literals
                        .as_slice()
                        .try_into()
                        .map_err(|_| Error::MalformedClause(format!("{literals:?} does not have three literals")))?;
                    clauses.push(clause);
                    literals.clear();
                } else {
                    literals.push(lit);
                }
            }
        }
        let (n, b) = header.ok_or_else(|| Error::Dimacs("missing header".into()))?;
        if !literals.is_empty() {
            return Err(Error::Dimacs("last clause is not terminated by 0".into()));
        }
        if clauses.len() != b {
            return Err(Error::Dimacs(format!(
                "header declares {b} clauses, found {}",
                clauses.len()
            )));
        }
        ThreeCnf::new(n, clauses)
    }

    /// Whether `assignment` (bit `v - 1` holds `x_v`) makes exactly one
    /// literal true in every clause.
    pub fn one_in_three(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .filter(|&&lit| (assignment >> (lit.unsigned_abs() - 1) & 1 == 1) == (lit > 0))
                .count()
                == 1
        })
    }
}

impl fmt::Display for ThreeCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.n, self.clauses.len())?;
        for c in &self.clauses {
            writeln!(f, "{} {} {} 0", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// The construction step a profile row comes from. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RowOrigin {
    /// `J_k`: `y_k` and `y'_k` accepted, everything else rejected.
    Unit { k: usize },
    /// `J_{n+k}`: the complement of `J_k` on the `y` and `y'` blocks.
    Complement { k: usize },
    /// `J_{clause,part}` for `part` in 1..=3.
    Clause { clause: usize, part: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub agenda: Agenda,
    pub profile: Profile,
    pub rows: Vec<RowOrigin>,
}

impl GadgetInstance {
    /// `y_k` and `y'_k` set per the assignment, `z = 00001`.
    pub fn assignment_judgment(&self, n: usize, assignment: u64) -> Judgment {
        let mut bits = vec![false; 2 * n + 5];
        for v in 0..n {
            let t = assignment >> v & 1 == 1;
            bits[v] = t;
            bits[n + v] = !t;
        }
        bits[2 * n + 4] = true;
        Judgment::from_bools(&bits).expect("width fits")
    }
}

const CLAUSE_Z: [[bool; 5]; 3] = [
    [false, false, false, false, true],
    [false, false, true, true, true],
    [true, true, false, false, true],
];

pub fn build_gadget(f: &ThreeCnf) -> Result<GadgetInstance> {
    let n = f.n;
    let m = 2 * n + 5;
    if m > crate::judgment::MAX_ISSUES {
        return Err(Error::TooManyIssues {
            max: crate::judgment::MAX_ISSUES,
            actual: m,
        });
    }
    let labels = (1..=n)
        .map(|k| format!("y{k}"))
        .chain((1..=n).map(|k| format!("yp{k}")))
        .chain((1..=5).map(|k| format!("z{k}")));
    let agenda = Agenda::new(labels, None)?;
    let mut rows = Vec::new();
    let mut judgments = Vec::new();
    for k in 0..n {
        let mut bits = vec![false; m];
        bits[k] = true;
        bits[n + k] = true;
        judgments.push(Judgment::from_bools(&bits)?);
        rows.push(RowOrigin::Unit { k: k + 1 });
    }
    for k in 0..n {
        let mut bits = vec![false; m];
        for v in (0..n).filter(|&v| v != k) {
            bits[v] = true;
            bits[n + v] = true;
        }
        judgments.push(Judgment::from_bools(&bits)?);
        rows.push(RowOrigin::Complement { k: k + 1 });
    }
    for (c, clause) in f.clauses.iter().enumerate() {
        for (part, z) in CLAUSE_Z.iter().enumerate() {
            let mut bits = vec![false; m];
            for lit in clause {
                let v = lit.unsigned_abs() as usize - 1;
                let straight = (*lit > 0) == (part == 0);
                bits[v] = straight;
                bits[n + v] = !straight;
            }
            bits[2 * n..].copy_from_slice(z);
            judgments.push(Judgment::from_bools(&bits)?);
            rows.push(RowOrigin::Clause {
                clause: c + 1,
                part: part + 1,
            });
        }
    }
    Ok(GadgetInstance {
        agenda,
        profile: Profile::new(judgments)?,
        rows,
    })
}

/// The first assignment, in increasing numeric order, satisfying exactly
/// one literal per clause.
pub fn one_in_three_assignment(f: &ThreeCnf) -> Result<Option<u64>> {
    if f.n > ORACLE_CAP {
        return Err(Error::CapacityExceeded {
            m: f.n,
            cap: ORACLE_CAP,
        });
    }
    Ok((0..1u64 << f.n).into_par_iter().find_first(|a| f.one_in_three(*a)))
}

pub fn one_in_three_oracle(f: &ThreeCnf) -> Result<bool> {
    Ok(one_in_three_assignment(f)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub issues: usize,
    pub rows: usize,
    pub min_inequity: usize,
    pub one_in_three_satisfiable: bool,
    /// The assignment judgment and its common distance to every row.
    pub witness: Option<(Judgment, usize)>,
    /// Checks that apply to this instance, all of which must be true.
    pub min_is_zero_iff_satisfiable: bool,
    pub min_is_even: bool,
    pub witness_uniform: Option<bool>,
    /// Only evaluated when the caller vouches for the second precondition.
    pub min_is_two_when_unsatisfiable: Option<bool>,
}

impl GadgetReport {
    pub fn ok(&self) -> bool {
        self.min_is_zero_iff_satisfiable
            && self.min_is_even
            && self.witness_uniform != Some(false)
            && self.min_is_two_when_unsatisfiable != Some(false)
    }
}

/// Builds the gadget and scans `{0,1}^{2n+5}` for the minimum inequity.
pub fn verify_gadget(f: &ThreeCnf, precondition_known: bool, cap: usize) -> Result<GadgetReport> {
    let g = build_gadget(f)?;
    let m = g.agenda.len();
    let d = Domain::free(m, cap)?;
    let min = min_inequity(&d, &g.profile)?;
    let assignment = one_in_three_assignment(f)?;
    let witness = assignment.map(|a| {
        let j = g.assignment_judgment(f.n, a);
        (j, j.distance(&g.profile.judgments()[0]))
    });
    let witness_uniform =
        witness.map(|(j, dist)| dist == f.n + 1 && g.profile.iter().all(|row| j.distance(row) == dist));
    let sat = assignment.is_some();
    Ok(GadgetReport {
        issues: m,
        rows: g.profile.len(),
        min_inequity: min,
        one_in_three_satisfiable: sat,
        witness,
        min_is_zero_iff_satisfiable: (min == 0) == sat,
        min_is_even: min % 2 == 0,
        witness_uniform,
        min_is_two_when_unsatisfiable: (precondition_known && !sat).then_some(min == 2),
    })
}
