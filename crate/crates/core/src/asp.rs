//! Answer Set Programming encodings of MaxEq outcome determination and of
//! single-agent manipulation, plus a decoder for solver output.
//!
//! Programs use `voter/1`, `issue/1` and `js/2`. Both polarities of every
//! issue are declared (`issue(p). issue(-p).`) so that the distance
//! aggregate counts disagreements in either direction. The outcome agent is
//! `col`.
//!
//! The manipulation program targets a meta-interpreter that reads
//! optimisation criteria from `_criteria(Level,Weight,Atom)` and
//! `_optimize(Level,Weight,card|incl)` atoms, with higher levels taking
//! priority. Its guess line keeps the comma-separated choice syntax that
//! such pipelines accept.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Stdio};

use crate::agenda::{Agenda, Domain};
use crate::constraints::Formula;
use crate::error::{Error, Result};
use crate::judgment::Judgment;
use crate::profile::Profile;

/// Distance, extremes, inequity and the inequity objective.
pub const MAXEQ_TEMPLATE: &str = "\
dist(A,D) :- voter(A), D = #count { X : issue(X), js(col,X), js(A,-X) }.
maxdist(Max) :- Max = #max { D : dist(A,D) }.
mindist(Min) :- Min = #min { D : dist(A,D) }.
inequity(Max-Min) :- maxdist(Max), mindist(Min).
#minimize { I@30 : inequity(I) }.
";

/// Lower-priority objective selecting the MaxEq winners closest to the
/// farthest agent.
pub const MAXHAM_REFINEMENT: &str = "#minimize { Max@20 : maxdist(Max) }.\n";

const OUTCOME_GUESS: &str = "1 { js(col,X); js(col,-X) } 1 :- issue(X).\n";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AspRule {
    MaxEq,
    MaxEqThenMaxHam,
}

/// Where the admissible judgments come from.
#[derive(Debug, Clone, Copy)]
pub enum Admissible<'a> {
    /// The agenda's own constraint, if any.
    Agenda,
    /// An explicit list of judgments.
    Explicit(&'a Domain),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AspProgram {
    pub facts: String,
    pub rules: String,
}

impl AspProgram {
    pub fn text(&self) -> String {
        format!("{}{}", self.facts, self.rules)
    }
}

/// ASP constants for the agenda's issues. Labels are used verbatim when all
/// of them are valid constants; otherwise every issue becomes `x1..xm`.
pub fn asp_labels(agenda: &Agenda) -> Vec<String> {
    let valid = |s: &str| {
        s.starts_with(|c: char| c.is_ascii_lowercase())
            && s != "not"
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    };
    if agenda.issues().iter().all(|l| valid(l)) {
        agenda.issues().to_vec()
    } else {
        (1..=agenda.len()).map(|k| format!("x{k}")).collect()
    }
}

fn literal(labels: &[String], j: &Judgment, k: usize) -> String {
    if j.get(k) {
        labels[k].clone()
    } else {
        format!("-{}", labels[k])
    }
}

fn check(agenda: &Agenda, admissible: Admissible<'_>, p: &Profile) -> Result<()> {
    if p.width() != agenda.len() {
        return Err(Error::DimensionMismatch {
            expected: agenda.len(),
            actual: p.width(),
        });
    }
    if let Admissible::Explicit(d) = admissible {
        p.check_within(d)?;
    }
    Ok(())
}

fn issue_facts(out: &mut String, labels: &[String]) {
    for l in labels {
        writeln!(out, "issue({l}). issue(-{l}).").unwrap();
    }
}

fn judgment_facts(out: &mut String, labels: &[String], agent: &str, j: &Judgment) {
    let atoms: Vec<String> = (0..labels.len())
        .map(|k| format!("js({agent},{}).", literal(labels, j, k)))
        .collect();
    writeln!(out, "{}", atoms.join(" ")).unwrap();
}

/// Restricts every agent `A` with `guessed(A)` to admissible judgments.
fn admissibility_rules(out: &mut String, agenda: &Agenda, labels: &[String], admissible: Admissible<'_>) {
    match admissible {
        Admissible::Agenda => {
            if let Some(f) = agenda.constraint() {
                let mut next = 0;
                formula_rules(out, agenda, labels, f, &mut next);
                out.push_str(":- guessed(A), not sat(A,0).\n");
            }
        }
        Admissible::Explicit(d) => {
            for (k, j) in d.iter().enumerate() {
                let bits: Vec<String> = (0..labels.len())
                    .map(|x| format!("member({},{},{}).", k + 1, labels[x], u8::from(j.get(x))))
                    .collect();
                writeln!(out, "{}", bits.join(" ")).unwrap();
            }
            out.push_str("mismatch(A,K) :- guessed(A), member(K,X,1), js(A,-X).\n");
            out.push_str("mismatch(A,K) :- guessed(A), member(K,X,0), js(A,X).\n");
            out.push_str("ok(A) :- guessed(A), member(K,_,_), not mismatch(A,K).\n");
            out.push_str(":- guessed(A), not ok(A).\n");
        }
    }
}

/// Emits `sat(A,id)` rules bottom-up and returns the node id of `f`.
fn formula_rules(out: &mut String, agenda: &Agenda, labels: &[String], f: &Formula, next: &mut usize) -> usize {
    let id = *next;
    *next += 1;
    let mut child = |g: &Formula, out: &mut String| formula_rules(out, agenda, labels, g, next);
    match f {
        Formula::True => writeln!(out, "sat(A,{id}) :- guessed(A).").unwrap(),
        Formula::False => {}
        Formula::Var(v) => {
            let k = agenda.index_of(v).expect("agenda validated its constraint");
            writeln!(out, "sat(A,{id}) :- guessed(A), js(A,{}).", labels[k]).unwrap();
        }
        Formula::Not(a) => {
            let a = child(a, out);
            writeln!(out, "sat(A,{id}) :- guessed(A), not sat(A,{a}).").unwrap();
        }
        Formula::And(a, b) => {
            let (a, b) = (child(a, out), child(b, out));
            writeln!(out, "sat(A,{id}) :- sat(A,{a}), sat(A,{b}).").unwrap();
        }
        Formula::Or(a, b) => {
            let (a, b) = (child(a, out), child(b, out));
            writeln!(out, "sat(A,{id}) :- sat(A,{a}).").unwrap();
            writeln!(out, "sat(A,{id}) :- sat(A,{b}).").unwrap();
        }
        Formula::Implies(a, b) => {
            let (a, b) = (child(a, out), child(b, out));
            writeln!(out, "sat(A,{id}) :- guessed(A), not sat(A,{a}).").unwrap();
            writeln!(out, "sat(A,{id}) :- sat(A,{b}).").unwrap();
        }
        Formula::Iff(a, b) => {
            let (a, b) = (child(a, out), child(b, out));
            writeln!(out, "sat(A,{id}) :- sat(A,{a}), sat(A,{b}).").unwrap();
            writeln!(out, "sat(A,{id}) :- guessed(A), not sat(A,{a}), not sat(A,{b}).").unwrap();
        }
    }
    id
}

/// Program whose optimal answer sets are exactly the MaxEq (or refined)
/// outcomes, read off the `js(col,·)` atoms.
pub fn emit_outcome_program(
    agenda: &Agenda,
    admissible: Admissible<'_>,
    p: &Profile,
    rule: AspRule,
) -> Result<AspProgram> {
    check(agenda, admissible, p)?;
    let labels = asp_labels(agenda);
    let mut facts = String::new();
    for a in 1..=p.len() {
        writeln!(facts, "voter({a}).").unwrap();
    }
    issue_facts(&mut facts, &labels);
    for (a, j) in p.iter().enumerate() {
        judgment_facts(&mut facts, &labels, &(a + 1).to_string(), j);
    }
    let mut rules = String::new();
    rules.push_str("guessed(col).\n");
    rules.push_str(OUTCOME_GUESS);
    admissibility_rules(&mut rules, agenda, &labels, admissible);
    rules.push_str(MAXEQ_TEMPLATE);
    if rule == AspRule::MaxEqThenMaxHam {
        rules.push_str(MAXHAM_REFINEMENT);
    }
    Ok(AspProgram { facts, rules })
}

/// Program for the meta-interpreter whose surviving answer sets are the
/// successful MaxEq misreports of agent `i` under the decisive extension.
///
/// The manipulator is renumbered as voter 1; the other agents follow in
/// their original order.
pub fn emit_manipulation_program(
    agenda: &Agenda,
    admissible: Admissible<'_>,
    p: &Profile,
    i: usize,
) -> Result<AspProgram> {
    check(agenda, admissible, p)?;
    let truth = p.agent(i)?;
    let labels = asp_labels(agenda);
    let mut order = vec![truth];
    order.extend(p.iter().enumerate().filter(|(k, _)| k + 1 != i).map(|(_, j)| *j));

    let mut facts = String::new();
    for a in 1..=order.len() {
        writeln!(facts, "voter({a}).").unwrap();
    }
    issue_facts(&mut facts, &labels);
    for (a, j) in order.iter().enumerate() {
        judgment_facts(&mut facts, &labels, &(a + 1).to_string(), j);
    }
    facts.push_str("prof(orig). prof(manip).\n");
    writeln!(facts, "inprof(orig,1..{}).", order.len()).unwrap();
    facts.push_str("inprof(manip,prime(1)).\n");
    if order.len() > 1 {
        writeln!(facts, "inprof(manip,2..{}).", order.len()).unwrap();
    }
    facts.push_str("outcome(col,orig). outcome(prime(col),manip).\n");

    let mut r = String::new();
    r.push_str("voter(prime(1)).\n");
    r.push_str("1 { js(prime(1),X), js(prime(1),-X) } 1 :- issue(X).\n");
    r.push_str("cand(C) :- outcome(C,_).\n");
    r.push_str("1 { js(C,X); js(C,-X) } 1 :- cand(C), issue(X).\n");
    r.push_str("guessed(prime(1)). guessed(col). guessed(prime(col)).\n");
    admissibility_rules(&mut r, agenda, &labels, admissible);
    r.push_str(
        "\
cdist(C,P,A,D) :- cand(C), inprof(P,A), D = #count { X : issue(X), js(C,X), js(A,-X) }.
cmax(C,P,M) :- cand(C), prof(P), M = #max { D : cdist(C,P,A,D) }.
cmin(C,P,M) :- cand(C), prof(P), M = #min { D : cdist(C,P,A,D) }.
cineq(C,P,M-N) :- cmax(C,P,M), cmin(C,P,N).
eineq(C,I) :- outcome(C,P), cineq(C,P,I).
ineq_unit(C,1..I) :- eineq(C,I).
_criteria(30,1,ineq_unit(C,K)) :- ineq_unit(C,K).
_optimize(30,1,card).
_criteria(40,1,js(prime(1),X)) :- js(prime(1),X).
_optimize(40,1,incl).
tdist(C,D) :- cand(C), D = #count { X : issue(X), js(C,X), js(1,-X) }.
closer :- tdist(prime(col),D1), tdist(col,D0), D1 < D0.
both_in :- cineq(col,manip,I), eineq(prime(col),I), cineq(prime(col),orig,K), eineq(col,K).
witness :- closer, not both_in.
:- successful, not witness.
unsuccessful :- not successful.
successful :- not unsuccessful.
_criteria(10,1,unsuccessful) :- unsuccessful.
_optimize(10,1,card).
:- unsuccessful.
",
    );
    Ok(AspProgram { facts, rules: r })
}

/// Decodes the optimal models of solver output in the
/// `Answer: k` / atoms / `Optimization: …` / `OPTIMUM FOUND` format.
///
/// Returns the distinct `js(col,·)` judgments of the models whose
/// optimisation vector is lexicographically minimal, in ascending order.
/// Unsatisfiable output decodes to no judgments.
pub fn parse_answer_sets(output: &str, agenda: &Agenda) -> Result<Vec<Judgment>> {
    let labels = asp_labels(agenda);
    let mut models: Vec<(Vec<i64>, Judgment)> = Vec::new();
    let mut optimum = false;
    let mut unsat = false;
    let mut lines = output.lines().peekable();
    while let Some(line) = lines.next() {
        let line = line.trim();
        if line.starts_with("Answer:") {
            let atoms = lines
                .next()
                .ok_or_else(|| Error::SolverOutput("answer without atoms".into()))?;
            let j = decode_model(atoms, &labels)?;
            let cost = match lines.peek().map(|l| l.trim()) {
                Some(l) if l.starts_with("Optimization:") => {
                    lines.next();
                    l["Optimization:".len()..]
                        .split_whitespace()
                        .map(|t| t.parse().map_err(|_| Error::SolverOutput(format!("bad cost {t:?}"))))
                        .collect::<Result<Vec<i64>>>()?
                }
                _ => Vec::new(),
            };
            models.push((cost, j));
        } else if line == "OPTIMUM FOUND" {
            optimum = true;
        } else if line == "UNSATISFIABLE" {
            unsat = true;
        }
    }
    if unsat && models.is_empty() {
        return Ok(Vec::new());
    }
    if !optimum {
        return Err(Error::SolverOutput("no OPTIMUM FOUND marker".into()));
    }
    let Some(best) = models.iter().map(|(c, _)| c.clone()).min() else {
        return Ok(Vec::new());
    };
    let set: BTreeSet<Judgment> = models.into_iter().filter(|(c, _)| *c == best).map(|(_, j)| j).collect();
    Ok(set.into_iter().collect())
}

fn decode_model(atoms: &str, labels: &[String]) -> Result<Judgment> {
    let mut values: Vec<Option<bool>> = vec![None; labels.len()];
    for atom in atoms.split_whitespace() {
        let Some(arg) = atom.strip_prefix("js(col,").and_then(|a| a.strip_suffix(')')) else {
            continue;
        };
        let (positive, name) = match arg.strip_prefix('-') {
            Some(n) => (false, n),
            None => (true, arg),
        };
        let k = labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::SolverOutput(format!("unknown issue {name:?}")))?;
        if values[k].replace(positive).is_some_and(|v| v != positive) {
            return Err(Error::SolverOutput(format!("issue {name:?} decided both ways")));
        }
    }
    let bits: Vec<bool> = values
        .iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| Error::SolverOutput(format!("issue {:?} undecided", labels[k]))))
        .collect::<Result<_>>()?;
    Judgment::from_bools(&bits)
}

/// Runs `solver` on the program, enumerating all optimal models, and
/// returns its standard output.
pub fn run_solver(solver: &Path, program: &AspProgram) -> Result<String> {
    let mut child = Command::new(solver)
        .args(["--opt-mode=optN", "-n", "0", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| Error::SolverOutput(format!("cannot start {}: {e}", solver.display())))?;
    child
        .stdin
        .take()
        .expect("piped")
        .write_all(program.text().as_bytes())
        .map_err(|e| Error::SolverOutput(e.to_string()))?;
    let out = child
        .wait_with_output()
        .map_err(|e| Error::SolverOutput(e.to_string()))?;
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    if stdout.trim().is_empty() {
        return Err(Error::SolverOutput(String::from_utf8_lossy(&out.stderr).into_owned()));
    }
    Ok(stdout)
}


/// Runs only when `EGAL_SOLVER` names an ASP solver executable.
#[cfg(test)]
mod solver {
    use std::path::PathBuf;

    use super::*;
    use crate::constraints::{enumerate_domain, parse_formula};
    use crate::gadgets::{build_gadget, ThreeCnf};
    use crate::rules::{max_eq, max_eq_lex};

    fn solver() -> Option<PathBuf> {
        let path = std::env::var_os("EGAL_SOLVER").map(PathBuf::from);
        if path.is_none() {
            eprintln!("EGAL_SOLVER not set; skipping");
        }
        path
    }

    #[test]
    fn constrained_agenda_both_objectives() {
        let Some(solver) = solver() else { return };
        let f = parse_formula("r <-> p & q").unwrap();
        let agenda = Agenda::new(["p", "q", "r"], Some(f)).unwrap();
        let d = enumerate_domain(&agenda, 3).unwrap();
        for profile in [["111", "010"], ["000", "111"], ["100", "010"]] {
            let p = Profile::parse(profile).unwrap();
            for (rule, expected) in [
                (AspRule::MaxEq, max_eq(&d, &p)),
                (AspRule::MaxEqThenMaxHam, max_eq_lex(&d, &p)),
            ] {
                let program = emit_outcome_program(&agenda, Admissible::Agenda, &p, rule).unwrap();
                let models = parse_answer_sets(&run_solver(&solver, &program).unwrap(), &agenda).unwrap();
                assert_eq!(models, expected.unwrap().winners(), "{profile:?} {rule:?}");
            }
        }
    }

    #[test]
    fn explicit_domain_with_awkward_labels() {
        let Some(solver) = solver() else { return };
        let agenda = Agenda::new(["Alpha", "not", "c"], None).unwrap();
        let d = Domain::parse(["001", "010", "100", "111"]).unwrap();
        let p = Profile::parse(["001", "010", "010"]).unwrap();
        let program = emit_outcome_program(&agenda, Admissible::Explicit(&d), &p, AspRule::MaxEq).unwrap();
        assert!(program.text().contains("issue(x1)."));
        let models = parse_answer_sets(&run_solver(&solver, &program).unwrap(), &agenda).unwrap();
        assert_eq!(models, max_eq(&d, &p).unwrap().winners());
    }

    #[test]
    fn gadget_profile() {
        let Some(solver) = solver() else { return };
        let f = ThreeCnf::new(3, vec![[1, 2, 3]]).unwrap();
        let g = build_gadget(&f).unwrap();
        let d = Domain::free(g.agenda.len(), 20).unwrap();
        let program = emit_outcome_program(&g.agenda, Admissible::Agenda, &g.profile, AspRule::MaxEq).unwrap();
        let models = parse_answer_sets(&run_solver(&solver, &program).unwrap(), &g.agenda).unwrap();
        assert_eq!(models, max_eq(&d, &g.profile).unwrap().winners());
    }
}
