//! `egal`: batch front end for outcome determination, axiom checks,
//! manipulation search, ASP emission and gadget construction.
//!
//! Exit status is 0 when a property holds or nothing was found, 1 when a
//! counterexample or finding is reported, and 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use egal_core::asp::{run_solver, AspRule};
use egal_core::{
    apply_rule, build_gadget, check_axiom, check_rule_in, emit_manipulation_program, emit_outcome_program,
    find_all_manipulations, find_antipodal, find_manipulation, find_noshow, parse_answer_sets, score_breakdown,
    verify_gadget, AntipodalResult, Axiom, AxiomReport, Domain, ExtensionKind, InstanceFile, ManipulationFinding,
    ManipulationKind, PropertyReport, RuleSpec, SearchSpace, ThreeCnf, DEFAULT_ENUM_CAP,
};

#[derive(Parser)]
#[command(name = "egal", version, about = "Egalitarian judgment aggregation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a rule's outcome on an instance file.
    Outcome(OutcomeArgs),
    /// Search a bounded profile space for an axiom violation.
    Axiom(AxiomArgs),
    /// Look for strategic manipulation.
    Manipulate(ManipulateArgs),
    /// Print an ASP encoding of the instance.
    EmitAsp(EmitArgs),
    /// Build the equidistance gadget from a DIMACS 3CNF file.
    Gadget(GadgetArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Maxham,
    Maxeq,
    #[value(name = "maxeq-lex")]
    MaxeqLex,
}

impl RuleArg {
    fn spec(self) -> RuleSpec {
        match self {
            RuleArg::Maxham => RuleSpec::MaxHam,
            RuleArg::Maxeq => RuleSpec::MaxEq,
            RuleArg::MaxeqLex => RuleSpec::MaxEqThenMaxHam,
        }
    }

    fn asp(self) -> Result<AspRule, String> {
        match self {
            RuleArg::Maxeq => Ok(AspRule::MaxEq),
            RuleArg::MaxeqLex => Ok(AspRule::MaxEqThenMaxHam),
            RuleArg::Maxham => Err("ASP encodings exist for maxeq and maxeq-lex only".into()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtArg {
    Pessimistic,
    Optimistic,
    Decisive,
}

impl From<ExtArg> for ExtensionKind {
    fn from(e: ExtArg) -> Self {
        match e {
            ExtArg::Pessimistic => ExtensionKind::Pessimistic,
            ExtArg::Optimistic => ExtensionKind::Optimistic,
            ExtArg::Decisive => ExtensionKind::Decisive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AxiomArg {
    Maximin,
    Equity,
    Majoritarian,
    #[value(name = "sen-hammond")]
    SenHammond,
    #[value(name = "pigou-dalton")]
    PigouDalton,
}

impl From<AxiomArg> for Axiom {
    fn from(a: AxiomArg) -> Self {
        match a {
            AxiomArg::Maximin => Axiom::Maximin,
            AxiomArg::Equity => Axiom::Equity,
            AxiomArg::Majoritarian => Axiom::Majoritarian,
            AxiomArg::SenHammond => Axiom::SenHammond,
            AxiomArg::PigouDalton => Axiom::PigouDalton,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    General,
    #[value(name = "no-show")]
    NoShow,
    Antipodal,
}

impl From<KindArg> for ManipulationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::General => ManipulationKind::General,
            KindArg::NoShow => ManipulationKind::NoShow,
            KindArg::Antipodal => ManipulationKind::Antipodal,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct OutcomeArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "maxham")]
    rule: RuleArg,
    /// Per-candidate distances, maximum, minimum and inequity.
    #[arg(long)]
    breakdown: bool,
    /// Cross-check the outcome with this ASP solver executable.
    #[arg(long)]
    solver: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct AxiomArgs {
    /// Instance file whose admissible judgments form the domain.
    #[arg(required_unless_present_any = ["free", "domain"])]
    file: Option<PathBuf>,
    /// Use all judgments over this many issues.
    #[arg(long, conflicts_with_all = ["file", "domain"])]
    free: Option<usize>,
    /// Explicit domain as bitstrings.
    #[arg(long, num_args = 1.., conflicts_with = "file")]
    domain: Option<Vec<String>>,
    #[arg(long, value_enum)]
    axiom: AxiomArg,
    #[arg(long, value_enum, default_value = "maxham")]
    rule: RuleArg,
    #[arg(long, default_value_t = 3)]
    n_max: usize,
    /// Enumerate ordered profiles instead of multisets.
    #[arg(long)]
    ordered: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ManipulateArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "general")]
    kind: KindArg,
    /// Manipulating agent (1-based). Every agent is tried when omitted.
    #[arg(long)]
    agent: Option<usize>,
    #[arg(long, value_enum, default_value = "decisive")]
    extension: ExtArg,
    #[arg(long, value_enum, default_value = "maxham")]
    rule: RuleArg,
    /// List every profitable misreport instead of the best one.
    #[arg(long, conflicts_with = "n_max")]
    all: bool,
    /// Scan all profiles up to this size instead of the instance profile.
    #[arg(long, conflicts_with = "agent")]
    n_max: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct EmitArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "maxeq")]
    rule: RuleArg,
    /// Emit the manipulation encoding for `--agent`.
    #[arg(long, requires = "agent")]
    manipulate: bool,
    #[arg(long, requires = "manipulate")]
    agent: Option<usize>,
}

#[derive(Args)]
struct GadgetArgs {
    file: PathBuf,
    /// Scan all judgments for the minimum inequity and check the gadget's properties.
    #[arg(long)]
    verify: bool,
    /// The formula is known to meet the second structural precondition.
    #[arg(long, requires = "verify")]
    precondition_known: bool,
    #[command(flatten)]
    common: Common,
}

/// A failure reported with exit status 2.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type Outcome = Result<bool, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Outcome(a) => outcome(a),
        Command::Axiom(a) => axiom(a),
        Command::Manipulate(a) => manipulate(a),
        Command::EmitAsp(a) => emit_asp(a),
        Command::Gadget(a) => gadget(a),
    };
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Fail(msg)) => {
            eprintln!("egal: {msg}");
            ExitCode::from(2)
        }
    }
}

fn enum_cap() -> Result<usize, Fail> {
    match std::env::var("EGAL_ENUM_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Fail(format!("EGAL_ENUM_CAP must be a number, got {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<InstanceFile, Fail> {
    Ok(InstanceFile::from_json(&read(path)?)?)
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialise")
    );
}

fn outcome(a: OutcomeArgs) -> Outcome {
    let inst = load(&a.file)?.resolve(enum_cap()?)?;
    let rule = a.rule.spec();
    let winners = apply_rule(&rule, &inst.domain, &inst.profile)?;
    let breakdown = if a.breakdown {
        Some(score_breakdown(&inst.domain, &inst.profile)?)
    } else {
        None
    };
    let solver = match &a.solver {
        Some(path) => {
            let program = emit_outcome_program(&inst.agenda, inst.admissible(), &inst.profile, a.rule.asp()?)?;
            let models = parse_answer_sets(&run_solver(path, &program)?, &inst.agenda)?;
            Some(models)
        }
        None => None,
    };
    let mismatch = solver.as_ref().is_some_and(|m| m.as_slice() != winners.winners());
    if a.common.json {
        print_json(&json!({
            "rule": rule.name(),
            "outcome": winners,
            "breakdown": breakdown,
            "solver": solver,
            "solver_agrees": solver.as_ref().map(|_| !mismatch),
        }));
    } else {
        for j in &winners {
            println!("{j}");
        }
        if let Some(rows) = &breakdown {
            println!();
            println!("judgment distances maxdist mindist inequity");
            for r in rows {
                let mark = if winners.contains(&r.judgment) { "*" } else { " " };
                let ds: Vec<String> = r.distances.iter().map(ToString::to_string).collect();
                println!(
                    "{mark}{} [{}] {} {} {}",
                    r.judgment,
                    ds.join(" "),
                    r.maxdist,
                    r.mindist,
                    r.inequity
                );
            }
        }
        if let Some(models) = &solver {
            let text: Vec<String> = models.iter().map(ToString::to_string).collect();
            let verdict = if mismatch { "disagrees" } else { "agrees" };
            println!("solver {verdict}: {{{}}}", text.join(", "));
        }
    }
    Ok(mismatch)
}

fn axiom_domain(a: &AxiomArgs) -> Result<Domain, Fail> {
    let cap = enum_cap()?;
    if let Some(m) = a.free {
        return Ok(Domain::free(m, cap)?);
    }
    if let Some(members) = &a.domain {
        return Ok(Domain::parse(members.iter().map(String::as_str))?);
    }
    let path = a.file.as_ref().expect("clap requires a source");
    Ok(load(path)?.resolve_domain(cap)?.1)
}

fn axiom(a: AxiomArgs) -> Outcome {
    let d = axiom_domain(&a)?;
    let space = SearchSpace::new(a.n_max).ordered(a.ordered);
    let report = check_axiom(a.axiom.into(), &a.rule.spec(), &d, &space)?;
    if a.common.json {
        print_json(&serde_json::to_value(&report)?);
    } else {
        print_axiom(&report, a.n_max);
    }
    Ok(!report.holds())
}

fn print_axiom(r: &AxiomReport, n_max: usize) {
    let verdict = if r.holds() {
        "holds on searched space"
    } else {
        "counterexample"
    };
    println!(
        "{} ({}, n <= {n_max}, {} profiles): {verdict}",
        r.axiom, r.rule, r.profiles_searched
    );
    if let Some(w) = &r.witness {
        let js: Vec<String> = w.judgments.iter().map(ToString::to_string).collect();
        let agents: Vec<String> = w.agents.iter().map(ToString::to_string).collect();
        println!("  profile   {}", w.profile);
        println!("  outcome   {}", w.outcome);
        println!("  judgments {}", js.join(" "));
        if !agents.is_empty() {
            println!("  agents    {}", agents.join(" "));
        }
    }
}

fn print_finding(f: &ManipulationFinding) {
    let report = match f.untruthful {
        Some(j) => format!("reports {j}"),
        None => "abstains".to_owned(),
    };
    println!(
        "{} manipulation: agent {} (truth {}) {report} in {}",
        f.kind,
        f.manipulator,
        f.truthful(),
        f.profile
    );
    println!("  outcome {} -> {}", f.before, f.after);
    if let Some((j, jp)) = f.witness {
        println!("  witness {j} preferred to {jp}");
    }
}

fn manipulate(a: ManipulateArgs) -> Outcome {
    let inst = load(&a.file)?.resolve(enum_cap()?)?;
    let rule = a.rule.spec();
    let ext: ExtensionKind = a.extension.into();
    let kind: ManipulationKind = a.kind.into();
    if a.all && kind != ManipulationKind::General {
        return Err(Fail("--all applies to general manipulation only".into()));
    }
    if let Some(n_max) = a.n_max {
        let report = check_rule_in(kind.property(), &rule, ext, &inst.domain, &SearchSpace::new(n_max))?;
        if a.common.json {
            print_json(&serde_json::to_value(&report)?);
        } else {
            print_property(&report, n_max);
        }
        return Ok(!report.holds());
    }
    let agents: Vec<usize> = match a.agent {
        Some(i) => {
            inst.profile.agent(i)?;
            vec![i]
        }
        None => (1..=inst.profile.len()).collect(),
    };
    let mut findings = Vec::new();
    let mut inapplicable = Vec::new();
    for &i in &agents {
        match kind {
            ManipulationKind::General if a.all => {
                findings.extend(find_all_manipulations(&rule, ext, &inst.domain, &inst.profile, i)?)
            }
            ManipulationKind::General => {
                findings.extend(find_manipulation(&rule, ext, &inst.domain, &inst.profile, i)?)
            }
            ManipulationKind::NoShow => findings.extend(find_noshow(&rule, ext, &inst.domain, &inst.profile, i)?),
            ManipulationKind::Antipodal => match find_antipodal(&rule, ext, &inst.domain, &inst.profile, i)? {
                AntipodalResult::Found(f) => findings.push(f),
                AntipodalResult::Inapplicable => inapplicable.push(i),
                AntipodalResult::None => {}
            },
        }
    }
    if a.common.json {
        print_json(&json!({
            "kind": kind,
            "rule": rule.name(),
            "extension": ext,
            "findings": findings,
            "inapplicable": inapplicable,
        }));
    } else {
        for f in &findings {
            print_finding(f);
        }
        for i in &inapplicable {
            println!("agent {i}: antipodal judgment not admissible");
        }
        if findings.is_empty() {
            println!("no {kind} manipulation ({}, {ext})", rule.name());
        }
    }
    Ok(!findings.is_empty())
}

fn print_property(r: &PropertyReport, n_max: usize) {
    let verdict = if r.holds() {
        "holds on searched space"
    } else {
        "counterexample"
    };
    println!(
        "{} ({}, {}, n <= {n_max}, {} profiles): {verdict}",
        r.property, r.rule, r.extension, r.profiles_searched
    );
    if let Some(f) = &r.finding {
        print_finding(f);
    }
}

fn emit_asp(a: EmitArgs) -> Outcome {
    let inst = load(&a.file)?.resolve(enum_cap()?)?;
    let program = if a.manipulate {
        if a.rule != RuleArg::Maxeq {
            return Err(Fail(
                "the manipulation encoding is defined for --rule maxeq only".into(),
            ));
        }
        let agent = a.agent.expect("clap requires --agent");
        emit_manipulation_program(&inst.agenda, inst.admissible(), &inst.profile, agent)?
    } else {
        emit_outcome_program(&inst.agenda, inst.admissible(), &inst.profile, a.rule.asp()?)?
    };
    print!("{}", program.text());
    Ok(false)
}

fn gadget(a: GadgetArgs) -> Outcome {
    let f = ThreeCnf::parse_dimacs(&read(&a.file)?)?;
    if a.verify {
        let report = verify_gadget(&f, a.precondition_known, enum_cap()?)?;
        if a.common.json {
            print_json(&serde_json::to_value(&report)?);
        } else {
            println!("issues {} rows {}", report.issues, report.rows);
            println!("min inequity {}", report.min_inequity);
            println!("1-in-3 satisfiable {}", report.one_in_three_satisfiable);
            if let Some((j, dist)) = report.witness {
                println!("witness {j} at distance {dist} from every row");
            }
            println!("checks {}", if report.ok() { "pass" } else { "FAIL" });
        }
        return Ok(!report.ok());
    }
    let g = build_gadget(&f)?;
    println!("{}", InstanceFile::from_instance(&g.agenda, None, &g.profile).to_json());
    Ok(false)
}
