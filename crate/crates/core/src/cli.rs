//! Command-line front end.
//!
//! Every invocation produces one record `{command, status, payload}`. In
//! machine mode it is printed as a single JSON line; in text mode the payload
//! is flattened to `key: value` lines, which carry the same information.

use std::ffi::OsString;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::equivalence::{derive, equivalent, render_summands, summands, Equivalence};
use crate::kernel::{builtin_registry, replay, verify_corpus_with, Verdict};
use crate::models::{
    check_axioms, independence_search, ring_audit, satisfaction_matrix, Axiom, AxiomReport, LawVerdict,
    SearchOutcome, MAX_EXHAUSTIVE,
};
use crate::parser::{parse_corpus, parse_proof_script, parse_relation, parse_term, render_relation, render_term};
use crate::semantics::{
    format_assignment, identity_counterexample, numeric_matrix, truth_table, NumericMode, NumericVerdict,
    MAX_TABLE_VARS,
};
use crate::term::{desugar, free_vars, SurfaceTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "diffalg", version, about = "Difference algebra workbench")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory holding corpus.dproof and relations.txt.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical rendering and core form of a term.
    Parse {
        #[arg(allow_hyphen_values = true)]
        term: String,
    },
    /// Truth table of a term.
    Table {
        #[arg(allow_hyphen_values = true)]
        term: String,
    },
    /// Check an identity `t1 = t2` by truth tables.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        identity: String,
    },
    /// Check two relations for equivalence via their equations.
    EquivRel {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Replay one proof script.
    Prove {
        script: PathBuf,
        /// Corpus whose lemmas are verified and registered first.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
    /// Replay a corpus of proof scripts in order.
    Corpus { file: Option<PathBuf> },
    /// Equation, minimized equation and simplest relation.
    Derive {
        #[arg(allow_hyphen_values = true)]
        relation: String,
    },
    /// Numeric readings of the modular-difference laws.
    NumericMatrix {
        #[arg(long)]
        mode: NumericMode,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive axiom-satisfaction counts over all tables of one size.
    Models {
        #[arg(long)]
        size: usize,
        /// Axioms a counted model must satisfy.
        #[arg(long, value_delimiter = ',', default_value = "I,II,III")]
        axioms: Vec<Axiom>,
    },
    /// Search for a model breaking one axiom while keeping the rest.
    Independence {
        #[arg(long)]
        target: Axiom,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ring laws for symmetric difference and meet on a powerset algebra.
    RingAudit {
        #[arg(long)]
        width: u32,
    },
    /// Check a file of relation pairs against their expected verdicts.
    Relations { file: Option<PathBuf> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Table { .. } => "table",
            Command::Equiv { .. } => "equiv",
            Command::EquivRel { .. } => "equiv-rel",
            Command::Prove { .. } => "prove",
            Command::Corpus { .. } => "corpus",
            Command::Derive { .. } => "derive",
            Command::NumericMatrix { .. } => "numeric-matrix",
            Command::Models { .. } => "models",
            Command::Independence { .. } => "independence",
            Command::RingAudit { .. } => "ring-audit",
            Command::Relations { .. } => "relations",
        }
    }
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Bad arguments, unreadable files, syntax errors: exit 2.
    Usage(String),
    /// The command ran but the answer is negative or the input is out of range: exit 1.
    Domain(String),
}

struct Report {
    payload: Value,
    /// False for a negative answer (not equivalent, proof failed); exit 1.
    ok: bool,
    diagnostic: Option<String>,
}

impl Report {
    fn ok(payload: Value) -> Self {
        Report { payload, ok: true, diagnostic: None }
    }

    fn verdict(payload: Value, ok: bool, diagnostic: impl FnOnce() -> String) -> Self {
        let diagnostic = (!ok).then(diagnostic);
        Report { payload, ok, diagnostic }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            let message = e.to_string();
            let stdout = if machine_requested(&args) {
                record_line("usage", "error", &json!({ "error": first_line(&message) }))
            } else {
                String::new()
            };
            return Outcome { code: 2, stdout, stderr: message };
        }
    };
    let fixtures = fixtures_dir(cli.fixtures.clone());
    let name = cli.command.name();
    let (code, status, payload, diagnostic) = match dispatch(cli.command, &fixtures) {
        Ok(r) => {
            let code = if r.ok { 0 } else { 1 };
            (code, if r.ok { "ok" } else { "error" }, r.payload, r.diagnostic)
        }
        Err(Failure::Usage(msg)) => (2, "error", json!({ "error": msg }), Some(msg)),
        Err(Failure::Domain(msg)) => (1, "error", json!({ "error": msg }), Some(msg)),
    };
    let stdout = match cli.format {
        Format::Machine => record_line(name, status, &payload),
        Format::Text => render_text(name, status, &payload),
    };
    let stderr = diagnostic.map(|d| format!("diffalg {name}: {d}\n")).unwrap_or_default();
    Outcome { code, stdout, stderr }
}

fn machine_requested(args: &[OsString]) -> bool {
    args.windows(2).any(|w| w[0] == "--format" && w[1] == "machine")
        || args.iter().any(|a| a == "--format=machine")
}

fn first_line(s: &str) -> String {
    s.lines().next().unwrap_or_default().trim_start_matches("error: ").to_string()
}

fn fixtures_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("DIFFALG_FIXTURES").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

fn record_line(command: &str, status: &str, payload: &Value) -> String {
    let rec = json!({ "command": command, "status": status, "payload": payload });
    format!("{rec}\n")
}

fn render_text(command: &str, status: &str, payload: &Value) -> String {
    let mut out = format!("command: {command}\nstatus: {status}\n");
    for (k, v) in flatten(payload) {
        out.push_str(&format!("{k}: {v}\n"));
    }
    out
}

/// `key: value` pairs of a JSON value; nested keys are joined with `.`,
/// array elements are indexed from 0.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, x)| go(&key(k), x, out)),
            Value::Array(a) if !a.is_empty() => {
                a.iter().enumerate().for_each(|(i, x)| go(&key(&i.to_string()), x, out))
            }
            Value::Object(_) => out.push((prefix.to_string(), "{}".into())),
            Value::Array(_) => out.push((prefix.to_string(), "[]".into())),
            Value::String(s) => out.push((prefix.to_string(), s.clone())),
            other => out.push((prefix.to_string(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

/// Inverse of the text layout: `key: value` lines back into pairs.
pub fn parse_text_record(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once(": ").map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}

fn dispatch(cmd: Command, fixtures: &FsPath) -> Result<Report, Failure> {
    match cmd {
        Command::Parse { term } => cmd_parse(&term),
        Command::Table { term } => cmd_table(&term),
        Command::Equiv { identity } => cmd_equiv(&identity),
        Command::EquivRel { left, right } => cmd_equiv_rel(&left, &right),
        Command::Prove { script, registry } => cmd_prove(&script, registry.as_deref()),
        Command::Corpus { file } => cmd_corpus(&file.unwrap_or_else(|| fixtures.join("corpus.dproof"))),
        Command::Derive { relation } => cmd_derive(&relation),
        Command::NumericMatrix { mode, samples, seed } => Ok(cmd_numeric(mode, samples, seed)),
        Command::Models { size, axioms } => cmd_models(size, &axioms),
        Command::Independence { target, size, budget, seed } => cmd_independence(target, size, budget, seed),
        Command::RingAudit { width } => cmd_ring_audit(width),
        Command::Relations { file } => cmd_relations(&file.unwrap_or_else(|| fixtures.join("relations.txt"))),
    }
}

fn term_arg(src: &str) -> Result<SurfaceTerm, Failure> {
    let t = parse_term(src).map_err(|e| Failure::Usage(format!("cannot parse term `{src}`: {e}")))?;
    check_width(free_vars(&t).len())?;
    Ok(t)
}

fn relation_arg(src: &str) -> Result<crate::parser::Relation, Failure> {
    let r = parse_relation(src).map_err(|e| Failure::Usage(format!("cannot parse relation `{src}`: {e}")))?;
    check_width(r.free_vars().len())?;
    Ok(r)
}

fn check_width(n: usize) -> Result<(), Failure> {
    if n > MAX_TABLE_VARS {
        return Err(Failure::Domain(format!("{n} variables exceed the truth-table limit of {MAX_TABLE_VARS}")));
    }
    Ok(())
}

fn read(path: &FsPath) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn names(vars: &[crate::term::VarName]) -> Value {
    vars.iter().map(|v| v.as_str()).collect::<Vec<_>>().into()
}

fn cmd_parse(src: &str) -> Result<Report, Failure> {
    let t = term_arg(src)?;
    let core = desugar(&t);
    Ok(Report::ok(json!({
        "input": src,
        "canonical": render_term(&t),
        "core": render_term(&core.to_surface()),
        "vars": names(&free_vars(&t)),
        "size": t.size(),
        "core_size": core.size(),
    })))
}

fn cmd_table(src: &str) -> Result<Report, Failure> {
    let t = term_arg(src)?;
    let tt = truth_table(&t);
    Ok(Report::ok(json!({
        "term": render_term(&t),
        "vars": names(&tt.vars),
        "bits": tt.bit_string(),
    })))
}

fn cmd_equiv(src: &str) -> Result<Report, Failure> {
    let mut sides = src.split('=');
    let (Some(l), Some(r), None) = (sides.next(), sides.next(), sides.next()) else {
        return Err(Failure::Usage(format!("expected `<term> = <term>`, got `{src}`")));
    };
    let (l, r) = (term_arg(l.trim())?, term_arg(r.trim())?);
    let mut vars = free_vars(&l);
    vars.extend(free_vars(&r));
    vars.sort();
    vars.dedup();
    check_width(vars.len())?;
    let cex = identity_counterexample(&l, &r);
    let mut payload = json!({
        "lhs": render_term(&l),
        "rhs": render_term(&r),
        "verdict": if cex.is_none() { "equivalent" } else { "not-equivalent" },
    });
    if let Some(sigma) = &cex {
        payload["counterexample"] = format_assignment(sigma).into();
    }
    Ok(Report::verdict(payload, cex.is_none(), || "the two sides differ".into()))
}

fn equivalence_payload(left: &crate::parser::Relation, right: &crate::parser::Relation, verdict: &Equivalence) -> Value {
    use crate::equivalence::equation_of;
    let mut payload = json!({
        "left": render_relation(left),
        "right": render_relation(right),
        "left_equation": render_summands(&summands(&equation_of(left).body)),
        "right_equation": render_summands(&summands(&equation_of(right).body)),
        "verdict": if verdict.is_equivalent() { "equivalent" } else { "not-equivalent" },
    });
    if let Equivalence::Counterexample(sigma) = verdict {
        payload["counterexample"] = format_assignment(sigma).into();
    }
    payload
}

fn cmd_equiv_rel(left: &str, right: &str) -> Result<Report, Failure> {
    let (l, r) = (relation_arg(left)?, relation_arg(right)?);
    let mut vars = l.free_vars();
    vars.extend(r.free_vars());
    vars.sort();
    vars.dedup();
    check_width(vars.len())?;
    let verdict = equivalent(&l, &r);
    let ok = verdict.is_equivalent();
    Ok(Report::verdict(equivalence_payload(&l, &r, &verdict), ok, || {
        "the relations are not equivalent".into()
    }))
}

fn verdict_fields(v: &Verdict, obj: &mut Map<String, Value>) {
    match v {
        Verdict::Proved => {
            obj.insert("verdict".into(), "proved".into());
        }
        Verdict::Failed { step, reason } => {
            obj.insert("verdict".into(), "failed".into());
            obj.insert("failed_step".into(), (*step).into());
            obj.insert("reason".into(), reason.clone().into());
        }
    }
}

fn cmd_prove(script: &FsPath, registry: Option<&FsPath>) -> Result<Report, Failure> {
    let mut reg = builtin_registry();
    if let Some(path) = registry {
        let scripts = parse_corpus(&read(path)?)
            .map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))?;
        let (report, extended) = verify_corpus_with(reg, &scripts);
        if let Some(bad) = report.entries.iter().find(|e| !e.verdict.is_proved()) {
            return Err(Failure::Domain(format!(
                "registry lemma `{}` does not replay: {}",
                bad.name, bad.verdict
            )));
        }
        reg = extended;
    }
    let s = parse_proof_script(&read(script)?)
        .map_err(|e| Failure::Usage(format!("{}:{e}", script.display())))?;
    let verdict = replay(&s, &reg);
    let mut obj = Map::new();
    obj.insert("file".into(), script.display().to_string().into());
    obj.insert("lemma".into(), s.name.clone().into());
    obj.insert("steps".into(), s.steps.len().into());
    obj.insert("registry_rules".into(), reg.len().into());
    verdict_fields(&verdict, &mut obj);
    let ok = verdict.is_proved();
    Ok(Report::verdict(Value::Object(obj), ok, || format!("lemma `{}` {verdict}", s.name)))
}

fn cmd_corpus(path: &FsPath) -> Result<Report, Failure> {
    let scripts = parse_corpus(&read(path)?).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))?;
    let (report, _) = verify_corpus_with(builtin_registry(), &scripts);
    let lemmas: Vec<Value> = report
        .entries
        .iter()
        .zip(&scripts)
        .map(|(e, s)| {
            let mut obj = Map::new();
            obj.insert("name".into(), e.name.clone().into());
            obj.insert("steps".into(), s.steps.len().into());
            verdict_fields(&e.verdict, &mut obj);
            if let Some(check) = e.semantic_check {
                obj.insert("semantic_check".into(), check.into());
            }
            Value::Object(obj)
        })
        .collect();
    let proved = report.proved();
    let ok = report.all_ok();
    let payload = json!({
        "file": path.display().to_string(),
        "total": report.entries.len(),
        "proved": proved,
        "failed": report.entries.len() - proved,
        "all_ok": ok,
        "lemmas": lemmas,
    });
    Ok(Report::verdict(payload, ok, || format!("{} of {} lemmas not verified", report.entries.len() - proved, report.entries.len())))
}

fn cmd_derive(src: &str) -> Result<Report, Failure> {
    let phi = relation_arg(src)?;
    let d = derive(&phi).map_err(|e| Failure::Domain(e.to_string()))?;
    let implicants: Vec<String> = d.minimized.implicants.iter().map(|i| i.to_string()).collect();
    Ok(Report::ok(json!({
        "relation": render_relation(&phi),
        "equation": render_summands(&summands(&d.equation.body)),
        "implicants": implicants,
        "minimized_equation": d.minimized.render_sum(),
        "result": render_relation(&d.relation),
    })))
}

fn cmd_numeric(mode: NumericMode, samples: usize, seed: u64) -> Report {
    let m = numeric_matrix(mode, samples, seed);
    let laws: Vec<Value> = m
        .verdicts
        .iter()
        .map(|(law, v)| match v {
            NumericVerdict::Holds => json!({ "id": law.id, "name": law.name, "verdict": "HOLDS" }),
            NumericVerdict::Fails(x) => {
                json!({ "id": law.id, "name": law.name, "verdict": "FAILS", "counterexample": x })
            }
        })
        .collect();
    Report::ok(json!({
        "mode": mode.to_string(),
        "samples": samples,
        "seed": seed,
        "tolerance": crate::semantics::numeric::TOLERANCE,
        "holding": m.holding(),
        "failing": m.failing(),
        "laws": laws,
    }))
}

fn verdict_value(v: &LawVerdict) -> Value {
    match v {
        LawVerdict::Holds => "HOLDS".into(),
        LawVerdict::Fails(_) => v.to_string().into(),
    }
}

fn axiom_report_value(r: &AxiomReport) -> Value {
    let mut obj = Map::new();
    for ax in Axiom::ALL {
        obj.insert(ax.to_string(), verdict_value(r.get(ax)));
    }
    Value::Object(obj)
}

fn mask_label(mask: u8) -> String {
    let held: Vec<String> = Axiom::ALL
        .into_iter()
        .filter(|a| mask & a.bit() != 0)
        .map(|a| a.to_string())
        .collect();
    if held.is_empty() {
        "none".into()
    } else {
        held.join(",")
    }
}

fn cmd_models(size: usize, axioms: &[Axiom]) -> Result<Report, Failure> {
    let mx = satisfaction_matrix(size).map_err(|e| Failure::Domain(e.to_string()))?;
    let matrix: Vec<Value> = (0..16u8)
        .map(|mask| json!({ "holds": mask_label(mask), "count": mx.by_mask[mask as usize] }))
        .collect();
    let required: Vec<String> = axioms.iter().map(|a| a.to_string()).collect();
    Ok(Report::ok(json!({
        "size": size,
        "total": mx.total,
        "required": required.join(","),
        "satisfying": mx.satisfying(axioms),
        "matrix": matrix,
    })))
}

fn cmd_independence(target: Axiom, size: usize, budget: u64, seed: u64) -> Result<Report, Failure> {
    let outcome = independence_search(target, size, budget, seed).map_err(|e| Failure::Domain(e.to_string()))?;
    let search = if size <= MAX_EXHAUSTIVE { "exhaustive" } else { "random" };
    let mut payload = json!({
        "target": target.to_string(),
        "size": size,
        "search": search,
        "seed": seed,
        "budget": budget,
    });
    match outcome {
        SearchOutcome::Found { model, report, examined } => {
            debug_assert_eq!(report, check_axioms(&model));
            payload["found"] = true.into();
            payload["examined"] = examined.into();
            payload["model"] = model.to_string().into();
            payload["axioms"] = axiom_report_value(&report);
        }
        SearchOutcome::NotFound { examined, exhaustive } => {
            payload["found"] = false.into();
            payload["examined"] = examined.into();
            payload["complete"] = exhaustive.into();
        }
    }
    Ok(Report::ok(payload))
}

fn cmd_ring_audit(width: u32) -> Result<Report, Failure> {
    let r = ring_audit(width).map_err(|e| Failure::Domain(e.to_string()))?;
    let laws: Vec<Value> = r.laws.iter().map(|(n, v)| json!({ "law": n, "verdict": verdict_value(v) })).collect();
    let pairs: Vec<String> = r.subtraction_disagreements.iter().map(|(a, b)| format!("({a},{b})")).collect();
    Ok(Report::ok(json!({
        "width": width,
        "laws": laws,
        "subtraction_disagreements": pairs,
        "notes": r.notes,
    })))
}

fn cmd_relations(path: &FsPath) -> Result<Report, Failure> {
    let text = read(path)?;
    let mut entries = Vec::new();
    let mut mismatched = 0;
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Failure::Usage(format!("{}:{}: {msg}", path.display(), n + 1));
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [left, right, expected] = fields[..] else {
            return Err(bad("expected three tab-separated fields".into()));
        };
        let want = match expected {
            "equivalent" => true,
            "not-equivalent" => false,
            other => return Err(bad(format!("unknown verdict `{other}`"))),
        };
        let l = parse_relation(left).map_err(|e| bad(e.to_string()))?;
        let r = parse_relation(right).map_err(|e| bad(e.to_string()))?;
        let verdict = equivalent(&l, &r);
        let mut entry = equivalence_payload(&l, &r, &verdict);
        entry["expected"] = expected.into();
        entry["matches"] = (verdict.is_equivalent() == want).into();
        if verdict.is_equivalent() != want {
            mismatched += 1;
        }
        entries.push(entry);
    }
    let total = entries.len();
    let payload = json!({
        "file": path.display().to_string(),
        "total": total,
        "matched": total - mismatched,
        "entries": entries,
    });
    Ok(Report::verdict(payload, mismatched == 0, || format!("{mismatched} of {total} pairs disagree with the expected verdict")))
}
