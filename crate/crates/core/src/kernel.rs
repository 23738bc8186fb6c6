//! Equational proof kernel.
//!
//! A proof is a chain of single rewrites on core terms. Every step names a
//! rule from the [`RuleRegistry`], the direction it is used in, the position
//! it applies at and the full term it produces. Equality reasoning is
//! structural: the empty chain is reflexivity, `~` gives symmetry, and
//! chaining steps gives transitivity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::parser::parse_term;
use crate::semantics::valid_identity;
use crate::term::{
    apply_substitution, desugar, match_pattern, replace_at, subterm_at, CoreTerm, Path,
    Substitution, SurfaceTerm, TermError, VarName,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("invalid path {path} in `{term}`")]
    InvalidPath { path: Path, term: String },
    #[error("rule {rule} does not match subterm `{subterm}`")]
    PatternMismatch { rule: String, subterm: String },
    #[error("step result mismatch: rewriting gives `{expected}`, script declares `{declared}`")]
    ResultMismatch { expected: String, declared: String },
    #[error("rule {rule} needs a binding for {meta}")]
    MissingBinding { rule: String, meta: VarName },
    #[error("rule name `{0}` already registered")]
    DuplicateName(String),
    #[error("lemma `{0}` is not proved")]
    NotProved(String),
}

impl From<TermError> for KernelError {
    fn from(e: TermError) -> Self {
        match e {
            TermError::InvalidPath { path, term } => KernelError::InvalidPath { path, term },
            TermError::UnboundMetavariable(meta) => KernelError::MissingBinding {
                rule: String::new(),
                meta,
            },
            TermError::InvalidName(n) => KernelError::UnknownRule(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LeftToRight => "L2R",
            Direction::RightToLeft => "R2L",
        })
    }
}

/// An oriented equation between two patterns.
///
/// `lhs`/`rhs` are kept as written (with sugar); matching always happens on
/// their desugared forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: String,
    pub lhs: SurfaceTerm,
    pub rhs: SurfaceTerm,
    core_lhs: CoreTerm,
    core_rhs: CoreTerm,
}

impl RewriteRule {
    pub fn new(name: impl Into<String>, lhs: SurfaceTerm, rhs: SurfaceTerm) -> Self {
        let core_lhs = desugar(&lhs);
        let core_rhs = desugar(&rhs);
        RewriteRule { name: name.into(), lhs, rhs, core_lhs, core_rhs }
    }

    fn from_text(name: &str, lhs: &str, rhs: &str) -> Self {
        let parse = |s| parse_term(s).expect("builtin rule text parses");
        RewriteRule::new(name, parse(lhs), parse(rhs))
    }

    pub fn core_lhs(&self) -> &CoreTerm {
        &self.core_lhs
    }

    pub fn core_rhs(&self) -> &CoreTerm {
        &self.core_rhs
    }

    /// Pattern matched and pattern produced for a direction.
    pub fn sides(&self, dir: Direction) -> (&CoreTerm, &CoreTerm) {
        match dir {
            Direction::LeftToRight => (&self.core_lhs, &self.core_rhs),
            Direction::RightToLeft => (&self.core_rhs, &self.core_lhs),
        }
    }

    /// Metavariables the produced side introduces; a step must bind them.
    pub fn introduced(&self, dir: Direction) -> BTreeSet<VarName> {
        let (from, to) = self.sides(dir);
        let bound = from.metavariables();
        to.metavariables().into_iter().filter(|m| !bound.contains(m)).collect()
    }
}

/// One line of a proof table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub result: CoreTerm,
    pub rule: String,
    pub direction: Direction,
    pub at: Path,
    pub bindings: Substitution,
    /// Source line, 0 when built programmatically.
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub name: String,
    /// The goal as written, sugar included.
    pub statement: (SurfaceTerm, SurfaceTerm),
    pub goal_lhs: CoreTerm,
    pub goal_rhs: CoreTerm,
    pub steps: Vec<ProofStep>,
}

impl ProofScript {
    pub fn new(name: impl Into<String>, lhs: SurfaceTerm, rhs: SurfaceTerm, steps: Vec<ProofStep>) -> Self {
        ProofScript {
            name: name.into(),
            goal_lhs: desugar(&lhs),
            goal_rhs: desugar(&rhs),
            statement: (lhs, rhs),
            steps,
        }
    }
}

/// Rules by name, in insertion order.
#[derive(Debug, Clone)]
pub struct RuleRegistry {
    rules: Vec<RewriteRule>,
    index: BTreeMap<String, usize>,
}

pub const BUILTIN_RULES: [&str; 7] = ["I", "II", "III", "IV", "V", "defc", "defm"];

impl RuleRegistry {
    pub fn empty() -> Self {
        RuleRegistry { rules: Vec::new(), index: BTreeMap::new() }
    }

    pub fn get(&self, name: &str) -> Option<&RewriteRule> {
        self.index.get(name).map(|&i| &self.rules[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter()
    }

    pub fn insert(&mut self, rule: RewriteRule) -> Result<(), KernelError> {
        if self.index.contains_key(&rule.name) {
            return Err(KernelError::DuplicateName(rule.name));
        }
        self.index.insert(rule.name.clone(), self.rules.len());
        self.rules.push(rule);
        Ok(())
    }
}

/// The five main axioms and the two definitional rules.
pub fn builtin_registry() -> RuleRegistry {
    let mut reg = RuleRegistry::empty();
    let rules = [
        ("I", "X-X", "0"),
        ("II", "1-(1-X)", "X"),
        ("III", "(1-(C-(A-B)))-D", "((1-(C-A))-D)-(C-(1-B))"),
        ("IV", "X+Y", "1-((1-X)-Y)"),
        ("V", "X*Y", "X-(1-Y)"),
        ("defc", "X'", "1-X"),
        ("defm", "|X-Y|", "(X-Y)+(Y-X)"),
    ];
    for (name, lhs, rhs) in rules {
        reg.insert(RewriteRule::from_text(name, lhs, rhs))
            .expect("builtin names are distinct");
    }
    reg
}

/// Checks one rewrite step against `current` and returns the new term.
pub fn check_step(current: &CoreTerm, step: &ProofStep, reg: &RuleRegistry) -> Result<CoreTerm, KernelError> {
    let rule = reg
        .get(&step.rule)
        .ok_or_else(|| KernelError::UnknownRule(step.rule.clone()))?;
    let (from, to) = rule.sides(step.direction);
    let sub = subterm_at(current, &step.at)?;
    let mismatch = || KernelError::PatternMismatch {
        rule: rule.name.clone(),
        subterm: sub.to_string(),
    };
    let mut sigma = match_pattern(from, sub).ok_or_else(mismatch)?;
    for (meta, value) in step.bindings.iter() {
        match sigma.get(meta) {
            Some(bound) if bound != value => return Err(mismatch()),
            Some(_) => {}
            None => {
                sigma.insert(meta.clone(), value.clone());
            }
        }
    }
    if let Some(meta) = to.metavariables().into_iter().find(|m| !sigma.contains(m)) {
        return Err(KernelError::MissingBinding { rule: rule.name.clone(), meta });
    }
    let produced = apply_substitution(to, &sigma)?;
    let expected = replace_at(current, &step.at, produced)?;
    if expected != step.result {
        return Err(KernelError::ResultMismatch {
            expected: expected.to_string(),
            declared: step.result.to_string(),
        });
    }
    Ok(expected)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proved,
    /// `step` is 1-based; `steps.len() + 1` means the chain ended short of the goal.
    Failed { step: usize, reason: String },
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proved => f.write_str("proved"),
            Verdict::Failed { step, reason } => write!(f, "failed at step {step}: {reason}"),
        }
    }
}

pub fn replay(script: &ProofScript, reg: &RuleRegistry) -> Verdict {
    let mut current = script.goal_lhs.clone();
    for (i, step) in script.steps.iter().enumerate() {
        match check_step(&current, step, reg) {
            Ok(next) => current = next,
            Err(e) => return Verdict::Failed { step: i + 1, reason: e.to_string() },
        }
    }
    if current == script.goal_rhs {
        Verdict::Proved
    } else {
        Verdict::Failed {
            step: script.steps.len() + 1,
            reason: format!("chain ends at `{current}`, goal is `{}`", script.goal_rhs),
        }
    }
}

/// Lifts each distinct object variable to its own metavariable.
///
/// A single lowercase letter maps to its uppercase form when free; anything
/// else takes the first unused letter.
pub fn generalize(lhs: &SurfaceTerm, rhs: &SurfaceTerm) -> (SurfaceTerm, SurfaceTerm) {
    let mut vars = crate::term::free_vars(lhs);
    vars.extend(crate::term::free_vars(rhs));
    vars.sort();
    vars.dedup();
    let mut used: BTreeSet<char> = vars
        .iter()
        .filter(|v| v.is_metavariable())
        .filter_map(|v| v.as_str().chars().next())
        .collect();
    let mut map = BTreeMap::new();
    let objects: Vec<&VarName> = vars.iter().filter(|v| !v.is_metavariable()).collect();
    // Preferred letters first so `b` still becomes `B` when `a` is long-named.
    for v in &objects {
        let s = v.as_str();
        if s.len() == 1 {
            let up = s.chars().next().unwrap().to_ascii_uppercase();
            if used.insert(up) {
                map.insert((*v).clone(), up);
            }
        }
    }
    for v in &objects {
        if map.contains_key(*v) {
            continue;
        }
        let fresh = ('A'..='Z').find(|c| !used.contains(c)).expect("at most 26 variables in a lemma");
        used.insert(fresh);
        map.insert((*v).clone(), fresh);
    }
    let rename = |v: &VarName| match map.get(v) {
        Some(c) => VarName::new(&c.to_string()).unwrap(),
        None => v.clone(),
    };
    (lhs.map_vars(&rename), rhs.map_vars(&rename))
}

/// Adds a proved lemma to the registry as a reusable schema.
pub fn register_lemma(reg: &mut RuleRegistry, script: &ProofScript) -> Result<(), KernelError> {
    if reg.contains(&script.name) {
        return Err(KernelError::DuplicateName(script.name.clone()));
    }
    if !replay(script, reg).is_proved() {
        return Err(KernelError::NotProved(script.name.clone()));
    }
    let (lhs, rhs) = generalize(&script.statement.0, &script.statement.1);
    reg.insert(RewriteRule::new(script.name.clone(), lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub verdict: Verdict,
    /// Truth-table check of the goal; `None` when the script was not proved.
    pub semantic_check: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub entries: Vec<CorpusEntry>,
}

impl CorpusReport {
    pub fn proved(&self) -> usize {
        self.entries.iter().filter(|e| e.verdict.is_proved()).count()
    }

    pub fn all_ok(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.verdict.is_proved() && e.semantic_check == Some(true))
    }
}

/// Replays scripts in order against the builtin registry, registering each
/// proved lemma before moving on.
pub fn verify_corpus(scripts: &[ProofScript]) -> CorpusReport {
    verify_corpus_with(builtin_registry(), scripts).0
}

/// As [`verify_corpus`], starting from `reg`; returns the extended registry.
pub fn verify_corpus_with(mut reg: RuleRegistry, scripts: &[ProofScript]) -> (CorpusReport, RuleRegistry) {
    let mut report = CorpusReport::default();
    for script in scripts {
        let mut verdict = replay(script, &reg);
        let mut semantic_check = None;
        if verdict.is_proved() {
            semantic_check = Some(valid_identity(&script.statement.0, &script.statement.1));
            if let Err(e) = register_lemma(&mut reg, script) {
                verdict = Verdict::Failed { step: 0, reason: e.to_string() };
            }
        }
        report.entries.push(CorpusEntry {
            name: script.name.clone(),
            verdict,
            semantic_check,
        });
    }
    (report, reg)
}
