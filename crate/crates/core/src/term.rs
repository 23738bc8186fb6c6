//! Term languages of the difference algebra.
//!
//! [`CoreTerm`] is the object language with the two constants and the single
//! binary difference. [`SurfaceTerm`] adds sum, product, complement and the
//! modular difference as sugar; [`desugar`] eliminates all of it.
//!
//! Axiom schemata and object terms share one tree type. A variable whose name
//! is a single uppercase ASCII letter is a *metavariable* and is only ever
//! bound by [`match_pattern`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("invalid path {path} for term `{term}`")]
    InvalidPath { path: Path, term: String },
    #[error("unbound metavariable {0}")]
    UnboundMetavariable(VarName),
}

/// Identifier of an object variable or a metavariable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarName(Arc<str>);

impl VarName {
    pub fn new(name: &str) -> Result<Self, TermError> {
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return Err(TermError::InvalidName(name.to_string())),
        }
        if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(TermError::InvalidName(name.to_string()));
        }
        Ok(VarName(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Single uppercase letters are reserved for rule patterns.
    pub fn is_metavariable(&self) -> bool {
        let b = self.0.as_bytes();
        b.len() == 1 && b[0].is_ascii_uppercase()
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A term of the core language: `0`, `1`, variables and `-`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoreTerm {
    Zero,
    One,
    Var(VarName),
    Diff(Box<CoreTerm>, Box<CoreTerm>),
}

/// A term of the three-operator language, before desugaring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceTerm {
    Zero,
    One,
    Var(VarName),
    Diff(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Sum(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Prod(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Compl(Box<SurfaceTerm>),
    ModDiff(Box<SurfaceTerm>, Box<SurfaceTerm>),
}

impl CoreTerm {
    pub fn var(name: &str) -> Self {
        CoreTerm::Var(VarName::new(name).expect("valid variable name"))
    }

    pub fn diff(l: CoreTerm, r: CoreTerm) -> Self {
        CoreTerm::Diff(Box::new(l), Box::new(r))
    }

    /// `1 - t`
    pub fn compl(t: CoreTerm) -> Self {
        CoreTerm::diff(CoreTerm::One, t)
    }

    pub fn size(&self) -> usize {
        match self {
            CoreTerm::Diff(l, r) => 1 + l.size() + r.size(),
            _ => 1,
        }
    }

    pub fn children(&self) -> Option<(&CoreTerm, &CoreTerm)> {
        match self {
            CoreTerm::Diff(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Embeds the core term into the surface language unchanged.
    pub fn to_surface(&self) -> SurfaceTerm {
        match self {
            CoreTerm::Zero => SurfaceTerm::Zero,
            CoreTerm::One => SurfaceTerm::One,
            CoreTerm::Var(v) => SurfaceTerm::Var(v.clone()),
            CoreTerm::Diff(l, r) => SurfaceTerm::diff(l.to_surface(), r.to_surface()),
        }
    }

    pub fn vars(&self) -> BTreeSet<VarName> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarName>) {
        match self {
            CoreTerm::Var(v) => {
                out.insert(v.clone());
            }
            CoreTerm::Diff(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            _ => {}
        }
    }

    pub fn metavariables(&self) -> BTreeSet<VarName> {
        self.vars().into_iter().filter(VarName::is_metavariable).collect()
    }

    /// Every valid path, in preorder (root first, left before right).
    pub fn paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![(self, Path::root())];
        while let Some((t, p)) = stack.pop() {
            if let CoreTerm::Diff(l, r) = t {
                stack.push((r, p.child(1)));
                stack.push((l, p.child(0)));
            }
            out.push(p);
        }
        out
    }
}

impl fmt::Display for CoreTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::render_term(&self.to_surface()))
    }
}

impl SurfaceTerm {
    pub fn var(name: &str) -> Self {
        SurfaceTerm::Var(VarName::new(name).expect("valid variable name"))
    }
    pub fn diff(l: SurfaceTerm, r: SurfaceTerm) -> Self {
        SurfaceTerm::Diff(Box::new(l), Box::new(r))
    }
    pub fn sum(l: SurfaceTerm, r: SurfaceTerm) -> Self {
        SurfaceTerm::Sum(Box::new(l), Box::new(r))
    }
    pub fn prod(l: SurfaceTerm, r: SurfaceTerm) -> Self {
        SurfaceTerm::Prod(Box::new(l), Box::new(r))
    }
    pub fn compl(t: SurfaceTerm) -> Self {
        SurfaceTerm::Compl(Box::new(t))
    }
    pub fn mod_diff(l: SurfaceTerm, r: SurfaceTerm) -> Self {
        SurfaceTerm::ModDiff(Box::new(l), Box::new(r))
    }

    pub fn size(&self) -> usize {
        use SurfaceTerm::*;
        match self {
            Zero | One | Var(_) => 1,
            Compl(t) => 1 + t.size(),
            Diff(l, r) | Sum(l, r) | Prod(l, r) | ModDiff(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Number of sugar constructors (everything except `0`, `1`, variables and `-`).
    pub fn sugar_count(&self) -> usize {
        use SurfaceTerm::*;
        match self {
            Zero | One | Var(_) => 0,
            Diff(l, r) => l.sugar_count() + r.sugar_count(),
            Compl(t) => 1 + t.sugar_count(),
            Sum(l, r) | Prod(l, r) | ModDiff(l, r) => 1 + l.sugar_count() + r.sugar_count(),
        }
    }

    /// Renames variables through `f`, leaving the tree shape untouched.
    pub fn map_vars(&self, f: &impl Fn(&VarName) -> VarName) -> SurfaceTerm {
        use SurfaceTerm::*;
        match self {
            Zero => Zero,
            One => One,
            Var(v) => Var(f(v)),
            Diff(l, r) => SurfaceTerm::diff(l.map_vars(f), r.map_vars(f)),
            Sum(l, r) => SurfaceTerm::sum(l.map_vars(f), r.map_vars(f)),
            Prod(l, r) => SurfaceTerm::prod(l.map_vars(f), r.map_vars(f)),
            Compl(t) => SurfaceTerm::compl(t.map_vars(f)),
            ModDiff(l, r) => SurfaceTerm::mod_diff(l.map_vars(f), r.map_vars(f)),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarName>) {
        use SurfaceTerm::*;
        match self {
            Zero | One => {}
            Var(v) => {
                out.insert(v.clone());
            }
            Compl(t) => t.collect_vars(out),
            Diff(l, r) | Sum(l, r) | Prod(l, r) | ModDiff(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }
}

impl fmt::Display for SurfaceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::render_term(self))
    }
}

/// Eliminates every sugar constructor, innermost first.
///
/// * `a'`     becomes `1-a`
/// * `a+b`    becomes `1-((1-a)-b)`
/// * `a*b`    becomes `a-(1-b)`
/// * `|a-b|`  becomes `(a-b)+(b-a)`, then the sum rule above
pub fn desugar(t: &SurfaceTerm) -> CoreTerm {
    use SurfaceTerm as S;
    match t {
        S::Zero => CoreTerm::Zero,
        S::One => CoreTerm::One,
        S::Var(v) => CoreTerm::Var(v.clone()),
        S::Diff(l, r) => CoreTerm::diff(desugar(l), desugar(r)),
        S::Compl(a) => CoreTerm::compl(desugar(a)),
        S::Sum(l, r) => core_sum(desugar(l), desugar(r)),
        S::Prod(l, r) => CoreTerm::diff(desugar(l), CoreTerm::compl(desugar(r))),
        S::ModDiff(l, r) => {
            let (l, r) = (desugar(l), desugar(r));
            core_sum(
                CoreTerm::diff(l.clone(), r.clone()),
                CoreTerm::diff(r, l),
            )
        }
    }
}

fn core_sum(a: CoreTerm, b: CoreTerm) -> CoreTerm {
    CoreTerm::compl(CoreTerm::diff(CoreTerm::compl(a), b))
}

/// All variable names of `t`, sorted and deduplicated.
pub fn free_vars(t: &SurfaceTerm) -> Vec<VarName> {
    let mut out = BTreeSet::new();
    t.collect_vars(&mut out);
    out.into_iter().collect()
}

/// Address of a subterm: a sequence of child indices (0 = left, 1 = right).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<u8>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    /// Fails on any index other than 0 or 1.
    pub fn new(indices: Vec<u8>) -> Option<Self> {
        indices.iter().all(|&i| i <= 1).then_some(Path(indices))
    }

    pub fn child(&self, index: u8) -> Self {
        debug_assert!(index <= 1);
        let mut v = self.0.clone();
        v.push(index);
        Path(v)
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.starts_with(&self.0)
    }
}

/// `.` for the root, otherwise `.0.1`-style.
impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

pub fn subterm_at<'a>(t: &'a CoreTerm, p: &Path) -> Result<&'a CoreTerm, TermError> {
    let mut cur = t;
    for &i in p.indices() {
        cur = match (cur, i) {
            (CoreTerm::Diff(l, _), 0) => l,
            (CoreTerm::Diff(_, r), 1) => r,
            _ => {
                return Err(TermError::InvalidPath {
                    path: p.clone(),
                    term: t.to_string(),
                })
            }
        };
    }
    Ok(cur)
}

pub fn replace_at(t: &CoreTerm, p: &Path, s: CoreTerm) -> Result<CoreTerm, TermError> {
    fn go(t: &CoreTerm, idx: &[u8], s: CoreTerm) -> Option<CoreTerm> {
        let Some((&first, rest)) = idx.split_first() else {
            return Some(s);
        };
        match t {
            CoreTerm::Diff(l, r) if first == 0 => Some(CoreTerm::diff(go(l, rest, s)?, (**r).clone())),
            CoreTerm::Diff(l, r) => Some(CoreTerm::diff((**l).clone(), go(r, rest, s)?)),
            _ => None,
        }
    }
    go(t, p.indices(), s).ok_or_else(|| TermError::InvalidPath {
        path: p.clone(),
        term: t.to_string(),
    })
}

/// Bindings of metavariables to object terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<VarName, CoreTerm>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: &VarName) -> Option<&CoreTerm> {
        self.0.get(v)
    }

    pub fn insert(&mut self, v: VarName, t: CoreTerm) -> Option<CoreTerm> {
        self.0.insert(v, t)
    }

    pub fn contains(&self, v: &VarName) -> bool {
        self.0.contains_key(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarName, &CoreTerm)> {
        self.0.iter()
    }
}

impl FromIterator<(VarName, CoreTerm)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (VarName, CoreTerm)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

/// First-order matching of `pattern` against the ground term `t`.
///
/// Metavariables bind to whole subterms; a repeated metavariable must see
/// identical subterms at each occurrence.
pub fn match_pattern(pattern: &CoreTerm, t: &CoreTerm) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    match_into(pattern, t, &mut sigma).then_some(sigma)
}

fn match_into(pattern: &CoreTerm, t: &CoreTerm, sigma: &mut Substitution) -> bool {
    match (pattern, t) {
        (CoreTerm::Var(m), _) if m.is_metavariable() => match sigma.get(m) {
            Some(bound) => bound == t,
            None => {
                sigma.insert(m.clone(), t.clone());
                true
            }
        },
        (CoreTerm::Diff(pl, pr), CoreTerm::Diff(tl, tr)) => {
            match_into(pl, tl, sigma) && match_into(pr, tr, sigma)
        }
        (p, t) => p == t,
    }
}

pub fn apply_substitution(pattern: &CoreTerm, sigma: &Substitution) -> Result<CoreTerm, TermError> {
    Ok(match pattern {
        CoreTerm::Var(m) if m.is_metavariable() => sigma
            .get(m)
            .cloned()
            .ok_or_else(|| TermError::UnboundMetavariable(m.clone()))?,
        CoreTerm::Diff(l, r) => {
            CoreTerm::diff(apply_substitution(l, sigma)?, apply_substitution(r, sigma)?)
        }
        other => other.clone(),
    })
}
