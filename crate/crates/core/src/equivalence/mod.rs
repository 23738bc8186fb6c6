//! Equations of relations and equivalence by comparing them.
//!
//! Every relation `phi` has an equation `f` with `phi <=> f = 0`:
//! `l <= r` gives `l-r`, `l = r` gives `|l-r|`, conjunction sums the
//! equations and disjunction multiplies them. Two relations with the same
//! equation (as Boolean functions) are equivalent.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::parser::{render_term, Relation};
use crate::semantics::{row_assignment, table_over, truth_table, Assignment};
use crate::term::{desugar, SurfaceTerm, VarName};

pub mod minimize;

pub use minimize::{minimize_table, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("{vars} variables exceed the minimizer limit of {limit}")]
    CapacityExceeded { vars: usize, limit: usize },
    #[error("the DNF is constant 1, so its relation would assert 1 = 0")]
    UnsatisfiableRelation,
}

/// `body = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub body: SurfaceTerm,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", render_term(&self.body))
    }
}

pub fn equation_of(phi: &Relation) -> Equation {
    fn body(phi: &Relation) -> SurfaceTerm {
        match phi {
            Relation::Leq(l, r) => SurfaceTerm::diff(l.clone(), r.clone()),
            Relation::Eq(l, r) => SurfaceTerm::mod_diff(l.clone(), r.clone()),
            Relation::And(a, b) => SurfaceTerm::sum(body(a), body(b)),
            Relation::Or(a, b) => SurfaceTerm::prod(body(a), body(b)),
        }
    }
    Equation { body: body(phi) }
}

/// A product of literals. The two sets are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Implicant {
    pub positive: BTreeSet<VarName>,
    pub negative: BTreeSet<VarName>,
}

impl Implicant {
    pub fn new(positive: &[&str], negative: &[&str]) -> Self {
        let set = |xs: &[&str]| xs.iter().map(|s| VarName::new(s).expect("variable name")).collect();
        let imp = Implicant { positive: set(positive), negative: set(negative) };
        assert!(imp.positive.is_disjoint(&imp.negative), "x*x' is never stored");
        imp
    }

    pub fn one() -> Self {
        Implicant { positive: BTreeSet::new(), negative: BTreeSet::new() }
    }

    pub fn is_one(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    pub fn literal_count(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn vars(&self) -> BTreeSet<VarName> {
        self.positive.union(&self.negative).cloned().collect()
    }

    fn key(&self, v: &VarName) -> u8 {
        if self.negative.contains(v) {
            0
        } else if self.positive.contains(v) {
            1
        } else {
            2
        }
    }

    pub fn eval(&self, sigma: &Assignment) -> bool {
        self.positive.iter().all(|v| sigma[v]) && self.negative.iter().all(|v| !sigma[v])
    }

    /// `p1*...*pj - (n1+...+nm)`; only negatives gives `(n1+...+nm)'`.
    pub fn to_term(&self) -> SurfaceTerm {
        let pos = product(&self.positive);
        let neg = sum(&self.negative);
        match (pos, neg) {
            (None, None) => SurfaceTerm::One,
            (Some(p), None) => p,
            (None, Some(n)) => SurfaceTerm::compl(n),
            (Some(p), Some(n)) => SurfaceTerm::diff(p, n),
        }
    }
}

/// Variables compared in name order; at each variable a negative literal
/// sorts before a positive one, which sorts before absence.
impl Ord for Implicant {
    fn cmp(&self, other: &Self) -> Ordering {
        let all: BTreeSet<&VarName> = self
            .positive
            .iter()
            .chain(&self.negative)
            .chain(&other.positive)
            .chain(&other.negative)
            .collect();
        all.into_iter()
            .map(|v| self.key(v).cmp(&other.key(v)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for Implicant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `a*b'*c`; the constant-1 implicant prints as `1`.
impl fmt::Display for Implicant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut lits: Vec<(&VarName, bool)> = self
            .positive
            .iter()
            .map(|v| (v, true))
            .chain(self.negative.iter().map(|v| (v, false)))
            .collect();
        lits.sort();
        let parts: Vec<String> = lits
            .into_iter()
            .map(|(v, pos)| if pos { v.to_string() } else { format!("{v}'") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

fn product(vars: &BTreeSet<VarName>) -> Option<SurfaceTerm> {
    vars.iter().cloned().map(SurfaceTerm::Var).reduce(SurfaceTerm::prod)
}

fn sum(vars: &BTreeSet<VarName>) -> Option<SurfaceTerm> {
    vars.iter().cloned().map(SurfaceTerm::Var).reduce(SurfaceTerm::sum)
}

/// A sum of products, kept sorted and free of duplicates. The empty sum is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dnf {
    pub implicants: Vec<Implicant>,
}

impl Dnf {
    pub fn new(mut implicants: Vec<Implicant>) -> Self {
        implicants.sort();
        implicants.dedup();
        Dnf { implicants }
    }

    pub fn zero() -> Self {
        Dnf { implicants: Vec::new() }
    }

    pub fn vars(&self) -> Vec<VarName> {
        let set: BTreeSet<VarName> = self.implicants.iter().flat_map(Implicant::vars).collect();
        set.into_iter().collect()
    }

    pub fn literal_count(&self) -> usize {
        self.implicants.iter().map(Implicant::literal_count).sum()
    }

    pub fn eval(&self, sigma: &Assignment) -> bool {
        self.implicants.iter().any(|i| i.eval(sigma))
    }

    pub fn table_over(&self, vars: &[VarName]) -> Vec<bool> {
        (0..1usize << vars.len())
            .map(|r| self.eval(&row_assignment(vars, r)))
            .collect()
    }

    pub fn is_constant_one(&self) -> bool {
        let vars = self.vars();
        self.table_over(&vars).iter().all(|&b| b)
    }

    pub fn to_term(&self) -> SurfaceTerm {
        self.implicants
            .iter()
            .map(Implicant::to_term)
            .reduce(SurfaceTerm::sum)
            .unwrap_or(SurfaceTerm::Zero)
    }

    /// Sum of the implicant terms with every compound summand parenthesized,
    /// e.g. `(a-b)+(c-d)`.
    pub fn render_sum(&self) -> String {
        render_summands(&self.implicants.iter().map(Implicant::to_term).collect::<Vec<_>>())
    }
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.implicants.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Flattens a left-nested sum into its summands.
pub fn summands(t: &SurfaceTerm) -> Vec<SurfaceTerm> {
    match t {
        SurfaceTerm::Sum(l, r) => {
            let mut v = summands(l);
            v.push((**r).clone());
            v
        }
        other => vec![other.clone()],
    }
}

pub fn render_summands(terms: &[SurfaceTerm]) -> String {
    match terms {
        [] => return "0".into(),
        [t] => return render_term(t),
        _ => {}
    }
    terms
        .iter()
        .map(|t| match t {
            SurfaceTerm::Zero | SurfaceTerm::One | SurfaceTerm::Var(_) | SurfaceTerm::ModDiff(..) => {
                render_term(t)
            }
            _ => format!("({})", render_term(t)),
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// Minimized sum of products of the equation body.
pub fn to_dnf(e: &Equation) -> Result<Dnf, EquivalenceError> {
    let tt = truth_table(&e.body);
    minimize_table(&tt.vars, &tt.bits)
}

/// Exact minimum cover of the function `d` denotes.
pub fn minimize(d: &Dnf) -> Result<Dnf, EquivalenceError> {
    let vars = d.vars();
    if vars.len() > MAX_VARS {
        return Err(EquivalenceError::CapacityExceeded { vars: vars.len(), limit: MAX_VARS });
    }
    minimize_table(&vars, &d.table_over(&vars))
}

/// Renders `d = 0` as a conjunction of inclusions.
///
/// Each implicant `p1...pj n1'...nm' = 0` becomes `p1*...*pj <= n1+...+nm`.
/// When a variable occurs positively in every implicant of a conjunction of
/// two or more, the least such variable is kept alone on the left and the
/// other literals move right complemented, e.g. `a*b*c = 0` becomes
/// `c <= a'+b'`.
pub fn relation_of(d: &Dnf) -> Result<Relation, EquivalenceError> {
    if d.implicants.iter().any(Implicant::is_one) || (!d.implicants.is_empty() && d.is_constant_one()) {
        return Err(EquivalenceError::UnsatisfiableRelation);
    }
    if d.implicants.is_empty() {
        return Ok(Relation::Eq(SurfaceTerm::Zero, SurfaceTerm::Zero));
    }
    let pivot = if d.implicants.len() >= 2 {
        d.vars()
            .into_iter()
            .find(|v| d.implicants.iter().all(|i| i.positive.contains(v)))
    } else {
        None
    };
    let atoms = d.implicants.iter().map(|imp| match &pivot {
        Some(p) => {
            let rest = imp
                .positive
                .iter()
                .filter(|v| *v != p)
                .map(|v| (v, true))
                .chain(imp.negative.iter().map(|v| (v, false)));
            let mut rest: Vec<_> = rest.collect();
            rest.sort();
            let right = rest
                .into_iter()
                .map(|(v, pos)| {
                    let x = SurfaceTerm::Var(v.clone());
                    if pos {
                        SurfaceTerm::compl(x)
                    } else {
                        x
                    }
                })
                .reduce(SurfaceTerm::sum)
                .unwrap_or(SurfaceTerm::Zero);
            Relation::Leq(SurfaceTerm::Var(p.clone()), right)
        }
        None => Relation::Leq(
            product(&imp.positive).unwrap_or(SurfaceTerm::One),
            sum(&imp.negative).unwrap_or(SurfaceTerm::Zero),
        ),
    });
    Ok(atoms.reduce(Relation::and).expect("at least one implicant"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    /// First row (in table order over the merged variables) where exactly one side holds.
    Counterexample(Assignment),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

pub fn equivalent(phi: &Relation, psi: &Relation) -> Equivalence {
    let (f, g) = (equation_of(phi).body, equation_of(psi).body);
    let mut vars = phi.free_vars();
    vars.extend(psi.free_vars());
    vars.sort();
    vars.dedup();
    let ft = table_over(&desugar(&f), &vars);
    let gt = table_over(&desugar(&g), &vars);
    match ft.iter().zip(&gt).position(|(a, b)| a != b) {
        None => Equivalence::Equivalent,
        Some(row) => Equivalence::Counterexample(row_assignment(&vars, row)),
    }
}

/// The three stages of deriving a simpler equivalent relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub equation: Equation,
    pub minimized: Dnf,
    pub relation: Relation,
}

pub fn derive(phi: &Relation) -> Result<Derivation, EquivalenceError> {
    let equation = equation_of(phi);
    let minimized = to_dnf(&equation)?;
    let relation = relation_of(&minimized)?;
    Ok(Derivation { equation, minimized, relation })
}
