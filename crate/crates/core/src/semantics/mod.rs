//! Boolean meaning of terms and relations.
//!
//! `a - b` denotes `a AND NOT b`. Two terms are equal in every Boolean
//! algebra exactly when they agree on the two-element algebra, so truth
//! tables decide every identity handled here.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::parser::Relation;
use crate::term::{desugar, free_vars, CoreTerm, SurfaceTerm, VarName};

pub mod laws;
pub mod numeric;

pub use laws::{ModLaw, MOD_LAWS};
pub use numeric::{numeric_matrix, NumericMatrix, NumericMode, NumericVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable {0}")]
    UnboundVariable(VarName),
    #[error("powerset width must be between 1 and 64, got {0}")]
    BadWidth(u32),
}

pub type Assignment = BTreeMap<VarName, bool>;

pub fn eval_core(t: &CoreTerm, sigma: &Assignment) -> Result<bool, EvalError> {
    Ok(match t {
        CoreTerm::Zero => false,
        CoreTerm::One => true,
        CoreTerm::Var(v) => *sigma.get(v).ok_or_else(|| EvalError::UnboundVariable(v.clone()))?,
        CoreTerm::Diff(l, r) => eval_core(l, sigma)? && !eval_core(r, sigma)?,
    })
}

/// Evaluates in the algebra of subsets of a `width`-element universe,
/// elements encoded as bitmasks.
pub fn eval_powerset(t: &CoreTerm, width: u32, sigma: &BTreeMap<VarName, u64>) -> Result<u64, EvalError> {
    if !(1..=64).contains(&width) {
        return Err(EvalError::BadWidth(width));
    }
    let top = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    fn go(t: &CoreTerm, top: u64, sigma: &BTreeMap<VarName, u64>) -> Result<u64, EvalError> {
        Ok(match t {
            CoreTerm::Zero => 0,
            CoreTerm::One => top,
            CoreTerm::Var(v) => *sigma.get(v).ok_or_else(|| EvalError::UnboundVariable(v.clone()))? & top,
            CoreTerm::Diff(l, r) => go(l, top, sigma)? & !go(r, top, sigma)?,
        })
    }
    go(t, top, sigma)
}

/// Row `r` assigns `vars[i] = (r >> i) & 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    pub vars: Vec<VarName>,
    pub bits: Vec<bool>,
}

impl TruthTable {
    pub fn rows(&self) -> usize {
        self.bits.len()
    }

    /// Bits in row order, as `0`/`1` characters.
    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn row_assignment(&self, row: usize) -> Assignment {
        row_assignment(&self.vars, row)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vars.iter().map(VarName::as_str).collect();
        write!(f, "[{}] {}", names.join(","), self.bit_string())
    }
}

pub fn row_assignment(vars: &[VarName], row: usize) -> Assignment {
    vars.iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), (row >> i) & 1 == 1))
        .collect()
}

pub const MAX_TABLE_VARS: usize = 24;

/// Evaluates a core term on every row of the table over `vars`.
///
/// Variables are packed 64 rows per word so each node costs one pass over
/// `2^n / 64` words.
pub fn table_over(t: &CoreTerm, vars: &[VarName]) -> Vec<bool> {
    let n = vars.len();
    assert!(n <= MAX_TABLE_VARS, "truth tables are limited to {MAX_TABLE_VARS} variables");
    let rows = 1usize << n;
    let words = rows.div_ceil(64);
    let var_word = |i: usize, w: usize| -> u64 {
        (0..64)
            .filter(|b| {
                let row = w * 64 + b;
                row < rows && (row >> i) & 1 == 1
            })
            .fold(0u64, |acc, b| acc | (1 << b))
    };
    fn go(
        t: &CoreTerm,
        vars: &[VarName],
        words: usize,
        var_word: &impl Fn(usize, usize) -> u64,
    ) -> Vec<u64> {
        match t {
            CoreTerm::Zero => vec![0; words],
            CoreTerm::One => vec![u64::MAX; words],
            CoreTerm::Var(v) => {
                let i = vars.binary_search(v).expect("variable present in table header");
                (0..words).map(|w| var_word(i, w)).collect()
            }
            CoreTerm::Diff(l, r) => {
                let mut a = go(l, vars, words, var_word);
                let b = go(r, vars, words, var_word);
                a.iter_mut().zip(b).for_each(|(x, y)| *x &= !y);
                a
            }
        }
    }
    let packed = go(t, vars, words, &var_word);
    (0..rows).map(|r| (packed[r / 64] >> (r % 64)) & 1 == 1).collect()
}

pub fn truth_table(t: &SurfaceTerm) -> TruthTable {
    let vars = free_vars(t);
    let bits = table_over(&desugar(t), &vars);
    TruthTable { vars, bits }
}

fn merged_vars(a: &[VarName], b: &[VarName]) -> Vec<VarName> {
    let mut v: Vec<VarName> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

/// Assignment of the first row where the two terms differ, over their merged variables.
pub fn identity_counterexample(l: &SurfaceTerm, r: &SurfaceTerm) -> Option<Assignment> {
    let vars = merged_vars(&free_vars(l), &free_vars(r));
    let lt = table_over(&desugar(l), &vars);
    let rt = table_over(&desugar(r), &vars);
    lt.iter()
        .zip(&rt)
        .position(|(a, b)| a != b)
        .map(|row| row_assignment(&vars, row))
}

pub fn valid_identity(l: &SurfaceTerm, r: &SurfaceTerm) -> bool {
    identity_counterexample(l, r).is_none()
}

pub fn relation_holds(phi: &Relation, sigma: &Assignment) -> Result<bool, EvalError> {
    let ev = |t: &SurfaceTerm| eval_core(&desugar(t), sigma);
    Ok(match phi {
        Relation::Eq(l, r) => ev(l)? == ev(r)?,
        // l <= r iff l - r = 0
        Relation::Leq(l, r) => !(ev(l)? && !ev(r)?),
        Relation::And(a, b) => relation_holds(a, sigma)? && relation_holds(b, sigma)?,
        Relation::Or(a, b) => relation_holds(a, sigma)? || relation_holds(b, sigma)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Counterexample(Assignment),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Scans all rows over the relation's variables; reports the first failing one.
pub fn relation_valid(phi: &Relation) -> Validity {
    let vars = phi.free_vars();
    for row in 0..1usize << vars.len() {
        let sigma = row_assignment(&vars, row);
        if !relation_holds(phi, &sigma).expect("assignment covers free variables") {
            return Validity::Counterexample(sigma);
        }
    }
    Validity::Valid
}

/// Whether `premise` implies `conclusion` on every row of the merged table.
pub fn implication_valid(premise: &Relation, conclusion: &Relation) -> Validity {
    let vars = merged_vars(&premise.free_vars(), &conclusion.free_vars());
    for row in 0..1usize << vars.len() {
        let sigma = row_assignment(&vars, row);
        let p = relation_holds(premise, &sigma).expect("total assignment");
        if p && !relation_holds(conclusion, &sigma).expect("total assignment") {
            return Validity::Counterexample(sigma);
        }
    }
    Validity::Valid
}

pub fn format_assignment(sigma: &Assignment) -> String {
    sigma
        .iter()
        .map(|(v, b)| format!("{v}={}", u8::from(*b)))
        .collect::<Vec<_>>()
        .join(",")
}
