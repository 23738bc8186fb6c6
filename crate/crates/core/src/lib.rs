//! Difference algebra workbench.
//!
//! Terms are built from `0`, `1`, variables and the binary difference `-`;
//! complement, sum, product and modular difference are definitional sugar.

pub mod term;
pub mod parser;
pub mod semantics;
pub mod kernel;
pub mod equivalence;
pub mod models;
pub mod cli;

pub use equivalence::{derive, equivalent, minimize, relation_of, to_dnf, Dnf, Implicant};
pub use kernel::{builtin_registry, replay, verify_corpus, ProofScript, RuleRegistry, Verdict};
pub use parser::{parse_corpus, parse_proof_script, parse_relation, parse_term, render_term, ParseError, Relation};
pub use semantics::{truth_table, valid_identity, TruthTable};
pub use term::{desugar, CoreTerm, Path, SurfaceTerm, VarName};
