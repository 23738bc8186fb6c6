//! The nine laws of the modular (symmetric) difference.

use std::fmt;

use crate::parser::{parse_relation, parse_term, Relation};
use crate::semantics::{implication_valid, relation_valid, valid_identity};

/// Boolean statement of a law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawForm {
    /// `lhs = rhs` as an identity.
    Identity(&'static str, &'static str),
    /// A relation that must hold on every row.
    Valid(&'static str),
    /// Two relations that must hold on exactly the same rows.
    Iff(&'static str, &'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModLaw {
    /// Roman numeral, `i` to `ix`.
    pub id: &'static str,
    pub name: &'static str,
    pub arity: usize,
    pub form: LawForm,
}

impl fmt::Display for ModLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.id, self.name)
    }
}

pub const MOD_LAWS: [ModLaw; 9] = [
    ModLaw { id: "i", name: "equality", arity: 2, form: LawForm::Iff("|a-b| = 0", "a = b") },
    ModLaw { id: "ii", name: "annihilation", arity: 1, form: LawForm::Identity("|a-a|", "0") },
    ModLaw { id: "iii", name: "commutativity", arity: 2, form: LawForm::Identity("|a-b|", "|b-a|") },
    ModLaw {
        id: "iv",
        name: "associativity",
        arity: 3,
        form: LawForm::Identity("| |a-b|-c|", "|a-|b-c| |"),
    },
    ModLaw {
        id: "v",
        name: "distributivity",
        arity: 3,
        form: LawForm::Identity("|a-b|*c", "|a*c-b*c|"),
    },
    ModLaw { id: "vi", name: "identity", arity: 1, form: LawForm::Identity("|a-0|", "a") },
    ModLaw { id: "vii", name: "inclusion", arity: 2, form: LawForm::Valid("a-b <= |a-b|") },
    ModLaw {
        id: "viii",
        name: "triangular inclusion",
        arity: 3,
        form: LawForm::Valid("|a-b| <= |a-c|+|c-b|"),
    },
    ModLaw {
        id: "ix",
        name: "dual inclusion",
        arity: 3,
        form: LawForm::Iff("|a-b| <= c", "a-b <= c /\\ b-a <= c"),
    },
];

impl ModLaw {
    /// Exhaustive check in the two-element algebra.
    pub fn holds_boolean(&self) -> bool {
        match self.form {
            LawForm::Identity(l, r) => valid_identity(&parse_term(l).unwrap(), &parse_term(r).unwrap()),
            LawForm::Valid(rel) => relation_valid(&parse_relation(rel).unwrap()).is_valid(),
            LawForm::Iff(a, b) => {
                let (a, b) = (parse_relation(a).unwrap(), parse_relation(b).unwrap());
                implication_valid(&a, &b).is_valid() && implication_valid(&b, &a).is_valid()
            }
        }
    }

    /// The law as a pair of relations (`Iff`), or one relation (`Valid`, `Identity`).
    pub fn relations(&self) -> (Relation, Option<Relation>) {
        match self.form {
            LawForm::Identity(l, r) => (
                Relation::Eq(parse_term(l).unwrap(), parse_term(r).unwrap()),
                None,
            ),
            LawForm::Valid(rel) => (parse_relation(rel).unwrap(), None),
            LawForm::Iff(a, b) => (parse_relation(a).unwrap(), Some(parse_relation(b).unwrap())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_hold_in_two_element_algebra() {
        for law in MOD_LAWS {
            assert!(law.holds_boolean(), "{law}");
        }
    }

    #[test]
    fn statements_parse() {
        for law in MOD_LAWS {
            let (a, b) = law.relations();
            let mut vars = a.free_vars();
            if let Some(b) = b {
                vars.extend(b.free_vars());
            }
            vars.sort();
            vars.dedup();
            assert_eq!(vars.len(), law.arity, "{law}");
        }
    }
}
