mod common;

use std::collections::{BTreeMap, BTreeSet};

use diffalg::equivalence::{derive, equation_of, minimize, Dnf, Implicant};
use diffalg::kernel::{builtin_registry, verify_corpus, verify_corpus_with, RuleRegistry};
use diffalg::models::{check_axioms, model_at, model_count, witness_violates, Axiom, LawVerdict};
use diffalg::parser::{parse_relation, parse_term, render_term, Relation};
use diffalg::semantics::{
    eval_core, eval_powerset, numeric_matrix, relation_holds, row_assignment, Assignment, NumericMode,
};
use diffalg::term::{
    apply_substitution, desugar, match_pattern, replace_at, subterm_at, CoreTerm, Substitution, SurfaceTerm, VarName,
};
use proptest::prelude::*;

const SMALL: [&str; 3] = ["a", "b", "c"];
const METAS: [&str; 3] = ["A", "B", "C"];
const FIVE: [&str; 5] = ["a", "b", "c", "d", "e"];

fn sugar_weight(t: &SurfaceTerm) -> usize {
    use SurfaceTerm::*;
    match t {
        Zero | One | Var(_) => 0,
        Compl(x) => 1 + sugar_weight(x),
        Diff(l, r) => sugar_weight(l) + sugar_weight(r),
        Prod(l, r) => 2 + sugar_weight(l) + sugar_weight(r),
        Sum(l, r) => 4 + sugar_weight(l) + sugar_weight(r),
        ModDiff(..) => unreachable!(),
    }
}

fn all_vars(vars: &[&str]) -> Vec<VarName> {
    vars.iter().map(|v| VarName::new(v).unwrap()).collect()
}

fn relation_vars(a: &Relation, b: &Relation) -> Vec<VarName> {
    let set: BTreeSet<VarName> = a.free_vars().into_iter().chain(b.free_vars()).collect();
    set.into_iter().collect()
}

fn implicant() -> impl Strategy<Value = Implicant> {
    proptest::collection::vec(0u8..3, 5).prop_map(|lits| {
        let pos: Vec<&str> = (0..5).filter(|&i| lits[i] == 1).map(|i| FIVE[i]).collect();
        let neg: Vec<&str> = (0..5).filter(|&i| lits[i] == 2).map(|i| FIVE[i]).collect();
        Implicant::new(&pos, &neg)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_then_parse_is_identity(t in common::surface_term()) {
        prop_assert!(common::depth(&t) <= 8);
        prop_assert_eq!(parse_term(&render_term(&t)).unwrap(), t);
    }

    #[test]
    fn replace_with_own_subterm_is_identity(t in common::surface_term()) {
        let c = desugar(&t);
        for p in c.paths() {
            let s = subterm_at(&c, &p).unwrap().clone();
            let back = replace_at(&c, &p, s.clone()).unwrap();
            prop_assert_eq!(&back, &c);
            let swapped = replace_at(&c, &p, CoreTerm::Zero).unwrap();
            prop_assert_eq!(subterm_at(&swapped, &p).unwrap(), &CoreTerm::Zero);
            prop_assert_eq!(replace_at(&swapped, &p, s).unwrap(), c.clone());
        }
    }

    #[test]
    fn matching_finds_the_instantiating_substitution(
        pat in common::surface_term_over(&METAS, false),
        a in common::surface_term_over(&SMALL, false),
        b in common::surface_term_over(&SMALL, false),
        c in common::surface_term_over(&SMALL, false),
    ) {
        let pat = desugar(&pat);
        let mut sigma = Substitution::new();
        for (m, t) in METAS.iter().zip([a, b, c]) {
            sigma.insert(VarName::new(m).unwrap(), desugar(&t));
        }
        let inst = apply_substitution(&pat, &sigma).unwrap();
        let found = match_pattern(&pat, &inst).expect("an instance must match");
        prop_assert_eq!(apply_substitution(&pat, &found).unwrap(), inst);
        for m in pat.metavariables() {
            prop_assert_eq!(found.get(&m), sigma.get(&m));
        }
    }

    #[test]
    fn desugar_is_idempotent_and_bounded(t in common::surface_term_over(&common::VARS, false)) {
        let core = desugar(&t);
        prop_assert_eq!(desugar(&core.to_surface()), core.clone());
        prop_assert_eq!(core.size(), t.size() + sugar_weight(&t));
        prop_assert!(core.size() <= 4 * t.size());
    }

    #[test]
    fn powerset_evaluation_is_pointwise(
        t in common::surface_term_over(&SMALL, true),
        k in 1u32..=3,
        vals in proptest::collection::vec(0u64..8, 3),
    ) {
        let core = desugar(&t);
        let vars = all_vars(&SMALL);
        // bit j of a set value is the truth value of the j-th Boolean slice
        let sigma: BTreeMap<VarName, u64> = vars.iter().cloned().zip(vals.iter().map(|v| v & ((1u64 << k) - 1))).collect();
        let set_value = eval_powerset(&core, k, &sigma).unwrap();
        for j in 0..k {
            let slice: Assignment = sigma.iter().map(|(n, v)| (n.clone(), v >> j & 1 == 1)).collect();
            prop_assert_eq!(set_value >> j & 1 == 1, eval_core(&core, &slice).unwrap());
        }
    }

    #[test]
    fn minimized_dnf_keeps_the_table(imps in proptest::collection::vec(implicant(), 0..8)) {
        let d = Dnf::new(imps);
        let m = minimize(&d).unwrap();
        let vars = all_vars(&FIVE);
        prop_assert_eq!(m.table_over(&vars), d.table_over(&vars));
        prop_assert!(m.implicants.len() <= d.implicants.len());
    }

    #[test]
    fn witnesses_violate_their_axiom(index in 0..model_count(3)) {
        let m = model_at(3, index);
        let report = check_axioms(&m);
        for ax in Axiom::ALL {
            if let LawVerdict::Fails(w) = report.get(ax) {
                prop_assert!(witness_violates(&m, ax, w), "{} {:?} {:?}", m, ax, w);
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic(index in 0..model_count(3) - 1) {
        let (m, n) = (model_at(3, index), model_at(3, index + 1));
        prop_assert!(m.table() < n.table());
        prop_assert_eq!((m.zero(), m.one()), (0, 1));
    }

    #[test]
    fn numeric_matrix_is_deterministic(seed in any::<u64>(), sum in any::<bool>()) {
        let mode = if sum { NumericMode::Sum } else { NumericMode::Mod };
        prop_assert_eq!(numeric_matrix(mode, 200, seed), numeric_matrix(mode, 200, seed));
    }
}

#[test]
fn powerset_width_is_the_base_set_size() {
    // a - b on {0,1}^2 encoded as bit sets
    let t = desugar(&parse_term("a-b").unwrap());
    let sigma = BTreeMap::from([(VarName::new("a").unwrap(), 0b11), (VarName::new("b").unwrap(), 0b01)]);
    assert_eq!(eval_powerset(&t, 2, &sigma).unwrap(), 0b10);
}

#[test]
fn precedence_and_associativity() {
    let p = |s| parse_term(s).unwrap();
    assert_eq!(p("a-b-c"), p("(a-b)-c"));
    assert_eq!(p("a+b*c"), p("a+(b*c)"));
    assert_eq!(p("a*b-c"), p("(a*b)-c"));
    assert_eq!(p("a-b+c"), p("(a-b)+c"));
    assert_eq!(p("a*b'"), p("a*(b')"));
    assert_eq!(p("(a-b)'"), SurfaceTerm::compl(p("a-b")));
    assert_ne!(p("a-b-c"), p("a-(b-c)"));
    assert_eq!(render_term(&p("a-(b-c)")), "a-(b-c)");
    assert_eq!(render_term(&p("(a+b)*c")), "(a+b)*c");
}

#[test]
fn equation_vanishes_exactly_where_the_relation_holds() {
    for f in common::relation_fixtures() {
        for phi in [&f.left, &f.right] {
            let body = desugar(&equation_of(phi).body);
            let vars = phi.free_vars();
            for row in 0..1usize << vars.len() {
                let sigma = row_assignment(&vars, row);
                assert_eq!(!eval_core(&body, &sigma).unwrap(), relation_holds(phi, &sigma).unwrap(), "{phi} at row {row}");
            }
        }
    }
}

#[test]
fn derived_relation_is_equivalent_on_every_row() {
    let mut inputs: Vec<Relation> = common::relation_fixtures().into_iter().flat_map(|f| [f.left, f.right]).collect();
    inputs.push(parse_relation("a*c <= b*d /\\ a <= b+c /\\ c <= a+d").unwrap());
    inputs.push(parse_relation("(a+b)*c = c - a*b").unwrap());
    for phi in inputs {
        let d = derive(&phi).unwrap();
        let vars = relation_vars(&phi, &d.relation);
        for row in 0..1usize << vars.len() {
            let sigma = row_assignment(&vars, row);
            assert_eq!(
                relation_holds(&phi, &sigma).unwrap(),
                relation_holds(&d.relation, &sigma).unwrap(),
                "{phi} vs {} at row {row}",
                d.relation
            );
        }
    }
}

#[test]
fn relation_fixture_verdicts_match_truth_tables() {
    for f in common::relation_fixtures() {
        let vars = relation_vars(&f.left, &f.right);
        let same = (0..1usize << vars.len()).all(|row| {
            let sigma = row_assignment(&vars, row);
            relation_holds(&f.left, &sigma).unwrap() == relation_holds(&f.right, &sigma).unwrap()
        });
        assert_eq!(same, f.expected, "{} vs {}", f.left, f.right);
    }
}

#[test]
fn corpus_steps_rewrite_one_position() {
    for s in common::corpus() {
        let mut prev = s.goal_lhs.clone();
        for step in &s.steps {
            let inner = subterm_at(&step.result, &step.at).unwrap().clone();
            assert_eq!(replace_at(&prev, &step.at, inner).unwrap(), step.result, "{} line {}", s.name, step.line);
            prev = step.result.clone();
        }
        assert_eq!(prev, s.goal_rhs, "{} ends on its right-hand side", s.name);
    }
}

#[test]
fn corpus_cites_only_earlier_rules() {
    let builtins = builtin_registry();
    let mut known: BTreeSet<String> = builtins.rules().map(|r| r.name.clone()).collect();
    for s in common::corpus() {
        for step in &s.steps {
            assert!(known.contains(&step.rule), "{} cites {} before it exists", s.name, step.rule);
        }
        assert!(known.insert(s.name.clone()), "{} is defined twice", s.name);
    }
}

#[test]
fn registry_order_does_not_change_verdicts() {
    let scripts = common::corpus();
    let mut reversed = RuleRegistry::empty();
    let rules: Vec<_> = builtin_registry().rules().cloned().collect();
    for r in rules.into_iter().rev() {
        reversed.insert(r).unwrap();
    }
    let (report, _) = verify_corpus_with(reversed, &scripts);
    assert_eq!(report, verify_corpus(&scripts));
    assert!(report.all_ok());
}

#[test]
fn worked_problems_agree_row_by_row() {
    for (given, derived) in [
        ("a*c <= b*d /\\ a <= b+c /\\ c <= a+d", "a <= b /\\ c <= d"),
        ("(a+b)*c = c - a*b", "c <= a+b /\\ c <= a'+b'"),
    ] {
        let (g, d) = (parse_relation(given).unwrap(), parse_relation(derived).unwrap());
        let vars = relation_vars(&g, &d);
        for row in 0..1usize << vars.len() {
            let sigma = row_assignment(&vars, row);
            assert_eq!(relation_holds(&g, &sigma).unwrap(), relation_holds(&d, &sigma).unwrap(), "{given} row {row}");
        }
    }
}
