#![allow(dead_code)]

use std::path::PathBuf;

use diffalg::kernel::ProofScript;
use diffalg::parser::{parse_corpus, parse_relation, Relation};
use diffalg::term::SurfaceTerm;
use proptest::prelude::*;
use rand::Rng;

pub const VARS: [&str; 6] = ["a", "b", "c", "d", "x1", "long_name"];

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn corpus() -> Vec<ProofScript> {
    let src = std::fs::read_to_string(fixtures().join("corpus.dproof")).unwrap();
    parse_corpus(&src).unwrap()
}

pub struct RelationFixture {
    pub left: Relation,
    pub right: Relation,
    pub expected: bool,
}

pub fn relation_fixtures() -> Vec<RelationFixture> {
    let src = std::fs::read_to_string(fixtures().join("relations.txt")).unwrap();
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            RelationFixture {
                left: parse_relation(f[0]).unwrap(),
                right: parse_relation(f[1]).unwrap(),
                expected: f[2].trim() == "equivalent",
            }
        })
        .collect()
}

fn leaf(rng: &mut impl Rng) -> SurfaceTerm {
    match rng.gen_range(0..8) {
        0 => SurfaceTerm::Zero,
        1 => SurfaceTerm::One,
        k => SurfaceTerm::var(VARS[k - 2]),
    }
}

/// Random surface term of depth at most `depth` (a leaf has depth 0).
pub fn random_term(rng: &mut impl Rng, depth: u32) -> SurfaceTerm {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    let op = rng.gen_range(0..5);
    let mut sub = || Box::new(random_term(rng, depth - 1));
    match op {
        0 => SurfaceTerm::Diff(sub(), sub()),
        1 => SurfaceTerm::Sum(sub(), sub()),
        2 => SurfaceTerm::Prod(sub(), sub()),
        3 => SurfaceTerm::Compl(sub()),
        _ => SurfaceTerm::ModDiff(sub(), sub()),
    }
}

pub fn depth(t: &SurfaceTerm) -> u32 {
    use SurfaceTerm::*;
    match t {
        Zero | One | Var(_) => 0,
        Compl(x) => 1 + depth(x),
        Diff(l, r) | Sum(l, r) | Prod(l, r) | ModDiff(l, r) => 1 + depth(l).max(depth(r)),
    }
}

fn leaf_strategy(vars: &'static [&'static str]) -> impl Strategy<Value = SurfaceTerm> {
    prop_oneof![
        Just(SurfaceTerm::Zero),
        Just(SurfaceTerm::One),
        proptest::sample::select(vars).prop_map(SurfaceTerm::var),
    ]
}

/// Surface terms of depth at most 8.
pub fn surface_term() -> impl Strategy<Value = SurfaceTerm> {
    surface_term_over(&VARS, true)
}

pub fn surface_term_over(vars: &'static [&'static str], mod_diff: bool) -> BoxedStrategy<SurfaceTerm> {
    leaf_strategy(vars)
        .prop_recursive(8, 64, 2, move |inner| {
            let b = |t: SurfaceTerm| Box::new(t);
            let mut ops = vec![
                (inner.clone(), inner.clone()).prop_map(move |(l, r)| SurfaceTerm::Diff(b(l), b(r))).boxed(),
                (inner.clone(), inner.clone()).prop_map(move |(l, r)| SurfaceTerm::Sum(b(l), b(r))).boxed(),
                (inner.clone(), inner.clone()).prop_map(move |(l, r)| SurfaceTerm::Prod(b(l), b(r))).boxed(),
                inner.clone().prop_map(move |t| SurfaceTerm::Compl(b(t))).boxed(),
            ];
            if mod_diff {
                ops.push((inner.clone(), inner).prop_map(move |(l, r)| SurfaceTerm::ModDiff(b(l), b(r))).boxed());
            }
            proptest::strategy::Union::new(ops)
        })
        .boxed()
}
