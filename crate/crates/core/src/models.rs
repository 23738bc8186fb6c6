//! Finite candidate models of the difference algebra.
//!
//! A model is a carrier `{0..m-1}`, two designated elements and an `m x m`
//! difference table. Axioms are checked by exhaustion; every failure comes
//! with the first violating tuple in lexicographic order.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("powerset width {0} outside 1..={1}")]
    WidthOutOfRange(u32, u32),
    #[error("exhaustive enumeration of size {0} exceeds capacity (sizes 2 and 3 only)")]
    CapacityExceeded(usize),
    #[error("model size must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("invalid model: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteModel {
    size: usize,
    zero: u8,
    one: u8,
    table: Vec<u8>,
}

impl FiniteModel {
    pub fn new(size: usize, zero: u8, one: u8, table: Vec<u8>) -> Result<Self, ModelError> {
        if size < 2 {
            return Err(ModelError::TooSmall(size));
        }
        if size > 256 || table.len() != size * size {
            return Err(ModelError::Invalid(format!("table must have {} entries", size * size)));
        }
        if zero == one || zero as usize >= size || one as usize >= size {
            return Err(ModelError::Invalid("zero and one must be distinct carrier elements".into()));
        }
        if table.iter().any(|&x| x as usize >= size) {
            return Err(ModelError::Invalid("table entry outside the carrier".into()));
        }
        Ok(FiniteModel { size, zero, one, table })
    }

    pub fn size(&self) -> usize {
        self.size
    }
    pub fn zero(&self) -> u8 {
        self.zero
    }
    pub fn one(&self) -> u8 {
        self.one
    }
    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// `x - y`
    pub fn diff(&self, x: u8, y: u8) -> u8 {
        self.table[x as usize * self.size + y as usize]
    }

    fn elements(&self) -> impl Iterator<Item = u8> + Clone {
        0..self.size as u8
    }
}

impl fmt::Display for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .table
            .chunks(self.size)
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "m={} zero={} one={} table=[{}]", self.size, self.zero, self.one, rows.join("; "))
    }
}

/// The algebra of subsets of a `width`-element set, with `x - y = x AND NOT y`.
pub fn standard_model(width: u32) -> Result<FiniteModel, ModelError> {
    if !(1..=4).contains(&width) {
        return Err(ModelError::WidthOutOfRange(width, 4));
    }
    let m = 1usize << width;
    let table = (0..m)
        .flat_map(|x| (0..m).map(move |y| (x & !y) as u8))
        .collect();
    FiniteModel::new(m, 0, (m - 1) as u8, table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    I,
    II,
    III,
    ZeroLaw,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::I, Axiom::II, Axiom::III, Axiom::ZeroLaw];

    pub fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::I => "I",
            Axiom::II => "II",
            Axiom::III => "III",
            Axiom::ZeroLaw => "zero-law",
        })
    }
}

impl std::str::FromStr for Axiom {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "I" => Ok(Axiom::I),
            "II" => Ok(Axiom::II),
            "III" => Ok(Axiom::III),
            "Z" | "zero" | "zero-law" => Ok(Axiom::ZeroLaw),
            other => Err(format!("unknown axiom `{other}` (expected I, II, III or zero-law)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawVerdict {
    Holds,
    /// Element indices of the first violation.
    Fails(Vec<u8>),
}

impl LawVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LawVerdict::Holds)
    }
}

impl fmt::Display for LawVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawVerdict::Holds => f.write_str("HOLDS"),
            LawVerdict::Fails(w) => {
                let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "FAILS({})", w.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub ax_i: LawVerdict,
    pub ax_ii: LawVerdict,
    pub ax_iii: LawVerdict,
    pub zero_law: LawVerdict,
}

impl AxiomReport {
    pub fn get(&self, ax: Axiom) -> &LawVerdict {
        match ax {
            Axiom::I => &self.ax_i,
            Axiom::II => &self.ax_ii,
            Axiom::III => &self.ax_iii,
            Axiom::ZeroLaw => &self.zero_law,
        }
    }

    /// Bit set of the axioms that hold, indexed by [`Axiom::bit`].
    pub fn mask(&self) -> u8 {
        Axiom::ALL
            .into_iter()
            .filter(|&a| self.get(a).holds())
            .fold(0, |m, a| m | a.bit())
    }

    pub fn all_hold(&self) -> bool {
        self.mask() == 0b1111
    }
}

/// `a - a = 0`, witness `(a)`.
pub fn check_i(m: &FiniteModel) -> LawVerdict {
    first_failure(m.elements().map(|a| vec![a]), |w| m.diff(w[0], w[0]) == m.zero)
}

/// `1 - (1 - a) = a`, witness `(a)`.
pub fn check_ii(m: &FiniteModel) -> LawVerdict {
    first_failure(m.elements().map(|a| vec![a]), |w| m.diff(m.one, m.diff(m.one, w[0])) == w[0])
}

/// `(1-(c-(a-b)))-d = ((1-(c-a))-d)-(c-(1-b))`, witness `(a, b, c, d)`.
pub fn check_iii(m: &FiniteModel) -> LawVerdict {
    let e = m.elements();
    let tuples = e.clone().flat_map(move |a| {
        let e = e.clone();
        e.clone().flat_map(move |b| {
            let e = e.clone();
            e.clone()
                .flat_map(move |c| e.clone().map(move |d| vec![a, b, c, d]))
        })
    });
    first_failure(tuples, |w| termination_holds(m, w[0], w[1], w[2], w[3]))
}

pub fn termination_holds(m: &FiniteModel, a: u8, b: u8, c: u8, d: u8) -> bool {
    let one = m.one;
    let lhs = m.diff(m.diff(one, m.diff(c, m.diff(a, b))), d);
    let rhs = m.diff(m.diff(m.diff(one, m.diff(c, a)), d), m.diff(c, m.diff(one, b)));
    lhs == rhs
}

/// `a = b` exactly when `a - b = 0` and `b - a = 0`, witness `(a, b)`.
pub fn check_zero_law(m: &FiniteModel) -> LawVerdict {
    let e = m.elements();
    let pairs = e.clone().flat_map(move |a| e.clone().map(move |b| vec![a, b]));
    first_failure(pairs, |w| {
        let (a, b) = (w[0], w[1]);
        (a == b) == (m.diff(a, b) == m.zero && m.diff(b, a) == m.zero)
    })
}

fn first_failure(mut tuples: impl Iterator<Item = Vec<u8>>, ok: impl Fn(&[u8]) -> bool) -> LawVerdict {
    match tuples.find(|w| !ok(w)) {
        Some(w) => LawVerdict::Fails(w),
        None => LawVerdict::Holds,
    }
}

/// Re-evaluates a witness against its law; true when it is a real violation.
pub fn witness_violates(m: &FiniteModel, ax: Axiom, w: &[u8]) -> bool {
    let single = |w: &[u8]| w.len() == 1;
    match ax {
        Axiom::I if single(w) => m.diff(w[0], w[0]) != m.zero,
        Axiom::II if single(w) => m.diff(m.one, m.diff(m.one, w[0])) != w[0],
        Axiom::III if w.len() == 4 => !termination_holds(m, w[0], w[1], w[2], w[3]),
        Axiom::ZeroLaw if w.len() == 2 => {
            let (a, b) = (w[0], w[1]);
            (a == b) != (m.diff(a, b) == m.zero && m.diff(b, a) == m.zero)
        }
        _ => false,
    }
}

pub fn check_axioms(m: &FiniteModel) -> AxiomReport {
    AxiomReport {
        ax_i: check_i(m),
        ax_ii: check_ii(m),
        ax_iii: check_iii(m),
        zero_law: check_zero_law(m),
    }
}

fn check(m: &FiniteModel, ax: Axiom) -> LawVerdict {
    match ax {
        Axiom::I => check_i(m),
        Axiom::II => check_ii(m),
        Axiom::III => check_iii(m),
        Axiom::ZeroLaw => check_zero_law(m),
    }
}

pub const MAX_EXHAUSTIVE: usize = 3;

/// Number of tables with `zero = 0`, `one = 1` fixed.
pub fn model_count(size: usize) -> u64 {
    (size as u64).pow((size * size) as u32)
}

/// The model with the given rank in lexicographic table order (first cell most significant).
pub fn model_at(size: usize, mut index: u64) -> FiniteModel {
    let cells = size * size;
    let mut table = vec![0u8; cells];
    for slot in table.iter_mut().rev() {
        *slot = (index % size as u64) as u8;
        index /= size as u64;
    }
    FiniteModel::new(size, 0, 1, table).expect("well-formed enumeration")
}

/// All `m^(m^2)` tables with `zero = 0`, `one = 1`, in lexicographic order.
pub fn enumerate(size: usize) -> Result<impl Iterator<Item = FiniteModel>, ModelError> {
    if size < 2 {
        return Err(ModelError::TooSmall(size));
    }
    if size > MAX_EXHAUSTIVE {
        return Err(ModelError::CapacityExceeded(size));
    }
    Ok((0..model_count(size)).map(move |i| model_at(size, i)))
}

/// How many models satisfy each exact combination of axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfactionMatrix {
    pub size: usize,
    pub total: u64,
    /// Indexed by [`AxiomReport::mask`].
    pub by_mask: [u64; 16],
}

impl SatisfactionMatrix {
    /// Models satisfying at least every axiom in `required`.
    pub fn satisfying(&self, required: &[Axiom]) -> u64 {
        let need = required.iter().fold(0u8, |m, a| m | a.bit());
        (0..16u8)
            .filter(|mask| mask & need == need)
            .map(|mask| self.by_mask[mask as usize])
            .sum()
    }
}

const CHUNK: u64 = 1024;

/// Exhaustive scan; chunks run in parallel and are merged in order.
pub fn satisfaction_matrix(size: usize) -> Result<SatisfactionMatrix, ModelError> {
    let _ = enumerate(size)?;
    let total = model_count(size);
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
    let partial: Vec<[u64; 16]> = chunks
        .par_iter()
        .map(|&c| {
            let mut counts = [0u64; 16];
            for i in c * CHUNK..((c + 1) * CHUNK).min(total) {
                counts[check_axioms(&model_at(size, i)).mask() as usize] += 1;
            }
            counts
        })
        .collect();
    let mut by_mask = [0u64; 16];
    for p in partial {
        for (acc, x) in by_mask.iter_mut().zip(p) {
            *acc += x;
        }
    }
    Ok(SatisfactionMatrix { size, total, by_mask })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { model: FiniteModel, report: AxiomReport, examined: u64 },
    NotFound { examined: u64, exhaustive: bool },
}

/// Whether `m` keeps the other two axioms and the zero law but breaks `target`.
pub fn is_countermodel(m: &FiniteModel, target: Axiom) -> bool {
    // cheap laws first
    let mut order = vec![Axiom::ZeroLaw, Axiom::I, Axiom::II, Axiom::III];
    order.retain(|&a| a != target);
    order.iter().all(|&a| check(m, a).holds()) && !check(m, target).holds()
}

/// Looks for a model where `target` fails while the rest hold.
///
/// Sizes up to 3 are scanned exhaustively (first hit in table order); larger
/// sizes draw `budget` seeded random tables.
pub fn independence_search(target: Axiom, size: usize, budget: u64, seed: u64) -> Result<SearchOutcome, ModelError> {
    if size < 2 {
        return Err(ModelError::TooSmall(size));
    }
    if target == Axiom::ZeroLaw {
        return Err(ModelError::Invalid("independence targets are I, II or III".into()));
    }
    let found = |model: FiniteModel, examined| {
        let report = check_axioms(&model);
        SearchOutcome::Found { model, report, examined }
    };
    if size <= MAX_EXHAUSTIVE {
        let total = model_count(size);
        let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
        let hit = chunks.par_iter().find_map_first(|&c| {
            (c * CHUNK..((c + 1) * CHUNK).min(total))
                .find(|&i| is_countermodel(&model_at(size, i), target))
        });
        return Ok(match hit {
            Some(i) => found(model_at(size, i), i + 1),
            None => SearchOutcome::NotFound { examined: total, exhaustive: true },
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = size * size;
    for n in 0..budget {
        let table: Vec<u8> = (0..cells).map(|_| rng.gen_range(0..size as u8)).collect();
        let model = FiniteModel::new(size, 0, 1, table)?;
        if is_countermodel(&model, target) {
            return Ok(found(model, n + 1));
        }
    }
    Ok(SearchOutcome::NotFound { examined: budget, exhaustive: false })
}

/// Ring laws for symmetric difference and meet on a powerset algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingAuditReport {
    pub width: u32,
    /// `(law, verdict)` in a fixed order.
    pub laws: Vec<(&'static str, LawVerdict)>,
    /// Pairs `(a, b)` where ring subtraction `a ⊕ b` differs from `a·b'`.
    pub subtraction_disagreements: Vec<(u8, u8)>,
    pub notes: Vec<String>,
}

impl RingAuditReport {
    pub fn law(&self, name: &str) -> Option<&LawVerdict> {
        self.laws.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }
}

pub fn ring_audit(width: u32) -> Result<RingAuditReport, ModelError> {
    if !(1..=3).contains(&width) {
        return Err(ModelError::WidthOutOfRange(width, 3));
    }
    let m = 1u8 << width;
    let top = m - 1;
    let els = || 0..m;
    let xor = |a: u8, b: u8| a ^ b;
    let meet = |a: u8, b: u8| a & b;
    let and_not = |a: u8, b: u8| a & !b & top;

    let unary = |ok: &dyn Fn(u8) -> bool| first_failure(els().map(|a| vec![a]), |w| ok(w[0]));
    let binary = |ok: &dyn Fn(u8, u8) -> bool| {
        first_failure(els().flat_map(|a| els().map(move |b| vec![a, b])), |w| ok(w[0], w[1]))
    };
    let ternary = |ok: &dyn Fn(u8, u8, u8) -> bool| {
        first_failure(
            els().flat_map(|a| els().flat_map(move |b| els().map(move |c| vec![a, b, c]))),
            |w| ok(w[0], w[1], w[2]),
        )
    };

    let laws = vec![
        ("add-associativity", ternary(&|a, b, c| xor(xor(a, b), c) == xor(a, xor(b, c)))),
        ("add-commutativity", binary(&|a, b| xor(a, b) == xor(b, a))),
        ("add-identity", unary(&|a| xor(a, 0) == a)),
        ("add-inverse", unary(&|a| els().any(|b| xor(a, b) == 0))),
        ("mul-associativity", ternary(&|a, b, c| meet(meet(a, b), c) == meet(a, meet(b, c)))),
        (
            "distributivity",
            ternary(&|a, b, c| {
                meet(xor(a, b), c) == xor(meet(a, c), meet(b, c))
                    && meet(c, xor(a, b)) == xor(meet(c, a), meet(c, b))
            }),
        ),
        ("self-sum-zero", unary(&|a| xor(a, a) == 0)),
        ("self-difference-zero", unary(&|a| and_not(a, a) == 0)),
        // ring subtraction a ⊖ b = a ⊕ (-b) = a ⊕ b, compared with a·b'
        ("subtraction-is-difference", binary(&|a, b| xor(a, b) == and_not(a, b))),
    ];
    let subtraction_disagreements: Vec<(u8, u8)> = els()
        .flat_map(|a| els().map(move |b| (a, b)))
        .filter(|&(a, b)| xor(a, b) != and_not(a, b))
        .collect();
    let ring_laws_hold = laws[..6].iter().all(|(_, v)| v.holds());
    let notes = vec![
        format!(
            "symmetric difference and meet {} the listed ring laws on 2^{width}",
            if ring_laws_hold { "satisfy all of" } else { "violate some of" }
        ),
        format!(
            "a⊕a=0 and a−a=0 are evaluated independently; ring subtraction differs from a·b′ at {} of {} pairs",
            subtraction_disagreements.len(),
            (m as usize) * (m as usize)
        ),
        "no verdict on isomorphism with a ring is drawn from these facts".into(),
    ];
    Ok(RingAuditReport { width, laws, subtraction_disagreements, notes })
}
