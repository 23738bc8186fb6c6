//! Numeric readings of the modular-difference laws.
//!
//! Variables range over `[0, 1]`. One-sided `-` is real subtraction, `*`
//! real multiplication, `+` real addition and `<=` the numeric order. The
//! symmetric-difference operator is read either as `|x - y|` ([`NumericMode::Mod`])
//! or as `x + y` ([`NumericMode::Sum`]).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::laws::{ModLaw, MOD_LAWS};

pub const TOLERANCE: f64 = 1e-9;
pub const PROBE_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumericMode {
    Mod,
    Sum,
}

impl NumericMode {
    pub fn apply(self, x: f64, y: f64) -> f64 {
        match self {
            NumericMode::Mod => (x - y).abs(),
            NumericMode::Sum => x + y,
        }
    }
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NumericMode::Mod => "mod",
            NumericMode::Sum => "sum",
        })
    }
}

impl FromStr for NumericMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mod" => Ok(NumericMode::Mod),
            "sum" => Ok(NumericMode::Sum),
            other => Err(format!("unknown mode `{other}` (expected mod or sum)")),
        }
    }
}

fn eq(x: f64, y: f64) -> bool {
    (x - y).abs() <= TOLERANCE
}

fn leq(x: f64, y: f64) -> bool {
    x <= y + TOLERANCE
}

fn iff(p: bool, q: bool) -> bool {
    p == q
}

/// Whether law `id` holds at `v` under `mode`. Biconditionals are checked
/// in both directions.
pub fn holds_at(id: &str, mode: NumericMode, v: &[f64]) -> bool {
    let s = |x, y| mode.apply(x, y);
    match (id, v) {
        ("i", &[a, b]) => iff(eq(s(a, b), 0.0), eq(a, b)),
        ("ii", &[a]) => eq(s(a, a), 0.0),
        ("iii", &[a, b]) => eq(s(a, b), s(b, a)),
        ("iv", &[a, b, c]) => eq(s(s(a, b), c), s(a, s(b, c))),
        ("v", &[a, b, c]) => eq(s(a, b) * c, s(a * c, b * c)),
        ("vi", &[a]) => eq(s(a, 0.0), a),
        ("vii", &[a, b]) => leq(a - b, s(a, b)),
        ("viii", &[a, b, c]) => leq(s(a, b), s(a, c) + s(c, b)),
        ("ix", &[a, b, c]) => iff(leq(s(a, b), c), leq(a - b, c) && leq(b - a, c)),
        _ => panic!("law ({id}) evaluated at a tuple of the wrong arity: {v:?}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NumericVerdict {
    Holds,
    /// First violating tuple, in variable order `a, b, c`.
    Fails(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericMatrix {
    pub mode: NumericMode,
    pub samples: usize,
    pub seed: u64,
    pub verdicts: Vec<(ModLaw, NumericVerdict)>,
}

impl NumericMatrix {
    pub fn holding(&self) -> Vec<&'static str> {
        self.verdicts
            .iter()
            .filter(|(_, v)| *v == NumericVerdict::Holds)
            .map(|(l, _)| l.id)
            .collect()
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.verdicts
            .iter()
            .filter(|(_, v)| *v != NumericVerdict::Holds)
            .map(|(l, _)| l.id)
            .collect()
    }
}

fn grid(arity: usize) -> impl Iterator<Item = Vec<f64>> {
    let n = PROBE_GRID.len();
    (0..n.pow(arity as u32)).map(move |mut idx| {
        let mut v = vec![0.0; arity];
        for slot in v.iter_mut().rev() {
            *slot = PROBE_GRID[idx % n];
            idx /= n;
        }
        v
    })
}

/// Checks every law on the probe grid, then on `samples` seeded uniform tuples.
pub fn numeric_matrix(mode: NumericMode, samples: usize, seed: u64) -> NumericMatrix {
    let verdicts = MOD_LAWS
        .iter()
        .enumerate()
        .map(|(k, law)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let random = (0..samples).map(move |_| (0..law.arity).map(|_| rng.gen::<f64>()).collect());
            let violation = grid(law.arity)
                .chain(random)
                .find(|v: &Vec<f64>| !holds_at(law.id, mode, v));
            let verdict = match violation {
                Some(v) => NumericVerdict::Fails(v),
                None => NumericVerdict::Holds,
            };
            (*law, verdict)
        })
        .collect();
    NumericMatrix { mode, samples, seed, verdicts }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_lexicographic() {
        let g: Vec<_> = grid(2).collect();
        assert_eq!(g.len(), 25);
        assert_eq!(g[0], [0.0, 0.0]);
        assert_eq!(g[1], [0.0, 0.25]);
        assert_eq!(g[24], [1.0, 1.0]);
    }

    #[test]
    fn associativity_counterexample() {
        // ||1-0.5|-0.25| = 0.25, |1-|0.5-0.25|| = 0.75
        let (a, b, c) = (1.0, 0.5, 0.25);
        let m = NumericMode::Mod;
        assert_eq!(m.apply(m.apply(a, b), c), 0.25);
        assert_eq!(m.apply(a, m.apply(b, c)), 0.75);
        assert!(!holds_at("iv", m, &[a, b, c]));
    }

    #[test]
    fn mod_fails_only_associativity() {
        let m = numeric_matrix(NumericMode::Mod, 1000, 7);
        assert_eq!(m.failing(), ["iv"]);
    }

    #[test]
    fn sum_fails_three() {
        let m = numeric_matrix(NumericMode::Sum, 1000, 7);
        assert_eq!(m.failing(), ["i", "ii", "ix"]);
        assert_eq!(m.holding(), ["iii", "iv", "v", "vi", "vii", "viii"]);
    }

    #[test]
    fn deterministic() {
        assert_eq!(numeric_matrix(NumericMode::Mod, 200, 3), numeric_matrix(NumericMode::Mod, 200, 3));
    }

    #[test]
    fn failure_tuples_recheck() {
        for mode in [NumericMode::Mod, NumericMode::Sum] {
            for (law, verdict) in numeric_matrix(mode, 100, 1).verdicts {
                if let NumericVerdict::Fails(v) = verdict {
                    assert_eq!(v.len(), law.arity);
                    assert!(!holds_at(law.id, mode, &v));
                }
            }
        }
    }
}
