//! Exact two-level minimization: Quine-McCluskey prime generation followed
//! by a branch-and-bound minimum cover.
//!
//! Covers are ranked by implicant count, then total literal count, then the
//! canonical implicant order, so the result is unique.

use std::collections::{BTreeSet, HashSet};

use super::{Dnf, EquivalenceError, Implicant};
use crate::term::VarName;

pub const MAX_VARS: usize = 12;

/// A product term over variables `0..n`: bit `i` of `care` says variable `i`
/// appears, bit `i` of `value` gives its polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Cube {
    pub care: u16,
    pub value: u16,
}

impl Cube {
    pub fn covers(&self, row: usize) -> bool {
        (row as u16 ^ self.value) & self.care == 0
    }

    pub fn literals(&self) -> u32 {
        self.care.count_ones()
    }

    pub fn to_implicant(self, vars: &[VarName]) -> Implicant {
        let mut positive = BTreeSet::new();
        let mut negative = BTreeSet::new();
        for (i, v) in vars.iter().enumerate() {
            if self.care >> i & 1 == 1 {
                if self.value >> i & 1 == 1 {
                    positive.insert(v.clone());
                } else {
                    negative.insert(v.clone());
                }
            }
        }
        Implicant { positive, negative }
    }
}

/// Prime implicants of the function whose 1-rows are `on`.
pub(crate) fn prime_implicants(n: usize, on: &[usize]) -> Vec<Cube> {
    let full = if n == 16 { u16::MAX } else { (1u16 << n) - 1 };
    let mut current: HashSet<Cube> = on.iter().map(|&r| Cube { care: full, value: r as u16 }).collect();
    let mut primes = Vec::new();
    while !current.is_empty() {
        let mut next = HashSet::new();
        let mut merged = HashSet::new();
        for c in &current {
            for i in 0..n {
                let bit = 1u16 << i;
                if c.care & bit == 0 {
                    continue;
                }
                let partner = Cube { care: c.care, value: c.value ^ bit };
                if current.contains(&partner) {
                    merged.insert(*c);
                    next.insert(Cube { care: c.care & !bit, value: c.value & !bit });
                }
            }
        }
        primes.extend(current.iter().filter(|c| !merged.contains(c)).copied());
        current = next;
    }
    primes
}

struct CoverSearch<'a> {
    primes: &'a [Cube],
    covering: Vec<Vec<usize>>,
    best: Option<(usize, u32, Vec<usize>)>,
}

impl CoverSearch<'_> {
    fn better(&self, count: usize, lits: u32, chosen: &[usize]) -> bool {
        match &self.best {
            None => true,
            Some((bc, bl, bchosen)) => {
                let mut sorted = chosen.to_vec();
                sorted.sort_unstable();
                (count, lits, sorted) < (*bc, *bl, bchosen.clone())
            }
        }
    }

    fn run(&mut self, uncovered: &mut Vec<usize>, chosen: &mut Vec<usize>, lits: u32) {
        if let Some((bc, bl, _)) = &self.best {
            let lower = chosen.len() + usize::from(!uncovered.is_empty());
            if lower > *bc || (lower == *bc && lits > *bl) {
                return;
            }
        }
        if uncovered.is_empty() {
            if self.better(chosen.len(), lits, chosen) {
                let mut sorted = chosen.clone();
                sorted.sort_unstable();
                self.best = Some((chosen.len(), lits, sorted));
            }
            return;
        }
        // branch on the hardest-to-cover row
        let (pos, _) = uncovered
            .iter()
            .enumerate()
            .min_by_key(|(_, &m)| self.covering[m].len())
            .expect("nonempty");
        let row = uncovered[pos];
        for k in 0..self.covering[row].len() {
            let p = self.covering[row][k];
            let cube = self.primes[p];
            let (now, rest): (Vec<usize>, Vec<usize>) = uncovered.iter().partition(|&&m| cube.covers(m));
            debug_assert!(!now.is_empty());
            let saved = std::mem::replace(uncovered, rest);
            chosen.push(p);
            self.run(uncovered, chosen, lits + cube.literals());
            chosen.pop();
            *uncovered = saved;
        }
    }
}

/// Minimum cover of `on` by `primes` (which must be sorted canonically).
/// Returns indices into `primes`, ascending.
pub(crate) fn minimum_cover(primes: &[Cube], on: &[usize], rows: usize) -> Vec<usize> {
    let mut covering = vec![Vec::new(); rows];
    for &m in on {
        covering[m] = (0..primes.len()).filter(|&p| primes[p].covers(m)).collect();
    }
    // essential primes belong to every cover
    let mut chosen: Vec<usize> = on
        .iter()
        .filter(|&&m| covering[m].len() == 1)
        .map(|&m| covering[m][0])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut uncovered: Vec<usize> = on
        .iter()
        .copied()
        .filter(|&m| !chosen.iter().any(|&p| primes[p].covers(m)))
        .collect();
    let lits = chosen.iter().map(|&p| primes[p].literals()).sum();
    let mut search = CoverSearch { primes, covering, best: None };
    search.run(&mut uncovered, &mut chosen, lits);
    search.best.map(|(_, _, c)| c).unwrap_or_default()
}

/// Minimizes the function given by its truth table over `vars`.
pub fn minimize_table(vars: &[VarName], bits: &[bool]) -> Result<Dnf, EquivalenceError> {
    if vars.len() > MAX_VARS {
        return Err(EquivalenceError::CapacityExceeded { vars: vars.len(), limit: MAX_VARS });
    }
    debug_assert_eq!(bits.len(), 1 << vars.len());
    let on: Vec<usize> = (0..bits.len()).filter(|&r| bits[r]).collect();
    let mut primes = prime_implicants(vars.len(), &on);
    primes.sort_by_cached_key(|c| c.to_implicant(vars));
    let cover = minimum_cover(&primes, &on, bits.len());
    Ok(Dnf::new(cover.into_iter().map(|p| primes[p].to_implicant(vars)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_of_xor_and_or() {
        let xor = prime_implicants(2, &[1, 2]);
        assert_eq!(xor.len(), 2);
        let mut or = prime_implicants(2, &[1, 2, 3]);
        or.sort_by_key(|c| (c.care, c.value));
        assert_eq!(or, [Cube { care: 1, value: 1 }, Cube { care: 2, value: 2 }]);
        assert_eq!(prime_implicants(2, &[0, 1, 2, 3]), [Cube { care: 0, value: 0 }]);
        assert!(prime_implicants(3, &[]).is_empty());
    }

    #[test]
    fn cyclic_core_needs_search() {
        // f = sum of m(0,1,2,5,6,7) over 3 variables has no essential primes
        let on = [0, 1, 2, 5, 6, 7];
        let vars: Vec<VarName> = ["a", "b", "c"].iter().map(|s| VarName::new(s).unwrap()).collect();
        let mut bits = vec![false; 8];
        for r in on {
            bits[r] = true;
        }
        let d = minimize_table(&vars, &bits).unwrap();
        assert_eq!(d.implicants.len(), 3);
        assert_eq!(d.literal_count(), 6);
    }

    #[test]
    fn capacity() {
        let vars: Vec<VarName> = (0..13).map(|i| VarName::new(&format!("x{i}")).unwrap()).collect();
        assert!(matches!(
            minimize_table(&vars, &vec![false; 1 << 13]),
            Err(EquivalenceError::CapacityExceeded { vars: 13, .. })
        ));
    }
}
