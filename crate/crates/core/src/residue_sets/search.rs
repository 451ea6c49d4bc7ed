//! Backtracking search for tiling complements in `Z_N`.
//!
//! The complement is built with `0 ∈ B`. At each step the smallest residue
//! not yet covered by `A + B` must be `a + b` for some `a ∈ A`, so the
//! candidates are `b = x - a`, tried in increasing order. A candidate is
//! admissible iff `b - b' ∉ A - A` for every chosen `b'`; this is tracked
//! with a per-residue count of forbidden differences.

use fixedbitset::FixedBitSet;

use super::ResidueSet;

struct Search<'a> {
    n: u64,
    a: &'a [u64],
    diffs: Vec<u64>,
    forbidden: Vec<u32>,
    covered: FixedBitSet,
    chosen: Vec<u64>,
    target: usize,
}

enum Mode<'s> {
    First,
    All(&'s mut Vec<ResidueSet>),
}

impl<'a> Search<'a> {
    fn new(a: &'a ResidueSet) -> Option<Self> {
        let n = a.modulus();
        if a.is_empty() || !n.is_multiple_of(a.len() as u64) {
            return None;
        }
        Some(Self {
            n,
            a: a.elements(),
            diffs: a.difference_bits().ones().map(|d| d as u64).collect(),
            forbidden: vec![0; n as usize],
            covered: FixedBitSet::with_capacity(n as usize),
            chosen: Vec::new(),
            target: (n / a.len() as u64) as usize,
        })
    }

    fn place(&mut self, b: u64, delta: i32) {
        let n = self.n;
        for &d in &self.diffs {
            let i = ((b + d) % n) as usize;
            self.forbidden[i] = (self.forbidden[i] as i32 + delta) as u32;
        }
        for &x in self.a {
            self.covered.set(((x + b) % n) as usize, delta > 0);
        }
        if delta > 0 {
            self.chosen.push(b);
        } else {
            self.chosen.pop();
        }
    }

    fn solution(&self) -> ResidueSet {
        ResidueSet::new(self.n, self.chosen.iter().copied()).expect("chosen residues are distinct")
    }

    /// Returns `true` to stop the search.
    fn run(&mut self, mode: &mut Mode<'_>) -> bool {
        if self.chosen.len() == self.target {
            return match mode {
                Mode::First => true,
                Mode::All(out) => {
                    out.push(self.solution());
                    false
                }
            };
        }
        let Some(x) = self.covered.zeroes().next() else {
            return false;
        };
        let n = self.n;
        let mut candidates: Vec<u64> = self.a.iter().map(|&a| (x as u64 + n - a) % n).collect();
        candidates.sort_unstable();
        for b in candidates {
            if self.forbidden[b as usize] != 0 {
                continue;
            }
            self.place(b, 1);
            if self.run(mode) {
                return true;
            }
            self.place(b, -1);
        }
        false
    }
}

/// Some `B ∋ 0` with `A ⊕ B = Z_N`, or `None` if `A` does not tile `Z_N`.
/// The result is deterministic: the first complement found when candidates
/// are explored smallest residue first.
pub fn complement_search(a: &ResidueSet) -> Option<ResidueSet> {
    let mut s = Search::new(a)?;
    s.place(0, 1);
    s.run(&mut Mode::First).then(|| s.solution())
}

/// Every `B ∋ 0` with `A ⊕ B = Z_N`, in discovery order.
pub fn all_complements(a: &ResidueSet) -> Vec<ResidueSet> {
    let mut out = Vec::new();
    if let Some(mut s) = Search::new(a) {
        s.place(0, 1);
        s.run(&mut Mode::All(&mut out));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue_sets::direct_sum_check;

    fn rs(s: &str) -> ResidueSet {
        s.parse().unwrap()
    }

    #[test]
    fn finds_complement_of_mixed_tile() {
        let a = rs("{0,5,6,11} mod 12");
        let b = complement_search(&a).unwrap();
        assert!(b.contains(0));
        assert!(direct_sum_check(&a, &b).unwrap());
    }

    #[test]
    fn no_complement_for_non_tile() {
        // exhaustive: no 2-subset B of Z_6 gives {0,1,3} ⊕ B = Z_6
        let a = rs("{0,1,3} mod 6");
        for x in 0..6 {
            for y in x + 1..6 {
                let b = ResidueSet::new(6, [x, y]).unwrap();
                assert!(!direct_sum_check(&a, &b).unwrap());
            }
        }
        assert_eq!(complement_search(&a), None);
        assert!(all_complements(&a).is_empty());
    }

    #[test]
    fn trivial_tile() {
        assert_eq!(complement_search(&rs("{0} mod 3")), Some(ResidueSet::full(3)));
        assert_eq!(complement_search(&rs("{0,1} mod 5")), None);
    }

    #[test]
    fn all_complements_are_distinct_and_valid() {
        let a = rs("{0,1} mod 8");
        let all = all_complements(&a);
        for b in &all {
            assert!(direct_sum_check(&a, b).unwrap());
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        let mut brute = Vec::new();
        for mask in 0u32..256 {
            if mask & 1 == 0 {
                continue;
            }
            let b = ResidueSet::new(8, (0..8).filter(|i| mask >> i & 1 == 1)).unwrap();
            if direct_sum_check(&a, &b).unwrap() {
                brute.push(b);
            }
        }
        brute.sort();
        assert_eq!(sorted, brute);
    }
}
