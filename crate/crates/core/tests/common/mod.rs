//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rayon::prelude::*;
use spectile::residue_sets::{all_complements, ResidueSet};

/// Every `k`-subset of `[0, n)` containing 0, as sorted vectors.
pub fn subsets_with_zero(n: u64, k: usize) -> Vec<Vec<u64>> {
    fn go(n: u64, k: usize, next: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in next..n {
            if (n - x) < (k - cur.len()) as u64 {
                break;
            }
            cur.push(x);
            go(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k as u64 <= n {
        go(n, k, 1, &mut vec![0], &mut out);
    }
    out
}

/// Every tiling `A ⊕ B = Z_N` with `0 ∈ A, B` and `#A ≤ #B`. One side of
/// any tiling has at most `√N` elements, so scanning the small sides and
/// listing all their complements is exhaustive.
pub fn tilings(n: u64) -> Vec<(ResidueSet, ResidueSet)> {
    let mut out: Vec<(ResidueSet, ResidueSet)> = (1..=n as usize)
        .filter(|&k| n.is_multiple_of(k as u64) && (k * k) as u64 <= n)
        .flat_map(|k| subsets_with_zero(n, k))
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|s| {
            let a = ResidueSet::new(n, s).expect("distinct");
            all_complements(&a).into_iter().map(move |b| (a.clone(), b))
        })
        .collect();
    out.sort();
    out
}

/// Every tile of `Z_N` containing 0.
pub fn tiles(n: u64) -> BTreeSet<ResidueSet> {
    tilings(n).into_iter().flat_map(|(a, b)| [a, b]).collect()
}
