//! Exhaustive sweeps over subsets of `Z_N` containing 0.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::residue_sets::{complement_search, ResidueSet};
use crate::spectral::{dual_tijdeman_probe, spectrum_search};

/// The subset of `Z_N` encoded by `mask`: 0 plus `i + 1` for each set bit `i`.
pub fn subset_from_mask(n: u64, mask: u64) -> ResidueSet {
    let elements = std::iter::once(0).chain((0..n - 1).filter(|i| mask >> i & 1 == 1).map(|i| i + 1));
    ResidueSet::new(n, elements).expect("distinct residues below N")
}

fn masks(n: u64) -> impl ParallelIterator<Item = u64> {
    (0..1u64 << (n - 1)).into_par_iter()
}

/// Spectral-versus-tile counts for every `A ⊆ Z_N` with `0 ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FugledeRow {
    pub n: u64,
    pub sets: u64,
    pub tiles: u64,
    pub spectral: u64,
    pub agreements: u64,
    /// Sets that are a tile or spectral but not both, sorted.
    pub disagreements: Vec<ResidueSet>,
}

pub fn fuglede_row(n: u64) -> FugledeRow {
    assert!((1..=40).contains(&n), "sweep modulus {n} out of range");
    let (tiles, spectral, mut disagreements) = masks(n)
        .map(|mask| {
            let a = subset_from_mask(n, mask);
            let tile = complement_search(&a).is_some();
            let spec = spectrum_search(&a).is_some();
            let bad = if tile != spec { vec![a] } else { Vec::new() };
            (tile as u64, spec as u64, bad)
        })
        .reduce(
            || (0, 0, Vec::new()),
            |mut x, y| {
                x.2.extend(y.2);
                (x.0 + y.0, x.1 + y.1, x.2)
            },
        );
    disagreements.sort();
    let sets = 1u64 << (n - 1);
    FugledeRow { n, sets, tiles, spectral, agreements: sets - disagreements.len() as u64, disagreements }
}

/// Outcomes of scaling a spectrum by a non-unit `r` coprime to `#A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualTijdemanRow {
    pub n: u64,
    pub spectral_sets: u64,
    pub probes: u64,
    pub preserved: u64,
    pub lost: u64,
    /// Up to `SAMPLE` lost cases `(A, Λ, r)`, smallest first.
    pub lost_samples: Vec<(ResidueSet, ResidueSet, u64)>,
}

const SAMPLE: usize = 8;

/// Probe and loss counts, plus the `(A, Λ, r)` triples that lost.
type ProbeCounts = (u64, u64, Vec<(ResidueSet, ResidueSet, u64)>);

/// Probes every spectral `A ⊆ Z_N` with `0 ∈ A`, using the spectrum found
/// by [`spectrum_search`], against every `r ∈ [2, N)` with `gcd(r, N) > 1`
/// and `gcd(r, #A) = 1`. Units are skipped since they always preserve
/// spectra.
pub fn dual_tijdeman_row(n: u64) -> DualTijdemanRow {
    assert!((1..=40).contains(&n), "sweep modulus {n} out of range");
    let found: Vec<ProbeCounts> = masks(n)
        .filter_map(|mask| {
            let a = subset_from_mask(n, mask);
            let lambda = spectrum_search(&a)?;
            let k = a.len() as u64;
            let mut probes = 0;
            let mut lost = Vec::new();
            for r in (2..n).filter(|&r| arith::gcd(r, n) > 1 && arith::gcd(r, k) == 1) {
                probes += 1;
                if !dual_tijdeman_probe(&a, &lambda, r).expect("Λ is a spectrum and r is coprime to #A") {
                    lost.push((a.clone(), lambda.clone(), r));
                }
            }
            Some((1, probes, lost))
        })
        .collect();
    let spectral_sets = found.iter().map(|f| f.0).sum();
    let probes = found.iter().map(|f| f.1).sum();
    let mut lost: Vec<_> = found.into_iter().flat_map(|f| f.2).collect();
    lost.sort();
    let n_lost = lost.len() as u64;
    lost.truncate(SAMPLE);
    DualTijdemanRow { n, spectral_sets, probes, preserved: probes - n_lost, lost: n_lost, lost_samples: lost }
}
