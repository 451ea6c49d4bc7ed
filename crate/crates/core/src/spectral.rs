//! Spectra in `Z_N`: exact verification, search, rescaling and the
//! product/composite constructions.
//!
//! A spectrum of `A ⊆ Z_N` is a set `Λ ⊆ Z_N` of the same size whose
//! characters `a ↦ e^{2πi aλ/N}` are orthogonal on `A`. Orthogonality of
//! `λ` and `λ'` says exactly that `A(x)` vanishes at a primitive root of
//! unity of order `N / gcd(λ - λ', N)`, which is decided by cyclotomic
//! divisibility without any floating point.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclotomic;
use crate::error::{Error, Result};
use crate::residue_sets::{crt_map, direct_sum_check, GroupElementTuple, ResidueSet};

/// Frequencies `λ ∈ Z_N` standing for the characters `a ↦ e^{2πi aλ/N}`.
pub type Spectrum = ResidueSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SpectrumVerdict {
    Valid,
    CardinalityMismatch {
        set: usize,
        spectrum: usize,
    },
    /// `A(x)` does not vanish at `e^{2πi(λ - λ')/N}`.
    NonVanishing {
        lambda: u64,
        lambda_prime: u64,
    },
}

impl SpectrumVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SpectrumVerdict::Valid)
    }
}

fn same_modulus(a: &ResidueSet, b: &ResidueSet) -> Result<u64> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch { left: a.modulus(), right: b.modulus() });
    }
    Ok(a.modulus())
}

/// Memoized `Φ_n | A(x)` for the divisors `n` of `N`.
struct Vanishing<'a> {
    a: &'a ResidueSet,
    cache: HashMap<u64, bool>,
}

impl<'a> Vanishing<'a> {
    fn new(a: &'a ResidueSet) -> Self {
        Self { a, cache: HashMap::new() }
    }

    /// `A(e^{2πi d/N}) = 0` for `d ≢ 0`.
    fn at(&mut self, d: u64) -> bool {
        let n = self.a.modulus();
        let order = n / arith::gcd(d % n, n);
        let a = self.a;
        *self.cache.entry(order).or_insert_with(|| cyclotomic::divides_mask(a.elements().iter().copied(), order))
    }
}

/// Exact check that `Λ` is a spectrum of `A`.
pub fn verify_spectrum(a: &ResidueSet, lambda: &Spectrum) -> Result<SpectrumVerdict> {
    same_modulus(a, lambda)?;
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if a.len() != lambda.len() {
        return Ok(SpectrumVerdict::CardinalityMismatch { set: a.len(), spectrum: lambda.len() });
    }
    let mut zeros = Vanishing::new(a);
    let l = lambda.elements();
    for (i, &x) in l.iter().enumerate() {
        for &y in &l[i + 1..] {
            if !zeros.at(y - x) {
                return Ok(SpectrumVerdict::NonVanishing { lambda: x, lambda_prime: y });
            }
        }
    }
    Ok(SpectrumVerdict::Valid)
}

/// The nonzero `d ∈ Z_N` with `A(e^{2πi d/N}) = 0`.
pub fn zero_set(a: &ResidueSet) -> Vec<u64> {
    zero_bits(a).ones().map(|d| d as u64).collect()
}

fn zero_bits(a: &ResidueSet) -> FixedBitSet {
    let n = a.modulus();
    let mut out = FixedBitSet::with_capacity(n as usize);
    if a.is_empty() {
        return out;
    }
    let mut zeros = Vanishing::new(a);
    for d in 1..n {
        if zeros.at(d) {
            out.insert(d as usize);
        }
    }
    out
}

/// The lexicographically first spectrum `Λ ∋ 0` of `A`, if any.
///
/// Every difference of a spectrum lies in the zero set `Z(A)`, so this is a
/// clique search in the Cayley graph of `Z(A)`: elements are added in
/// increasing order and the candidate pool is intersected with `Z(A) + λ`
/// after each choice.
pub fn spectrum_search(a: &ResidueSet) -> Option<Spectrum> {
    let n = a.modulus() as usize;
    let target = a.len();
    if target == 0 {
        return None;
    }
    let zeros = zero_bits(a);
    let mut shifted = Vec::with_capacity(n);
    for lambda in 0..n {
        let mut s = FixedBitSet::with_capacity(n);
        for d in zeros.ones() {
            s.insert((d + lambda) % n);
        }
        shifted.push(s);
    }
    let mut chosen = vec![0usize];
    if clique(&shifted, &zeros, &mut chosen, target) {
        Some(ResidueSet::new(n as u64, chosen.into_iter().map(|x| x as u64)).expect("clique is increasing"))
    } else {
        None
    }
}

fn clique(shifted: &[FixedBitSet], pool: &FixedBitSet, chosen: &mut Vec<usize>, target: usize) -> bool {
    if chosen.len() == target {
        return true;
    }
    let last = *chosen.last().expect("0 is always chosen");
    let candidates: Vec<usize> = pool.ones().filter(|&x| x > last).collect();
    if chosen.len() + candidates.len() < target {
        return false;
    }
    for (k, &x) in candidates.iter().enumerate() {
        if chosen.len() + candidates.len() - k < target {
            break;
        }
        let mut next = pool.clone();
        next.intersect_with(&shifted[x]);
        chosen.push(x);
        if clique(shifted, &next, chosen, target) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Whether `A` has a spectrum in `Z_N`.
pub fn is_spectral(a: &ResidueSet) -> bool {
    spectrum_search(a).is_some()
}

/// `rΛ mod N` for `r` a unit mod `N`; a spectrum of `A` stays one.
pub fn scale_spectrum(lambda: &Spectrum, r: u64) -> Result<Spectrum> {
    let n = lambda.modulus();
    if arith::gcd(r % n, n) != 1 {
        return Err(Error::Precondition(format!("gcd({r}, {n}) != 1")));
    }
    Ok(lambda.scale(r).expect("a unit multiplier is injective"))
}

/// `rA` for a tile `A ⊕ B = Z_N` and `gcd(r, #A) = 1`; `rA ⊕ B = Z_N` is
/// checked and a failure is reported as a theorem violation.
pub fn tijdeman_scale(a: &ResidueSet, b: &ResidueSet, r: u64) -> Result<ResidueSet> {
    let n = same_modulus(a, b)?;
    if !direct_sum_check(a, b)? {
        return Err(Error::Precondition(format!("{a} ⊕ {b} is not Z_{n}")));
    }
    if arith::gcd(r, a.len() as u64) != 1 {
        return Err(Error::Precondition(format!("gcd({r}, #A = {}) != 1", a.len())));
    }
    let ra = ResidueSet::from_integers(n, a.elements().iter().map(|&x| arith::mul_mod(x, r, n)))
        .map_err(|e| Error::TheoremViolation(format!("{r}·{a} collapses: {e}")))?;
    if !direct_sum_check(&ra, b)? {
        return Err(Error::TheoremViolation(format!("{ra} ⊕ {b} is not Z_{n}")));
    }
    Ok(ra)
}

/// Experimental: is `rΛ` still a spectrum when `r` is only coprime to
/// `#A`? The answer is returned, never asserted.
pub fn dual_tijdeman_probe(a: &ResidueSet, lambda: &Spectrum, r: u64) -> Result<bool> {
    let n = same_modulus(a, lambda)?;
    if !verify_spectrum(a, lambda)?.holds() {
        return Err(Error::Precondition(format!("{lambda} is not a spectrum of {a}")));
    }
    if arith::gcd(r, a.len() as u64) != 1 {
        return Err(Error::Precondition(format!("gcd({r}, #A = {}) != 1", a.len())));
    }
    let scaled = ResidueSet::from_integers_lossy(n, lambda.elements().iter().map(|&x| arith::mul_mod(x, r, n)));
    Ok(verify_spectrum(a, &scaled)?.holds())
}

/// `Λ_1 × ⋯ × Λ_n` as tuples, in lexicographic order.
pub fn product_spectrum(spectra: &[Spectrum]) -> Vec<GroupElementTuple> {
    let moduli: Vec<u64> = spectra.iter().map(ResidueSet::modulus).collect();
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for s in spectra {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                s.elements().iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    acc.into_iter().map(|c| GroupElementTuple::new(c, moduli.clone()).expect("components are residues")).collect()
}

/// [`product_spectrum`] carried into `Z_{m_1⋯m_n}` by `crt_map`; the moduli
/// must be pairwise coprime.
pub fn product_spectrum_crt(spectra: &[Spectrum]) -> Result<Spectrum> {
    let m = spectra
        .iter()
        .try_fold(1u64, |acc, s| acc.checked_mul(s.modulus()))
        .ok_or(Error::Overflow("product of moduli"))?;
    let image = product_spectrum(spectra).iter().map(crt_map).collect::<Result<Vec<_>>>()?;
    ResidueSet::new(m, image)
}

/// `MΛ_1 + Λ_2` in `Z_{NM}`.
pub fn composite_spectrum(outer: &Spectrum, inner: &Spectrum) -> Result<Spectrum> {
    let (n, m) = (outer.modulus(), inner.modulus());
    let nm = n.checked_mul(m).ok_or(Error::Overflow("NM"))?;
    let points = outer.elements().iter().flat_map(|&l1| inner.elements().iter().map(move |&l2| m * l1 + l2));
    ResidueSet::new(nm, points)
}

/// `max |M M* - I|` for `M = (e^{2πi aλ/N} / √#A)`, computed in floating
/// point. Zero up to rounding exactly when `Λ` is a spectrum.
pub fn float_unitarity_residual(a: &ResidueSet, lambda: &Spectrum) -> Result<f64> {
    let n = same_modulus(a, lambda)?;
    if a.len() != lambda.len() || a.is_empty() {
        return Err(Error::Precondition("A and Λ must be nonempty and equinumerous".into()));
    }
    let k = a.len() as f64;
    let l = lambda.elements();
    let mut worst = 0f64;
    for (i, &x) in l.iter().enumerate() {
        for &y in &l[i..] {
            let d = (y + n - x) % n;
            let sum: Complex64 = a
                .elements()
                .iter()
                .map(|&e| {
                    let phase = std::f64::consts::TAU * ((e as u128 * d as u128) % n as u128) as f64 / n as f64;
                    Complex64::from_polar(1.0, phase)
                })
                .sum();
            let expected = if x == y { 1.0 } else { 0.0 };
            worst = worst.max((sum / k - expected).norm());
        }
    }
    Ok(worst)
}
