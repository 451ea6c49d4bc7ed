//! Structure of tiles whose cardinality has at most two prime factors:
//! digit trees for prime-power tiles, Newman's valuation criterion, and the
//! recursive enumeration of the normalized tiles `𝒯_S` with a given `S_A`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cm::{self, PrimePowerSet};
use crate::error::{Error, Result};
use crate::residue_sets::{direct_sum_check, IntegerSet};

/// Default cap on `lcm(S)` for [`enumerate_t_s`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 144;

/// Nested complete residue systems mod `p`.
///
/// `system(path)` for a path `(i_1, …, i_{k-1})` is the list
/// `[a_{path,0}, …, a_{path,p-1}]`, a complete residue system mod `p`
/// starting with 0. Every path of length `0..n` over `[0, p)` has one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTree", into = "RawTree")]
pub struct DigitTree {
    p: u64,
    exponents: Vec<u32>,
    systems: BTreeMap<Vec<u64>, Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    p: u64,
    exponents: Vec<u32>,
    systems: Vec<(Vec<u64>, Vec<u64>)>,
}

impl TryFrom<RawTree> for DigitTree {
    type Error = Error;

    fn try_from(raw: RawTree) -> Result<Self> {
        DigitTree::new(raw.p, raw.exponents, raw.systems.into_iter().collect())
    }
}

impl From<DigitTree> for RawTree {
    fn from(t: DigitTree) -> Self {
        RawTree { p: t.p, exponents: t.exponents, systems: t.systems.into_iter().collect() }
    }
}

fn all_paths(p: u64, len: usize) -> Vec<Vec<u64>> {
    let mut acc = vec![Vec::new()];
    for _ in 0..len {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                (0..p).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    acc
}

fn check_system(p: u64, path: &[u64], system: &[u64]) -> Result<()> {
    if system.len() as u64 != p {
        return Err(Error::MalformedTree(format!("system at {path:?} has {} entries, expected {p}", system.len())));
    }
    if system[0] != 0 {
        return Err(Error::MalformedTree(format!("system at {path:?} does not start with 0")));
    }
    let residues: BTreeSet<u64> = system.iter().map(|a| a % p).collect();
    if residues.len() as u64 != p {
        return Err(Error::MalformedTree(format!("system at {path:?} is not a complete residue system mod {p}")));
    }
    Ok(())
}

impl DigitTree {
    pub fn new(p: u64, exponents: Vec<u32>, systems: BTreeMap<Vec<u64>, Vec<u64>>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if exponents.is_empty() || exponents[0] < 1 || exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedTree(format!(
                "exponents {exponents:?} must be positive and strictly increasing"
            )));
        }
        p.checked_pow(*exponents.last().expect("nonempty")).ok_or(Error::Overflow("p^α_n"))?;
        let n = exponents.len();
        let mut expected = 0usize;
        for len in 0..n {
            for path in all_paths(p, len) {
                let system =
                    systems.get(&path).ok_or_else(|| Error::MalformedTree(format!("missing system at {path:?}")))?;
                check_system(p, &path, system)?;
                expected += 1;
            }
        }
        if systems.len() != expected {
            return Err(Error::MalformedTree("systems at paths outside the tree".into()));
        }
        Ok(Self { p, exponents, systems })
    }

    /// Every system equal to `{0, 1, …, p-1}`.
    pub fn standard(p: u64, exponents: Vec<u32>) -> Result<Self> {
        let n = exponents.len();
        let systems = (0..n).flat_map(|len| all_paths(p, len)).map(|path| (path, (0..p).collect())).collect();
        Self::new(p, exponents, systems)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn system(&self, path: &[u64]) -> Option<&[u64]> {
        self.systems.get(path).map(Vec::as_slice)
    }

    pub fn systems(&self) -> &BTreeMap<Vec<u64>, Vec<u64>> {
        &self.systems
    }

    /// Replaces the system at an existing path.
    pub fn set_system(&mut self, path: &[u64], system: Vec<u64>) -> Result<()> {
        if !self.systems.contains_key(path) {
            return Err(Error::MalformedTree(format!("no system at {path:?}")));
        }
        check_system(self.p, path, &system)?;
        self.systems.insert(path.to_vec(), system);
        Ok(())
    }

    /// `{p^{α_1}, …, p^{α_n}}`.
    pub fn prime_power_set(&self) -> PrimePowerSet {
        PrimePowerSet::new(self.exponents.iter().map(|&k| self.p.pow(k))).expect("prime powers")
    }

    /// The digits `a_{i_1}, a_{i_1,i_2}, …` along a full path.
    fn digits(&self, path: &[u64]) -> Vec<u64> {
        (0..path.len()).map(|k| self.systems[&path[..k]][path[k] as usize]).collect()
    }

    /// `Σ_k p^{α_k - 1} a_{i_1,…,i_k}` over all full paths.
    pub fn expand(&self) -> IntegerSet {
        let weights: Vec<u64> = self.exponents.iter().map(|&k| self.p.pow(k - 1)).collect();
        IntegerSet::new(
            all_paths(self.p, self.exponents.len())
                .into_iter()
                .map(|path| self.digits(&path).iter().zip(&weights).map(|(a, w)| a * w).sum::<u64>()),
        )
    }
}

/// Expands a digit tree into its `p^n`-element tile and checks that it is
/// complemented in `Z_{p^{α_n}}` by the canonical tiling set.
pub fn build_prime_power_tile(tree: &DigitTree) -> Result<IntegerSet> {
    let a = tree.expand();
    let s = tree.prime_power_set();
    let n = s.lcm();
    let b = cm::cm_tiling_set(&s)?;
    let tiles = match (a.reduce_mod(n), b.reduce_mod(n)) {
        (Ok(am), Ok(bm)) => direct_sum_check(&am, &bm)?,
        _ => false,
    };
    if !tiles {
        return Err(Error::TheoremViolation(format!("{a} is not complemented by {b} in Z_{n}")));
    }
    Ok(a)
}

fn prime_power_cardinality(a: &IntegerSet) -> Result<(u64, u32)> {
    arith::prime_power(a.len() as u64).ok_or(Error::NotPrimePowerCardinality(a.len()))
}

/// The distinct `p`-adic valuations of `a_i - a_j`, `i ≠ j`.
fn valuations(a: &IntegerSet, p: u64) -> BTreeSet<u32> {
    let e = a.elements();
    let mut out = BTreeSet::new();
    for (i, &x) in e.iter().enumerate() {
        for &y in &e[i + 1..] {
            out.insert(arith::valuation(y - x, p).expect("distinct elements"));
        }
    }
    out
}

/// For `#A = p^α`: `A` tiles iff the differences `a_i - a_j` have at most
/// `α` distinct `p`-adic valuations.
pub fn newman_criterion(a: &IntegerSet) -> Result<bool> {
    let (p, alpha) = prime_power_cardinality(a)?;
    Ok(valuations(a, p).len() <= alpha as usize)
}

/// `{p^{e+1}}` over the realized valuations `e`; equals `S_A` for a tile.
pub fn newman_sa(a: &IntegerSet) -> Result<PrimePowerSet> {
    let (p, _) = prime_power_cardinality(a)?;
    if !newman_criterion(a)? {
        return Err(Error::Precondition(format!("{a} fails the valuation criterion")));
    }
    let mut out = Vec::new();
    for e in valuations(a, p) {
        out.push(p.checked_pow(e + 1).ok_or(Error::Overflow("p^(e+1)"))?);
    }
    PrimePowerSet::new(out)
}

/// The tiles with a common `S_A = S`, all inside `[0, lcm(S))` with minimum
/// 0, in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileFamily {
    pub s: PrimePowerSet,
    pub tiles: Vec<IntegerSet>,
}

impl fmt::Display for TileFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "S = {} lcm = {}", self.s, self.s.lcm())?;
        for t in &self.tiles {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for TileFamily {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::parse(0, "missing header"))?;
        let rest = header.trim().strip_prefix("S =").ok_or_else(|| Error::parse(0, "header must start with 'S ='"))?;
        let (s, lcm) = rest.split_once("lcm =").ok_or_else(|| Error::parse(0, "header must contain 'lcm ='"))?;
        let s: PrimePowerSet = s.parse()?;
        let lcm: u64 = lcm.trim().parse().map_err(|_| Error::parse(0, format!("bad lcm '{}'", lcm.trim())))?;
        if lcm != s.lcm() {
            return Err(Error::parse(0, format!("header lcm {lcm} but lcm{s} = {}", s.lcm())));
        }
        let tiles = lines.map(str::parse).collect::<Result<Vec<IntegerSet>>>()?;
        Ok(Self { s, tiles })
    }
}

/// `𝒯_S`, built by the one- and two-prime recursions.
///
/// A power `p ∈ S` splits a tile into its `p` residue classes `{a_i} ⊕ pĀ_i`
/// with `Ā_i ∈ 𝒯_{S̄}`, where `S̄` lowers every power of `p` by one and drops
/// `p`. When neither prime itself is in `S`, every tile lies in `pZ` or
/// `qZ` and is a dilate of a smaller member.
pub fn enumerate_t_s(s: &PrimePowerSet, bound: u64) -> Result<TileFamily> {
    let primes = s.primes();
    if primes.len() > 2 {
        return Err(Error::TooManyPrimes(primes.len()));
    }
    if s.lcm() > bound {
        return Err(Error::BoundExceeded { lcm: s.lcm(), bound });
    }
    let mut memo = HashMap::new();
    let tiles = t_s(s, &mut memo).iter().cloned().collect();
    Ok(TileFamily { s: s.clone(), tiles })
}

/// `S̄` for the prime `p`: powers of `p` lose one exponent (and `p` itself
/// disappears), other powers are kept.
fn lower(s: &PrimePowerSet, p: u64) -> PrimePowerSet {
    PrimePowerSet::new(s.iter().filter(|&x| x != p).map(|x| if x % p == 0 { x / p } else { x }))
        .expect("lowered prime powers")
}

fn dilate(family: &BTreeSet<IntegerSet>, p: u64) -> impl Iterator<Item = IntegerSet> + '_ {
    family.iter().map(move |a| a.scaled(p))
}

fn t_s(s: &PrimePowerSet, memo: &mut HashMap<PrimePowerSet, BTreeSet<IntegerSet>>) -> BTreeSet<IntegerSet> {
    if let Some(hit) = memo.get(s) {
        return hit.clone();
    }
    let primes: Vec<u64> = s.primes().into_iter().collect();
    let out: BTreeSet<IntegerSet> = if s.is_empty() {
        BTreeSet::from([IntegerSet::new([0])])
    } else if let Some(&p) = primes.iter().find(|&&p| s.contains(p)) {
        let sub = t_s(&lower(s, p), memo);
        split_by_classes(p, s.lcm(), &sub)
    } else {
        let mut acc = BTreeSet::new();
        for &p in &primes {
            acc.extend(dilate(&t_s(&lower(s, p), memo), p));
        }
        acc
    };
    memo.insert(s.clone(), out.clone());
    out
}

/// `⋃_{i<p} ({a_i} ⊕ pĀ_i)` over complete residue systems `a_i ≡ i (mod p)`,
/// `a_0 = 0`, and `Ā_i` from `sub`, with everything below `limit`.
fn split_by_classes(p: u64, limit: u64, sub: &BTreeSet<IntegerSet>) -> BTreeSet<IntegerSet> {
    let per_class: Vec<Vec<Vec<u64>>> = (0..p)
        .map(|i| {
            let mut options = Vec::new();
            for a_bar in sub {
                let span = p * a_bar.max_element().unwrap_or(0);
                let starts: Vec<u64> = if i == 0 { vec![0] } else { (i..limit).step_by(p as usize).collect() };
                for a in starts {
                    if a + span < limit {
                        options.push(a_bar.elements().iter().map(|&x| a + p * x).collect());
                    }
                }
            }
            options
        })
        .collect();
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for options in &per_class {
        acc = acc
            .par_iter()
            .flat_map_iter(|prefix| {
                options.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(o);
                    v
                })
            })
            .collect();
    }
    acc.into_iter().map(IntegerSet::new).collect()
}

/// The digit-tree conditions for `A ∈ 𝒯_S`, `S = {p^{α_1}, …, p^{α_n}}`:
/// the last level is `{0, …, p-1}`, along every path
/// `a_{i_1..i_k} + p^{α_{k+1}-α_k} a_{i_1..i_{k+1}} + … + p^{α_{n-1}-α_k} a_{i_1..i_{n-1}} ≤ p^{α_n-α_k} - 1`,
/// and the tree expands to `A`.
pub fn structure_conditions_check(a: &IntegerSet, tree: &DigitTree) -> bool {
    let (p, alpha) = (tree.p, &tree.exponents);
    let n = alpha.len();
    let identity: Vec<u64> = (0..p).collect();
    if all_paths(p, n - 1).iter().any(|path| tree.systems[path] != identity) {
        return false;
    }
    for path in all_paths(p, n - 1) {
        let digits = tree.digits(&path);
        for k in 0..n.saturating_sub(1) {
            let lhs: u128 = (k..n - 1).map(|j| digits[j] as u128 * (p as u128).pow(alpha[j] - alpha[k])).sum();
            if lhs > (p as u128).pow(alpha[n - 1] - alpha[k]) - 1 {
                return false;
            }
        }
    }
    tree.expand() == *a
}

/// Recovers the digit tree of a prime-power tile: at each level the
/// elements are split by residue mod `p` and each class minimum becomes a
/// digit. Returns `None` if `A` has no such tree for these exponents.
pub fn find_structure_tree(a: &IntegerSet, s: &PrimePowerSet) -> Option<DigitTree> {
    let by_prime = s.by_prime();
    if by_prime.len() != 1 || a.min_element() != Some(0) {
        return None;
    }
    let (&p, exponents) = by_prime.iter().next().expect("one prime");
    let mut gaps = Vec::with_capacity(exponents.len());
    let mut prev = 0;
    for &e in exponents {
        gaps.push(e - prev - 1);
        prev = e;
    }
    let mut systems = BTreeMap::new();
    if !decompose(a.elements(), p, &gaps, &mut Vec::new(), &mut systems) {
        return None;
    }
    let tree = DigitTree::new(p, exponents.clone(), systems).ok()?;
    (tree.expand() == *a).then_some(tree)
}

fn decompose(x: &[u64], p: u64, gaps: &[u32], path: &mut Vec<u64>, systems: &mut BTreeMap<Vec<u64>, Vec<u64>>) -> bool {
    let Some((&gap, rest)) = gaps.split_first() else {
        return x == [0];
    };
    let d = p.pow(gap);
    if x.iter().any(|v| v % d != 0) {
        return false;
    }
    let mut classes: Vec<Vec<u64>> = vec![Vec::new(); p as usize];
    for &v in x {
        classes[((v / d) % p) as usize].push(v / d);
    }
    if classes.iter().any(Vec::is_empty) {
        return false;
    }
    let minima: Vec<u64> = classes.iter().map(|c| c[0]).collect();
    systems.insert(path.clone(), minima.clone());
    for (i, class) in classes.iter().enumerate() {
        let sub: Vec<u64> = class.iter().map(|v| (v - minima[i]) / p).collect();
        path.push(i as u64);
        let ok = decompose(&sub, p, rest, path, systems);
        path.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Translates to minimum 0 and reduces mod `lcm(S)`; for a tile with
/// `S_A = S` the result is the member of `𝒯_S` it is congruent to.
pub fn reduce_to_canonical(a: &IntegerSet, s: &PrimePowerSet) -> Result<IntegerSet> {
    let report = cm::cm_report(a)?;
    if report.sa != *s {
        return Err(Error::Precondition(format!("S_A = {} differs from {s}", report.sa)));
    }
    let primes = s.primes().len();
    if primes > 2 {
        return Err(Error::TooManyPrimes(primes));
    }
    if !report.is_cm() {
        return Err(Error::Precondition(format!("{a} fails (T1)/(T2) and so does not tile")));
    }
    let reduced = a
        .normalized()
        .reduce_mod(s.lcm())
        .map_err(|e| Error::TheoremViolation(format!("{a} is CM but not injective mod lcm{s}: {e}")))?;
    Ok(reduced.to_integer_set())
}
