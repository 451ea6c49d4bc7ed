//! Szabó's block-swap factorizations of `Z_{m_1} × ⋯ × Z_{m_r}` with their
//! spectra, and the composition of tiles and spectra across `Z_N` and
//! `Z_M`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cm;
use crate::cyclotomic;
use crate::error::{Error, Result};
use crate::residue_sets::{crt_dual_map, crt_map, direct_sum_check, GroupElementTuple, ResidueSet};
use crate::spectral::verify_spectrum;

/// A permutation of `{1, …, r}`, written and parsed in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    /// `images[i]` is the 0-based image of the 0-based point `i`.
    images: Vec<usize>,
}

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Params(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self { images })
    }

    /// `(1 2 3)` on `{1, …, r}`; points not mentioned are fixed.
    pub fn from_cycles(cycles: &[Vec<usize>], r: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..r).collect();
        let mut seen = vec![false; r];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > r {
                    return Err(Error::Params(format!("point {x} is outside 1..={r}")));
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::Params(format!("point {x} appears twice")));
                }
                images[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of a 0-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Disjoint cycles, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn shortest_cycle(&self) -> usize {
        self.cycles().iter().map(Vec::len).min().unwrap_or(0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Cycle notation over `1..=r` where `r` is the largest point written.
    fn from_str(s: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let offset = s.len() - rest.len();
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::parse(offset, "expected a cycle '(i j k ...)'"))?;
            let cycle = body
                .0
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::parse(offset, format!("bad point '{t}'"))))
                .collect::<Result<Vec<_>>>()?;
            if cycle.is_empty() {
                return Err(Error::parse(offset, "empty cycle"));
            }
            cycles.push(cycle);
            rest = body.1.trim_start();
        }
        let r = cycles.iter().flatten().copied().max().unwrap_or(0);
        Self::from_cycles(&cycles, r)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> Self {
        p.to_string()
    }
}

/// A subset of `Z_{m_1} × ⋯ × Z_{m_r}`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductSet {
    moduli: Vec<u64>,
    elements: Vec<Vec<u64>>,
}

impl ProductSet {
    pub fn new(moduli: Vec<u64>, elements: impl IntoIterator<Item = Vec<u64>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in elements {
            GroupElementTuple::new(e.clone(), moduli.clone())?;
            set.insert(e);
        }
        Ok(Self { moduli, elements: set.into_iter().collect() })
    }

    /// `{(k_1, …, k_r) : 0 ≤ k_i < extents_i}` scaled coordinatewise.
    fn grid(moduli: &[u64], extents: &[u64], steps: &[u64]) -> Self {
        let mut acc = vec![Vec::new()];
        for (i, (&n, &step)) in extents.iter().zip(steps).enumerate() {
            let m = moduli[i];
            acc = acc
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    (0..n).map(move |k| {
                        let mut v = prefix.clone();
                        v.push(k * step % m);
                        v
                    })
                })
                .collect();
        }
        Self::new(moduli.to_vec(), acc).expect("grid points are reduced")
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn elements(&self) -> &[Vec<u64>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(x)).is_ok()
    }

    pub fn group_order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.moduli).map(|((a, b), m)| (a + b) % m).collect()
    }

    pub fn translate(&self, g: &[u64]) -> Self {
        Self::new(self.moduli.clone(), self.elements.iter().map(|e| self.add(e, g))).expect("reduced")
    }

    /// `A + B` as a set.
    pub fn sumset(&self, other: &ProductSet) -> Self {
        let sums = self.elements.iter().flat_map(|x| other.elements.iter().map(move |y| self.add(x, y)));
        Self::new(self.moduli.clone(), sums).expect("reduced")
    }

    pub fn union(&self, other: &ProductSet) -> Self {
        Self::new(self.moduli.clone(), self.elements.iter().chain(&other.elements).cloned()).expect("reduced")
    }

    pub fn difference(&self, other: &ProductSet) -> Self {
        Self::new(self.moduli.clone(), self.elements.iter().filter(|e| !other.contains(e)).cloned()).expect("reduced")
    }

    pub fn tuples(&self) -> Vec<GroupElementTuple> {
        self.elements.iter().map(|e| GroupElementTuple::new(e.clone(), self.moduli.clone()).expect("reduced")).collect()
    }

    /// Image under `Ψ(k) = Σ k_i m/m_i` in `Z_m`.
    pub fn crt_image(&self) -> Result<ResidueSet> {
        let image = self.tuples().iter().map(crt_map).collect::<Result<Vec<_>>>()?;
        ResidueSet::new(self.group_order(), image)
    }

    /// Image under the character-compatible embedding of the dual group.
    pub fn crt_dual_image(&self) -> Result<ResidueSet> {
        let image = self.tuples().iter().map(crt_dual_map).collect::<Result<Vec<_>>>()?;
        ResidueSet::new(self.group_order(), image)
    }

    /// Mixed-radix index of a tuple.
    fn index(&self, x: &[u64]) -> usize {
        x.iter().zip(&self.moduli).fold(0usize, |acc, (&k, &m)| acc * m as usize + k as usize)
    }
}

impl fmt::Display for ProductSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .elements
            .iter()
            .map(|e| format!("({})", e.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn same_group(a: &ProductSet, b: &ProductSet) -> Result<()> {
    if a.moduli != b.moduli {
        return Err(Error::Params(format!("moduli {:?} vs {:?}", a.moduli, b.moduli)));
    }
    Ok(())
}

/// `A ⊕ B = G` in the product group, by enumeration of sums.
pub fn product_direct_sum(a: &ProductSet, b: &ProductSet) -> Result<bool> {
    same_group(a, b)?;
    let order = a.group_order();
    if (a.len() as u128) * (b.len() as u128) != order as u128 {
        return Ok(false);
    }
    let mut seen = vec![false; order as usize];
    for x in &a.elements {
        for y in &b.elements {
            let i = a.index(&a.add(x, y));
            if std::mem::replace(&mut seen[i], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact spectrum test in the product group. For `d = λ - λ'` the
/// character sum `Σ_a e^{2πi Σ a_i d_i / m_i}` is `P(ω_L)` with
/// `L = lcm(m_i)` and `P(x) = Σ_a x^{Σ a_i d_i L/m_i mod L}`, which
/// vanishes iff `Φ_L | P`.
pub fn product_spectrum_check(a: &ProductSet, lambda: &ProductSet) -> Result<bool> {
    same_group(a, lambda)?;
    if a.len() != lambda.len() || a.is_empty() {
        return Ok(false);
    }
    let l =
        a.moduli.iter().try_fold(1u64, |acc, &m| arith::checked_lcm(acc, m)).ok_or(Error::Overflow("lcm of moduli"))?;
    let weights: Vec<u64> = a.moduli.iter().map(|&m| l / m).collect();
    let le = &lambda.elements;
    for (i, x) in le.iter().enumerate() {
        for y in &le[i + 1..] {
            let d: Vec<u64> = y.iter().zip(x).zip(&a.moduli).map(|((p, q), m)| (p + m - q) % m).collect();
            let exponents = a.elements.iter().map(|e| {
                e.iter()
                    .zip(&d)
                    .zip(&weights)
                    .fold(0u64, |acc, ((&k, &di), &w)| (acc + arith::mul_mod(arith::mul_mod(k, di, l), w, l)) % l)
            });
            if !cyclotomic::divides_mask(exponents, l) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `[g]_n = {0, g, 2g, …, (n-1)g}`.
pub fn progression(moduli: &[u64], g: &[u64], n: u64) -> ProductSet {
    let points = (0..n).map(|k| g.iter().zip(moduli).map(|(&gi, &m)| arith::mul_mod(k, gi, m)).collect());
    ProductSet::new(moduli.to_vec(), points).expect("reduced")
}

/// A block `B_i ⊆ B'` to be replaced by `B_i + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapBlock {
    pub block: ProductSet,
    pub shift: Vec<u64>,
}

/// `B = (B' \ ⋃ B_i) ∪ ⋃ (B_i + g_i)`, given `A ⊕ B' = G`, pairwise disjoint
/// `B_i ⊆ B'` and `A + B_i = A + B_i + g_i`. Each hypothesis is checked and
/// `A ⊕ B = G` is confirmed by enumeration.
pub fn szabo_swap(a: &ProductSet, b_prime: &ProductSet, blocks: &[SwapBlock]) -> Result<ProductSet> {
    if !product_direct_sum(a, b_prime)? {
        return Err(Error::Precondition(format!("{a} ⊕ {b_prime} is not the whole group")));
    }
    let mut owner: BTreeMap<&[u64], usize> = BTreeMap::new();
    for (i, blk) in blocks.iter().enumerate() {
        same_group(a, &blk.block)?;
        GroupElementTuple::new(blk.shift.clone(), a.moduli.clone())?;
        for x in &blk.block.elements {
            if !b_prime.contains(x) {
                return Err(Error::Precondition(format!("block {} element {x:?} is not in B'", i + 1)));
            }
            if let Some(j) = owner.insert(x, i) {
                return Err(Error::Precondition(format!("blocks {} and {} share {x:?}", j + 1, i + 1)));
            }
        }
        let base = a.sumset(&blk.block);
        if let Some(x) = base.translate(&blk.shift).elements.iter().find(|x| !base.contains(x)) {
            return Err(Error::Precondition(format!(
                "A + B_{} is not invariant under {:?}: {x:?} escapes",
                i + 1,
                blk.shift
            )));
        }
    }
    let mut b = b_prime.clone();
    for blk in blocks {
        b = b.difference(&blk.block);
    }
    for blk in blocks {
        b = b.union(&blk.block.translate(&blk.shift));
    }
    if b.len() != b_prime.len() || !product_direct_sum(a, &b)? {
        return Err(Error::TheoremViolation(format!("swapped set {b} does not complement {a}")));
    }
    Ok(b)
}

/// Moduli `m_i = u_i v_i` and the permutations driving the swaps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzaboParams {
    pub moduli: Vec<u64>,
    pub u: Vec<u64>,
    pub v: Vec<u64>,
    pub pi: Permutation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Permutation>,
}

impl SzaboParams {
    pub fn validate(&self) -> Result<()> {
        let r = self.moduli.len();
        if r < 3 {
            return Err(Error::Params(format!("need at least 3 cyclic factors, got {r}")));
        }
        if self.u.len() != r || self.v.len() != r {
            return Err(Error::Params("moduli, u and v must have equal length".into()));
        }
        for i in 0..r {
            let (m, u, v) = (self.moduli[i], self.u[i], self.v[i]);
            if u < 2 || v < 2 || u.checked_mul(v) != Some(m) {
                return Err(Error::Params(format!("factor {}: need m = u·v with u, v > 1, got {m} = {u}·{v}", i + 1)));
            }
        }
        for (name, perm) in [("pi", Some(&self.pi)), ("sigma", self.sigma.as_ref())] {
            let Some(perm) = perm else { continue };
            if perm.degree() != r {
                return Err(Error::Params(format!("{name} acts on {} points, expected {r}", perm.degree())));
            }
            if perm.shortest_cycle() < 3 {
                return Err(Error::Params(format!("{name} = {perm} has a cycle shorter than 3")));
            }
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let p: Self = toml::from_str(text).map_err(|e| Error::Params(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("params serialize")
    }

    fn generator(&self, i: usize) -> Vec<u64> {
        let mut g = vec![0; self.moduli.len()];
        g[i] = 1;
        g
    }
}

/// `A = Σ [g_i]_{u_i}` and `B' = Σ [u_i g_i]_{v_i}` with standard generators.
pub fn szabo_factor_pair(u: &[u64], v: &[u64]) -> (ProductSet, ProductSet) {
    let moduli: Vec<u64> = u.iter().zip(v).map(|(a, b)| a * b).collect();
    let ones = vec![1; u.len()];
    (ProductSet::grid(&moduli, u, &ones), ProductSet::grid(&moduli, v, u))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtImages {
    pub a: ResidueSet,
    pub b_prime: ResidueSet,
    pub b: ResidueSet,
    pub b0: ResidueSet,
    pub lambda_a: ResidueSet,
    pub lambda_b: ResidueSet,
    pub lambda_a_prime: Option<ResidueSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SzaboOutput {
    pub params: SzaboParams,
    pub a: ProductSet,
    pub b_prime: ProductSet,
    pub blocks: Vec<SwapBlock>,
    pub b: ProductSet,
    /// The part of `B'` left untouched by the swap.
    pub b0: ProductSet,
    pub lambda_a: ProductSet,
    pub lambda_b: ProductSet,
    pub lambda_a_prime: Option<ProductSet>,
    pub images: Option<CrtImages>,
}

/// Blocks `[w_i g_i]_{n_i} + w_{τ(i)} g_{τ(i)}` shifted by `g_i`.
fn swap_blocks(params: &SzaboParams, w: &[u64], n: &[u64], tau: &Permutation) -> Vec<SwapBlock> {
    let m = &params.moduli;
    (0..m.len())
        .map(|i| {
            let t = tau.apply(i);
            let step: Vec<u64> = params.generator(i).iter().map(|g| g * w[i]).collect();
            let offset: Vec<u64> = params.generator(t).iter().map(|g| g * w[t]).collect();
            SwapBlock { block: progression(m, &step, n[i]).translate(&offset), shift: params.generator(i) }
        })
        .collect()
}

/// Szabó's factorization `A ⊕ B = G` obtained from `A ⊕ B'` by swapping the
/// blocks `[u_i g_i]_{v_i} + u_{π(i)} g_{π(i)}` along `g_i`, together with
/// the spectra `Λ_A`, `Λ_B` and, given `σ`, the swapped spectrum `Λ_A'`.
/// The generators `g_i` are the standard basis vectors and also serve as
/// the swap shifts.
pub fn szabo_example(params: &SzaboParams) -> Result<SzaboOutput> {
    params.validate()?;
    let (u, v) = (&params.u, &params.v);
    let (a, b_prime) = szabo_factor_pair(u, v);
    let blocks = swap_blocks(params, u, v, &params.pi);
    let b = szabo_swap(&a, &b_prime, &blocks)?;
    let b0 = blocks.iter().fold(b_prime.clone(), |acc, blk| acc.difference(&blk.block));
    // Λ_B ⊕ Λ_A = G has the shape of A ⊕ B' with u and v exchanged
    let (lambda_b, lambda_a) = szabo_factor_pair(v, u);
    let lambda_a_prime = match &params.sigma {
        Some(sigma) => Some(szabo_swap(&lambda_b, &lambda_a, &swap_blocks(params, v, u, sigma))?),
        None => None,
    };
    let images = if arith::pairwise_coprime(&params.moduli) {
        Some(CrtImages {
            a: a.crt_image()?,
            b_prime: b_prime.crt_image()?,
            b: b.crt_image()?,
            b0: b0.crt_image()?,
            lambda_a: lambda_a.crt_image()?,
            lambda_b: lambda_b.crt_image()?,
            lambda_a_prime: lambda_a_prime.as_ref().map(ProductSet::crt_image).transpose()?,
        })
    } else {
        None
    };
    Ok(SzaboOutput { params: params.clone(), a, b_prime, blocks, b, b0, lambda_a, lambda_b, lambda_a_prime, images })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseReport {
    pub clauses: Vec<Clause>,
}

impl ClauseReport {
    fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.clauses.push(Clause { name: name.into(), passed });
    }

    pub fn all_passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.clauses.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

/// Re-derives every claim about a Szabó output by enumeration: the two
/// factorizations, the spectra in the product group, and, when the moduli
/// are coprime, the spectra and the CM property of the images in `Z_m`.
pub fn verify_szabo(out: &SzaboOutput) -> Result<ClauseReport> {
    let mut r = ClauseReport::default();
    r.push("A ⊕ B' = G", product_direct_sum(&out.a, &out.b_prime)?);
    r.push("A ⊕ B = G", product_direct_sum(&out.a, &out.b)?);
    let mut union = 0usize;
    let mut all = BTreeSet::new();
    for blk in &out.blocks {
        union += blk.block.len();
        all.extend(blk.block.elements.iter().cloned());
    }
    r.push("blocks pairwise disjoint", union == all.len());
    r.push("Λ_A spectrum of A", product_spectrum_check(&out.a, &out.lambda_a)?);
    r.push("Λ_B spectrum of B'", product_spectrum_check(&out.b_prime, &out.lambda_b)?);
    r.push("Λ_B spectrum of B", product_spectrum_check(&out.b, &out.lambda_b)?);
    r.push("Λ_A ⊕ Λ_B = G", product_direct_sum(&out.lambda_a, &out.lambda_b)?);
    if let Some(lp) = &out.lambda_a_prime {
        r.push("Λ_A' spectrum of A", product_spectrum_check(&out.a, lp)?);
        r.push("Λ_A' ⊕ Λ_B = G", product_direct_sum(lp, &out.lambda_b)?);
    }
    if let Some(img) = &out.images {
        r.push("Ψ(Λ_A) spectrum of Ψ(A)", verify_spectrum(&img.a, &img.lambda_a)?.holds());
        r.push("Ψ(Λ_B) spectrum of Ψ(B')", verify_spectrum(&img.b_prime, &img.lambda_b)?.holds());
        r.push("Ψ(Λ_B) spectrum of Ψ(B)", verify_spectrum(&img.b, &img.lambda_b)?.holds());
        r.push("Ψ(Λ_A) ⊕ Ψ(Λ_B) = Z_m", direct_sum_check(&img.lambda_a, &img.lambda_b)?);
        let mut named =
            vec![("A", &img.a), ("B'", &img.b_prime), ("B", &img.b), ("Λ_A", &img.lambda_a), ("Λ_B", &img.lambda_b)];
        if let Some(lp) = &img.lambda_a_prime {
            r.push("Ψ(Λ_A') spectrum of Ψ(A)", verify_spectrum(&img.a, lp)?.holds());
            named.push(("Λ_A'", lp));
        }
        for (name, set) in named {
            r.push(format!("Ψ({name}) has the CM property"), cm::is_cm(&set.to_integer_set())?);
        }
    }
    Ok(r)
}

/// `Ã = ⋃_{a∈A} ({a} ⊕ N·A_a)` and `B̃ = B ⊕ N·C` in `Z_{NM}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposedTile {
    pub a: ResidueSet,
    pub b: ResidueSet,
}

/// Composes `A ⊕ B = Z_N` with tiles `A_a ⊕ C = Z_M` sharing the
/// complement `C`; the result is checked to tile `Z_{NM}`.
pub fn compose_tiles(
    a: &ResidueSet,
    b: &ResidueSet,
    family: &BTreeMap<u64, ResidueSet>,
    c: &ResidueSet,
) -> Result<ComposedTile> {
    let n = a.modulus();
    let m = c.modulus();
    if !direct_sum_check(a, b)? {
        return Err(Error::Precondition(format!("{a} ⊕ {b} is not Z_{n}")));
    }
    if family.keys().copied().ne(a.elements().iter().copied()) {
        return Err(Error::Precondition("the family must be indexed by exactly the elements of A".into()));
    }
    for (key, aa) in family {
        if !direct_sum_check(aa, c)? {
            return Err(Error::Precondition(format!("A_{key} = {aa} ⊕ {c} is not Z_{m}")));
        }
    }
    let nm = n.checked_mul(m).ok_or(Error::Overflow("NM"))?;
    let a_tilde =
        ResidueSet::new(nm, family.iter().flat_map(|(&k, aa)| aa.elements().iter().map(move |&x| k + n * x)))?;
    let b_tilde = ResidueSet::new(nm, b.elements().iter().flat_map(|&y| c.elements().iter().map(move |&z| y + n * z)))?;
    if !direct_sum_check(&a_tilde, &b_tilde)? {
        return Err(Error::TheoremViolation(format!("{a_tilde} ⊕ {b_tilde} is not Z_{nm}")));
    }
    Ok(ComposedTile { a: a_tilde, b: b_tilde })
}

/// Whether `A` meets every class mod `k` exactly once.
fn complete_mod(a: &ResidueSet, k: u64) -> bool {
    a.len() as u64 == k && a.elements().iter().map(|x| x % k).collect::<BTreeSet<_>>().len() as u64 == k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeSplit {
    /// `N / #B`, the modulus `A` is complete for.
    pub a_modulus: u64,
    /// `N / #A`, the modulus `B` is complete for.
    pub b_modulus: u64,
    /// `A` complete mod `N/#A` and `B` complete mod `N/#B`; reported for
    /// comparison, not implied by the factorization.
    pub a_complete_mod_b_modulus: bool,
    pub b_complete_mod_a_modulus: bool,
}

/// For `A ⊕ B = Z_N` with `gcd(#A, #B) = 1`: `A` is a complete residue
/// system mod `N/#B` and `B` one mod `N/#A`. Both are checked.
pub fn coprime_split(a: &ResidueSet, b: &ResidueSet) -> Result<CoprimeSplit> {
    let n = a.modulus();
    if !direct_sum_check(a, b)? {
        return Err(Error::Precondition(format!("{a} ⊕ {b} is not Z_{n}")));
    }
    let (ka, kb) = (a.len() as u64, b.len() as u64);
    if arith::gcd(ka, kb) != 1 {
        return Err(Error::Precondition(format!("#A = {ka} and #B = {kb} are not coprime")));
    }
    let (a_modulus, b_modulus) = (n / kb, n / ka);
    if !complete_mod(a, a_modulus) || !complete_mod(b, b_modulus) {
        return Err(Error::TheoremViolation(format!(
            "{a} mod {a_modulus} or {b} mod {b_modulus} is not a complete residue system"
        )));
    }
    Ok(CoprimeSplit {
        a_modulus,
        b_modulus,
        a_complete_mod_b_modulus: complete_mod(a, b_modulus),
        b_complete_mod_a_modulus: complete_mod(b, a_modulus),
    })
}
