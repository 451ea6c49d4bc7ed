//! Finite sets of integers and of residues mod `N`, their mask
//! polynomials, direct-sum verification, and the CRT isomorphism.

mod crt;
mod literal;
mod search;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

pub use crt::{crt_dual_map, crt_inverse, crt_map, crt_map_set, GroupElementTuple};
pub use literal::SetLiteral;
pub use search::{all_complements, complement_search};

use crate::arith;
use crate::cyclotomic::{self, IntPolynomial};
use crate::error::{Error, Result};

/// A finite set of non-negative integers, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<u64>", from = "Vec<u64>")]
pub struct IntegerSet {
    elements: Vec<u64>,
}

impl From<Vec<u64>> for IntegerSet {
    fn from(v: Vec<u64>) -> Self {
        IntegerSet::new(v)
    }
}

impl From<IntegerSet> for Vec<u64> {
    fn from(s: IntegerSet) -> Self {
        s.elements
    }
}

impl IntegerSet {
    /// Builds a set from arbitrary elements; repeats collapse.
    pub fn new(elements: impl IntoIterator<Item = u64>) -> Self {
        let mut elements: Vec<u64> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        Self { elements }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min_element(&self) -> Option<u64> {
        self.elements.first().copied()
    }

    pub fn max_element(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The translate with minimum 0.
    pub fn normalized(&self) -> Self {
        let m = self.min_element().unwrap_or(0);
        Self { elements: self.elements.iter().map(|e| e - m).collect() }
    }

    pub fn shifted(&self, k: u64) -> Self {
        Self { elements: self.elements.iter().map(|e| e + k).collect() }
    }

    pub fn scaled(&self, k: u64) -> Self {
        Self::new(self.elements.iter().map(|e| e * k))
    }

    /// Reduction to `Z_N`. Two elements landing on the same residue is an
    /// error rather than a silent merge.
    pub fn reduce_mod(&self, modulus: u64) -> Result<ResidueSet> {
        ResidueSet::from_integers(modulus, self.elements.iter().copied())
    }

    /// `A(x) = Σ x^a`.
    pub fn mask_polynomial(&self) -> IntPolynomial {
        mask_of(&self.elements)
    }
}

fn mask_of(elements: &[u64]) -> IntPolynomial {
    let Some(&max) = elements.iter().max() else {
        return IntPolynomial::zero();
    };
    let mut c = vec![0i64; max as usize + 1];
    for &e in elements {
        c[e as usize] += 1;
    }
    IntPolynomial::from_i64(&c)
}

/// `A(x) = Σ_{a∈A} x^a`.
pub fn mask_polynomial(a: &IntegerSet) -> IntPolynomial {
    a.mask_polynomial()
}

/// A subset of `Z_N` stored as sorted residues in `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawResidueSet")]
pub struct ResidueSet {
    modulus: u64,
    elements: Vec<u64>,
}

#[derive(Deserialize)]
struct RawResidueSet {
    modulus: u64,
    elements: Vec<u64>,
}

impl TryFrom<RawResidueSet> for ResidueSet {
    type Error = Error;

    fn try_from(raw: RawResidueSet) -> Result<Self> {
        ResidueSet::new(raw.modulus, raw.elements)
    }
}

impl ResidueSet {
    /// Residues must already lie in `[0, N)` and be distinct.
    pub fn new(modulus: u64, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut elements: Vec<u64> = elements.into_iter().collect();
        if let Some(&value) = elements.iter().find(|&&e| e >= modulus) {
            return Err(Error::ResidueOutOfRange { value, modulus });
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Collision { residue: w[0], modulus });
        }
        Ok(Self { modulus, elements })
    }

    /// Reduces arbitrary integers mod `N`; collisions are errors.
    pub fn from_integers(modulus: u64, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Self::new(modulus, elements.into_iter().map(|e| e % modulus))
    }

    /// Reduces mod `N`, merging collisions.
    pub(crate) fn from_integers_lossy(modulus: u64, elements: impl IntoIterator<Item = u64>) -> Self {
        let mut elements: Vec<u64> = elements.into_iter().map(|e| e % modulus).collect();
        elements.sort_unstable();
        elements.dedup();
        Self { modulus, elements }
    }

    /// All of `Z_N`.
    pub fn full(modulus: u64) -> Self {
        Self { modulus, elements: (0..modulus).collect() }
    }

    /// `{0}` in `Z_N`.
    pub fn zero(modulus: u64) -> Self {
        Self { modulus, elements: vec![0] }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `A + k`.
    pub fn translate(&self, k: u64) -> Self {
        let n = self.modulus;
        Self::from_integers_lossy(n, self.elements.iter().map(|&e| (e + k % n) % n))
    }

    /// The translate containing 0 as its smallest residue.
    pub fn canonical(&self) -> Self {
        match self.elements.first() {
            Some(&m) => self.translate(self.modulus - m),
            None => self.clone(),
        }
    }

    /// `rA mod N` as a multiset collapsed to a set; `None` if two elements
    /// collide.
    pub fn scale(&self, r: u64) -> Option<Self> {
        let n = self.modulus;
        Self::new(n, self.elements.iter().map(|&e| arith::mul_mod(e, r, n))).ok()
    }

    pub fn mask_polynomial(&self) -> IntPolynomial {
        mask_of(&self.elements)
    }

    pub fn to_integer_set(&self) -> IntegerSet {
        IntegerSet { elements: self.elements.clone() }
    }

    /// `(A - A)` as a bitset over `Z_N`.
    pub(crate) fn difference_bits(&self) -> FixedBitSet {
        let n = self.modulus;
        let mut b = FixedBitSet::with_capacity(n as usize);
        for &x in &self.elements {
            for &y in &self.elements {
                b.insert(((x + n - y) % n) as usize);
            }
        }
        b
    }
}

fn same_modulus(a: &ResidueSet, b: &ResidueSet) -> Result<u64> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch { left: a.modulus, right: b.modulus });
    }
    Ok(a.modulus)
}

/// `A ⊕ B = Z_N`: the cardinalities multiply to `N` and all sums `a + b`
/// are distinct mod `N`.
pub fn direct_sum_check(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    let n = same_modulus(a, b)?;
    if (a.len() as u128) * (b.len() as u128) != n as u128 {
        return Ok(false);
    }
    let mut seen = FixedBitSet::with_capacity(n as usize);
    for &x in &a.elements {
        for &y in &b.elements {
            let s = ((x + y) % n) as usize;
            if seen.put(s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The difference-set form of the direct-sum test: `#A·#B = N` and
/// `(A - A) ∩ (B - B) = {0}`.
pub fn difference_criterion(a: &ResidueSet, b: &ResidueSet) -> Result<bool> {
    let n = same_modulus(a, b)?;
    if (a.len() as u128) * (b.len() as u128) != n as u128 {
        return Ok(false);
    }
    let mut common = a.difference_bits();
    common.intersect_with(&b.difference_bits());
    Ok(common.ones().eq(std::iter::once(0)))
}

/// Tiling test through cyclotomic divisibility: `A(1)B(1) = N` and every
/// divisor `t > 1` of `N` has `Φ_t | A(x)` or `Φ_t | B(x)`.
pub fn tiling_check_cyclotomic(a: &IntegerSet, b: &IntegerSet, modulus: u64) -> bool {
    if a.is_empty() || b.is_empty() || (a.len() as u128) * (b.len() as u128) != modulus as u128 {
        return false;
    }
    arith::divisors(modulus).into_iter().skip(1).all(|t| {
        cyclotomic::divides_mask(a.elements.iter().copied(), t)
            || cyclotomic::divides_mask(b.elements.iter().copied(), t)
    })
}

/// `0 ∈ A` and `A` is closed under addition mod `N`.
pub fn is_subgroup(a: &ResidueSet) -> bool {
    let n = a.modulus;
    a.contains(0) && a.elements.iter().all(|&x| a.elements.iter().all(|&y| a.contains((x + y) % n)))
}

/// Counts of elements in each residue class mod `k`.
pub fn equidistribution_profile(a: &IntegerSet, k: u64) -> Vec<usize> {
    assert!(k >= 1, "k must be positive");
    let mut counts = vec![0; k as usize];
    for &x in &a.elements {
        counts[(x % k) as usize] += 1;
    }
    counts
}

/// `true` when every residue class mod `k` holds the same number of
/// elements.
pub fn is_equidistributed(a: &IntegerSet, k: u64) -> bool {
    let p = equidistribution_profile(a, k);
    p.windows(2).all(|w| w[0] == w[1])
}

/// One nonempty residue class of a decimation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimatedClass {
    pub residue: u64,
    /// Smallest element of the class.
    pub min: u64,
    /// `(class - min) / k`.
    pub reduced: IntegerSet,
}

/// Splits `A` by residue mod `k`, translating each class to start at 0 and
/// dividing by `k`, so that `A(x) = Σ x^{min_i} · Ā_i(x^k)`.
pub fn decimate(a: &IntegerSet, k: u64) -> Vec<DecimatedClass> {
    assert!(k >= 1, "k must be positive");
    let mut classes: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &x in &a.elements {
        classes.entry(x % k).or_default().push(x);
    }
    classes
        .into_iter()
        .map(|(residue, members)| {
            let min = members[0];
            DecimatedClass { residue, min, reduced: IntegerSet::new(members.iter().map(|x| (x - min) / k)) }
        })
        .collect()
}

/// Right-hand side of the decimation identity, `Σ x^{min_i} · Ā_i(x^k)`.
pub fn recompose_decimation(classes: &[DecimatedClass], k: u64) -> IntPolynomial {
    classes.iter().fold(IntPolynomial::zero(), |acc, c| {
        let part =
            &c.reduced.mask_polynomial().substitute_power(k as usize) * &IntPolynomial::monomial(1, c.min as usize);
        &acc + &part
    })
}
