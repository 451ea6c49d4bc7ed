//! The Coven–Meyerowitz conditions, the canonical tiling complement they
//! produce, the Łaba spectrum and the spectrum/tile duality in `Z_N`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::cyclotomic::{self, IntPolynomial};
use crate::error::{Error, Result};
use crate::residue_sets::{direct_sum_check, IntegerSet, ResidueSet};

/// A finite set of prime powers `p^α`, `α ≥ 1`, with its lcm.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimePowerSet {
    elements: BTreeSet<u64>,
    lcm: u64,
}

impl TryFrom<Vec<u64>> for PrimePowerSet {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PrimePowerSet> for Vec<u64> {
    fn from(s: PrimePowerSet) -> Self {
        s.elements.into_iter().collect()
    }
}

impl PrimePowerSet {
    pub fn new(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut lcm = 1u64;
        for s in elements {
            if arith::prime_power(s).is_none() {
                return Err(Error::NotPrimePower(s));
            }
            lcm = arith::checked_lcm(lcm, s).ok_or(Error::Overflow("lcm of prime powers"))?;
            set.insert(s);
        }
        Ok(Self { elements: set, lcm })
    }

    pub fn empty() -> Self {
        Self { elements: BTreeSet::new(), lcm: 1 }
    }

    /// Elements in increasing numeric order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: u64) -> bool {
        self.elements.contains(&s)
    }

    /// `lcm` of the elements; 1 for the empty set.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    pub fn primes(&self) -> BTreeSet<u64> {
        self.elements.iter().map(|&s| split(s).0).collect()
    }

    /// Elements grouped by prime, exponents ascending.
    pub fn by_prime(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut out: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &s in &self.elements {
            let (p, k) = split(s);
            out.entry(p).or_default().push(k);
        }
        for v in out.values_mut() {
            v.sort_unstable();
        }
        out
    }

    /// The members that are powers of `p`.
    pub fn powers_of(&self, p: u64) -> Vec<u64> {
        self.elements.iter().copied().filter(|&s| split(s).0 == p).collect()
    }

    /// Elements ordered by prime, then exponent.
    pub fn ordered(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.elements.iter().copied().collect();
        v.sort_by_key(|&s| split(s));
        v
    }
}

fn split(s: u64) -> (u64, u32) {
    arith::prime_power(s).expect("validated prime power")
}

impl fmt::Display for PrimePowerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ordered().iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Accepts `{4, 3}`, `4,3` and `{}`.
impl FromStr for PrimePowerSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = match trimmed.strip_prefix('{') {
            Some(rest) => rest.strip_suffix('}').ok_or_else(|| Error::parse(trimmed.len(), "expected '}'"))?,
            None => trimmed,
        };
        let mut out = Vec::new();
        let mut offset = s.len() - s.trim_start().len() + usize::from(trimmed.starts_with('{'));
        for part in inner.split(',') {
            let token = part.trim();
            if !token.is_empty() {
                let v = token
                    .parse::<u64>()
                    .map_err(|_| Error::parse(offset, format!("expected a prime power, found '{token}'")))?;
                out.push(v);
            } else if !inner.trim().is_empty() {
                return Err(Error::parse(offset, "empty entry"));
            }
            offset += part.len() + 1;
        }
        Self::new(out)
    }
}

/// `S_A`: the prime powers `s` with `Φ_s | A(x)`. The set is translated to
/// `min = 0` first; since `deg Φ_s = φ(s) ≥ s/2`, only `s ≤ 2·deg A` can
/// occur.
pub fn compute_sa(a: &IntegerSet) -> Result<PrimePowerSet> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let a = a.normalized();
    let deg = a.max_element().unwrap_or(0);
    let found = (2..=2 * deg)
        .filter(|&s| arith::prime_power(s).is_some_and(|(p, k)| p.pow(k - 1) * (p - 1) <= deg))
        .filter(|&s| cyclotomic::divides_mask(a.elements().iter().copied(), s));
    PrimePowerSet::new(found)
}

/// Outcome of the cardinality condition (T1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct T1Check {
    pub holds: bool,
    /// `#A = A(1)`.
    pub cardinality: u64,
    /// `∏_{s ∈ S_A} Φ_s(1)`.
    pub product: u64,
}

/// Outcome of the divisibility condition (T2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct T2Check {
    pub holds: bool,
    /// Powers of distinct primes `s_1, …, s_m` with `Φ_{s_1⋯s_m} ∤ A(x)`.
    pub witness: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmReport {
    pub sa: PrimePowerSet,
    pub t1: T1Check,
    pub t2: T2Check,
}

impl CmReport {
    pub fn is_cm(&self) -> bool {
        self.t1.holds && self.t2.holds
    }
}

fn t1_from_sa(cardinality: usize, sa: &PrimePowerSet) -> T1Check {
    let product = sa.iter().map(cyclotomic::phi_at_one).product::<u64>();
    T1Check { holds: product == cardinality as u64, cardinality: cardinality as u64, product }
}

/// Every choice of at most one power per prime with at least two primes
/// represented, in a fixed order.
fn multi_prime_products(sa: &PrimePowerSet) -> Vec<Vec<u64>> {
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for powers in sa.by_prime().into_iter().map(|(p, ks)| ks.into_iter().map(move |k| p.pow(k))) {
        let powers: Vec<u64> = powers.collect();
        let mut next = Vec::with_capacity(acc.len() * (powers.len() + 1));
        for prefix in &acc {
            next.push(prefix.clone());
            for &s in &powers {
                let mut v = prefix.clone();
                v.push(s);
                next.push(v);
            }
        }
        acc = next;
    }
    acc.retain(|v| v.len() >= 2);
    acc
}

fn t2_from_sa(a: &IntegerSet, sa: &PrimePowerSet) -> T2Check {
    let a = a.normalized();
    let deg = a.max_element().unwrap_or(0);
    let witness = multi_prime_products(sa).into_iter().find(|tuple| {
        let divisible = tuple
            .iter()
            .try_fold(1u64, |acc, &s| acc.checked_mul(s))
            .filter(|&n| arith::euler_phi(n) <= deg)
            .is_some_and(|n| cyclotomic::divides_mask(a.elements().iter().copied(), n));
        !divisible
    });
    T2Check { holds: witness.is_none(), witness }
}

/// (T1): `A(1) = ∏_{s ∈ S_A} Φ_s(1)`.
pub fn check_t1(a: &IntegerSet) -> Result<T1Check> {
    Ok(t1_from_sa(a.len(), &compute_sa(a)?))
}

/// (T2): for powers `s_1, …, s_m ∈ S_A` of distinct primes, `m ≥ 2`,
/// `Φ_{s_1⋯s_m} | A(x)`.
pub fn check_t2(a: &IntegerSet) -> Result<T2Check> {
    Ok(t2_from_sa(a, &compute_sa(a)?))
}

pub fn cm_report(a: &IntegerSet) -> Result<CmReport> {
    let sa = compute_sa(a)?;
    Ok(CmReport { t1: t1_from_sa(a.len(), &sa), t2: t2_from_sa(a, &sa), sa })
}

pub fn is_cm(a: &IntegerSet) -> Result<bool> {
    Ok(cm_report(a)?.is_cm())
}

/// Prime-power divisors of `lcm(S)` that are not in `S`.
pub fn complementary_prime_powers(sa: &PrimePowerSet) -> PrimePowerSet {
    PrimePowerSet::new(arith::prime_power_divisors(sa.lcm()).into_iter().filter(|s| !sa.contains(*s)))
        .expect("divisors of a valid lcm")
}

/// The canonical complement `B(x) = ∏ Φ_s(x^{t(s)})`, the product over
/// prime powers `s | N = lcm(S)` with `s ∉ S`, where `t(s)` is the largest
/// divisor of `N` coprime to `s`.
pub fn cm_tiling_set(sa: &PrimePowerSet) -> Result<IntegerSet> {
    canonical_product(&complementary_prime_powers(sa), sa.lcm())
}

/// `∏_{s ∈ S} Φ_s(x^{t(s)})` with `t(s) = N / p^{v_p(N)}`, as a set.
/// Requires `lcm(S) | N`. For complementary `S` and `S'` covering every
/// prime power dividing `N` the two products tile `Z_N`.
pub fn canonical_product(powers: &PrimePowerSet, n: u64) -> Result<IntegerSet> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if !n.is_multiple_of(powers.lcm()) {
        return Err(Error::Precondition(format!("lcm({powers}) = {} does not divide {n}", powers.lcm())));
    }
    let mut b = IntPolynomial::one();
    for s in powers.iter() {
        let (p, _) = split(s);
        let t = n / p.pow(arith::valuation(n, p).expect("p divides N"));
        b = &b * &cyclotomic::substitute_power(&cyclotomic(s), t);
    }
    if !b.is_zero_one() {
        return Err(Error::TheoremViolation(format!(
            "canonical product for S = {powers} is not a 0-1 polynomial: {b}"
        )));
    }
    Ok(IntegerSet::new(b.support()))
}

fn cyclotomic(s: u64) -> IntPolynomial {
    cyclotomic::cyclotomic(s).as_ref().clone()
}

/// The Łaba spectrum `{Σ_{s∈S} k_s/s : 0 ≤ k_s < p_s}` scaled by `N =
/// lcm(S)`, as a residue set mod `N`.
pub fn laba_spectrum(sa: &PrimePowerSet) -> ResidueSet {
    laba_spectrum_mod(sa, sa.lcm()).expect("lcm(S) is a multiple of itself")
}

/// The Łaba spectrum scaled into `Z_modulus`; requires `lcm(S) | modulus`.
pub fn laba_spectrum_mod(sa: &PrimePowerSet, modulus: u64) -> Result<ResidueSet> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if !modulus.is_multiple_of(sa.lcm()) {
        return Err(Error::Precondition(format!("lcm({sa}) = {} does not divide {modulus}", sa.lcm())));
    }
    let mut points = vec![0u64];
    for s in sa.iter() {
        let (p, _) = split(s);
        let step = modulus / s;
        points = points.iter().flat_map(|&x| (0..p).map(move |k| (x + k * step) % modulus)).collect();
    }
    ResidueSet::new(modulus, points).map_err(|e| Error::TheoremViolation(format!("Łaba spectrum of {sa}: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub modulus: u64,
    pub sa: PrimePowerSet,
    pub b: IntegerSet,
    pub sb: PrimePowerSet,
    pub b_is_cm: bool,
    pub laba_a: ResidueSet,
    pub laba_b: ResidueSet,
    pub direct_sum: bool,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.b_is_cm && self.direct_sum
    }
}

/// For a CM set `A` with canonical complement `B` and `N = lcm(S_A)`:
/// `N·Ł_A ⊕ N·Ł_B = Z_N`. The CM property of `B` is checked, not assumed.
pub fn duality_check(a: &IntegerSet) -> Result<DualityReport> {
    let report = cm_report(a)?;
    if !report.is_cm() {
        return Err(Error::NotCm(format!("{a}: t1 = {}, t2 = {}", report.t1.holds, report.t2.holds)));
    }
    let sa = report.sa;
    let n = sa.lcm();
    let b = cm_tiling_set(&sa)?;
    let b_report = cm_report(&b)?;
    let laba_a = laba_spectrum_mod(&sa, n)?;
    let laba_b = laba_spectrum_mod(&b_report.sa, n)?;
    let direct_sum = direct_sum_check(&laba_a, &laba_b)?;
    Ok(DualityReport { modulus: n, b_is_cm: b_report.is_cm(), sb: b_report.sa, sa, b, laba_a, laba_b, direct_sum })
}

/// `A` hits every class mod `N` exactly once.
pub fn complete_residue_system_check(a: &IntegerSet, modulus: u64) -> bool {
    modulus > 0 && a.len() as u64 == modulus && a.reduce_mod(modulus).is_ok()
}

/// `S_{pA}` in terms of `S_A`: powers of `p` move up one exponent, powers
/// of other primes are unchanged.
pub fn scaled_sa(sa: &PrimePowerSet, p: u64) -> Result<PrimePowerSet> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut out = Vec::with_capacity(sa.len());
    for s in sa.iter() {
        out.push(if split(s).0 == p { s.checked_mul(p).ok_or(Error::Overflow("scaled prime power"))? } else { s });
    }
    PrimePowerSet::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> IntegerSet {
        s.parse().unwrap()
    }

    fn pps(v: &[u64]) -> PrimePowerSet {
        PrimePowerSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn prime_power_set_basics() {
        assert_eq!(PrimePowerSet::new([6]), Err(Error::NotPrimePower(6)));
        assert_eq!(PrimePowerSet::new([1]), Err(Error::NotPrimePower(1)));
        let s = pps(&[3, 4]);
        assert_eq!(s.lcm(), 12);
        assert_eq!(s.to_string(), "{4, 3}");
        assert_eq!("{4, 3}".parse::<PrimePowerSet>().unwrap(), s);
        assert_eq!("3,4".parse::<PrimePowerSet>().unwrap(), s);
        assert_eq!("{}".parse::<PrimePowerSet>().unwrap(), PrimePowerSet::empty());
        assert_eq!(PrimePowerSet::empty().lcm(), 1);
        assert!("{4,,3}".parse::<PrimePowerSet>().is_err());
        assert!("{4,x}".parse::<PrimePowerSet>().is_err());
        assert_eq!(pps(&[2, 9, 8]).to_string(), "{2, 8, 9}");
    }

    #[test]
    fn sa_examples() {
        assert_eq!(compute_sa(&set("{0,1,2,3,4}")).unwrap(), pps(&[5]));
        assert_eq!(compute_sa(&set("{0,4,8,9,13,17}")).unwrap(), pps(&[2, 3]));
        assert_eq!(compute_sa(&set("{0,2}")).unwrap(), pps(&[4]));
        assert_eq!(compute_sa(&set("{5,7}")).unwrap(), pps(&[4]));
        assert_eq!(compute_sa(&set("{0}")).unwrap(), PrimePowerSet::empty());
        assert_eq!(compute_sa(&IntegerSet::new([])), Err(Error::EmptySet));
    }

    #[test]
    fn t1_examples() {
        let r = check_t1(&set("{0,4,8,9,13,17}")).unwrap();
        assert!(r.holds);
        assert_eq!((r.cardinality, r.product), (6, 6));
        assert!(check_t1(&set("{0,1,2,3}")).unwrap().holds);
        let r = check_t1(&set("{0,1,3}")).unwrap();
        assert!(!r.holds);
        assert_eq!((r.cardinality, r.product), (3, 1));
    }

    #[test]
    fn t2_examples() {
        assert!(check_t2(&set("{0,4,8,9,13,17}")).unwrap().holds);
        assert!(check_t2(&set("{0,1}")).unwrap().holds);
    }

    #[test]
    fn t2_failure_carries_witness() {
        // smallest-mask set below 12 with Φ_2Φ_3 | A(x) but Φ_6 ∤ A(x)
        let mut found = None;
        for mask in 1u32..(1 << 12) {
            if mask & 1 == 0 {
                continue;
            }
            let a = IntegerSet::new((0..12).filter(|i| mask >> i & 1 == 1));
            let sa = compute_sa(&a).unwrap();
            if sa.contains(2) && sa.contains(3) && !cyclotomic::divides_mask(a.elements().iter().copied(), 6) {
                found = Some(a);
                break;
            }
        }
        let a = found.expect("a set with Φ_2Φ_3 | A but Φ_6 ∤ A exists below 12");
        let r = check_t2(&a).unwrap();
        assert!(!r.holds);
        assert!(r.witness.as_ref().unwrap().iter().product::<u64>() % 6 == 0);
    }

    #[test]
    fn cm_tiling_set_examples() {
        assert_eq!(cm_tiling_set(&pps(&[2, 3])).unwrap(), set("{0}"));
        assert_eq!(cm_tiling_set(&pps(&[2, 8])).unwrap(), set("{0,2}"));
        assert_eq!(cm_tiling_set(&PrimePowerSet::empty()).unwrap(), set("{0}"));
        // N = 18, missing s = 3: t(3) = 2, B(x) = Φ_3(x^2) = 1 + x^2 + x^4
        assert_eq!(cm_tiling_set(&pps(&[2, 9])).unwrap(), set("{0,2,4}"));
    }

    #[test]
    fn cm_tiling_set_tiles() {
        for a in ["{0,4,8,9,13,17}", "{0,1,4,5}", "{0,1,2}", "{0,5,6,11}", "{0,3,4,7}"] {
            let a = set(a);
            assert!(is_cm(&a).unwrap(), "{a}");
            let sa = compute_sa(&a).unwrap();
            let b = cm_tiling_set(&sa).unwrap();
            let am = a.reduce_mod(sa.lcm()).unwrap();
            let bm = b.reduce_mod(sa.lcm()).unwrap();
            assert!(direct_sum_check(&am, &bm).unwrap(), "{a} with {b}");
        }
    }

    #[test]
    fn laba_examples() {
        assert_eq!(laba_spectrum(&pps(&[2, 3])), ResidueSet::full(6));
        assert_eq!(laba_spectrum(&pps(&[2])), ResidueSet::full(2));
        assert_eq!(laba_spectrum(&pps(&[2, 8])).elements(), &[0, 1, 4, 5]);
        assert_eq!(laba_spectrum(&PrimePowerSet::empty()), ResidueSet::zero(1));
        assert!(laba_spectrum_mod(&pps(&[4]), 6).is_err());
        assert_eq!(laba_spectrum_mod(&pps(&[2]), 8).unwrap().elements(), &[0, 4]);
    }

    #[test]
    fn duality_examples() {
        let r = duality_check(&set("{0,1,4,5}")).unwrap();
        assert_eq!(r.sa, pps(&[2, 8]));
        assert_eq!(r.laba_a.elements(), &[0, 1, 4, 5]);
        assert_eq!(r.laba_b.elements(), &[0, 2]);
        assert!(r.holds());
        let r = duality_check(&set("{0,1}")).unwrap();
        assert!(r.holds());
        assert_eq!(r.laba_b, ResidueSet::zero(2));
        assert!(matches!(duality_check(&set("{0,1,3}")), Err(Error::NotCm(_))));
    }

    #[test]
    fn complete_residue_systems() {
        assert!(complete_residue_system_check(&set("{0,4,8,9,13,17}"), 6));
        assert!(!complete_residue_system_check(&set("{0,1,3}"), 3));
        assert!(complete_residue_system_check(&IntegerSet::new(0..7), 7));
        assert!(!complete_residue_system_check(&set("{0,1}"), 3));
    }

    #[test]
    fn scaled_sa_examples() {
        assert_eq!(scaled_sa(&pps(&[2]), 2).unwrap(), pps(&[4]));
        assert_eq!(scaled_sa(&pps(&[3]), 2).unwrap(), pps(&[3]));
        assert_eq!(scaled_sa(&pps(&[2, 9]), 3).unwrap(), pps(&[2, 27]));
        assert_eq!(scaled_sa(&pps(&[2]), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn canonical_products_of_complementary_sets_tile() {
        for n in [1u64, 6, 8, 12, 18, 36, 72] {
            let all = arith::prime_power_divisors(n);
            for mask in 0u32..1 << all.len() {
                let s = PrimePowerSet::new((0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i])).unwrap();
                let rest = PrimePowerSet::new(all.iter().copied().filter(|x| !s.contains(*x))).unwrap();
                let a = canonical_product(&s, n).unwrap().reduce_mod(n).unwrap();
                let b = canonical_product(&rest, n).unwrap().reduce_mod(n).unwrap();
                assert!(direct_sum_check(&a, &b).unwrap(), "{s} in Z_{n}");
            }
        }
        assert!(canonical_product(&PrimePowerSet::new([4]).unwrap(), 6).is_err());
    }
}
