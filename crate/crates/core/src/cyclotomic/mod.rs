//! Exact cyclotomic polynomials and divisibility tests.
//!
//! Every question of the form "does `P` vanish at a root of unity" is
//! answered here without floating point: `P(ω) = 0` for a primitive `s`-th
//! root `ω` iff `Φ_s` divides `P` in `Z[x]`.

mod poly;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

pub use poly::IntPolynomial;

use crate::arith;
use crate::error::{Error, Result};

struct Entry {
    poly: Arc<IntPolynomial>,
    small: Option<Arc<Vec<i64>>>,
}

fn memo() -> &'static RwLock<HashMap<u64, Entry>> {
    static MEMO: OnceLock<RwLock<HashMap<u64, Entry>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn entry(n: u64) -> (Arc<IntPolynomial>, Option<Arc<Vec<i64>>>) {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(e) = memo().read().expect("memo poisoned").get(&n) {
        return (e.poly.clone(), e.small.clone());
    }
    let mut p = IntPolynomial::x_pow_minus_one(n as usize);
    for d in arith::divisors(n) {
        if d == n {
            break;
        }
        p = p
            .exact_div(&cyclotomic(d))
            .expect("cyclotomic divisor is nonzero")
            .expect("x^n - 1 is divisible by every Phi_d with d | n");
    }
    let small = p.to_i64_vec().map(Arc::new);
    let poly = Arc::new(p);
    memo().write().expect("memo poisoned").insert(n, Entry { poly: poly.clone(), small: small.clone() });
    (poly, small)
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by
/// `Φ_d` for every proper divisor `d` of `n`. Results are memoized for the
/// life of the process.
///
/// Panics if `n == 0`.
pub fn cyclotomic(n: u64) -> Arc<IntPolynomial> {
    entry(n).0
}

/// Whether `d` divides `p` exactly in `Z[x]`.
pub fn poly_divides(d: &IntPolynomial, p: &IntPolynomial) -> Result<bool> {
    Ok(p.div_rem(d)?.1.is_zero())
}

/// `Φ_s | p`, decided by reducing `p` modulo `x^s - 1` (a multiple of
/// `Φ_s`) and dividing the remainder.
pub fn divisible_by_cyclotomic(p: &IntPolynomial, s: u64) -> bool {
    let folded = p.reduce_mod_x_pow_minus_one(s as usize);
    if let Some(small) = folded.to_i64_vec() {
        if let Some(v) = small_divisible(small, s) {
            return v;
        }
    }
    poly_divides(&cyclotomic(s), &folded).expect("cyclotomic polynomials are nonzero")
}

/// `Φ_s` divides the mask polynomial of the given exponents.
pub(crate) fn divides_mask(elements: impl IntoIterator<Item = u64>, s: u64) -> bool {
    let mut counts = vec![0i64; s as usize];
    for e in elements {
        counts[(e % s) as usize] += 1;
    }
    match small_divisible(counts.clone(), s) {
        Some(v) => v,
        None => divisible_by_cyclotomic(&IntPolynomial::from_i64(&counts), s),
    }
}

/// Division of a folded remainder (length at most `s`) by `Φ_s` in `i64`.
/// `None` if an intermediate value would overflow.
fn small_divisible(mut rem: Vec<i64>, s: u64) -> Option<bool> {
    let (_, small) = entry(s);
    let phi = small?;
    let dlen = phi.len();
    if rem.len() >= dlen {
        for i in (0..=rem.len() - dlen).rev() {
            let q = rem[i + dlen - 1];
            if q == 0 {
                continue;
            }
            for (j, &c) in phi.iter().enumerate() {
                if c != 0 {
                    rem[i + j] = rem[i + j].checked_sub(q.checked_mul(c)?)?;
                }
            }
        }
    }
    Some(rem.iter().all(|&c| c == 0))
}

/// Cyclotomic part of a polynomial: `p = x^k · ∏ Φ_n^{m_n} · cofactor`,
/// where the monomial `x^k` is folded into the cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub factors: BTreeMap<u64, u32>,
    pub cofactor: IntPolynomial,
}

impl CyclotomicFactorization {
    pub fn multiplicity(&self, n: u64) -> u32 {
        self.factors.get(&n).copied().unwrap_or(0)
    }

    /// Multiplies every part back together.
    pub fn reconstruct(&self) -> IntPolynomial {
        self.factors.iter().fold(self.cofactor.clone(), |acc, (&n, &m)| &acc * &cyclotomic(n).pow(m))
    }
}

/// Extracts every cyclotomic factor of `p` with its exact multiplicity.
///
/// Candidates are all `n` with `φ(n) <= deg p`; since `φ(n) >= sqrt(n/2)`
/// they lie below `2·deg²`.
pub fn cyclotomic_factorization(p: &IntPolynomial) -> Result<CyclotomicFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let low = p.low_degree().unwrap_or(0);
    let mut rest = p.shift_down(low);
    let mut factors = BTreeMap::new();
    let deg = rest.degree().unwrap_or(0);
    if deg > 0 {
        let limit = 2 * deg * deg;
        let phi = arith::phi_table(limit);
        for (n, &phi_n) in phi.iter().enumerate().take(limit + 1).skip(1) {
            if phi_n as usize > rest.degree().unwrap_or(0) {
                continue;
            }
            let mut mult = 0;
            while rest.degree().unwrap_or(0) > 0 && divisible_by_cyclotomic(&rest, n as u64) {
                rest = rest.exact_div(&cyclotomic(n as u64))?.expect("divisibility was just established");
                mult += 1;
            }
            if mult > 0 {
                factors.insert(n as u64, mult);
            }
        }
    }
    let cofactor = &rest * &IntPolynomial::monomial(1, low);
    Ok(CyclotomicFactorization { factors, cofactor })
}

/// Whether `p(e^{2πi d/N}) = 0`, decided exactly: for `d = 0` this is
/// `p(1) = 0`, otherwise `Φ_s | p` with `s = N / gcd(d, N)`.
pub fn vanishes_at_root(p: &IntPolynomial, modulus: u64, d: u64) -> bool {
    assert!(modulus >= 1 && d < modulus, "need 0 <= d < N");
    if d == 0 {
        return p.eval_at_one().is_zero();
    }
    divisible_by_cyclotomic(p, modulus / arith::gcd(d, modulus))
}

/// `Φ_s(1)`: 0 for `s = 1`, `q` when `s` is a power of the prime `q`, and 1
/// otherwise.
pub fn phi_at_one(s: u64) -> u64 {
    match s {
        0 => panic!("cyclotomic index must be positive"),
        1 => 0,
        _ => arith::prime_power(s).map_or(1, |(q, _)| q),
    }
}

/// `p(x^t)`.
pub fn substitute_power(p: &IntPolynomial, t: u64) -> IntPolynomial {
    p.substitute_power(t as usize)
}

/// `∏_{d | n} Φ_d`; equals `x^n - 1`.
pub fn divisor_product(n: u64) -> IntPolynomial {
    arith::divisors(n).into_iter().fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic(d))
}

/// `Φ_s(1)` as a big integer, by direct evaluation.
pub fn eval_cyclotomic_at_one(s: u64) -> BigInt {
    cyclotomic(s).eval_at_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(elements: &[u64]) -> IntPolynomial {
        let max = *elements.iter().max().unwrap() as usize;
        let mut c = vec![0i64; max + 1];
        for &e in elements {
            c[e as usize] += 1;
        }
        IntPolynomial::from_i64(&c)
    }

    #[test]
    fn small_indices() {
        assert_eq!(*cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic(5), IntPolynomial::from_i64(&[1, 1, 1, 1, 1]));
        // long division of x^12 - 1 by (x-1)(x+1)(x^2+x+1)(x^2+1)(x^2-x+1)
        assert_eq!(*cyclotomic(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn divides_examples() {
        let x2m1 = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert!(poly_divides(&cyclotomic(1), &x2m1).unwrap());
        assert!(poly_divides(&cyclotomic(6), &mask(&[0, 4, 8, 9, 13, 17])).unwrap());
        assert!(!poly_divides(&cyclotomic(4), &IntPolynomial::from_i64(&[1, 1, 1])).unwrap());
        assert!(poly_divides(&IntPolynomial::zero(), &x2m1).is_err());
    }

    #[test]
    fn factorization_of_szabo_pair() {
        let f = cyclotomic_factorization(&mask(&[0, 4, 8, 9, 13, 17])).unwrap();
        let expected: BTreeMap<u64, u32> = [(2, 1), (3, 1), (6, 2), (12, 1), (18, 1)].into();
        assert_eq!(f.factors, expected);
        assert_eq!(f.cofactor, IntPolynomial::one());

        let f = cyclotomic_factorization(&mask(&[0, 18, 12, 30, 24, 42])).unwrap();
        let expected: BTreeMap<u64, u32> = [(4, 1), (9, 1), (12, 1), (18, 1), (36, 2)].into();
        assert_eq!(f.factors, expected);
        assert_eq!(f.cofactor, IntPolynomial::one());
    }

    #[test]
    fn factorization_of_constants_and_monomials() {
        let f = cyclotomic_factorization(&IntPolynomial::one()).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.cofactor, IntPolynomial::one());

        let p = IntPolynomial::from_i64(&[0, 0, 1, 1, 1]);
        let f = cyclotomic_factorization(&p).unwrap();
        assert_eq!(f.factors, [(3, 1)].into());
        assert_eq!(f.reconstruct(), p);
        assert_eq!(cyclotomic_factorization(&IntPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn non_cyclotomic_cofactor() {
        let p = IntPolynomial::from_i64(&[1, 1, 0, 1]);
        let f = cyclotomic_factorization(&p).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.cofactor, p);
    }

    #[test]
    fn vanishing_examples() {
        assert!(vanishes_at_root(&IntPolynomial::from_i64(&[1, 1, 1]), 3, 1));
        assert!(vanishes_at_root(&mask(&[0, 4, 8, 9, 13, 17]), 36, 6));
        assert!(!vanishes_at_root(&IntPolynomial::from_i64(&[1, 1]), 4, 1));
        assert!(vanishes_at_root(&IntPolynomial::from_i64(&[-1, 1]), 7, 0));
    }

    #[test]
    fn values_at_one() {
        assert_eq!(phi_at_one(8), 2);
        assert_eq!(phi_at_one(6), 1);
        assert_eq!(phi_at_one(9), 3);
        assert_eq!(phi_at_one(1), 0);
    }

    #[test]
    fn substitution_examples() {
        let phi2_9 = substitute_power(&cyclotomic(2), 9);
        assert_eq!(phi2_9, IntPolynomial::monomial(1, 9) + IntPolynomial::one());
        assert_eq!(phi2_9, &(&*cyclotomic(2) * &*cyclotomic(6)) * &*cyclotomic(18));
        let p = IntPolynomial::from_i64(&[3, 0, 7]);
        assert_eq!(substitute_power(&p, 1), p);
        assert_eq!(substitute_power(&cyclotomic(3), 3), *cyclotomic(9));
    }

    #[test]
    fn mask_fast_path_agrees_with_division() {
        let sets: [&[u64]; 4] = [&[0, 1, 2], &[0, 4, 8, 9, 13, 17], &[0, 2, 10], &[0, 1, 3]];
        for set in sets {
            let p = mask(set);
            for s in 1..40 {
                assert_eq!(
                    divides_mask(set.iter().copied(), s),
                    poly_divides(&cyclotomic(s), &p).unwrap(),
                    "set {set:?}, s = {s}"
                );
            }
        }
    }
}
