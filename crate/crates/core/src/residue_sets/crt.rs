use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// An element of `Z_{m_1} × ⋯ × Z_{m_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElementTuple {
    components: Vec<u64>,
    moduli: Vec<u64>,
}

impl GroupElementTuple {
    pub fn new(components: Vec<u64>, moduli: Vec<u64>) -> Result<Self> {
        if components.len() != moduli.len() {
            return Err(Error::ArityMismatch { expected: moduli.len(), got: components.len() });
        }
        for (&c, &m) in components.iter().zip(&moduli) {
            if m == 0 {
                return Err(Error::ZeroModulus);
            }
            if c >= m {
                return Err(Error::ResidueOutOfRange { value: c, modulus: m });
            }
        }
        Ok(Self { components, moduli })
    }

    pub fn components(&self) -> &[u64] {
        &self.components
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }
}

fn product(moduli: &[u64]) -> Result<u64> {
    moduli.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m)).ok_or(Error::Overflow("product of moduli"))
}

fn require_coprime(moduli: &[u64]) -> Result<u64> {
    if !arith::pairwise_coprime(moduli) {
        return Err(Error::NotCoprime(moduli.to_vec()));
    }
    product(moduli)
}

/// `Ψ(k_1, …, k_r) = Σ k_i · (m / m_i) mod m`, an isomorphism onto `Z_m`
/// for pairwise coprime moduli.
pub fn crt_map(x: &GroupElementTuple) -> Result<u64> {
    let m = require_coprime(&x.moduli)?;
    Ok(x.components.iter().zip(&x.moduli).fold(0u64, |acc, (&k, &mi)| (acc + arith::mul_mod(k, m / mi, m)) % m))
}

/// Inverse of [`crt_map`]: `k_i = x · (m/m_i)^{-1} mod m_i`.
pub fn crt_inverse(x: u64, moduli: &[u64]) -> Result<GroupElementTuple> {
    let m = require_coprime(moduli)?;
    let x = x % m;
    let components = moduli
        .iter()
        .map(|&mi| {
            let cofactor = m / mi;
            let inv = arith::mod_inverse(cofactor % mi, mi).expect("coprime moduli");
            arith::mul_mod(x % mi, inv, mi)
        })
        .collect();
    GroupElementTuple::new(components, moduli.to_vec())
}

/// Image of a set of tuples under [`crt_map`], sorted.
pub fn crt_map_set<'a>(xs: impl IntoIterator<Item = &'a GroupElementTuple>) -> Result<Vec<u64>> {
    let mut out = xs.into_iter().map(crt_map).collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    Ok(out)
}

/// The character-compatible embedding of the dual group: the tuple `l` is
/// sent to `y ∈ Z_m` with `Ψ(k)·y / m ≡ Σ k_i l_i / m_i (mod 1)` for every
/// `k`, so product-group characters become the standard characters of
/// `Z_m`.
pub fn crt_dual_map(l: &GroupElementTuple) -> Result<u64> {
    let m = require_coprime(&l.moduli)?;
    Ok(l.components.iter().zip(&l.moduli).fold(0u64, |acc, (&k, &mi)| {
        let cofactor = m / mi;
        let inv = arith::mod_inverse(cofactor % mi, mi).expect("coprime moduli");
        let idempotent = arith::mul_mod(cofactor, inv, m);
        (acc + arith::mul_mod(k, idempotent, m)) % m
    }))
}
