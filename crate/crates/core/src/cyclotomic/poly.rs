use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial with arbitrary-precision integer
/// coefficients, stored lowest degree first. Trailing zeros are never
/// stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] -= 1;
        coeffs[n] += 1;
        Self::from_coeffs(coeffs)
    }

    /// `1 + x + ... + x^(n-1)`.
    pub fn geometric(n: usize) -> Self {
        Self::from_coeffs(vec![BigInt::one(); n])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides out `x^k`; the caller guarantees the low coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(x^t)`.
    pub fn substitute_power(&self, t: usize) -> Self {
        assert!(t >= 1, "substitute_power needs t >= 1");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * t] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// Remainder modulo `x^n - 1`, obtained by folding exponents mod `n`.
    pub fn reduce_mod_x_pow_minus_one(&self, n: usize) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![BigInt::zero(); n.min(self.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i % n] += c;
        }
        Self::from_coeffs(coeffs)
    }

    /// Coefficients as `i64` when they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Schoolbook division over the integers.
    ///
    /// A quotient term is produced only while the leading coefficient of
    /// the divisor divides the current leading coefficient; for a monic
    /// divisor this is ordinary Euclidean division. `p` is divisible by `d`
    /// in `Z[x]` iff the returned remainder is zero.
    pub fn div_rem(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dlen = divisor.coeffs.len();
        if dlen == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < dlen {
            return Ok((Self::zero(), self.clone()));
        }
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                break;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Result<Option<IntPolynomial>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// True when every coefficient is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.is_one())
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<u64> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i as u64).collect()
    }
}

impl From<Vec<i64>> for IntPolynomial {
    fn from(v: Vec<i64>) -> Self {
        Self::from_i64(&v)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = IntPolynomial::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntPolynomial::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let p = IntPolynomial::one();
        assert_eq!(p.div_rem(&IntPolynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = IntPolynomial::from_i64(&[3, -1, 4, 1, -5, 9]);
        let d = IntPolynomial::from_i64(&[1, 1, 1]);
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, p);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn non_monic_inexact_division() {
        let p = IntPolynomial::from_i64(&[1, 1]);
        let d = IntPolynomial::from_i64(&[0, 2]);
        assert_eq!(p.exact_div(&d).unwrap(), None);
        let p = IntPolynomial::from_i64(&[2, 4]);
        let d = IntPolynomial::from_i64(&[1, 2]);
        assert_eq!(p.exact_div(&d).unwrap(), Some(IntPolynomial::from_i64(&[2])));
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64(&[1, 0, -1, 0, 1]).to_string(), "x^4 - x^2 + 1");
        assert_eq!(IntPolynomial::from_i64(&[-1, 1]).to_string(), "x - 1");
        assert_eq!(IntPolynomial::from_i64(&[0, -3]).to_string(), "-3x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn fold_mod_x_pow_minus_one() {
        let p = IntPolynomial::from_i64(&[1, 0, 0, 1, 1]);
        assert_eq!(p.reduce_mod_x_pow_minus_one(3), IntPolynomial::from_i64(&[2, 1]));
    }
}
