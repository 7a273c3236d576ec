use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::factor::is_prime;

/// A prime modulus `p` together with raw arithmetic on residues in `[0, p)`.
///
/// Matrices and polynomials store bare `u64` residues and share one modulus;
/// [`FpElem`] is the self-describing element type for scalar work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Self(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i128(self, x: i128) -> u64 {
        x.rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= self.0 {
            s.wrapping_sub(self.0)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.0)
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        let mut b = base % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(self, base: u64, e: &BigUint) -> u64 {
        let mut acc = 1 % self.0;
        for i in (0..e.bits()).rev() {
            acc = self.mul(acc, acc);
            if e.bit(i) {
                acc = self.mul(acc, base);
            }
        }
        acc
    }

    pub fn inv(self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.0) {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on i128 to avoid the p-2 exponentiation
        let (mut r0, mut r1) = (self.0 as i128, (a % self.0) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.reduce_i128(t0))
    }

    pub fn elem(self, value: u64) -> FpElem {
        FpElem {
            value: value % self.0,
            modulus: self,
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of the prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u64,
    modulus: PrimeModulus,
}

impl FpElem {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        modulus.elem(value)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self> {
        Ok(self.modulus.elem(self.modulus.inv(self.value)?))
    }

    pub fn pow(self, e: u64) -> Self {
        self.modulus.elem(self.modulus.pow(self.value, e))
    }

    fn check(self, other: Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "F_p arithmetic across different moduli"
        );
    }

    pub fn try_add(self, other: Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.value(),
                other.modulus.value(),
            ));
        }
        Ok(self + other)
    }
}

impl Add for FpElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        FpElem {
            value: self.modulus.add(self.value, rhs.value),
            ..self
        }
    }
}

impl Sub for FpElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(rhs);
        FpElem {
            value: self.modulus.sub(self.value, rhs.value),
            ..self
        }
    }
}

impl Mul for FpElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        FpElem {
            value: self.modulus.mul(self.value, rhs.value),
            ..self
        }
    }
}

impl Neg for FpElem {
    type Output = Self;
    fn neg(self) -> Self {
        FpElem {
            value: self.modulus.neg(self.value),
            ..self
        }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
