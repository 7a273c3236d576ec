use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::poly::{is_irreducible, Poly};
use crate::field::prime::PrimeModulus;

/// The field `F_p[t] / m(t)` for a monic irreducible `m` of degree `d >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtField {
    base: PrimeModulus,
    modulus_poly: Poly,
}

impl ExtField {
    pub fn new(modulus_poly: Poly) -> Result<Arc<Self>> {
        if !is_irreducible(&modulus_poly)? {
            return Err(Error::Reducible(modulus_poly.to_string()));
        }
        Ok(Arc::new(Self {
            base: modulus_poly.modulus(),
            modulus_poly,
        }))
    }

    pub fn base(&self) -> PrimeModulus {
        self.base
    }

    pub fn modulus_poly(&self) -> &Poly {
        &self.modulus_poly
    }

    pub fn degree(&self) -> usize {
        self.modulus_poly
            .degree()
            .expect("modulus polynomial is nonzero")
    }

    /// Field size `p^d` as a big integer.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.base.value()).pow(self.degree() as u32)
    }

    /// `p^d - 1`, if it fits in 64 bits.
    pub fn unit_group_order(&self) -> Result<u64> {
        let mut q: u64 = 1;
        for _ in 0..self.degree() {
            q = q
                .checked_mul(self.base.value())
                .ok_or_else(|| Error::CapExceeded("p^d exceeds 2^64".into()))?;
        }
        Ok(q - 1)
    }

    pub fn elem(self: &Arc<Self>, rep: Poly) -> Result<ExtFieldElem> {
        if rep.modulus() != self.base {
            return Err(Error::ModulusMismatch(
                self.base.value(),
                rep.modulus().value(),
            ));
        }
        Ok(ExtFieldElem {
            rep: rep.rem(&self.modulus_poly)?,
            field: Arc::clone(self),
        })
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<u64>) -> Result<ExtFieldElem> {
        self.elem(Poly::new(self.base, coeffs))
    }

    pub fn zero(self: &Arc<Self>) -> ExtFieldElem {
        ExtFieldElem {
            rep: Poly::zero(self.base),
            field: Arc::clone(self),
        }
    }

    pub fn one(self: &Arc<Self>) -> ExtFieldElem {
        self.from_scalar(1)
    }

    pub fn from_scalar(self: &Arc<Self>, c: u64) -> ExtFieldElem {
        ExtFieldElem {
            rep: Poly::constant(self.base, c),
            field: Arc::clone(self),
        }
    }

    /// The class of `t`.
    pub fn generator(self: &Arc<Self>) -> ExtFieldElem {
        self.from_coeffs(vec![0, 1])
            .expect("t reduces modulo any modulus polynomial")
    }
}

/// Element of an [`ExtField`], represented by a polynomial of degree `< d`.
#[derive(Debug, Clone)]
pub struct ExtFieldElem {
    rep: Poly,
    field: Arc<ExtField>,
}

impl PartialEq for ExtFieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
            && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for ExtFieldElem {}

impl Hash for ExtFieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

impl ExtFieldElem {
    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::InvalidArgument(
                "elements of different extension fields".into(),
            ))
        }
    }

    fn with_rep(&self, rep: Poly) -> Self {
        Self {
            rep,
            field: Arc::clone(&self.field),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_rep(self.rep.add(&other.rep)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_rep(self.rep.sub(&other.rep)?))
    }

    pub fn neg(&self) -> Self {
        let zero = Poly::zero(self.rep.modulus());
        self.with_rep(zero.sub(&self.rep).expect("same modulus"))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_rep(self.rep.mul(&other.rep)?.rem(self.field.modulus_poly())?))
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        self.with_rep(
            self.rep
                .powmod(e, self.field.modulus_poly())
                .expect("modulus polynomial has degree >= 1"),
        )
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        self.pow(&BigUint::from(e))
    }

    /// `self^(p^j)`.
    pub fn frobenius(&self, j: usize) -> Self {
        let p = self.field.base().value();
        (0..j).fold(self.clone(), |acc, _| acc.pow_u64(p))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let e = self.field.size() - BigUint::from(2u32);
        Ok(self.pow(&e))
    }
}

impl fmt::Display for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep.to_string().replace('x', "t"))
    }
}
