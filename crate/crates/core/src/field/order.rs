use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::field::ext::ExtFieldElem;
use crate::field::factor::FactoredInteger;
use crate::field::prime::FpElem;

/// Element of a finite abelian multiplicative group, as used by the order and
/// discrete-log routines.
pub trait CyclicElement: Clone + Eq + Hash + Debug {
    fn identity_like(&self) -> Self;
    fn op(&self, other: &Self) -> Self;
    fn try_invert(&self) -> Result<Self>;
    /// False for elements outside the unit group (field zero).
    fn is_unit(&self) -> bool;

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut acc = self.identity_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.op(&base);
            }
            base = base.op(&base);
            e >>= 1;
        }
        acc
    }

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }
}

impl CyclicElement for FpElem {
    fn identity_like(&self) -> Self {
        self.modulus().elem(1)
    }

    fn op(&self, other: &Self) -> Self {
        *self * *other
    }

    fn try_invert(&self) -> Result<Self> {
        self.inv()
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn pow_u64(&self, e: u64) -> Self {
        self.pow(e)
    }
}

impl CyclicElement for ExtFieldElem {
    fn identity_like(&self) -> Self {
        self.field().one()
    }

    fn op(&self, other: &Self) -> Self {
        self.mul(other).expect("same field")
    }

    fn try_invert(&self) -> Result<Self> {
        self.inv()
    }

    fn is_unit(&self) -> bool {
        !self.is_zero()
    }

    fn pow_u64(&self, e: u64) -> Self {
        ExtFieldElem::pow_u64(self, e)
    }
}

/// Least `k >= 1` with `a^k = 1`, given the factored order of a group
/// containing `a`. Each prime factor is divided out while the power stays 1.
pub fn mult_order<T: CyclicElement>(a: &T, group_order: &FactoredInteger) -> Result<u64> {
    if !a.is_unit() {
        return Err(Error::InvalidArgument("order of zero is undefined".into()));
    }
    let n = group_order.value();
    if !a.pow_u64(n).is_identity() {
        return Err(Error::Inconsistent(format!(
            "element does not satisfy a^{n} = 1"
        )));
    }
    let mut order = n;
    for &(q, e) in group_order.factors() {
        for _ in 0..e {
            if a.pow_u64(order / q).is_identity() {
                order /= q;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ext::ExtField;
    use crate::field::factor::factor_integer;
    use crate::field::poly::Poly;
    use crate::field::prime::PrimeModulus;

    fn brute_order<T: CyclicElement>(a: &T) -> u64 {
        let mut acc = a.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.op(a);
            k += 1;
        }
        k
    }

    #[test]
    fn prime_field_examples() {
        let m = PrimeModulus::new(19).unwrap();
        let n = factor_integer(18).unwrap();
        assert_eq!(mult_order(&m.elem(1), &n).unwrap(), 1);
        assert_eq!(mult_order(&m.elem(2), &n).unwrap(), 18);
        assert!(mult_order(&m.elem(0), &n).is_err());
        for a in 1..19 {
            let a = m.elem(a);
            let k = mult_order(&a, &n).unwrap();
            assert_eq!(k, brute_order(&a));
            assert_eq!(18 % k, 0);
        }
    }

    #[test]
    fn inconsistent_group_order_rejected() {
        let m = PrimeModulus::new(19).unwrap();
        let wrong = factor_integer(9).unwrap();
        assert!(matches!(
            mult_order(&m.elem(2), &wrong),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn extension_field_examples() {
        let f2 = PrimeModulus::new(2).unwrap();
        let k = ExtField::new(Poly::new(f2, vec![1, 1, 1])).unwrap();
        let n = factor_integer(3).unwrap();
        assert_eq!(mult_order(&k.generator(), &n).unwrap(), 3);

        let f5 = PrimeModulus::new(5).unwrap();
        let k = ExtField::new(Poly::new(f5, vec![3, 2, 1])).unwrap();
        let n = factor_integer(24).unwrap();
        for code in 1..25u64 {
            let a = k.from_coeffs(vec![code % 5, code / 5]).unwrap();
            let ord = mult_order(&a, &n).unwrap();
            assert_eq!(ord, brute_order(&a));
            assert!(a.pow_u64(ord).is_one());
        }
    }
}
