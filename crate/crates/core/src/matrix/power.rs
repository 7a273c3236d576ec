use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::factor::{factor_integer, factored_to_big, lcm_of_field_orders};
use crate::field::{is_irreducible, mult_order, ExtField, Poly};
use crate::matrix::{char_poly, frobenius_normal_form, min_poly, MatrixFp};

/// Upper bound on `p^d` for [`matrix_order`].
pub const ORDER_SEARCH_CAP: u64 = 1 << 40;

/// `M^e` by left-to-right square-and-multiply on matrices.
pub fn mat_pow_naive(matrix: &MatrixFp, e: &BigUint) -> MatrixFp {
    let mut acc = MatrixFp::identity(matrix.modulus(), matrix.dim());
    for i in (0..e.bits()).rev() {
        acc = acc.mul_unchecked(&acc);
        if e.bit(i) {
            acc = acc.mul_unchecked(matrix);
        }
    }
    acc
}

/// `g(C_f)` for the companion matrix of `f`: column `j` holds the
/// coefficients of `x^j g(x) mod f`.
fn eval_on_companion(g: &Poly, f: &Poly) -> Result<MatrixFp> {
    let d = f.degree().expect("nonzero block");
    let m = f.modulus();
    let x = Poly::x(m);
    let mut col = g.rem(f)?;
    let mut cols = Vec::with_capacity(d);
    for _ in 0..d {
        cols.push((0..d).map(|i| col.coeff(i)).collect::<Vec<u64>>());
        col = col.mul(&x)?.rem(f)?;
    }
    MatrixFp::from_columns(m, &cols)
}

/// `M^e` through the Frobenius normal form `B = P^-1 M P`:
/// `l(t) = t^e mod minpoly(B)`, `C = l(B)` blockwise, result `P C P^-1`.
///
/// A matrix already in companion layout is its own normal form, so the
/// conjugation steps are skipped and the work is one exponentiation in
/// `F_p[t]/f(t)` plus reading off `d` columns.
pub fn mat_pow_lg(matrix: &MatrixFp, e: &BigUint) -> Result<MatrixFp> {
    let m = matrix.modulus();
    if let Some(f) = matrix.as_companion() {
        if f.coeff(0) == 0 {
            return Err(Error::SingularMatrix);
        }
        let l = Poly::x(m).powmod(e, &f)?;
        return eval_on_companion(&l, &f);
    }
    if !matrix.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let form = frobenius_normal_form(matrix);
    let l = Poly::x(m).powmod(e, form.min_poly())?;
    let blocks = form
        .blocks
        .iter()
        .map(|f| eval_on_companion(&l, f))
        .collect::<Result<Vec<_>>>()?;
    let c = MatrixFp::block_diagonal(m, &blocks)?;
    let p = &form.transform;
    Ok(p.mul_unchecked(&c).mul_unchecked(&p.inverse()?))
}

fn field_size(p: u64, d: usize) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..d {
        q = q.checked_mul(p)?;
    }
    Some(q)
}

/// Multiplicative order of an invertible matrix.
///
/// Irreducible characteristic polynomial: order of `t` in `F_p[t]/chi`.
/// Otherwise the order divides `lcm(p^k - 1 : k <= deg mu) * p^s` with
/// `p^s >= deg mu`; prime factors are divided out of that bound while the
/// power stays the identity.
pub fn matrix_order(matrix: &MatrixFp) -> Result<u64> {
    let m = matrix.modulus();
    let p = m.value();
    let d = matrix.dim();
    if matrix.is_identity() {
        return Ok(1);
    }
    match field_size(p, d) {
        Some(q) if q <= ORDER_SEARCH_CAP => {}
        _ => {
            return Err(Error::CapExceeded(format!(
                "matrix order needs p^d <= 2^40, got p = {p}, d = {d}"
            )))
        }
    }
    if !matrix.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let chi = char_poly(matrix);
    if is_irreducible(&chi)? {
        let field = ExtField::new(chi)?;
        let n = factor_integer(field.unit_group_order()?)?;
        return mult_order(&field.generator(), &n);
    }

    let mu = min_poly(matrix);
    let deg = mu.degree().expect("nonzero") as u32;
    let mut bound = lcm_of_field_orders(p, deg)?;
    let mut s = 0u32;
    let mut ps = 1u64;
    while ps < deg as u64 {
        ps *= p;
        s += 1;
    }
    if s > 0 {
        match bound.iter_mut().find(|(q, _)| *q == p) {
            Some(slot) => slot.1 += s,
            None => {
                bound.push((p, s));
                bound.sort_unstable();
            }
        }
    }
    let mut order = factored_to_big(&bound);
    if !mat_pow_naive(matrix, &order).is_identity() {
        return Err(Error::Internal("exponent bound does not annihilate".into()));
    }
    for &(q, e) in &bound {
        let q = BigUint::from(q);
        for _ in 0..e {
            let candidate = &order / &q;
            if mat_pow_naive(matrix, &candidate).is_identity() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    u64::try_from(order).map_err(|_| Error::Internal("order exceeds 64 bits".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{random_irreducible, PrimeModulus};
    use crate::matrix::companion;
    use crate::rng::{random_exponent, seeded};

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn brute_order(a: &MatrixFp) -> u64 {
        let mut acc = a.clone();
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(a).unwrap();
            k += 1;
        }
        k
    }

    #[test]
    fn naive_examples() {
        let a = MatrixFp::random(fp(7), 3, &mut seeded(2));
        assert!(mat_pow_naive(&a, &big(0)).is_identity());
        assert_eq!(mat_pow_naive(&a, &big(1)), a);
        let c = companion(&Poly::new(fp(2), vec![1, 1, 1])).unwrap();
        assert!(mat_pow_naive(&c, &big(3)).is_identity());
        assert_eq!(mat_pow_naive(&a, &big(5)), {
            let mut acc = a.clone();
            for _ in 0..4 {
                acc = acc.mul(&a).unwrap();
            }
            acc
        });
    }

    #[test]
    fn lg_examples() {
        let c = companion(&Poly::new(fp(3), vec![1, 0, 1])).unwrap();
        assert!(mat_pow_lg(&c, &big(4)).unwrap().is_identity());
        let a = MatrixFp::random_invertible(fp(5), 3, &mut seeded(1));
        assert_eq!(mat_pow_lg(&a, &big(1)).unwrap(), a);
        assert!(mat_pow_lg(&a, &big(0)).unwrap().is_identity());
        let singular = MatrixFp::from_rows(fp(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(mat_pow_lg(&singular, &big(3)), Err(Error::SingularMatrix));
    }

    #[test]
    fn lg_matches_naive_on_large_exponent() {
        let mut rng = seeded(40);
        let e = big((1u64 << 40) + 17);
        let a = MatrixFp::random_invertible(fp(5), 4, &mut rng);
        assert_eq!(mat_pow_lg(&a, &e).unwrap(), mat_pow_naive(&a, &e));
        for _ in 0..20 {
            let f = random_irreducible(6, fp(13), &mut rng).unwrap();
            let c = companion(&f).unwrap();
            let e = random_exponent(&mut rng, 256);
            assert_eq!(mat_pow_lg(&c, &e).unwrap(), mat_pow_naive(&c, &e));
        }
    }

    #[test]
    fn lg_handles_derogatory_matrices() {
        let mut rng = seeded(41);
        for p in [2u64, 3, 7] {
            for _ in 0..20 {
                let b = MatrixFp::random_invertible(fp(p), 2, &mut rng);
                let s =
                    MatrixFp::block_diagonal(fp(p), &[b.clone(), b, MatrixFp::identity(fp(p), 1)])
                        .unwrap();
                let q = MatrixFp::random_invertible(fp(p), 5, &mut rng);
                let a = q.inverse().unwrap().mul(&s).unwrap().mul(&q).unwrap();
                let e = random_exponent(&mut rng, 64);
                assert_eq!(mat_pow_lg(&a, &e).unwrap(), mat_pow_naive(&a, &e));
            }
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(matrix_order(&MatrixFp::identity(fp(7), 3)).unwrap(), 1);
        let u = MatrixFp::from_rows(fp(3), &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(matrix_order(&u).unwrap(), 3);
        let c = companion(&Poly::new(fp(3), vec![1, 0, 1])).unwrap();
        assert_eq!(matrix_order(&c).unwrap(), 4);
    }

    #[test]
    fn order_matches_brute_force() {
        let mut rng = seeded(3);
        for p in [2u64, 3, 5] {
            for d in 1..=4 {
                for _ in 0..25 {
                    let a = MatrixFp::random_invertible(fp(p), d, &mut rng);
                    assert_eq!(matrix_order(&a).unwrap(), brute_order(&a), "{a}");
                }
            }
        }
        // Jordan blocks need the p-power part of the bound
        let j = MatrixFp::from_fn(fp(2), 4, |i, k| u64::from(i == k || k == i + 1));
        assert_eq!(matrix_order(&j).unwrap(), 4);
        assert_eq!(brute_order(&j), 4);
    }

    #[test]
    fn order_cap_and_singular_inputs() {
        let large = fp(2_147_483_647);
        let big_dim = MatrixFp::diagonal(large, &[1, 2]);
        assert!(matches!(matrix_order(&big_dim), Err(Error::CapExceeded(_))));
        assert_eq!(matrix_order(&MatrixFp::identity(large, 16)).unwrap(), 1);
        let singular = MatrixFp::zero(fp(3), 2);
        assert_eq!(matrix_order(&singular), Err(Error::SingularMatrix));
    }
}
