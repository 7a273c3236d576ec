//! Root extraction for polynomials over `F_q = F_p[t]/m(t)`: the distinct-root
//! part `gcd(f, X^q - X)` split by Cantor–Zassenhaus (odd `q`) or by the
//! trace map (`q = 2^d`).

use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{ExtField, ExtFieldElem};
use crate::rng::seeded;

const SPLIT_ATTEMPTS: usize = 1000;

/// Ascending coefficients, no trailing zeros.
type EPoly = Vec<ExtFieldElem>;

fn trim(mut a: EPoly) -> EPoly {
    while a.last().is_some_and(ExtFieldElem::is_zero) {
        a.pop();
    }
    a
}

fn add(a: &[ExtFieldElem], b: &[ExtFieldElem]) -> EPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = o.add(s).expect("same field");
    }
    trim(out)
}

fn mul(field: &Arc<ExtField>, a: &[ExtFieldElem], b: &[ExtFieldElem]) -> EPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j]
                .add(&x.mul(y).expect("same field"))
                .expect("same field");
        }
    }
    trim(out)
}

fn rem(a: &[ExtFieldElem], m: &[ExtFieldElem]) -> EPoly {
    let mut r = trim(a.to_vec());
    let lead_inv = m
        .last()
        .expect("nonzero modulus")
        .inv()
        .expect("nonzero lead");
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let c = r
            .last()
            .expect("nonempty")
            .mul(&lead_inv)
            .expect("same field");
        for (i, mi) in m.iter().enumerate() {
            r[shift + i] = r[shift + i]
                .sub(&c.mul(mi).expect("same field"))
                .expect("same field");
        }
        r = trim(r);
    }
    r
}

fn monic(a: EPoly) -> EPoly {
    match a.last() {
        None => a,
        Some(lead) => {
            let inv = lead.inv().expect("nonzero lead");
            a.iter().map(|c| c.mul(&inv).expect("same field")).collect()
        }
    }
}

fn gcd(a: &[ExtFieldElem], b: &[ExtFieldElem]) -> EPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn powmod(field: &Arc<ExtField>, base: &[ExtFieldElem], e: &BigUint, m: &[ExtFieldElem]) -> EPoly {
    let base = rem(base, m);
    let mut acc = rem(&[field.one()], m);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(field, &acc, &acc), m);
        if e.bit(i) {
            acc = rem(&mul(field, &acc, &base), m);
        }
    }
    acc
}

fn exact_div(field: &Arc<ExtField>, a: &[ExtFieldElem], b: &[ExtFieldElem]) -> EPoly {
    let mut r = a.to_vec();
    let lead_inv = b.last().expect("nonzero").inv().expect("nonzero lead");
    let mut q = vec![field.zero(); a.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r
            .last()
            .expect("nonempty")
            .mul(&lead_inv)
            .expect("same field");
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = r[shift + i]
                .sub(&c.mul(bi).expect("same field"))
                .expect("same field");
        }
        q[shift] = c;
        r = trim(r);
    }
    trim(q)
}

/// Distinct roots in `field` of the polynomial with ascending coefficients
/// `f`, in the order the deterministic splitting finds them.
pub(crate) fn roots(field: &Arc<ExtField>, f: &[ExtFieldElem]) -> Result<Vec<ExtFieldElem>> {
    let f = monic(trim(f.to_vec()));
    if f.is_empty() {
        return Err(Error::InvalidArgument(
            "roots of the zero polynomial".into(),
        ));
    }
    let x = vec![field.zero(), field.one()];
    let xq = powmod(field, &x, &field.size(), &f);
    let minus_x = vec![field.zero(), field.one().neg()];
    let split = gcd(&f, &add(&xq, &minus_x));
    let mut rng = seeded(0);
    let mut out = Vec::new();
    let mut stack = vec![split];
    while let Some(g) = stack.pop() {
        match g.len() {
            0 | 1 => {}
            2 => out.push(g[0].neg()),
            _ => {
                let (a, b) = split_once(field, &g, &mut rng)?;
                stack.push(a);
                stack.push(b);
            }
        }
    }
    Ok(out)
}

/// Nontrivial factorization of a product of distinct linear factors.
fn split_once<R: Rng>(
    field: &Arc<ExtField>,
    g: &[ExtFieldElem],
    rng: &mut R,
) -> Result<(EPoly, EPoly)> {
    let p = field.base().value();
    let d = field.degree();
    for _ in 0..SPLIT_ATTEMPTS {
        let delta = field.from_coeffs((0..d).map(|_| rng.gen_range(0..p)).collect())?;
        let candidate = if p == 2 {
            // absolute trace of delta * X
            let w = rem(&[field.zero(), delta], g);
            let mut term = w.clone();
            let mut trace = w;
            for _ in 1..d {
                term = rem(&mul(field, &term, &term), g);
                trace = add(&trace, &term);
            }
            trace
        } else {
            let e = (field.size() - 1u32) / 2u32;
            let s = powmod(field, &[delta, field.one()], &e, g);
            add(&s, &[field.one().neg()])
        };
        let h = gcd(g, &candidate);
        if h.len() > 1 && h.len() < g.len() {
            let other = monic(exact_div(field, g, &h));
            return Ok((h, other));
        }
    }
    Err(Error::Internal(
        "equal-degree splitting did not converge".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{is_irreducible, random_irreducible, Poly, PrimeModulus};

    fn eval(f: &[ExtFieldElem], x: &ExtFieldElem) -> ExtFieldElem {
        f.iter().rev().fold(x.field().zero(), |acc, c| {
            acc.mul(x).unwrap().add(c).unwrap()
        })
    }

    #[test]
    fn finds_all_conjugates_of_a_generator() {
        let mut rng = seeded(70);
        for p in [2u64, 3, 5, 7, 31] {
            for d in 2..=4 {
                let m = PrimeModulus::new(p).unwrap();
                let chi = random_irreducible(d, m, &mut rng).unwrap();
                let field = ExtField::new(chi.clone()).unwrap();
                let f: Vec<ExtFieldElem> =
                    chi.coeffs().iter().map(|&c| field.from_scalar(c)).collect();
                let rs = roots(&field, &f).unwrap();
                assert_eq!(rs.len(), d);
                for r in &rs {
                    assert!(eval(&f, r).is_zero());
                }
                let t = field.generator();
                for j in 0..d {
                    assert!(rs.contains(&t.frobenius(j)));
                }
            }
        }
    }

    #[test]
    fn repeated_and_missing_roots() {
        let m = PrimeModulus::new(5).unwrap();
        let field = ExtField::new(Poly::new(m, vec![2, 0, 1])).unwrap();
        assert!(is_irreducible(field.modulus_poly()).unwrap());
        // (X - 1)^2 (X - 2): distinct roots 1, 2
        let g = Poly::new(m, vec![4, 1])
            .mul(&Poly::new(m, vec![4, 1]))
            .unwrap()
            .mul(&Poly::new(m, vec![3, 1]))
            .unwrap();
        let f2: Vec<ExtFieldElem> = g.coeffs().iter().map(|&c| field.from_scalar(c)).collect();
        let mut rs: Vec<u64> = roots(&field, &f2)
            .unwrap()
            .iter()
            .map(|r| r.rep().coeff(0))
            .collect();
        rs.sort_unstable();
        assert_eq!(rs, vec![1, 2]);
        // an irreducible quartic has no roots in F_25
        let mut rng = seeded(71);
        let quartic = random_irreducible(4, m, &mut rng).unwrap();
        let f4: Vec<ExtFieldElem> = quartic
            .coeffs()
            .iter()
            .map(|&c| field.from_scalar(c))
            .collect();
        assert!(roots(&field, &f4).unwrap().is_empty());
    }
}
