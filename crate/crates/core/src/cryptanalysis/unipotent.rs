//! Discrete logs to a unipotent base.
//!
//! With `N = u - I` nilpotent of index `k`, `u^m = sum_j C(m, j) N^j` and the
//! powers `N^1..N^(k-1)` are linearly independent, so the coefficients
//! `C(m, j) mod p` are read off by one linear solve. By Lucas' theorem
//! `C(m, p^i) ≡ m_i (mod p)`, the `i`-th base-`p` digit of `m`, which gives
//! `m` modulo `ord(u) = p^s`, the least power of `p` that is `>= k`.

use num_bigint::BigUint;

use crate::cryptanalysis::DlogAnswer;
use crate::error::{Error, Result};
use crate::matrix::linalg::{self, Rows};
use crate::matrix::{mat_pow_naive, MatrixFp};

pub fn unipotent_dlog(u: &MatrixFp, h: &MatrixFp) -> Result<DlogAnswer> {
    if u.modulus() != h.modulus() {
        return Err(Error::ModulusMismatch(
            u.modulus().value(),
            h.modulus().value(),
        ));
    }
    if u.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "u is {0}x{0}, h is {1}x{1}",
            u.dim(),
            h.dim()
        )));
    }
    let m = u.modulus();
    let p = m.value();
    let d = u.dim();
    let id = MatrixFp::identity(m, d);
    let n = u.sub(&id)?;

    let mut powers = vec![n.clone()];
    while !powers.last().expect("nonempty").is_zero() {
        if powers.len() > d {
            return Err(Error::InvalidArgument("u is not unipotent".into()));
        }
        let next = powers.last().expect("nonempty").mul_unchecked(&n);
        powers.push(next);
    }
    // powers = [N, ..., N^k] with N^k = 0
    let k = powers.len();
    powers.pop();
    if k == 1 {
        return if h.is_identity() {
            Ok(DlogAnswer {
                residue: 0,
                modulus: 1,
            })
        } else {
            Err(Error::NoSolution("u is the identity but h is not".into()))
        };
    }

    // columns vec(N^j), right-hand side vec(h - I)
    let a: Rows = (0..d * d)
        .map(|idx| powers.iter().map(|pw| pw.get(idx / d, idx % d)).collect())
        .collect();
    let target = h.sub(&id)?;
    let b: Rows = (0..d * d)
        .map(|idx| vec![target.get(idx / d, idx % d)])
        .collect();
    let coeffs = linalg::solve(m, &a, &b)
        .ok_or_else(|| Error::NoSolution("h - I is not in the span of powers of u - I".into()))?;

    let mut order = 1u64;
    let mut residue = 0u64;
    while order < k as u64 {
        // coefficient of N^order, stored at index order - 1
        residue += coeffs[order as usize - 1][0] * order;
        order *= p;
    }
    if mat_pow_naive(u, &BigUint::from(residue)) != *h {
        return Err(Error::NoSolution("h is not a power of u".into()));
    }
    Ok(DlogAnswer {
        residue,
        modulus: order,
    })
}
