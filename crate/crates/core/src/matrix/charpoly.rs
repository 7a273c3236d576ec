use crate::error::{Error, Result};
use crate::field::Poly;
use crate::matrix::MatrixFp;

/// `det(xI - M)`, via reduction to upper Hessenberg form followed by the
/// standard three-term recurrence on leading principal minors.
pub fn char_poly(matrix: &MatrixFp) -> Poly {
    let m = matrix.modulus();
    let n = matrix.dim();
    let mut h = matrix.rows();

    // similarity transform to Hessenberg form
    for col in 0..n.saturating_sub(2) {
        let r = col + 1;
        let Some(piv) = (r..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != r {
            h.swap(piv, r);
            for row in h.iter_mut() {
                row.swap(piv, r);
            }
        }
        let inv = m.inv(h[r][col]).expect("pivot is nonzero");
        for i in r + 1..n {
            let u = m.mul(h[i][col], inv);
            if u == 0 {
                continue;
            }
            let (top, rest) = h.split_at_mut(i);
            for (x, &y) in rest[0].iter_mut().zip(&top[r]) {
                *x = m.sub(*x, m.mul(u, y));
            }
            for row in h.iter_mut() {
                let t = m.mul(u, row[i]);
                row[r] = m.add(row[r], t);
            }
        }
    }

    // p_k = char poly of the leading k×k block
    let x = Poly::x(m);
    let mut polys: Vec<Poly> = vec![Poly::one(m)];
    for k in 1..=n {
        let diag = Poly::constant(m, h[k - 1][k - 1]);
        let mut pk = x
            .sub(&diag)
            .and_then(|f| f.mul(&polys[k - 1]))
            .expect("same modulus");
        let mut t = 1u64;
        for i in (1..k).rev() {
            t = m.mul(t, h[i][i - 1]);
            let c = m.mul(t, h[i - 1][k - 1]);
            if c != 0 {
                pk = pk.sub(&polys[i - 1].scale(c)).expect("same modulus");
            }
        }
        polys.push(pk);
    }
    polys.pop().expect("n >= 1")
}

/// The companion matrix of a monic `f`: ones on the subdiagonal and the
/// negated low coefficients of `f` in the last column.
pub fn companion(f: &Poly) -> Result<MatrixFp> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "companion matrix needs degree >= 1".into(),
            ))
        }
    };
    if !f.is_monic() {
        return Err(Error::InvalidArgument(
            "companion matrix needs a monic polynomial".into(),
        ));
    }
    let m = f.modulus();
    Ok(MatrixFp::from_fn(m, d, |i, j| {
        if j == d - 1 {
            m.neg(f.coeff(i))
        } else {
            u64::from(i == j + 1)
        }
    }))
}

/// Krylov data for a vector: the minimal polynomial of `v` under `M` and the
/// basis `v, Mv, ..., M^(k-1) v` of the cyclic subspace it spans.
pub(crate) struct Krylov {
    pub min_poly: Poly,
    pub basis: Vec<Vec<u64>>,
}

pub(crate) fn krylov(matrix: &MatrixFp, v: &[u64]) -> Krylov {
    let m = matrix.modulus();
    let d = matrix.dim();
    // echelon rows: (vector, pivot, combination over powers)
    let mut echelon: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut current = v.to_vec();
    for k in 0..=d {
        let mut w = current.clone();
        let mut combo = vec![0u64; k + 1];
        combo[k] = 1;
        for (row, piv, rc) in &echelon {
            let f = w[*piv];
            if f == 0 {
                continue;
            }
            for j in 0..d {
                w[j] = m.sub(w[j], m.mul(f, row[j]));
            }
            for (j, &c) in rc.iter().enumerate() {
                combo[j] = m.sub(combo[j], m.mul(f, c));
            }
        }
        match w.iter().position(|&x| x != 0) {
            None => {
                return Krylov {
                    min_poly: Poly::new(m, combo),
                    basis,
                };
            }
            Some(piv) => {
                let inv = m.inv(w[piv]).expect("pivot is nonzero");
                let w: Vec<u64> = w.iter().map(|&x| m.mul(x, inv)).collect();
                let combo: Vec<u64> = combo.iter().map(|&x| m.mul(x, inv)).collect();
                echelon.push((w, piv, combo));
                basis.push(current.clone());
                current = matrix.mul_vec_unchecked(&current);
            }
        }
    }
    unreachable!("d + 1 vectors in dimension d are dependent")
}

/// Monic polynomial `f` of least degree with `f(M) v = 0`.
pub fn vector_min_poly(matrix: &MatrixFp, v: &[u64]) -> Result<Poly> {
    if v.len() != matrix.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for dimension {}",
            v.len(),
            matrix.dim()
        )));
    }
    Ok(krylov(matrix, v).min_poly)
}

/// Given `a`, `b`, divisors `a' | a` and `b' | b` that are coprime with
/// `a' b' = lcm(a, b)`, computed with gcds only.
pub(crate) fn coprime_lcm_split(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let c = a.gcd(b)?;
    let b0 = b.div_exact(&c)?;
    let strip = |f: &Poly| -> Result<Poly> {
        let mut f = f.clone();
        loop {
            let t = f.gcd(&b0)?;
            if t.is_one() {
                return Ok(f);
            }
            f = f.div_exact(&t)?;
        }
    };
    let a_part = strip(a)?;
    let b_rest = strip(b)?;
    let b_part = b.div_exact(&b_rest)?;
    Ok((a_part.monic(), b_part.monic()))
}

/// A vector whose minimal polynomial equals the minimal polynomial of `M`,
/// built by merging the standard basis vectors pairwise.
pub(crate) fn maximal_vector(matrix: &MatrixFp) -> Result<(Vec<u64>, Poly)> {
    let d = matrix.dim();
    let unit = |i: usize| -> Vec<u64> { (0..d).map(|j| u64::from(i == j)).collect() };
    let mut v = unit(0);
    let mut f = krylov(matrix, &v).min_poly;
    for i in 1..d {
        if f.degree() == Some(d) {
            break;
        }
        let e = unit(i);
        let g = krylov(matrix, &e).min_poly;
        if f.rem(&g)?.is_zero() {
            continue;
        }
        let (a, b) = coprime_lcm_split(&f, &g)?;
        let u1 = matrix.eval_poly_on_vec(&f.div_exact(&a)?, &v);
        let u2 = matrix.eval_poly_on_vec(&g.div_exact(&b)?, &e);
        let m = matrix.modulus();
        v = u1.iter().zip(&u2).map(|(&x, &y)| m.add(x, y)).collect();
        f = a.mul(&b)?;
    }
    Ok((v, f))
}

/// Monic polynomial of least degree annihilating `M`: the lcm of the minimal
/// polynomials of the standard basis vectors.
pub fn min_poly(matrix: &MatrixFp) -> Poly {
    let d = matrix.dim();
    let mut acc = Poly::one(matrix.modulus());
    for i in 0..d {
        let e: Vec<u64> = (0..d).map(|j| u64::from(i == j)).collect();
        let f = krylov(matrix, &e).min_poly;
        acc = acc.lcm(&f).expect("nonzero polynomials");
        if acc.degree() == Some(d) {
            break;
        }
    }
    acc
}
