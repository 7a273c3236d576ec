use crate::error::{Error, Result};
use crate::field::Poly;
use crate::matrix::charpoly::{companion, krylov, maximal_vector};
use crate::matrix::linalg::{self, Rows};
use crate::matrix::MatrixFp;

/// Invariant-factor decomposition `P^-1 M P = diag(C(f_1), ..., C(f_r))` with
/// `f_1 | f_2 | ... | f_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusForm {
    pub blocks: Vec<Poly>,
    pub transform: MatrixFp,
}

impl FrobeniusForm {
    /// The block-diagonal matrix of companion blocks.
    pub fn block_matrix(&self) -> Result<MatrixFp> {
        let blocks = self
            .blocks
            .iter()
            .map(companion)
            .collect::<Result<Vec<_>>>()?;
        MatrixFp::block_diagonal(self.transform.modulus(), &blocks)
    }

    /// Minimal polynomial of the block matrix: the last invariant factor.
    pub fn min_poly(&self) -> &Poly {
        self.blocks.last().expect("at least one block")
    }
}

/// Frobenius normal form by cyclic-vector spinning.
///
/// A vector `v` with the full minimal polynomial `f` spans a cyclic subspace
/// `W`. A functional `w` with `w(M^i v) = [i = k-1]` for `i < k` makes the
/// pairing between `W` and `span{w, wM, ...}` triangular, so the common kernel
/// of `w M^i` is an `M`-invariant complement of `W`; recurse on it.
pub fn frobenius_normal_form(matrix: &MatrixFp) -> FrobeniusForm {
    let m = matrix.modulus();
    let d = matrix.dim();
    if let Some(f) = matrix.as_companion() {
        return FrobeniusForm {
            blocks: vec![f],
            transform: MatrixFp::identity(m, d),
        };
    }
    let (blocks, cols) = decompose(matrix).expect("decomposition of a square matrix");
    FrobeniusForm {
        blocks,
        transform: MatrixFp::from_columns(m, &cols).expect("square transform"),
    }
}

/// Returns (invariant factors ascending, transform columns).
fn decompose(matrix: &MatrixFp) -> Result<(Vec<Poly>, Vec<Vec<u64>>)> {
    let m = matrix.modulus();
    let d = matrix.dim();
    let (v, f) = maximal_vector(matrix)?;
    let kry = krylov(matrix, &v);
    let k = kry.basis.len();
    debug_assert_eq!(Some(k), f.degree());
    if k == d {
        return Ok((vec![f], kry.basis));
    }

    // w^T K = e_{k-1}^T, i.e. K^T w = e_{k-1}
    let kt: Rows = kry.basis.clone();
    let rhs: Rows = (0..k).map(|i| vec![u64::from(i == k - 1)]).collect();
    let w = linalg::solve(m, &kt, &rhs)
        .ok_or_else(|| Error::Internal("Krylov basis is not independent".into()))?;
    let mut functional: Vec<u64> = w.iter().map(|r| r[0]).collect();
    let mt = matrix.transpose();
    let mut dual: Rows = Vec::with_capacity(k);
    for _ in 0..k {
        dual.push(functional.clone());
        functional = mt.mul_vec_unchecked(&functional);
    }
    let complement = linalg::nullspace(m, &dual, d);
    if complement.len() != d - k {
        return Err(Error::Internal(
            "invariant complement has wrong dimension".into(),
        ));
    }

    // restriction R with U R = M U
    let u_rows = linalg::columns_to_rows(&complement, d);
    let mu: Vec<Vec<u64>> = complement
        .iter()
        .map(|c| matrix.mul_vec_unchecked(c))
        .collect();
    let mu_rows = linalg::columns_to_rows(&mu, d);
    let r = linalg::solve(m, &u_rows, &mu_rows)
        .ok_or_else(|| Error::Internal("complement is not invariant".into()))?;
    let restricted = MatrixFp::from_rows(m, &r)?;

    let (mut blocks, sub_cols) = decompose(&restricted)?;
    let mut cols: Vec<Vec<u64>> = sub_cols
        .iter()
        .map(|c| {
            (0..d)
                .map(|i| {
                    c.iter()
                        .zip(&complement)
                        .fold(0, |acc, (&a, u)| m.add(acc, m.mul(a, u[i])))
                })
                .collect()
        })
        .collect();
    blocks.push(f);
    cols.extend(kry.basis);
    Ok((blocks, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::matrix::{char_poly, min_poly};
    use crate::rng::seeded;
    use rand::Rng;

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn check_form(a: &MatrixFp, form: &FrobeniusForm) {
        let p = &form.transform;
        let b = form.block_matrix().unwrap();
        assert_eq!(p.mul(&b).unwrap().mul(&p.inverse().unwrap()).unwrap(), *a);
        for w in form.blocks.windows(2) {
            assert!(
                w[1].rem(&w[0]).unwrap().is_zero(),
                "{} does not divide {}",
                w[0],
                w[1]
            );
        }
        let total: usize = form.blocks.iter().map(|f| f.degree().unwrap()).sum();
        assert_eq!(total, a.dim());
        assert!(form.blocks.iter().all(Poly::is_monic));
        assert_eq!(*form.min_poly(), min_poly(a));
        let prod = form
            .blocks
            .iter()
            .fold(Poly::one(a.modulus()), |acc, f| acc.mul(f).unwrap());
        assert_eq!(prod, char_poly(a));
    }

    #[test]
    fn examples() {
        let f = Poly::new(fp(7), vec![1, 2, 3, 1]);
        let c = companion(&f).unwrap();
        let form = frobenius_normal_form(&c);
        assert_eq!(form.blocks, vec![f]);
        assert!(form.transform.is_identity());

        let form = frobenius_normal_form(&MatrixFp::identity(fp(5), 2));
        let x1 = Poly::new(fp(5), vec![4, 1]);
        assert_eq!(form.blocks, vec![x1.clone(), x1]);

        let a = MatrixFp::diagonal(fp(5), &[1, 2]);
        let form = frobenius_normal_form(&a);
        assert_eq!(form.blocks, vec![Poly::new(fp(5), vec![2, 2, 1])]);
        check_form(&a, &form);
    }

    #[test]
    fn reconstructs_random_and_derogatory_matrices() {
        let mut rng = seeded(77);
        for p in [2u64, 3, 5, 13] {
            for _ in 0..40 {
                let d = rng.gen_range(1..=8);
                let a = MatrixFp::random(fp(p), d, &mut rng);
                check_form(&a, &frobenius_normal_form(&a));
                // conjugated block sums with repeated blocks
                let b = MatrixFp::random(fp(p), rng.gen_range(1..=3), &mut rng);
                let s = MatrixFp::block_diagonal(
                    fp(p),
                    &[b.clone(), MatrixFp::diagonal(fp(p), &[1, 1]), b],
                )
                .unwrap();
                let q = MatrixFp::random_invertible(fp(p), s.dim(), &mut rng);
                let a = q.inverse().unwrap().mul(&s).unwrap().mul(&q).unwrap();
                check_form(&a, &frobenius_normal_form(&a));
            }
        }
    }

    #[test]
    fn scalar_and_zero_matrices() {
        let m = fp(3);
        let z = MatrixFp::zero(m, 3);
        let form = frobenius_normal_form(&z);
        assert_eq!(form.blocks, vec![Poly::x(m); 3]);
        check_form(&z, &form);
        let s = MatrixFp::identity(m, 4).scale(2);
        check_form(&s, &frobenius_normal_form(&s));
    }
}
