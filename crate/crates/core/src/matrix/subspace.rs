use crate::error::{Error, Result};
use crate::matrix::charpoly::krylov;
use crate::matrix::MatrixFp;

/// Upper bound on `p^d` for [`invariant_subspace_search`].
pub const SUBSPACE_SEARCH_CAP: u64 = 1_000_000;

/// Exhaustive search for a proper nonzero `M`-invariant subspace.
///
/// Every minimal nonzero invariant subspace is cyclic (it is spanned by the
/// orbit of any of its nonzero vectors), so it suffices to spin up
/// `span{v, Mv, M^2 v, ...}` for each nonzero `v`, one per line. Returns the
/// Krylov basis of the first proper one found, in order of increasing
/// little-endian digit code of `v`.
pub fn invariant_subspace_search(matrix: &MatrixFp) -> Result<Option<Vec<Vec<u64>>>> {
    let p = matrix.modulus().value();
    let d = matrix.dim();
    let total = (0..d)
        .try_fold(1u64, |acc, _| acc.checked_mul(p))
        .filter(|&q| q <= SUBSPACE_SEARCH_CAP)
        .ok_or_else(|| {
            Error::CapExceeded(format!(
                "subspace search needs p^d <= {SUBSPACE_SEARCH_CAP}, got p = {p}, d = {d}"
            ))
        })?;
    let mut v = vec![0u64; d];
    for code in 1..total {
        let mut c = code;
        for x in v.iter_mut() {
            *x = c % p;
            c /= p;
        }
        // one representative per line: leading (lowest-index) nonzero is 1
        if v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let span = krylov(matrix, &v).basis;
        if span.len() < d {
            return Ok(Some(span));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Poly, PrimeModulus};
    use crate::matrix::{companion, linalg};

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn is_invariant(a: &MatrixFp, basis: &[Vec<u64>]) -> bool {
        let m = a.modulus();
        let r = linalg::rank(m, &basis.to_vec());
        basis.iter().all(|b| {
            let mut ext = basis.to_vec();
            ext.push(a.mul_vec(b).unwrap());
            linalg::rank(m, &ext) == r
        })
    }

    #[test]
    fn examples() {
        let c = companion(&Poly::new(fp(3), vec![1, 0, 1])).unwrap();
        assert_eq!(invariant_subspace_search(&c).unwrap(), None);
        let id = MatrixFp::identity(fp(3), 2);
        assert_eq!(
            invariant_subspace_search(&id).unwrap(),
            Some(vec![vec![1, 0]])
        );
        let u = MatrixFp::from_rows(fp(3), &[vec![1, 1], vec![0, 1]]).unwrap();
        let w = invariant_subspace_search(&u).unwrap().unwrap();
        assert_eq!(w, vec![vec![1, 0]]);
        assert!(is_invariant(&u, &w));
    }

    #[test]
    fn witnesses_are_invariant_and_proper() {
        let m = fp(2);
        let a = MatrixFp::block_diagonal(
            m,
            &[
                companion(&Poly::new(m, vec![1, 1, 1])).unwrap(),
                companion(&Poly::new(m, vec![1, 1, 0, 1])).unwrap(),
            ],
        )
        .unwrap();
        let w = invariant_subspace_search(&a).unwrap().unwrap();
        assert!(!w.is_empty() && w.len() < 5);
        assert!(is_invariant(&a, &w));
    }

    #[test]
    fn cap_is_enforced() {
        let a = MatrixFp::identity(fp(101), 3);
        assert!(matches!(
            invariant_subspace_search(&a),
            Err(Error::CapExceeded(_))
        ));
    }
}
