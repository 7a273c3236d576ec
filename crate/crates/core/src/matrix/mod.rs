//! Square matrices over `F_p`: arithmetic, characteristic and minimal
//! polynomials, Frobenius normal form, exponentiation and order.

mod charpoly;
mod frobenius;
pub(crate) mod linalg;
mod power;
mod subspace;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FpElem, Poly, PrimeModulus};

pub use charpoly::{char_poly, companion, min_poly, vector_min_poly};
pub use frobenius::{frobenius_normal_form, FrobeniusForm};
pub use power::{mat_pow_lg, mat_pow_naive, matrix_order, ORDER_SEARCH_CAP};
pub use subspace::{invariant_subspace_search, SUBSPACE_SEARCH_CAP};

/// A `dim × dim` matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    modulus: PrimeModulus,
    dim: usize,
    entries: Vec<u64>,
}

impl MatrixFp {
    pub fn new(modulus: PrimeModulus, dim: usize, entries: Vec<u64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch(
                "matrix dimension must be >= 1".into(),
            ));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|x| modulus.reduce(x)).collect();
        Ok(Self {
            modulus,
            dim,
            entries,
        })
    }

    pub fn from_rows(modulus: PrimeModulus, rows: &[Vec<u64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        Self::new(modulus, dim, rows.concat())
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(modulus: PrimeModulus, cols: &[Vec<u64>]) -> Result<Self> {
        let dim = cols.len();
        if cols.iter().any(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        Self::from_rows(modulus, &linalg::columns_to_rows(cols, dim))
    }

    pub fn from_fn(modulus: PrimeModulus, dim: usize, f: impl Fn(usize, usize) -> u64) -> Self {
        let entries = (0..dim * dim)
            .map(|k| modulus.reduce(f(k / dim, k % dim)))
            .collect();
        Self {
            modulus,
            dim,
            entries,
        }
    }

    pub fn identity(modulus: PrimeModulus, dim: usize) -> Self {
        Self::from_fn(modulus, dim, |i, j| u64::from(i == j))
    }

    pub fn zero(modulus: PrimeModulus, dim: usize) -> Self {
        Self::from_fn(modulus, dim, |_, _| 0)
    }

    pub fn diagonal(modulus: PrimeModulus, diag: &[u64]) -> Self {
        Self::from_fn(modulus, diag.len(), |i, j| if i == j { diag[i] } else { 0 })
    }

    /// Uniformly random matrix (possibly singular).
    pub fn random<R: Rng + ?Sized>(modulus: PrimeModulus, dim: usize, rng: &mut R) -> Self {
        let p = modulus.value();
        let entries = (0..dim * dim).map(|_| rng.gen_range(0..p)).collect();
        Self {
            modulus,
            dim,
            entries,
        }
    }

    /// Uniformly random element of `GL(dim, p)` by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(
        modulus: PrimeModulus,
        dim: usize,
        rng: &mut R,
    ) -> Self {
        loop {
            let m = Self::random(modulus, dim, rng);
            if m.det() != 0 {
                return m;
            }
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim + j]
    }

    pub fn elem(&self, i: usize, j: usize) -> FpElem {
        self.modulus.elem(self.get(i, j))
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.dim + j] = self.modulus.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.value(),
                other.modulus.value(),
            ));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{0}x{0} vs {1}x{1}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let d = self.dim;
        let m = self.modulus;
        let p = m.value() as u128;
        // below 2^32 every product fits in 64 bits, so sums never overflow
        let small = p <= 1 << 32;
        let mut out = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc: u128 = 0;
                for k in 0..d {
                    let prod = self.entries[i * d + k] as u128 * other.entries[k * d + j] as u128;
                    acc += if small { prod } else { prod % p };
                }
                out[i * d + j] = (acc % p) as u64;
            }
        }
        Self {
            modulus: m,
            dim: d,
            entries: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.modulus;
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| m.add(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.modulus;
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| m.sub(a, b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        Self {
            entries: self.entries.iter().map(|&a| m.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.modulus, self.dim, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> u64 {
        (0..self.dim).fold(0, |acc, i| self.modulus.add(acc, self.get(i, i)))
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.dim,
                self.dim
            )));
        }
        Ok(self.mul_vec_unchecked(v))
    }

    pub(crate) fn mul_vec_unchecked(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| m.add(acc, m.mul(a, b)))
            })
            .collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> u64 {
        let m = self.modulus;
        let d = self.dim;
        let mut a = self.rows();
        let mut det = 1u64;
        for c in 0..d {
            let Some(pr) = (c..d).find(|&i| a[i][c] != 0) else {
                return 0;
            };
            if pr != c {
                a.swap(pr, c);
                det = m.neg(det);
            }
            det = m.mul(det, a[c][c]);
            let inv = m.inv(a[c][c]).expect("pivot is nonzero");
            for i in c + 1..d {
                if a[i][c] == 0 {
                    continue;
                }
                let f = m.mul(a[i][c], inv);
                let (top, rest) = a.split_at_mut(i);
                for (x, &y) in rest[0][c..].iter_mut().zip(&top[c][c..]) {
                    *x = m.sub(*x, m.mul(f, y));
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.dim;
        let mut aug: linalg::Rows = (0..d)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..d).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        let pivots = linalg::rref(self.modulus, &mut aug);
        if pivots.len() < d || pivots[d - 1] >= d {
            return Err(Error::SingularMatrix);
        }
        Ok(Self {
            entries: aug.iter().flat_map(|r| r[d..].iter().copied()).collect(),
            ..self.clone()
        })
    }

    /// `f(M)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Result<Self> {
        if f.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(
                self.modulus.value(),
                f.modulus().value(),
            ));
        }
        let id = Self::identity(self.modulus, self.dim);
        let mut acc = Self::zero(self.modulus, self.dim);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul_unchecked(self).add(&id.scale(c))?;
        }
        Ok(acc)
    }

    /// `f(M) v` by Horner's rule, without forming `f(M)`.
    pub fn eval_poly_on_vec(&self, f: &Poly, v: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let mut acc = vec![0u64; self.dim];
        for &c in f.coeffs().iter().rev() {
            acc = self.mul_vec_unchecked(&acc);
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = m.add(*a, m.mul(c, x));
            }
        }
        acc
    }

    /// If `M` has the companion layout (ones on the subdiagonal, arbitrary
    /// last column, zeros elsewhere), the polynomial it accompanies.
    pub fn as_companion(&self) -> Option<Poly> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d - 1 {
                if self.get(i, j) != u64::from(i == j + 1) {
                    return None;
                }
            }
        }
        let m = self.modulus;
        let mut coeffs: Vec<u64> = (0..d).map(|i| m.neg(self.get(i, d - 1))).collect();
        coeffs.push(1);
        Some(Poly::new(m, coeffs))
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diagonal(modulus: PrimeModulus, blocks: &[MatrixFp]) -> Result<Self> {
        let dim: usize = blocks.iter().map(MatrixFp::dim).sum();
        if dim == 0 {
            return Err(Error::DimensionMismatch("no blocks".into()));
        }
        let mut out = Self::zero(modulus, dim);
        let mut off = 0;
        for b in blocks {
            if b.modulus != modulus {
                return Err(Error::ModulusMismatch(modulus.value(), b.modulus.value()));
            }
            for i in 0..b.dim {
                for j in 0..b.dim {
                    out.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.dim;
        }
        Ok(out)
    }
}

impl fmt::Display for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let m = fp(7);
        let a = MatrixFp::random(m, 3, &mut seeded(1));
        assert_eq!(MatrixFp::identity(m, 3).mul(&a).unwrap(), a);
        let b = MatrixFp::from_rows(fp(3), &[vec![0, 2], vec![1, 0]]).unwrap();
        let b_inv = b.inverse().unwrap();
        assert_eq!(
            b_inv,
            MatrixFp::from_rows(fp(3), &[vec![0, 1], vec![2, 0]]).unwrap()
        );
        assert!(b.mul(&b_inv).unwrap().is_identity());
        assert_eq!(MatrixFp::identity(m, 3).det(), 1);
    }

    #[test]
    fn errors() {
        let a = MatrixFp::identity(fp(3), 2);
        let b = MatrixFp::identity(fp(5), 2);
        let c = MatrixFp::identity(fp(3), 3);
        assert_eq!(a.mul(&b), Err(Error::ModulusMismatch(3, 5)));
        assert!(matches!(a.mul(&c), Err(Error::DimensionMismatch(_))));
        let singular = MatrixFp::from_rows(fp(3), &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(singular.det(), 0);
        assert_eq!(singular.inverse(), Err(Error::SingularMatrix));
        assert!(MatrixFp::from_rows(fp(3), &[vec![1, 2], vec![2]]).is_err());
    }

    #[test]
    fn inverse_and_det_are_consistent() {
        let mut rng = seeded(4);
        for p in [2u64, 3, 13, 2_147_483_647] {
            for d in 1..=6 {
                let a = MatrixFp::random_invertible(fp(p), d, &mut rng);
                let b = MatrixFp::random_invertible(fp(p), d, &mut rng);
                assert!(a.mul(&a.inverse().unwrap()).unwrap().is_identity());
                let m = fp(p);
                assert_eq!(a.mul(&b).unwrap().det(), m.mul(a.det(), b.det()));
            }
        }
    }

    #[test]
    fn companion_layout_is_recognized() {
        let f = Poly::new(fp(5), vec![3, 2, 1]);
        let c = companion(&f).unwrap();
        assert_eq!(c.as_companion(), Some(f));
        assert_eq!(MatrixFp::identity(fp(5), 2).as_companion(), None);
    }
}
