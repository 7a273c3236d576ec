//! The extra-special group of order `p^(2n+1)` and exponent `p` (odd `p`).
//!
//! Generators `x_1..x_n, y_1..y_n, z` with `[x_i, y_i] = z`, every other pair
//! of generators commuting, `z` central and every generator of order `p`.
//! Elements are kept in the normal form
//! `x_1^a_1 ... x_n^a_n y_1^b_1 ... y_n^b_n z^c`. Moving `y^b` past `x^a'`
//! emits `z^(-a'b)`, hence
//!
//! `(a, b, c)(a', b', c') = (a + a', b + b', c + c' - b.a')`.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FpElem, PrimeModulus};
use crate::matrix::MatrixFp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EsParams {
    p: PrimeModulus,
    n: usize,
}

impl EsParams {
    pub fn new(p: PrimeModulus, n: usize) -> Result<Self> {
        if p.value() == 2 {
            return Err(Error::InvalidArgument(
                "extra-special groups of exponent p need odd p".into(),
            ));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        Ok(Self { p, n })
    }

    pub fn modulus(self) -> PrimeModulus {
        self.p
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// Dimension `2n` of `G/Z(G)`.
    pub fn quotient_dim(self) -> usize {
        2 * self.n
    }

    /// `|G| = p^(2n+1)`.
    pub fn group_order(self) -> BigUint {
        BigUint::from(self.p.value()).pow(2 * self.n as u32 + 1)
    }
}

impl fmt::Display for EsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "extraspecial(p={}, n={})", self.p, self.n)
    }
}

/// An element `x^a y^b z^c` in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EsElement {
    params: EsParams,
    a: Vec<u64>,
    b: Vec<u64>,
    c: u64,
}

impl EsElement {
    pub fn new(params: EsParams, a: Vec<u64>, b: Vec<u64>, c: u64) -> Result<Self> {
        if a.len() != params.n || b.len() != params.n {
            return Err(Error::DimensionMismatch(format!(
                "exponent vectors must have length {}",
                params.n
            )));
        }
        let p = params.p;
        Ok(Self {
            params,
            a: a.into_iter().map(|x| p.reduce(x)).collect(),
            b: b.into_iter().map(|x| p.reduce(x)).collect(),
            c: p.reduce(c),
        })
    }

    pub fn identity(params: EsParams) -> Self {
        Self {
            params,
            a: vec![0; params.n],
            b: vec![0; params.n],
            c: 0,
        }
    }

    /// Element with coset vector `u = (a, b)` and center exponent `c`.
    pub fn from_parts(params: EsParams, u: &[u64], c: u64) -> Result<Self> {
        let n = params.n;
        if u.len() != 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "coset vector must have length {}",
                2 * n
            )));
        }
        Self::new(params, u[..n].to_vec(), u[n..].to_vec(), c)
    }

    /// `x_i` (zero-based).
    pub fn x(params: EsParams, i: usize) -> Self {
        let mut g = Self::identity(params);
        g.a[i] = 1;
        g
    }

    /// `y_i` (zero-based).
    pub fn y(params: EsParams, i: usize) -> Self {
        let mut g = Self::identity(params);
        g.b[i] = 1;
        g
    }

    pub fn z(params: EsParams) -> Self {
        Self::z_pow(params, 1)
    }

    pub fn z_pow(params: EsParams, c: u64) -> Self {
        let mut g = Self::identity(params);
        g.c = params.p.reduce(c);
        g
    }

    /// The `j`-th generator of `G/Z` lifted with zero center part:
    /// `x_{j+1}` for `j < n`, otherwise `y_{j-n+1}`.
    pub fn generator(params: EsParams, j: usize) -> Self {
        if j < params.n {
            Self::x(params, j)
        } else {
            Self::y(params, j - params.n)
        }
    }

    pub fn params(&self) -> EsParams {
        self.params
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// Image in `G/Z(G) = F_p^(2n)`.
    pub fn coset(&self) -> Vec<u64> {
        self.a.iter().chain(&self.b).copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.c == 0 && self.a.iter().chain(&self.b).all(|&x| x == 0)
    }

    pub fn is_central(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&x| x == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "group mismatch: {} vs {}",
                self.params, other.params
            )))
        }
    }

    fn dot(p: PrimeModulus, u: &[u64], v: &[u64]) -> u64 {
        u.iter()
            .zip(v)
            .fold(0, |acc, (&x, &y)| p.add(acc, p.mul(x, y)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let p = self.params.p;
        let collect = Self::dot(p, &self.b, &other.a);
        Self {
            params: self.params,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(&x, &y)| p.add(x, y))
                .collect(),
            b: self
                .b
                .iter()
                .zip(&other.b)
                .map(|(&x, &y)| p.add(x, y))
                .collect(),
            c: p.sub(p.add(self.c, other.c), collect),
        }
    }

    /// `g^k = (ka, kb, kc - C(k,2) a.b)` for any integer `k`.
    pub fn pow(&self, k: i128) -> Self {
        let p = self.params.p;
        let km = p.reduce_i128(k);
        // C(k, 2) mod p; p odd so 2 is invertible
        let binom = p.mul(p.mul(km, p.reduce_i128(k - 1)), p.inv(2).expect("p is odd"));
        let ab = Self::dot(p, &self.a, &self.b);
        Self {
            params: self.params,
            a: self.a.iter().map(|&x| p.mul(x, km)).collect(),
            b: self.b.iter().map(|&x| p.mul(x, km)).collect(),
            c: p.sub(p.mul(self.c, km), p.mul(binom, ab)),
        }
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self
            .inverse()
            .mul_unchecked(&other.inverse())
            .mul_unchecked(self)
            .mul_unchecked(other))
    }
}

impl fmt::Display for EsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &e) in self.a.iter().enumerate() {
            if e != 0 {
                parts.push(format!("x{}^{e}", i + 1));
            }
        }
        for (i, &e) in self.b.iter().enumerate() {
            if e != 0 {
                parts.push(format!("y{}^{e}", i + 1));
            }
        }
        if self.c != 0 {
            parts.push(format!("z^{}", self.c));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// The alternating form on `G/Z(G)` read off from commutators:
/// `B(x_i, y_i) = 1 = -B(y_i, x_i)`, all other basis pairs 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
    gram: MatrixFp,
}

impl SymplecticForm {
    pub fn new(params: EsParams) -> Self {
        let n = params.n;
        let p = params.p;
        let gram = MatrixFp::from_fn(p, 2 * n, |i, j| {
            if j == i + n {
                1
            } else if i == j + n {
                p.value() - 1
            } else {
                0
            }
        });
        Self { n, gram }
    }

    /// Gram matrix `J` with `B(u, v) = u^T J v`.
    pub fn gram(&self) -> &MatrixFp {
        &self.gram
    }

    pub fn eval(&self, u: &[u64], v: &[u64]) -> Result<FpElem> {
        let p = self.gram.modulus();
        if u.len() != 2 * self.n || v.len() != 2 * self.n {
            return Err(Error::DimensionMismatch(format!(
                "form on F_p^{} applied to vectors of length {} and {}",
                2 * self.n,
                u.len(),
                v.len()
            )));
        }
        let n = self.n;
        let mut acc = 0u64;
        for i in 0..n {
            acc = p.add(acc, p.mul(u[i], v[n + i]));
            acc = p.sub(acc, p.mul(u[n + i], v[i]));
        }
        Ok(p.elem(acc))
    }
}

/// `B(u, v)` for the standard form of `params`.
pub fn bilinear_b(params: EsParams, u: &[u64], v: &[u64]) -> Result<FpElem> {
    SymplecticForm::new(params).eval(u, v)
}

/// Dimensions of the sections of the exponent-p central series
/// `G_0 = G, G_{i+1} = [G, G_i] G_i^p`: `G/Phi(G)` of dimension `2n`, then
/// `Phi(G) = Z(G) = G'` of dimension 1.
pub fn series_sections(params: EsParams) -> Vec<usize> {
    vec![2 * params.n, 1]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthogonalType {
    /// `epsilon = +1`: central product of `n` dihedral groups of order 8.
    Plus,
    /// `epsilon = -1`: `n - 1` dihedral factors and one quaternion factor.
    Minus,
}

/// `|O_eps(2n, 2)| = 2^(n(n-1)+1) (2^n - eps) prod_{i=1}^{n-1} (2^(2i) - 1)`.
pub fn orthogonal_group_order(n: u32, eps: OrthogonalType) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let two = BigUint::from(2u32);
    let mut order = two.pow(n * (n - 1) + 1);
    let two_n = two.pow(n);
    order *= match eps {
        OrthogonalType::Plus => two_n - 1u32,
        OrthogonalType::Minus => two_n + 1u32,
    };
    for i in 1..n {
        order *= two.pow(2 * i) - 1u32;
    }
    Ok(order)
}
