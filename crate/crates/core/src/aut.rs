//! Automorphisms of the extra-special group and of elementary-abelian groups.
//!
//! An extra-special automorphism is stored as `(M, v, zeta)`: column `i` of
//! `M` is the coset of the image of the `i`-th generator (`x_1..x_n`, then
//! `y_1..y_n`), `v_i` is the exponent of `z` in that image's normal form, and
//! `phi(z) = z^zeta`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{factor_integer, is_irreducible, mult_order, FpElem, PrimeModulus};
use crate::matrix::{char_poly, mat_pow_lg, matrix_order, MatrixFp};
use crate::pgroup::{EsElement, EsParams, SymplecticForm};

/// Retry cap for [`sample_symplectic_irreducible`].
pub const SAMPLE_RETRY_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EsAut {
    params: EsParams,
    m: MatrixFp,
    v: Vec<u64>,
    zeta: u64,
}

impl EsAut {
    /// Builds `(M, v, zeta)` after checking `M^T J M = zeta J`, `M`
    /// invertible and `zeta != 0`.
    pub fn validate(m: MatrixFp, v: Vec<u64>, zeta: u64, params: EsParams) -> Result<Self> {
        let p = params.modulus();
        let dim = params.quotient_dim();
        if m.modulus() != p {
            return Err(Error::ModulusMismatch(m.modulus().value(), p.value()));
        }
        if m.dim() != dim || v.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "automorphism data for {params} needs a {dim}x{dim} matrix and {dim} offsets"
            )));
        }
        let zeta = p.reduce(zeta);
        if zeta == 0 {
            return Err(Error::InvalidAutomorphism("zeta must be nonzero".into()));
        }
        if !m.is_invertible() {
            return Err(Error::InvalidAutomorphism("M is singular".into()));
        }
        let j = SymplecticForm::new(params).gram().clone();
        if m.transpose().mul_unchecked(&j).mul_unchecked(&m) != j.scale(zeta) {
            return Err(Error::InvalidAutomorphism(format!(
                "similitude check B(Mu, Mw) = {zeta} B(u, w) fails"
            )));
        }
        let v = v.into_iter().map(|x| p.reduce(x)).collect();
        Ok(Self { params, m, v, zeta })
    }

    pub fn identity(params: EsParams) -> Self {
        Self {
            params,
            m: MatrixFp::identity(params.modulus(), params.quotient_dim()),
            v: vec![0; params.quotient_dim()],
            zeta: 1,
        }
    }

    pub fn params(&self) -> EsParams {
        self.params
    }

    pub fn matrix(&self) -> &MatrixFp {
        &self.m
    }

    pub fn offsets(&self) -> &[u64] {
        &self.v
    }

    pub fn zeta(&self) -> FpElem {
        self.params.modulus().elem(self.zeta)
    }

    pub fn is_identity(&self) -> bool {
        self.zeta == 1 && self.m.is_identity() && self.v.iter().all(|&x| x == 0)
    }

    /// True iff `M = I` and `zeta = 1`: the identity on `Z(G)` and `G/Z(G)`.
    pub fn is_inner(&self) -> bool {
        self.zeta == 1 && self.m.is_identity()
    }

    /// Image of the `i`-th generator.
    pub fn generator_image(&self, i: usize) -> EsElement {
        EsElement::from_parts(self.params, &self.m.column(i), self.v[i])
            .expect("column length matches params")
    }

    fn check(&self, params: EsParams) -> Result<()> {
        if self.params == params {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "automorphism of {} applied to {}",
                self.params, params
            )))
        }
    }

    /// `phi(x^a y^b z^c) = prod phi(x_i)^a_i prod phi(y_i)^b_i z^(zeta c)`.
    pub fn apply(&self, g: &EsElement) -> Result<EsElement> {
        self.check(g.params())?;
        Ok(self.apply_unchecked(g))
    }

    fn apply_unchecked(&self, g: &EsElement) -> EsElement {
        let p = self.params.modulus();
        let mut acc = EsElement::identity(self.params);
        for (i, &e) in g.coset().iter().enumerate() {
            if e != 0 {
                acc = acc.mul_unchecked(&self.generator_image(i).pow(i128::from(e)));
            }
        }
        acc.mul_unchecked(&EsElement::z_pow(self.params, p.mul(self.zeta, g.c())))
    }

    /// `self ∘ first`; offsets are read off by evaluating on generators.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        self.check(first.params)?;
        Ok(self.compose_unchecked(first))
    }

    fn compose_unchecked(&self, first: &Self) -> Self {
        let p = self.params.modulus();
        let v = (0..self.params.quotient_dim())
            .map(|i| self.apply_unchecked(&first.generator_image(i)).c())
            .collect();
        Self {
            params: self.params,
            m: self.m.mul_unchecked(&first.m),
            v,
            zeta: p.mul(self.zeta, first.zeta),
        }
    }

    pub fn pow(&self, k: &BigUint) -> Self {
        let mut acc = Self::identity(self.params);
        for i in (0..k.bits()).rev() {
            acc = acc.compose_unchecked(&acc);
            if k.bit(i) {
                acc = acc.compose_unchecked(self);
            }
        }
        acc
    }

    /// `M^-1`, `zeta^-1`, and for each generator the offset that cancels the
    /// `z`-part `phi` puts on the bare candidate preimage.
    pub fn inverse(&self) -> Self {
        let p = self.params.modulus();
        let m_inv = self
            .m
            .inverse()
            .expect("validated automorphisms are invertible");
        let zeta_inv = p.inv(self.zeta).expect("zeta is nonzero");
        let v = (0..self.params.quotient_dim())
            .map(|i| {
                let candidate = EsElement::from_parts(self.params, &m_inv.column(i), 0)
                    .expect("column length matches params");
                let delta = self.apply_unchecked(&candidate).c();
                p.neg(p.mul(delta, zeta_inv))
            })
            .collect();
        Self {
            params: self.params,
            m: m_inv,
            v,
            zeta: zeta_inv,
        }
    }

    /// Least `k >= 1` with `phi^k = id`.
    ///
    /// With `t = lcm(ord M, ord zeta)`, `phi^t` acts trivially on `Z(G)` and
    /// `G/Z(G)`, so it is central and has order 1 or `p`.
    pub fn order(&self) -> Result<u64> {
        let p = self.params.modulus();
        let ord_m = matrix_order(&self.m)?;
        let ord_zeta = mult_order(&self.zeta(), &factor_integer(p.value() - 1)?)?;
        let t = ord_m.lcm(&ord_zeta);
        if self.pow(&BigUint::from(t)).is_identity() {
            Ok(t)
        } else {
            t.checked_mul(p.value())
                .ok_or_else(|| Error::CapExceeded("automorphism order exceeds 64 bits".into()))
        }
    }
}

impl fmt::Display for EsAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = (0..self.params.quotient_dim())
            .map(|i| self.generator_image(i).to_string())
            .collect();
        write!(f, "[{}; z -> z^{}]", imgs.join(", "), self.zeta)
    }
}

/// Central automorphism `g_i -> g_i z^v_i`.
pub fn make_central_aut(v: &[u64], params: EsParams) -> Result<EsAut> {
    EsAut::validate(
        MatrixFp::identity(params.modulus(), params.quotient_dim()),
        v.to_vec(),
        1,
        params,
    )
}

fn random_nonzero_vector<R: Rng + ?Sized>(p: PrimeModulus, len: usize, rng: &mut R) -> Vec<u64> {
    loop {
        let u: Vec<u64> = (0..len).map(|_| rng.gen_range(0..p.value())).collect();
        if u.iter().any(|&x| x != 0) {
            return u;
        }
    }
}

/// Product of `4n` random symplectic transvections `x -> x + lambda B(x, u) u`.
pub fn random_symplectic<R: Rng + ?Sized>(params: EsParams, rng: &mut R) -> MatrixFp {
    let p = params.modulus();
    let dim = params.quotient_dim();
    let j = SymplecticForm::new(params).gram().clone();
    let mut m = MatrixFp::identity(p, dim);
    for _ in 0..2 * dim {
        let u = random_nonzero_vector(p, dim, rng);
        let lambda = rng.gen_range(1..p.value());
        // B(x, u) = x^T (J u)
        let ju = j.mul_vec_unchecked(&u);
        let t = MatrixFp::from_fn(p, dim, |r, c| {
            p.add(u64::from(r == c), p.mul(lambda, p.mul(u[r], ju[c])))
        });
        m = t.mul_unchecked(&m);
    }
    m
}

/// Random automorphism with uniform nonzero `zeta` and uniform offsets: a
/// random symplectic matrix followed by the similitude `diag(1.., zeta..)`.
pub fn random_automorphism<R: Rng + ?Sized>(params: EsParams, rng: &mut R) -> EsAut {
    let p = params.modulus();
    let n = params.n();
    let zeta = rng.gen_range(1..p.value());
    let scale = MatrixFp::diagonal(
        p,
        &(0..2 * n)
            .map(|i| if i < n { 1 } else { zeta })
            .collect::<Vec<_>>(),
    );
    let m = scale.mul_unchecked(&random_symplectic(params, rng));
    let v = (0..2 * n).map(|_| rng.gen_range(0..p.value())).collect();
    EsAut::validate(m, v, zeta, params).expect("similitude by construction")
}

/// Automorphism with `zeta = 1`, random offsets and `M` in `Sp(2n, p)` with
/// irreducible characteristic polynomial.
pub fn sample_symplectic_irreducible<R: Rng + ?Sized>(
    params: EsParams,
    rng: &mut R,
) -> Result<EsAut> {
    let p = params.modulus();
    for _ in 0..SAMPLE_RETRY_CAP {
        let m = random_symplectic(params, rng);
        if is_irreducible(&char_poly(&m))? {
            let v = (0..params.quotient_dim())
                .map(|_| rng.gen_range(0..p.value()))
                .collect();
            return EsAut::validate(m, v, 1, params);
        }
    }
    Err(Error::CapExceeded(format!(
        "no symplectic matrix with irreducible characteristic polynomial after {SAMPLE_RETRY_CAP} draws"
    )))
}

/// The group an automorphism acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Platform {
    ExtraSpecial(EsParams),
    /// `F_p^d` under addition.
    Elementary {
        p: PrimeModulus,
        d: usize,
    },
}

impl Platform {
    pub fn extraspecial(p: u64, n: usize) -> Result<Self> {
        Ok(Self::ExtraSpecial(EsParams::new(PrimeModulus::new(p)?, n)?))
    }

    pub fn elementary(p: u64, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("d must be >= 1".into()));
        }
        Ok(Self::Elementary {
            p: PrimeModulus::new(p)?,
            d,
        })
    }

    pub fn modulus(self) -> PrimeModulus {
        match self {
            Self::ExtraSpecial(params) => params.modulus(),
            Self::Elementary { p, .. } => p,
        }
    }

    /// `log_p |G|`: `2n + 1` or `d`.
    pub fn digits(self) -> usize {
        match self {
            Self::ExtraSpecial(params) => params.quotient_dim() + 1,
            Self::Elementary { d, .. } => d,
        }
    }

    pub fn identity_element(self) -> GroupElement {
        match self {
            Self::ExtraSpecial(params) => GroupElement::ExtraSpecial(EsElement::identity(params)),
            Self::Elementary { d, .. } => GroupElement::Elementary(vec![0; d]),
        }
    }

    /// Element from `digits()` base-`p` digits, in normal-form order.
    pub fn element_from_digits(self, digits: &[u64]) -> Result<GroupElement> {
        if digits.len() != self.digits() {
            return Err(Error::DimensionMismatch(format!(
                "{self} elements have {} digits, got {}",
                self.digits(),
                digits.len()
            )));
        }
        let p = self.modulus();
        match self {
            Self::ExtraSpecial(params) => {
                let k = params.quotient_dim();
                Ok(GroupElement::ExtraSpecial(EsElement::from_parts(
                    params,
                    &digits[..k],
                    digits[k],
                )?))
            }
            Self::Elementary { .. } => Ok(GroupElement::Elementary(
                digits.iter().map(|&x| p.reduce(x)).collect(),
            )),
        }
    }

    pub fn random_element<R: Rng + ?Sized>(self, rng: &mut R) -> GroupElement {
        let p = self.modulus().value();
        let digits: Vec<u64> = (0..self.digits()).map(|_| rng.gen_range(0..p)).collect();
        self.element_from_digits(&digits)
            .expect("digit count matches")
    }

    /// Number of generators of the group: `2n` or `d`.
    pub fn generator_count(self) -> usize {
        match self {
            Self::ExtraSpecial(params) => params.quotient_dim(),
            Self::Elementary { d, .. } => d,
        }
    }

    /// The `i`-th standard generator.
    pub fn generator(self, i: usize) -> GroupElement {
        match self {
            Self::ExtraSpecial(params) => {
                GroupElement::ExtraSpecial(EsElement::generator(params, i))
            }
            Self::Elementary { d, .. } => {
                GroupElement::Elementary((0..d).map(|j| u64::from(i == j)).collect())
            }
        }
    }
}

impl fmt::Display for Platform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ExtraSpecial(params) => write!(f, "{params}"),
            Self::Elementary { p, d } => write!(f, "elementary(p={p}, d={d})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    ExtraSpecial(EsElement),
    Elementary(Vec<u64>),
}

impl GroupElement {
    /// Base-`p` digits in normal-form order.
    pub fn digits(&self) -> Vec<u64> {
        match self {
            Self::ExtraSpecial(g) => {
                let mut out = g.coset();
                out.push(g.c());
                out
            }
            Self::Elementary(x) => x.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.digits().iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ExtraSpecial(g) => write!(f, "{g}"),
            Self::Elementary(x) => {
                let parts: Vec<String> = x.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

/// An automorphism of either platform.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AutPlatform {
    ExtraSpecial(EsAut),
    /// Invertible matrix acting on column vectors.
    Elementary(MatrixFp),
}

impl AutPlatform {
    pub fn identity(platform: Platform) -> Self {
        match platform {
            Platform::ExtraSpecial(params) => Self::ExtraSpecial(EsAut::identity(params)),
            Platform::Elementary { p, d } => Self::Elementary(MatrixFp::identity(p, d)),
        }
    }

    /// Elementary automorphisms must be invertible matrices.
    pub fn elementary(m: MatrixFp) -> Result<Self> {
        if !m.is_invertible() {
            return Err(Error::InvalidAutomorphism("matrix is singular".into()));
        }
        Ok(Self::Elementary(m))
    }

    pub fn platform(&self) -> Platform {
        match self {
            Self::ExtraSpecial(phi) => Platform::ExtraSpecial(phi.params()),
            Self::Elementary(m) => Platform::Elementary {
                p: m.modulus(),
                d: m.dim(),
            },
        }
    }

    /// The induced linear map: `M` for both variants.
    pub fn matrix(&self) -> &MatrixFp {
        match self {
            Self::ExtraSpecial(phi) => phi.matrix(),
            Self::Elementary(m) => m,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Self::ExtraSpecial(phi) => phi.is_identity(),
            Self::Elementary(m) => m.is_identity(),
        }
    }

    fn mismatch(&self, other: Platform) -> Error {
        Error::InvalidArgument(format!(
            "automorphism of {} used with {}",
            self.platform(),
            other
        ))
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        match (self, g) {
            (Self::ExtraSpecial(phi), GroupElement::ExtraSpecial(x)) => {
                Ok(GroupElement::ExtraSpecial(phi.apply(x)?))
            }
            (Self::Elementary(m), GroupElement::Elementary(x)) => {
                Ok(GroupElement::Elementary(m.mul_vec(x)?))
            }
            _ => Err(Error::InvalidArgument(format!(
                "element {g} does not belong to {}",
                self.platform()
            ))),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        match (self, first) {
            (Self::ExtraSpecial(a), Self::ExtraSpecial(b)) => Ok(Self::ExtraSpecial(a.compose(b)?)),
            (Self::Elementary(a), Self::Elementary(b)) => Ok(Self::Elementary(a.mul(b)?)),
            _ => Err(self.mismatch(first.platform())),
        }
    }

    pub fn pow(&self, k: &BigUint) -> Result<Self> {
        match self {
            Self::ExtraSpecial(phi) => Ok(Self::ExtraSpecial(phi.pow(k))),
            Self::Elementary(m) => Ok(Self::Elementary(mat_pow_lg(m, k)?)),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match self {
            Self::ExtraSpecial(phi) => Ok(Self::ExtraSpecial(phi.inverse())),
            Self::Elementary(m) => Ok(Self::Elementary(m.inverse()?)),
        }
    }

    pub fn order(&self) -> Result<u64> {
        match self {
            Self::ExtraSpecial(phi) => phi.order(),
            Self::Elementary(m) => matrix_order(m),
        }
    }
}

impl fmt::Display for AutPlatform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ExtraSpecial(phi) => write!(f, "{phi}"),
            Self::Elementary(m) => write!(f, "{m}"),
        }
    }
}
