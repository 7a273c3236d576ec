use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::factor::factor_integer;
use crate::field::prime::{FpElem, PrimeModulus};

/// Dense univariate polynomial over `F_p`, coefficients in ascending degree.
///
/// The coefficient vector never carries a trailing zero; the zero polynomial
/// is the empty vector and has no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: PrimeModulus,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(modulus: PrimeModulus, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| modulus.reduce(c)).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    pub fn from_elems(modulus: PrimeModulus, elems: &[FpElem]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(elems.len());
        for e in elems {
            if e.modulus() != modulus {
                return Err(Error::ModulusMismatch(modulus.value(), e.modulus().value()));
            }
            coeffs.push(e.value());
        }
        Ok(Self::new(modulus, coeffs))
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        Self {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(modulus: PrimeModulus, c: u64) -> Self {
        Self::new(modulus, vec![c])
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::constant(modulus, 1)
    }

    /// The monomial `x`.
    pub fn x(modulus: PrimeModulus) -> Self {
        Self::new(modulus, vec![0, 1])
    }

    pub fn monomial(modulus: PrimeModulus, degree: usize, c: u64) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::new(modulus, coeffs)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .modulus
            .inv(self.leading())
            .expect("leading coefficient of nonzero polynomial is a unit");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        Self::new(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(
                self.modulus.value(),
                other.modulus.value(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(
            m,
            (0..n)
                .map(|i| m.add(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(
            m,
            (0..n)
                .map(|i| m.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.modulus));
        }
        let m = self.modulus;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        Ok(Self::new(m, out))
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let m = self.modulus;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(m), Self::zero(m)));
        };
        if nd < dd {
            return Ok((Self::zero(m), self.clone()));
        }
        let lead_inv = m.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = m.mul(rem[k + dd], lead_inv);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = m.sub(rem[k + j], m.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::new(m, quot), Self::new(m, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact division; fails when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divmod(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Inconsistent(format!(
                "{divisor} does not divide {self}"
            )))
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        let g = self.gcd(other)?;
        Ok(self.div_exact(&g)?.mul(other)?.monic())
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| m.add(m.mul(acc, x), c))
    }

    /// `self^e mod m` by square-and-multiply, reducing after every product.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        self.check(m)?;
        match m.degree() {
            None => return Err(Error::DivisionByZero),
            Some(0) => {
                return Err(Error::InvalidArgument(
                    "powmod modulus must have degree >= 1".into(),
                ))
            }
            _ => {}
        }
        let base = self.rem(m)?;
        let mut acc = Self::one(self.modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc)?.rem(m)?;
            if e.bit(i) {
                acc = acc.mul(&base)?.rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn powmod_u64(&self, e: u64, m: &Self) -> Result<Self> {
        self.powmod(&BigUint::from(e), m)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rabin's test: `x^(p^d) = x (mod f)` and `gcd(x^(p^(d/r)) - x, f) = 1` for
/// every prime `r | d`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "irreducibility test needs degree >= 1".into(),
            ))
        }
    };
    if !f.is_monic() {
        return Err(Error::InvalidArgument(
            "irreducibility test needs a monic polynomial".into(),
        ));
    }
    if d == 1 {
        return Ok(true);
    }
    let m = f.modulus();
    let x = Poly::x(m);
    let p = m.value();
    // frob[k] = x^(p^k) mod f
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(x.clone());
    for k in 1..=d {
        let next = frob[k - 1].powmod_u64(p, f)?;
        frob.push(next);
    }
    if frob[d] != x.rem(f)? {
        return Ok(false);
    }
    for r in factor_integer(d as u64)?.primes() {
        let h = frob[d / r as usize].sub(&x)?;
        if !h.gcd(f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random monic irreducible polynomial of degree `d`, by rejection sampling
/// over uniformly random monic polynomials.
pub fn random_irreducible<R: Rng + ?Sized>(
    d: usize,
    modulus: PrimeModulus,
    rng: &mut R,
) -> Result<Poly> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    let p = modulus.value();
    for _ in 0..1000 * d {
        let coeffs: Vec<u64> = (0..d)
            .map(|_| rng.gen_range(0..p))
            .chain(std::iter::once(1))
            .collect();
        let f = Poly::new(modulus, coeffs);
        if is_irreducible(&f)? {
            return Ok(f);
        }
    }
    Err(Error::Internal(format!(
        "no irreducible polynomial of degree {d} found within retry cap"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn fp(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn poly(p: u64, c: &[u64]) -> Poly {
        Poly::new(fp(p), c.to_vec())
    }

    /// All monic polynomials of degree `d` over F_p.
    fn all_monic(p: u64, d: usize) -> Vec<Poly> {
        let count = p.pow(d as u32);
        (0..count)
            .map(|mut k| {
                let mut c = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    c.push(k % p);
                    k /= p;
                }
                c.push(1);
                poly(p, &c)
            })
            .collect()
    }

    /// Exhaustive oracle: reducible iff divisible by some monic polynomial of
    /// degree 1..=d/2.
    fn irreducible_by_search(f: &Poly) -> bool {
        let p = f.modulus().value();
        let d = f.degree().unwrap();
        for k in 1..=d / 2 {
            for g in all_monic(p, k) {
                if f.rem(&g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn arithmetic_examples() {
        let f = poly(2, &[1, 1]);
        assert_eq!(f.mul(&f).unwrap(), poly(2, &[1, 0, 1]));
        let (q, r) = poly(5, &[1, 0, 1]).divmod(&poly(5, &[2, 1])).unwrap();
        assert_eq!(q, poly(5, &[3, 1]));
        assert!(r.is_zero());
        let g = poly(7, &[3, 0, 5]);
        assert_eq!(g.add(&Poly::zero(fp(7))).unwrap(), g);
        assert_eq!(Poly::zero(fp(7)).degree(), None);
    }

    #[test]
    fn arithmetic_errors() {
        assert_eq!(
            poly(3, &[1]).add(&poly(5, &[1])),
            Err(Error::ModulusMismatch(3, 5))
        );
        assert_eq!(
            poly(3, &[1, 1]).divmod(&Poly::zero(fp(3))),
            Err(Error::DivisionByZero)
        );
        assert!(Poly::zero(fp(3)).gcd(&Poly::zero(fp(3))).is_err());
    }

    #[test]
    fn gcd_examples() {
        let f = poly(5, &[2, 4]);
        assert_eq!(f.gcd(&Poly::zero(fp(5))).unwrap(), f.monic());
        assert_eq!(
            poly(5, &[4, 0, 1]).gcd(&poly(5, &[4, 1])).unwrap(),
            poly(5, &[4, 1])
        );
        assert!(poly(3, &[1, 0, 1]).gcd(&poly(3, &[1, 1])).unwrap().is_one());
    }

    #[test]
    fn powmod_examples() {
        let t = Poly::x(fp(3));
        assert!(t.powmod_u64(4, &poly(3, &[1, 0, 1])).unwrap().is_one());
        let m = poly(2, &[1, 1, 1]);
        assert!(poly(2, &[1, 1]).powmod_u64(0, &m).unwrap().is_one());
        assert_eq!(Poly::x(fp(2)).powmod_u64(1, &m).unwrap(), Poly::x(fp(2)));
        assert!(t.powmod_u64(3, &Poly::zero(fp(3))).is_err());
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let mut rng = seeded(5);
        for p in [2u64, 3, 7, 31] {
            for _ in 0..20 {
                let dm = rng.gen_range(1..6);
                let mut mc: Vec<u64> = (0..dm).map(|_| rng.gen_range(0..p)).collect();
                mc.push(rng.gen_range(1..p));
                let m = poly(p, &mc);
                let f = poly(p, &(0..8).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>());
                let mut naive = Poly::one(fp(p)).rem(&m).unwrap();
                for e in 0..=64u64 {
                    assert_eq!(f.powmod_u64(e, &m).unwrap(), naive, "e = {e}");
                    naive = naive.mul(&f).unwrap().rem(&m).unwrap();
                }
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&poly(3, &[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&poly(5, &[1, 0, 1])).unwrap());
        for p in [2u64, 3, 5, 101] {
            assert!(is_irreducible(&poly(p, &[1, 1])).unwrap());
        }
        assert!(is_irreducible(&poly(3, &[2])).is_err());
        assert!(is_irreducible(&poly(3, &[1, 2])).is_err());
    }

    #[test]
    fn rabin_agrees_with_exhaustive_search() {
        for p in [2u64, 3, 5] {
            for d in 1..=4 {
                for f in all_monic(p, d) {
                    assert_eq!(
                        is_irreducible(&f).unwrap(),
                        irreducible_by_search(&f),
                        "f = {f} over F_{p}"
                    );
                }
            }
        }
    }

    #[test]
    fn random_irreducible_quadratics_over_f3() {
        let allowed = [
            poly(3, &[1, 0, 1]),
            poly(3, &[2, 1, 1]),
            poly(3, &[2, 2, 1]),
        ];
        // the exhaustive list agrees with the search oracle
        let found: Vec<Poly> = all_monic(3, 2)
            .into_iter()
            .filter(irreducible_by_search)
            .collect();
        assert_eq!(found.len(), 3);
        for f in &found {
            assert!(allowed.contains(f));
        }
        for seed in 0..50 {
            let f = random_irreducible(2, fp(3), &mut seeded(seed)).unwrap();
            assert!(allowed.contains(&f));
        }
        let again = random_irreducible(2, fp(3), &mut seeded(9)).unwrap();
        assert_eq!(again, random_irreducible(2, fp(3), &mut seeded(9)).unwrap());
    }

    #[test]
    fn linear_draws_always_succeed() {
        let mut rng = seeded(1);
        for _ in 0..20 {
            assert_eq!(
                random_irreducible(1, fp(13), &mut rng).unwrap().degree(),
                Some(1)
            );
        }
    }

    #[test]
    fn irreducible_density_close_to_one_over_d() {
        // exhaustive counts at p = 3: 3, 3, 8, 18 irreducibles of degree 1..4
        let counts: Vec<usize> = (1..=4)
            .map(|d| {
                all_monic(3, d)
                    .iter()
                    .filter(|f| irreducible_by_search(f))
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![3, 3, 8, 18]);
        let mut rng = seeded(3);
        for d in 2..=4usize {
            let total = 3000;
            let hits = (0..total)
                .filter(|_| {
                    let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..3)).collect();
                    c.push(1);
                    is_irreducible(&poly(3, &c)).unwrap()
                })
                .count();
            let expected = counts[d - 1] as f64 / 3f64.powi(d as i32);
            let rate = hits as f64 / total as f64;
            assert!(
                (rate - expected).abs() < 0.05,
                "d={d} rate={rate} expected={expected}"
            );
        }
    }
}
