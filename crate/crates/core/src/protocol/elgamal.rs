//! Textbook ElGamal in `F_p^*`, the baseline MOR is compared against.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{factor_integer, mult_order, PrimeModulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElGamalPublicKey {
    pub p: PrimeModulus,
    pub g: u64,
    /// `g^m`.
    pub h: u64,
    pub order_g: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElGamalPrivateKey {
    pub public: ElGamalPublicKey,
    pub m: u64,
}

/// `(g^r, h^r a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElGamalCiphertext {
    pub c1: u64,
    pub c2: u64,
}

fn generator_order(p: PrimeModulus, g: u64) -> Result<u64> {
    let g = p.reduce(g);
    if g == 0 {
        return Err(Error::InvalidArgument("generator must be nonzero".into()));
    }
    let order = mult_order(&p.elem(g), &factor_integer(p.value() - 1)?)?;
    if order == 1 {
        return Err(Error::InvalidArgument("generator has order 1".into()));
    }
    Ok(order)
}

pub fn elgamal_keygen<R: Rng + ?Sized>(
    p: PrimeModulus,
    g: u64,
    rng: &mut R,
) -> Result<ElGamalPrivateKey> {
    let order = generator_order(p, g)?;
    elgamal_keygen_with_m(p, g, rng.gen_range(1..order))
}

pub fn elgamal_keygen_with_m(p: PrimeModulus, g: u64, m: u64) -> Result<ElGamalPrivateKey> {
    let order_g = generator_order(p, g)?;
    let g = p.reduce(g);
    Ok(ElGamalPrivateKey {
        public: ElGamalPublicKey {
            p,
            g,
            h: p.pow(g, m),
            order_g,
        },
        m,
    })
}

pub fn elgamal_encrypt<R: Rng + ?Sized>(
    public: &ElGamalPublicKey,
    a: u64,
    rng: &mut R,
) -> Result<ElGamalCiphertext> {
    let r = rng.gen_range(1..public.order_g);
    elgamal_encrypt_with_r(public, a, r)
}

pub fn elgamal_encrypt_with_r(
    public: &ElGamalPublicKey,
    a: u64,
    r: u64,
) -> Result<ElGamalCiphertext> {
    let p = public.p;
    let a = p.reduce(a);
    if a == 0 {
        return Err(Error::InvalidArgument("message must be a unit".into()));
    }
    Ok(ElGamalCiphertext {
        c1: p.pow(public.g, r),
        c2: p.mul(p.pow(public.h, r), a),
    })
}

pub fn elgamal_decrypt(private: &ElGamalPrivateKey, ct: &ElGamalCiphertext) -> Result<u64> {
    let p = private.public.p;
    let shared = p.pow(ct.c1, private.m);
    Ok(p.mul(p.inv(shared)?, ct.c2))
}
