//! The MOR cryptosystem and the field ElGamal baseline.
//!
//! This is the textbook construction: no padding, no hybrid layer, no
//! semantic-security hardening. It exists for experiments, not for protecting
//! data.

mod elgamal;
mod encoding;
mod oracle;

pub use elgamal::{
    elgamal_decrypt, elgamal_encrypt, elgamal_encrypt_with_r, elgamal_keygen,
    elgamal_keygen_with_m, ElGamalCiphertext, ElGamalPrivateKey, ElGamalPublicKey,
};
pub use encoding::{decode_message, encode_message};
pub use oracle::dh_from_decryption_oracle;

use num_bigint::BigUint;
use rand::Rng;

use crate::aut::{
    make_central_aut, sample_symplectic_irreducible, AutPlatform, EsAut, GroupElement, Platform,
};
use crate::error::{Error, Result};
use crate::field::random_irreducible;
use crate::matrix::{companion, MatrixFp};

/// Keygen draws at most this many automorphisms looking for order > 3.
pub const KEYGEN_RESAMPLE_CAP: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorPublicKey {
    pub platform: Platform,
    pub phi: AutPlatform,
    pub phi_m: AutPlatform,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorPrivateKey {
    pub platform: Platform,
    pub phi: AutPlatform,
    pub m: u64,
    pub order_phi: u64,
}

impl MorPrivateKey {
    pub fn public_key(&self) -> Result<MorPublicKey> {
        Ok(MorPublicKey {
            platform: self.platform,
            phi: self.phi.clone(),
            phi_m: self.phi.pow(&BigUint::from(self.m))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorCiphertext {
    pub phi_r: AutPlatform,
    pub payload: GroupElement,
}

/// Which automorphism keygen draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KeyKind {
    /// Symplectic with irreducible `chi` (extra-special), or the companion
    /// matrix of a random irreducible polynomial (elementary).
    #[default]
    Standard,
    /// Central automorphism with random nonzero offsets (extra-special only).
    Central,
    /// Random non-identity unipotent matrix (elementary only).
    Unipotent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KeygenOptions {
    pub kind: KeyKind,
    /// Use this private exponent instead of sampling one.
    pub forced_m: Option<u64>,
}

/// Exponent uniform in `[2, order - 1]`; `[1, order - 1]` for the tiny
/// orders weak keys can have.
fn sample_exponent<R: Rng + ?Sized>(order: u64, rng: &mut R) -> u64 {
    match order {
        0 | 1 => 1,
        2 | 3 => rng.gen_range(1..order),
        _ => rng.gen_range(2..order),
    }
}

fn draw_automorphism<R: Rng + ?Sized>(
    platform: Platform,
    kind: KeyKind,
    rng: &mut R,
) -> Result<AutPlatform> {
    let p = platform.modulus();
    match (platform, kind) {
        (Platform::ExtraSpecial(params), KeyKind::Standard) => Ok(AutPlatform::ExtraSpecial(
            sample_symplectic_irreducible(params, rng)?,
        )),
        (Platform::Elementary { d, .. }, KeyKind::Standard) => Ok(AutPlatform::Elementary(
            companion(&random_irreducible(d, p, rng)?)?,
        )),
        (Platform::ExtraSpecial(params), KeyKind::Central) => {
            let v: Vec<u64> = loop {
                let v: Vec<u64> = (0..params.quotient_dim())
                    .map(|_| rng.gen_range(0..p.value()))
                    .collect();
                if v.iter().any(|&x| x != 0) {
                    break v;
                }
            };
            Ok(AutPlatform::ExtraSpecial(make_central_aut(&v, params)?))
        }
        (Platform::Elementary { d, .. }, KeyKind::Unipotent) => {
            if d < 2 {
                return Err(Error::InvalidArgument("unipotent keys need d >= 2".into()));
            }
            let upper = loop {
                let mut u = MatrixFp::identity(p, d);
                for i in 0..d {
                    for j in i + 1..d {
                        u.set(i, j, rng.gen_range(0..p.value()));
                    }
                }
                if !u.is_identity() {
                    break u;
                }
            };
            let q = MatrixFp::random_invertible(p, d, rng);
            let u = q.inverse()?.mul(&upper)?.mul(&q)?;
            Ok(AutPlatform::Elementary(u))
        }
        (_, kind) => Err(Error::InvalidArgument(format!(
            "{kind:?} keys are not available on {platform}"
        ))),
    }
}

/// Standard key pair: `phi` of order > 3 and `m` uniform in `[2, order - 1]`.
pub fn mor_keygen<R: Rng + ?Sized>(
    platform: Platform,
    rng: &mut R,
) -> Result<(MorPublicKey, MorPrivateKey)> {
    mor_keygen_with(platform, KeygenOptions::default(), rng)
}

pub fn mor_keygen_with<R: Rng + ?Sized>(
    platform: Platform,
    options: KeygenOptions,
    rng: &mut R,
) -> Result<(MorPublicKey, MorPrivateKey)> {
    let mut drawn = None;
    for _ in 0..KEYGEN_RESAMPLE_CAP {
        let phi = draw_automorphism(platform, options.kind, rng)?;
        let order = phi.order()?;
        // weak key classes can have tiny orders by nature
        if order > 3 || (options.kind != KeyKind::Standard && order > 1) {
            drawn = Some((phi, order));
            break;
        }
    }
    let (phi, order_phi) = drawn.ok_or_else(|| {
        Error::CapExceeded(format!(
            "no automorphism of order > 3 on {platform} after {KEYGEN_RESAMPLE_CAP} draws"
        ))
    })?;
    let m = match options.forced_m {
        Some(m) if m >= 1 && m < order_phi => m,
        Some(m) => {
            return Err(Error::InvalidArgument(format!(
                "forced exponent {m} outside [1, {}]",
                order_phi - 1
            )))
        }
        None => sample_exponent(order_phi, rng),
    };
    let private = MorPrivateKey {
        platform,
        phi,
        m,
        order_phi,
    };
    Ok((private.public_key()?, private))
}

fn check_element(platform: Platform, a: &GroupElement) -> Result<()> {
    let ok = match (platform, a) {
        (Platform::ExtraSpecial(params), GroupElement::ExtraSpecial(g)) => g.params() == params,
        (Platform::Elementary { d, .. }, GroupElement::Elementary(x)) => {
            x.len() == d && x.iter().all(|&c| c < platform.modulus().value())
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "message {a} is not an element of {platform}"
        )))
    }
}

fn check_aut(platform: Platform, phi: &AutPlatform, what: &str) -> Result<()> {
    if phi.platform() != platform {
        return Err(Error::InvalidArgument(format!(
            "{what} acts on {}, expected {platform}",
            phi.platform()
        )));
    }
    if let AutPlatform::ExtraSpecial(es) = phi {
        EsAut::validate(
            es.matrix().clone(),
            es.offsets().to_vec(),
            es.zeta().value(),
            es.params(),
        )?;
    } else if !phi.matrix().is_invertible() {
        return Err(Error::InvalidAutomorphism(format!("{what} is singular")));
    }
    Ok(())
}

/// Encrypts with a fresh `r` uniform in `[2, ord(phi) - 1]`.
pub fn mor_encrypt<R: Rng + ?Sized>(
    public: &MorPublicKey,
    a: &GroupElement,
    rng: &mut R,
) -> Result<MorCiphertext> {
    let order = public.phi.order()?;
    mor_encrypt_with_r(public, a, sample_exponent(order, rng))
}

/// `(phi^r, (phi^m)^r (a))`.
pub fn mor_encrypt_with_r(
    public: &MorPublicKey,
    a: &GroupElement,
    r: u64,
) -> Result<MorCiphertext> {
    check_element(public.platform, a)?;
    check_aut(public.platform, &public.phi, "phi")?;
    check_aut(public.platform, &public.phi_m, "phi^m")?;
    let r = BigUint::from(r);
    Ok(MorCiphertext {
        phi_r: public.phi.pow(&r)?,
        payload: public.phi_m.pow(&r)?.apply(a)?,
    })
}

/// How decryption undoes `phi^(mr)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionPath {
    /// Invert `(phi^r)^m` directly.
    Inverse,
    /// Raise `(phi^r)^m` to `ord(phi) - 1`.
    Exponent,
}

pub fn mor_decrypt_via(
    private: &MorPrivateKey,
    ct: &MorCiphertext,
    path: InversionPath,
) -> Result<GroupElement> {
    check_aut(private.platform, &ct.phi_r, "phi^r")?;
    check_element(private.platform, &ct.payload)?;
    let psi = ct.phi_r.pow(&BigUint::from(private.m))?;
    let undo = match path {
        InversionPath::Inverse => psi.inverse()?,
        InversionPath::Exponent => psi.pow(&BigUint::from(private.order_phi - 1))?,
    };
    undo.apply(&ct.payload)
}

/// Decrypts along both inversion paths and insists they agree; they differ
/// only when `phi^r` is not a power of `phi`.
pub fn mor_decrypt(private: &MorPrivateKey, ct: &MorCiphertext) -> Result<GroupElement> {
    let a = mor_decrypt_via(private, ct, InversionPath::Inverse)?;
    let b = mor_decrypt_via(private, ct, InversionPath::Exponent)?;
    if a != b {
        return Err(Error::Inconsistent(
            "ciphertext automorphism is not a power of phi".into(),
        ));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Poly, PrimeModulus};
    use crate::rng::seeded;

    fn platforms() -> Vec<Platform> {
        vec![
            Platform::extraspecial(3, 1).unwrap(),
            Platform::extraspecial(5, 2).unwrap(),
            Platform::extraspecial(7, 2).unwrap(),
            Platform::elementary(3, 4).unwrap(),
            Platform::elementary(5, 4).unwrap(),
        ]
    }

    #[test]
    fn roundtrips_on_all_platforms() {
        let mut rng = seeded(100);
        for platform in platforms() {
            let (public, private) = mor_keygen(platform, &mut rng).unwrap();
            assert!(private.order_phi > 3);
            assert!(private.m >= 2 && private.m < private.order_phi);
            for _ in 0..20 {
                let a = platform.random_element(&mut rng);
                let ct = mor_encrypt(&public, &a, &mut rng).unwrap();
                assert_eq!(mor_decrypt(&private, &ct).unwrap(), a);
            }
        }
    }

    #[test]
    fn identity_message_and_zero_exponent() {
        let mut rng = seeded(101);
        let platform = Platform::extraspecial(5, 2).unwrap();
        let (public, private) = mor_keygen(platform, &mut rng).unwrap();
        let id = platform.identity_element();
        let ct = mor_encrypt(&public, &id, &mut rng).unwrap();
        assert!(ct.payload.is_identity());
        // r = ord(phi) makes phi^r and phi^(mr) trivial
        let a = platform.random_element(&mut rng);
        let ct = mor_encrypt_with_r(&public, &a, private.order_phi).unwrap();
        assert!(ct.phi_r.is_identity());
        assert_eq!(ct.payload, a);
        assert_eq!(mor_decrypt(&private, &ct).unwrap(), a);
    }

    #[test]
    fn forced_exponent_one_publishes_phi() {
        let options = KeygenOptions {
            forced_m: Some(1),
            ..Default::default()
        };
        let platform = Platform::extraspecial(5, 1).unwrap();
        let (public, _) = mor_keygen_with(platform, options, &mut seeded(3)).unwrap();
        assert_eq!(public.phi, public.phi_m);
    }

    #[test]
    fn hooked_payload_matches_repeated_application() {
        let platform = Platform::extraspecial(3, 1).unwrap();
        let options = KeygenOptions {
            forced_m: Some(2),
            ..Default::default()
        };
        let (public, _) = mor_keygen_with(platform, options, &mut seeded(4)).unwrap();
        let a = platform.random_element(&mut seeded(5));
        let ct = mor_encrypt_with_r(&public, &a, 2).unwrap();
        let mut expected = a;
        for _ in 0..4 {
            expected = public.phi.apply(&expected).unwrap();
        }
        assert_eq!(ct.payload, expected);
    }

    #[test]
    fn elementary_keys_are_companions_of_irreducible_quadratics() {
        let m = PrimeModulus::new(3).unwrap();
        let quadratics = [vec![1, 0, 1], vec![2, 1, 1], vec![2, 2, 1]]
            .map(|c| companion(&Poly::new(m, c)).unwrap());
        let platform = Platform::elementary(3, 2).unwrap();
        for seed in 0..20 {
            let (public, _) = mor_keygen(platform, &mut seeded(seed)).unwrap();
            assert!(quadratics.contains(public.phi.matrix()));
        }
    }

    #[test]
    fn encryption_is_deterministic_per_seed_and_randomized_across_seeds() {
        let platform = Platform::extraspecial(7, 2).unwrap();
        let (public, _) = mor_keygen(platform, &mut seeded(6)).unwrap();
        let a = platform.random_element(&mut seeded(7));
        let c1 = mor_encrypt(&public, &a, &mut seeded(8)).unwrap();
        let c2 = mor_encrypt(&public, &a, &mut seeded(8)).unwrap();
        assert_eq!(c1, c2);
        let differ =
            (9..20).any(|s| mor_encrypt(&public, &a, &mut seeded(s)).unwrap().phi_r != c1.phi_r);
        assert!(differ);
    }

    #[test]
    fn both_inversion_paths_agree() {
        let mut rng = seeded(9);
        for platform in platforms() {
            let (public, private) = mor_keygen(platform, &mut rng).unwrap();
            for _ in 0..10 {
                let a = platform.random_element(&mut rng);
                let ct = mor_encrypt(&public, &a, &mut rng).unwrap();
                assert_eq!(
                    mor_decrypt_via(&private, &ct, InversionPath::Inverse).unwrap(),
                    mor_decrypt_via(&private, &ct, InversionPath::Exponent).unwrap()
                );
            }
        }
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let mut rng = seeded(10);
        let es = Platform::extraspecial(5, 1).unwrap();
        let el = Platform::elementary(5, 3).unwrap();
        let (public, private) = mor_keygen(es, &mut rng).unwrap();
        assert!(mor_encrypt(&public, &el.identity_element(), &mut rng).is_err());
        let (el_public, _) = mor_keygen(el, &mut rng).unwrap();
        let ct = mor_encrypt(&el_public, &el.identity_element(), &mut rng).unwrap();
        assert!(mor_decrypt(&private, &ct).is_err());
    }

    #[test]
    fn weak_key_kinds() {
        let mut rng = seeded(11);
        let es = Platform::extraspecial(7, 2).unwrap();
        let central = KeygenOptions {
            kind: KeyKind::Central,
            forced_m: None,
        };
        let (public, private) = mor_keygen_with(es, central, &mut rng).unwrap();
        assert_eq!(private.order_phi, 7);
        match &public.phi {
            AutPlatform::ExtraSpecial(phi) => assert!(phi.is_inner()),
            _ => unreachable!(),
        }
        let el = Platform::elementary(3, 4).unwrap();
        let unipotent = KeygenOptions {
            kind: KeyKind::Unipotent,
            forced_m: None,
        };
        let (public, private) = mor_keygen_with(el, unipotent, &mut rng).unwrap();
        let n = public
            .phi
            .matrix()
            .sub(&MatrixFp::identity(el.modulus(), 4))
            .unwrap();
        assert!(crate::matrix::mat_pow_naive(&n, &BigUint::from(4u32)).is_zero());
        assert!(private.order_phi == 3 || private.order_phi == 9);
        let a = el.random_element(&mut rng);
        let ct = mor_encrypt(&public, &a, &mut rng).unwrap();
        assert_eq!(mor_decrypt(&private, &ct).unwrap(), a);
        assert!(mor_keygen_with(el, central, &mut rng).is_err());
    }
}
