//! A MOR decryption oracle solves Diffie–Hellman in `<phi>`.
//!
//! Presenting `phi^m'` as a public key and `(phi^m'', g_i)` as a ciphertext
//! makes the oracle return `phi^(-m'm'')(g_i)`. The images of all generators
//! determine that automorphism; inverting it gives `phi^(m'm'')`.

use crate::aut::{AutPlatform, EsAut, GroupElement, Platform};
use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::pgroup::bilinear_b;
use crate::protocol::{MorCiphertext, MorPublicKey};

pub fn dh_from_decryption_oracle<F>(
    phi: &AutPlatform,
    phi_m1: &AutPlatform,
    phi_m2: &AutPlatform,
    mut oracle: F,
) -> Result<AutPlatform>
where
    F: FnMut(&MorPublicKey, &MorCiphertext) -> Result<GroupElement>,
{
    let platform = phi.platform();
    if phi_m1.platform() != platform || phi_m2.platform() != platform {
        return Err(Error::InvalidArgument(
            "all automorphisms must act on the same platform".into(),
        ));
    }
    let public = MorPublicKey {
        platform,
        phi: phi.clone(),
        phi_m: phi_m1.clone(),
    };
    let images = (0..platform.generator_count())
        .map(|i| {
            let ct = MorCiphertext {
                phi_r: phi_m2.clone(),
                payload: platform.generator(i),
            };
            oracle(&public, &ct)
        })
        .collect::<Result<Vec<_>>>()?;

    let p = platform.modulus();
    let cols: Vec<Vec<u64>> = images.iter().map(coset).collect();
    let m = MatrixFp::from_columns(p, &cols)?;
    let assembled = match platform {
        Platform::ExtraSpecial(params) => {
            let v = images
                .iter()
                .map(|g| g.digits()[params.quotient_dim()])
                .collect();
            // the similitude factor is B(M x_1, M y_1)
            let n = params.n();
            let zeta = bilinear_b(params, &cols[0], &cols[n])?.value();
            AutPlatform::ExtraSpecial(EsAut::validate(m, v, zeta, params)?)
        }
        Platform::Elementary { .. } => AutPlatform::elementary(m)?,
    };
    assembled.inverse()
}

fn coset(g: &GroupElement) -> Vec<u64> {
    match g {
        GroupElement::ExtraSpecial(x) => x.coset(),
        GroupElement::Elementary(x) => x.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{mor_decrypt, mor_keygen, MorPrivateKey};
    use crate::rng::seeded;
    use num_bigint::BigUint;
    use rand::Rng;

    /// Honest oracle that knows the exponent behind `phi^m'`.
    fn honest(
        template: &MorPrivateKey,
        m1: u64,
    ) -> impl FnMut(&MorPublicKey, &MorCiphertext) -> Result<GroupElement> + '_ {
        move |_, ct| {
            let private = MorPrivateKey {
                m: m1,
                ..template.clone()
            };
            mor_decrypt(&private, ct)
        }
    }

    #[test]
    fn recovers_shared_automorphism() {
        let mut rng = seeded(50);
        for platform in [
            Platform::extraspecial(5, 2).unwrap(),
            Platform::extraspecial(3, 1).unwrap(),
            Platform::elementary(5, 4).unwrap(),
        ] {
            let (_, private) = mor_keygen(platform, &mut rng).unwrap();
            let phi = &private.phi;
            for _ in 0..5 {
                let m1 = rng.gen_range(1..private.order_phi);
                let m2 = rng.gen_range(1..private.order_phi);
                let a = phi.pow(&BigUint::from(m1)).unwrap();
                let b = phi.pow(&BigUint::from(m2)).unwrap();
                let shared = dh_from_decryption_oracle(phi, &a, &b, honest(&private, m1)).unwrap();
                assert_eq!(shared, phi.pow(&(BigUint::from(m1) * m2)).unwrap());
            }
        }
    }

    #[test]
    fn small_exponents() {
        let platform = Platform::extraspecial(7, 2).unwrap();
        let (_, private) = mor_keygen(platform, &mut seeded(51)).unwrap();
        let phi = &private.phi;
        let got = dh_from_decryption_oracle(phi, phi, phi, honest(&private, 1)).unwrap();
        assert_eq!(&got, phi);
        let two = phi.pow(&BigUint::from(2u32)).unwrap();
        let three = phi.pow(&BigUint::from(3u32)).unwrap();
        let got = dh_from_decryption_oracle(phi, &two, &three, honest(&private, 2)).unwrap();
        let mut six = phi.clone();
        for _ in 0..5 {
            six = six.compose(phi).unwrap();
        }
        assert_eq!(got, six);
    }

    #[test]
    fn propagates_oracle_failure() {
        let platform = Platform::extraspecial(5, 1).unwrap();
        let (_, private) = mor_keygen(platform, &mut seeded(52)).unwrap();
        let phi = &private.phi;
        let err = dh_from_decryption_oracle(phi, phi, phi, |_, _| {
            Err(Error::Internal("oracle offline".into()))
        });
        assert_eq!(err, Err(Error::Internal("oracle offline".into())));
    }
}
