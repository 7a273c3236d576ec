//! Central automorphisms `g_i -> g_i z^v_i` compose by adding offsets, so
//! `phi^m` has offsets `m v` and `m` is one field division away.

use crate::aut::AutPlatform;
use crate::cryptanalysis::DlogAnswer;
use crate::error::{Error, Result};
use crate::protocol::MorPublicKey;

pub fn central_aut_attack(public: &MorPublicKey) -> Result<DlogAnswer> {
    let (AutPlatform::ExtraSpecial(phi), AutPlatform::ExtraSpecial(phi_m)) =
        (&public.phi, &public.phi_m)
    else {
        return Err(Error::NotCentral(
            "automorphisms of an elementary-abelian platform are".into(),
        ));
    };
    if !phi.is_inner() {
        return Err(Error::NotCentral("phi".into()));
    }
    if !phi_m.is_inner() {
        return Err(Error::NoSolution(
            "phi^m is not central, so not a power of phi".into(),
        ));
    }
    let p = phi.params().modulus();
    let v = phi.offsets();
    let w = phi_m.offsets();
    let i = v
        .iter()
        .position(|&x| x != 0)
        .ok_or_else(|| Error::InvalidArgument("phi is the identity".into()))?;
    let m = p.mul(w[i], p.inv(v[i])?);
    if v.iter().zip(w).any(|(&vj, &wj)| p.mul(m, vj) != wj) {
        return Err(Error::NoSolution(
            "offsets of phi^m are not a multiple of those of phi".into(),
        ));
    }
    Ok(DlogAnswer {
        residue: m,
        modulus: p.value(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{make_central_aut, Platform};
    use crate::field::PrimeModulus;
    use crate::pgroup::EsParams;
    use crate::protocol::mor_keygen;
    use crate::rng::seeded;
    use num_bigint::BigUint;
    use rand::Rng;
    use std::time::Instant;

    fn key(p: u64, v: &[u64], m: u64) -> MorPublicKey {
        let params = EsParams::new(PrimeModulus::new(p).unwrap(), v.len() / 2).unwrap();
        let phi = make_central_aut(v, params).unwrap();
        MorPublicKey {
            platform: Platform::ExtraSpecial(params),
            phi_m: AutPlatform::ExtraSpecial(phi.pow(&BigUint::from(m))),
            phi: AutPlatform::ExtraSpecial(phi),
        }
    }

    #[test]
    fn examples() {
        let ans = central_aut_attack(&key(31, &[1, 2, 3, 4], 17)).unwrap();
        assert_eq!(
            ans,
            DlogAnswer {
                residue: 17,
                modulus: 31
            }
        );
        assert_eq!(
            central_aut_attack(&key(31, &[0, 0, 5, 4], 31))
                .unwrap()
                .residue,
            0
        );
        let (public, _) =
            mor_keygen(Platform::extraspecial(5, 2).unwrap(), &mut seeded(1)).unwrap();
        let err = central_aut_attack(&public).unwrap_err();
        assert!(matches!(err, Error::NotCentral(_)));
        assert!(err.to_string().contains("not central"));
        assert!(matches!(
            central_aut_attack(&key(31, &[0, 0], 3)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn rejects_inconsistent_offsets() {
        let mut public = key(7, &[1, 2], 3);
        let params = EsParams::new(PrimeModulus::new(7).unwrap(), 1).unwrap();
        public.phi_m = AutPlatform::ExtraSpecial(make_central_aut(&[3, 3], params).unwrap());
        assert!(matches!(
            central_aut_attack(&public),
            Err(Error::NoSolution(_))
        ));
    }

    #[test]
    fn fast_at_large_p() {
        let mut rng = seeded(95);
        let p = 2_147_483_647u64;
        for n in 1..=8 {
            let v: Vec<u64> = (0..2 * n).map(|_| rng.gen_range(1..p)).collect();
            let m = rng.gen_range(2..p);
            let public = key(p, &v, m);
            let start = Instant::now();
            let ans = central_aut_attack(&public).unwrap();
            let elapsed = start.elapsed();
            assert_eq!(
                ans,
                DlogAnswer {
                    residue: m,
                    modulus: p
                }
            );
            assert!(elapsed.as_micros() <= 1000, "n={n}: {elapsed:?}");
        }
    }
}
