//! Bytes <-> group elements via base-`p` digits.
//!
//! The big-endian integer value of the message is written little-endian in
//! base `p` and the digits fill the normal-form slots in order
//! (`a_1..a_n, b_1..b_n, c`, or the vector coordinates).

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::aut::{GroupElement, Platform};
use crate::error::{Error, Result};

pub fn encode_message(bytes: &[u8], platform: Platform) -> Result<GroupElement> {
    let p = BigUint::from(platform.modulus().value());
    let mut value = BigUint::from_bytes_be(bytes);
    if value >= p.pow(platform.digits() as u32) {
        return Err(Error::MessageTooLarge);
    }
    let mut digits = Vec::with_capacity(platform.digits());
    for _ in 0..platform.digits() {
        let digit = (&value % &p).to_u64().expect("digit below p");
        digits.push(digit);
        value /= &p;
    }
    platform.element_from_digits(&digits)
}

/// Minimal big-endian bytes of the encoded integer; the identity decodes to
/// the empty message.
pub fn decode_message(element: &GroupElement, platform: Platform) -> Result<Vec<u8>> {
    let p = BigUint::from(platform.modulus().value());
    let digits = element.digits();
    if digits.len() != platform.digits() {
        return Err(Error::InvalidArgument(format!(
            "element {element} does not belong to {platform}"
        )));
    }
    let value = digits
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, &d| acc * &p + d);
    if value.is_zero() {
        return Ok(Vec::new());
    }
    Ok(value.to_bytes_be())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::EsElement;
    use crate::rng::seeded;
    use rand::Rng;

    #[test]
    fn digit_layout() {
        let platform = Platform::extraspecial(5, 2).unwrap();
        let Platform::ExtraSpecial(params) = platform else {
            unreachable!()
        };
        assert!(encode_message(&[], platform).unwrap().is_identity());
        assert_eq!(
            encode_message(&[1], platform).unwrap(),
            GroupElement::ExtraSpecial(EsElement::new(params, vec![1, 0], vec![0, 0], 0).unwrap())
        );
        assert_eq!(
            encode_message(&[5], platform).unwrap(),
            GroupElement::ExtraSpecial(EsElement::new(params, vec![0, 1], vec![0, 0], 0).unwrap())
        );
    }

    #[test]
    fn size_limit() {
        // 5^5 = 3125 = 0x0c35
        let platform = Platform::extraspecial(5, 2).unwrap();
        assert!(encode_message(&[0x0c, 0x34], platform).is_ok());
        assert_eq!(
            encode_message(&[0x0c, 0x35], platform),
            Err(Error::MessageTooLarge)
        );
    }

    #[test]
    fn roundtrip_random_messages() {
        let mut rng = seeded(31);
        for platform in [
            Platform::extraspecial(7, 2).unwrap(),
            Platform::extraspecial(251, 3).unwrap(),
            Platform::elementary(5, 4).unwrap(),
        ] {
            let max = BigUint::from(platform.modulus().value()).pow(platform.digits() as u32);
            for _ in 0..200 {
                let len = rng.gen_range(1..=8);
                let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
                if BigUint::from_bytes_be(&bytes) >= max {
                    continue;
                }
                let canonical =
                    decode_message(&encode_message(&bytes, platform).unwrap(), platform).unwrap();
                let trimmed: Vec<u8> = bytes.iter().copied().skip_while(|&b| b == 0).collect();
                assert_eq!(canonical, trimmed);
            }
        }
    }
}
