use std::collections::HashMap;

use crate::cryptanalysis::{DlogAnswer, DlogInstance};
use crate::error::{Error, Result};
use crate::field::{mult_order, CyclicElement};

/// Largest group order [`bsgs`] accepts.
pub const BSGS_CAP: u64 = 1 << 40;

fn check_instance<G: CyclicElement>(inst: &DlogInstance<G>) -> Result<()> {
    if !inst.g.is_unit() || !inst.h.is_unit() {
        return Err(Error::InvalidArgument("dlog of a non-unit".into()));
    }
    if !inst.g.pow_u64(inst.order.value()).is_identity() {
        return Err(Error::Inconsistent(format!(
            "g^{} is not the identity",
            inst.order.value()
        )));
    }
    Ok(())
}

/// Least `m` with `g^m = h`, by baby-step giant-step. The answer is modulo
/// `ord(g)`.
pub fn bsgs<G: CyclicElement>(inst: &DlogInstance<G>) -> Result<DlogAnswer> {
    let n = inst.order.value();
    if n > BSGS_CAP {
        return Err(Error::CapExceeded(format!(
            "baby-step giant-step needs order <= 2^40, got {n}"
        )));
    }
    check_instance(inst)?;
    let m = bsgs_raw(&inst.g, &inst.h, n)
        .ok_or_else(|| Error::NoSolution("h is not in the subgroup generated by g".into()))?;
    Ok(DlogAnswer {
        residue: m,
        modulus: mult_order(&inst.g, &inst.order)?,
    })
}

fn bsgs_raw<G: CyclicElement>(g: &G, h: &G, n: u64) -> Option<u64> {
    let s = (n as f64).sqrt().ceil() as u64;
    let s = s.max(1);
    let mut table = HashMap::with_capacity(s as usize);
    let mut baby = g.identity_like();
    for j in 0..s {
        table.entry(baby.clone()).or_insert(j);
        baby = baby.op(g);
    }
    let giant = g.pow_u64(s).try_invert().ok()?;
    let mut gamma = h.clone();
    for i in 0..=s {
        if let Some(&j) = table.get(&gamma) {
            let m = i * s + j;
            return (m < n).then_some(m);
        }
        gamma = gamma.op(&giant);
    }
    None
}

/// Extended Euclid on `i128`; returns `a^-1 mod m` for coprime inputs.
fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (a as i128 % m as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m as i128) as u64
}

/// Combines congruences modulo coprime moduli.
fn crt(a: DlogAnswer, b: DlogAnswer) -> DlogAnswer {
    let m = a.modulus as u128 * b.modulus as u128;
    let diff = (b.residue as u128 + b.modulus as u128 - a.residue as u128 % b.modulus as u128)
        % b.modulus as u128;
    let k = diff * inv_mod(a.modulus % b.modulus, b.modulus) as u128 % b.modulus as u128;
    DlogAnswer {
        residue: ((a.residue as u128 + a.modulus as u128 * k) % m) as u64,
        modulus: m as u64,
    }
}

/// Solves in each prime-power part digit by digit with baby-step giant-step
/// in the order-`q` subgroup, then combines by CRT. The answer is modulo
/// `ord(g)`.
pub fn pohlig_hellman<G: CyclicElement>(inst: &DlogInstance<G>) -> Result<DlogAnswer> {
    check_instance(inst)?;
    let n = inst.order.value();
    let mut acc = DlogAnswer {
        residue: 0,
        modulus: 1,
    };
    for &(q, e) in inst.order.factors() {
        if q > BSGS_CAP {
            return Err(Error::CapExceeded(format!(
                "prime factor {q} of the order exceeds the baby-step giant-step cap"
            )));
        }
        let cofactor = n / q.pow(e);
        let g_i = inst.g.pow_u64(cofactor);
        let h_i = inst.h.pow_u64(cofactor);
        // g_i has order q^e' for some e' <= e
        let mut e = 0;
        let mut qe = 1u64;
        while !g_i.pow_u64(qe).is_identity() {
            e += 1;
            qe *= q;
        }
        if e == 0 {
            if !h_i.is_identity() {
                return Err(Error::NoSolution(
                    "h is not in the subgroup generated by g".into(),
                ));
            }
            continue;
        }
        let gamma = g_i.pow_u64(qe / q);
        let g_i_inv = g_i.try_invert()?;
        let mut x = 0u64;
        let mut q_k = 1u64;
        for k in 0..e {
            let shifted = g_i_inv.pow_u64(x).op(&h_i);
            let target = shifted.pow_u64(qe / q_k / q);
            let digit = bsgs_raw(&gamma, &target, q).ok_or_else(|| {
                Error::NoSolution("h is not in the subgroup generated by g".into())
            })?;
            x += digit * q_k;
            if k + 1 < e {
                q_k *= q;
            }
        }
        acc = crt(
            acc,
            DlogAnswer {
                residue: x,
                modulus: qe,
            },
        );
    }
    if inst.g.pow_u64(acc.residue) != inst.h {
        return Err(Error::NoSolution(
            "h is not in the subgroup generated by g".into(),
        ));
    }
    Ok(acc)
}
