//! Integer factoring and primality at desk scale.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;
const TRIAL_PRIMALITY_LIMIT: u64 = 1 << 40;
const RHO_ITERATION_CAP: u64 = 1 << 24;

/// A positive integer with its complete prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    /// Builds from a factor list; primes are checked and the list is sorted
    /// and merged.
    pub fn from_factors(factors: &[(u64, u32)]) -> Result<Self> {
        let mut merged: BTreeMap<u64, u32> = BTreeMap::new();
        let mut value: u64 = 1;
        for &(q, e) in factors {
            if !is_prime(q) {
                return Err(Error::NotPrime(q));
            }
            if e == 0 {
                continue;
            }
            *merged.entry(q).or_default() += e;
            for _ in 0..e {
                value = value
                    .checked_mul(q)
                    .ok_or_else(|| Error::InvalidArgument("factored value exceeds 2^64".into()))?;
            }
        }
        Ok(Self {
            value,
            factors: merged.into_iter().collect(),
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(q, _)| q)
    }
}

/// Primality: trial division up to `sqrt(n)` for `n < 2^40`, deterministic
/// Miller-Rabin above that.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    if n < TRIAL_PRIMALITY_LIMIT {
        let mut d = 41u64;
        while d * d <= n {
            if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
                return false;
            }
            d += 6;
        }
        return true;
    }
    miller_rabin(n)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn miller_rabin(n: u64) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // deterministic witness set for all 64-bit integers
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
/// composite `n`.
fn pollard_rho(n: u64) -> Result<u64> {
    let mut budget = RHO_ITERATION_CAP;
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
                budget = budget.saturating_sub(m.min(r));
                if budget == 0 {
                    return Err(Error::CapExceeded(format!(
                        "Pollard rho iteration cap while factoring {n}"
                    )));
                }
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Ok(g);
        }
    }
    Err(Error::CapExceeded(format!("Pollard rho failed on {n}")))
}

fn split_into(n: u64, out: &mut BTreeMap<u64, u32>) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime(n) {
        *out.entry(n).or_default() += 1;
        return Ok(());
    }
    let d = pollard_rho(n)?;
    split_into(d, out)?;
    split_into(n / d, out)
}

/// Complete prime factorization of `n` (trial division to 10^6, then Pollard
/// rho). An exhausted iteration budget is reported as `CapExceeded`, never as
/// a partial answer.
pub fn factor_integer(n: u64) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut rest = n;
    let mut found: BTreeMap<u64, u32> = BTreeMap::new();
    let mut q = 2u64;
    while q <= TRIAL_LIMIT && q * q <= rest {
        while rest.is_multiple_of(q) {
            *found.entry(q).or_default() += 1;
            rest /= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        split_into(rest, &mut found)?;
    }
    Ok(FactoredInteger {
        value: n,
        factors: found.into_iter().collect(),
    })
}

/// Factorization of `lcm(p^1 - 1, ..., p^k - 1)`, kept in factored form since
/// the integer itself may exceed 64 bits.
pub fn lcm_of_field_orders(p: u64, max_degree: u32) -> Result<Vec<(u64, u32)>> {
    let mut exps: BTreeMap<u64, u32> = BTreeMap::new();
    let mut pk: u64 = 1;
    for _ in 1..=max_degree {
        pk = pk
            .checked_mul(p)
            .ok_or_else(|| Error::CapExceeded("p^k exceeds 2^64".into()))?;
        let f = factor_integer(pk - 1)?;
        for &(q, e) in f.factors() {
            let slot = exps.entry(q).or_default();
            *slot = (*slot).max(e);
        }
    }
    Ok(exps.into_iter().collect())
}

pub fn factored_to_big(factors: &[(u64, u32)]) -> BigUint {
    factors.iter().fold(BigUint::from(1u32), |acc, &(q, e)| {
        acc * BigUint::from(q).pow(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut q = 2;
        while q * q <= n {
            let mut e = 0;
            while n.is_multiple_of(q) {
                n /= q;
                e += 1;
            }
            if e > 0 {
                out.push((q, e));
            }
            q += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn small_examples() {
        assert_eq!(factor_integer(24).unwrap().factors(), &[(2, 3), (3, 1)]);
        assert!(factor_integer(1).unwrap().factors().is_empty());
        // 3^10 - 1 = 59048 = 2^3 * 11^2 * 61, by trial division
        assert_eq!(
            factor_integer(59048).unwrap().factors(),
            &[(2, 3), (11, 2), (61, 1)]
        );
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 1..5000u64 {
            assert_eq!(
                factor_integer(n).unwrap().factors(),
                trial_oracle(n).as_slice()
            );
        }
    }

    #[test]
    fn large_semiprimes_need_rho() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        let f = factor_integer(p * q).unwrap();
        assert_eq!(f.factors(), &[(q, 1), (p, 1)]);
        let f = factor_integer(1_000_003 * 1_000_033).unwrap();
        assert_eq!(f.factors(), &[(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 20_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &expected) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), expected, "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(18_446_744_073_709_551_557 - 2));
    }

    #[test]
    fn from_factors_merges_and_checks() {
        let f = FactoredInteger::from_factors(&[(3, 1), (2, 2), (3, 1)]).unwrap();
        assert_eq!(f.value(), 36);
        assert_eq!(f.factors(), &[(2, 2), (3, 2)]);
        assert_eq!(
            FactoredInteger::from_factors(&[(4, 1)]),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn field_order_lcm() {
        // lcm(2, 8) = 8 for p = 3
        assert_eq!(lcm_of_field_orders(3, 2).unwrap(), vec![(2, 3)]);
    }
}
