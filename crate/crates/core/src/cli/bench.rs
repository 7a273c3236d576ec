//! Wall-clock comparisons: naive vs. Leedham-Green matrix powers, and MOR vs.
//! ElGamal at a matched group size.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use rand::Rng;

use crate::aut::Platform;
use crate::error::{Error, Result};
use crate::field::{factor_integer, is_prime, mult_order, random_irreducible, PrimeModulus};
use crate::matrix::{companion, mat_pow_lg, mat_pow_naive};
use crate::protocol::{
    elgamal_decrypt, elgamal_encrypt, elgamal_keygen, mor_decrypt, mor_encrypt, mor_keygen,
};
use crate::rng::{random_exponent, seeded};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Expo,
    Protocol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub suite: Suite,
    /// Matrix dimensions `d` (expo) or extra-special ranks `n` (protocol).
    pub sizes: Vec<usize>,
    pub p: u64,
    pub bits: u64,
    pub reps: usize,
    pub seed: u64,
}

impl BenchConfig {
    pub fn expo() -> Self {
        Self {
            suite: Suite::Expo,
            sizes: vec![4, 8, 16],
            p: 13,
            bits: 256,
            reps: 5,
            seed: 0,
        }
    }

    pub fn protocol() -> Self {
        Self {
            suite: Suite::Protocol,
            sizes: vec![1, 2, 3],
            p: 31,
            bits: 0,
            reps: 5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub op: String,
    pub params: String,
    pub bits: u64,
    pub reps: usize,
    pub median_ns: u128,
    pub baseline: String,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<16} {:<22} {:>5} {:>5} {:>14} {:<16} {:>8}\n",
            "op", "params", "bits", "reps", "median_ns", "baseline", "ratio"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<16} {:<22} {:>5} {:>5} {:>14} {:<16} {:>8.3}",
                r.op, r.params, r.bits, r.reps, r.median_ns, r.baseline, r.ratio
            );
        }
        out
    }

    /// One `row,<op>,<params>,<bits>,<reps>,<median_ns>,<baseline>,<ratio>`
    /// line per measurement.
    pub fn machine_rows(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "row,{},{},{},{},{},{},{:.6}",
                r.op, r.params, r.bits, r.reps, r.median_ns, r.baseline, r.ratio
            );
        }
        out
    }
}

fn median_ns<T>(reps: usize, mut f: impl FnMut() -> Result<T>) -> Result<u128> {
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        std::hint::black_box(f()?);
        times.push(start.elapsed().as_nanos());
    }
    times.sort_unstable();
    Ok(times[times.len() / 2])
}

fn ratio(x: u128, base: u128) -> f64 {
    x as f64 / base.max(1) as f64
}

pub fn bench_suite(config: &BenchConfig) -> Result<BenchReport> {
    if config.reps == 0 {
        return Err(Error::InvalidArgument("reps must be >= 1".into()));
    }
    match config.suite {
        Suite::Expo => expo(config),
        Suite::Protocol => protocol(config),
    }
}

fn expo(config: &BenchConfig) -> Result<BenchReport> {
    let m = PrimeModulus::new(config.p)?;
    let mut rng = seeded(config.seed);
    let mut report = BenchReport::default();
    for &d in &config.sizes {
        let g = companion(&random_irreducible(d, m, &mut rng)?)?;
        let e = random_exponent(&mut rng, config.bits);
        if mat_pow_lg(&g, &e)? != mat_pow_naive(&g, &e) {
            return Err(Error::Internal(format!(
                "correctness gate failed: exponentiation paths disagree at d = {d}"
            )));
        }
        let naive = median_ns(config.reps, || Ok(mat_pow_naive(&g, &e)))?;
        let lg = median_ns(config.reps, || mat_pow_lg(&g, &e))?;
        let params = format!("p={},d={d}", config.p);
        report.rows.push(BenchRow {
            op: "mat_pow_naive".into(),
            params: params.clone(),
            bits: config.bits,
            reps: config.reps,
            median_ns: naive,
            baseline: "mat_pow_naive".into(),
            ratio: 1.0,
        });
        report.rows.push(BenchRow {
            op: "mat_pow_lg".into(),
            params,
            bits: config.bits,
            reps: config.reps,
            median_ns: lg,
            baseline: "mat_pow_naive".into(),
            ratio: ratio(lg, naive),
        });
    }
    Ok(report)
}

/// Largest prime below `2^bits` together with a primitive root.
fn elgamal_group(bits: u32) -> Result<(PrimeModulus, u64)> {
    let bits = bits.clamp(3, 62);
    let mut q = (1u64 << bits) - 1;
    while !is_prime(q) {
        q -= 2;
    }
    let p = PrimeModulus::new(q)?;
    let order = factor_integer(q - 1)?;
    let g = (2..q)
        .find(|&g| {
            mult_order(&p.elem(g), &order)
                .map(|o| o == q - 1)
                .unwrap_or(false)
        })
        .ok_or_else(|| Error::Internal(format!("no primitive root mod {q}")))?;
    Ok((p, g))
}

fn protocol(config: &BenchConfig) -> Result<BenchReport> {
    let mut rng = seeded(config.seed);
    let mut report = BenchReport::default();
    for &n in &config.sizes {
        let platform = Platform::extraspecial(config.p, n)?;
        let group_bits = BigUint::from(config.p).pow(platform.digits() as u32).bits();
        let (q, g) = elgamal_group(group_bits as u32)?;
        let (public, private) = mor_keygen(platform, &mut rng)?;
        let eg = elgamal_keygen(q, g, &mut rng)?;
        let a = platform.random_element(&mut rng);
        let ct = mor_encrypt(&public, &a, &mut rng)?;
        if mor_decrypt(&private, &ct)? != a {
            return Err(Error::Internal(
                "correctness gate failed: MOR roundtrip".into(),
            ));
        }
        let msg = rng.gen_range(1..q.value());
        let eg_ct = elgamal_encrypt(&eg.public, msg, &mut rng)?;
        if elgamal_decrypt(&eg, &eg_ct)? != msg {
            return Err(Error::Internal(
                "correctness gate failed: ElGamal roundtrip".into(),
            ));
        }

        let mut enc_rng = seeded(config.seed ^ 0x5eed);
        let mor_enc = median_ns(config.reps, || mor_encrypt(&public, &a, &mut enc_rng))?;
        let mor_dec = median_ns(config.reps, || mor_decrypt(&private, &ct))?;
        let eg_enc = median_ns(config.reps, || {
            elgamal_encrypt(&eg.public, msg, &mut enc_rng)
        })?;
        let eg_dec = median_ns(config.reps, || elgamal_decrypt(&eg, &eg_ct))?;

        let mor_params = format!("p={},n={n}", config.p);
        let eg_params = format!("q={}", q.value());
        let bits = group_bits;
        for (op, params, t, baseline, base_t) in [
            (
                "elgamal_encrypt",
                &eg_params,
                eg_enc,
                "elgamal_encrypt",
                eg_enc,
            ),
            (
                "mor_encrypt",
                &mor_params,
                mor_enc,
                "elgamal_encrypt",
                eg_enc,
            ),
            (
                "elgamal_decrypt",
                &eg_params,
                eg_dec,
                "elgamal_decrypt",
                eg_dec,
            ),
            (
                "mor_decrypt",
                &mor_params,
                mor_dec,
                "elgamal_decrypt",
                eg_dec,
            ),
        ] {
            report.rows.push(BenchRow {
                op: op.into(),
                params: params.clone(),
                bits,
                reps: config.reps,
                median_ns: t,
                baseline: baseline.into(),
                ratio: ratio(t, base_t),
            });
        }
    }
    Ok(report)
}
