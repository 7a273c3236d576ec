//! Versioned text files for keys and ciphertexts.
//!
//! ```text
//! MOR-PUBLIC v1
//! platform: extraspecial
//! p: 5
//! n: 1
//! phi.M: 0 4 1 0
//! phi.v: 2 3
//! phi.zeta: 1
//! phi_m.M: ...
//! ```
//!
//! Matrices are row-major, all numbers decimal and reduced. Elementary
//! platforms carry `d:` instead of `n:` and only a `.M` line per map.
//! Private keys append `m:` and `order:`, ciphertexts `payload:` (digits in
//! normal-form order).

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::aut::{AutPlatform, EsAut, GroupElement, Platform};
use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::protocol::{MorCiphertext, MorPrivateKey, MorPublicKey};

pub const VERSION: &str = "v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArtifactKind {
    Public,
    Private,
    Ciphertext,
}

impl ArtifactKind {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Public => "MOR-PUBLIC",
            Self::Private => "MOR-PRIVATE",
            Self::Ciphertext => "MOR-CT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Artifact {
    Public(MorPublicKey),
    Private(MorPrivateKey),
    Ciphertext(MorCiphertext),
}

impl Artifact {
    pub fn kind(&self) -> ArtifactKind {
        match self {
            Self::Public(_) => ArtifactKind::Public,
            Self::Private(_) => ArtifactKind::Private,
            Self::Ciphertext(_) => ArtifactKind::Ciphertext,
        }
    }
}

fn join(xs: impl IntoIterator<Item = u64>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_platform(out: &mut String, platform: Platform) {
    match platform {
        Platform::ExtraSpecial(params) => {
            let _ = writeln!(out, "platform: extraspecial");
            let _ = writeln!(out, "p: {}", params.modulus());
            let _ = writeln!(out, "n: {}", params.n());
        }
        Platform::Elementary { p, d } => {
            let _ = writeln!(out, "platform: elementary");
            let _ = writeln!(out, "p: {p}");
            let _ = writeln!(out, "d: {d}");
        }
    }
}

fn write_aut(out: &mut String, name: &str, phi: &AutPlatform) {
    let m = phi.matrix();
    let _ = writeln!(out, "{name}.M: {}", join(m.rows().into_iter().flatten()));
    if let AutPlatform::ExtraSpecial(es) = phi {
        let _ = writeln!(out, "{name}.v: {}", join(es.offsets().iter().copied()));
        let _ = writeln!(out, "{name}.zeta: {}", es.zeta().value());
    }
}

pub fn write_artifact(artifact: &Artifact) -> String {
    let mut out = format!("{} {VERSION}\n", artifact.kind().tag());
    match artifact {
        Artifact::Public(key) => {
            write_platform(&mut out, key.platform);
            write_aut(&mut out, "phi", &key.phi);
            write_aut(&mut out, "phi_m", &key.phi_m);
        }
        Artifact::Private(key) => {
            write_platform(&mut out, key.platform);
            write_aut(&mut out, "phi", &key.phi);
            let _ = writeln!(out, "m: {}", key.m);
            let _ = writeln!(out, "order: {}", key.order_phi);
        }
        Artifact::Ciphertext(ct) => {
            write_platform(&mut out, ct.phi_r.platform());
            write_aut(&mut out, "phi_r", &ct.phi_r);
            let _ = writeln!(out, "payload: {}", join(ct.payload.digits()));
        }
    }
    out
}

struct Lines<'a> {
    iter: std::str::Lines<'a>,
}

impl<'a> Lines<'a> {
    fn field(&mut self, key: &str) -> Result<&'a str> {
        let line = self
            .iter
            .next()
            .ok_or_else(|| Error::Format(format!("truncated: missing '{key}'")))?;
        match line.split_once(": ") {
            Some((k, v)) if k == key => Ok(v),
            _ => Err(Error::Format(format!(
                "expected '{key}: ...', found '{line}'"
            ))),
        }
    }

    fn number(&mut self, key: &str) -> Result<u64> {
        parse_number(self.field(key)?, key)
    }

    fn numbers(&mut self, key: &str, count: usize, bound: u64) -> Result<Vec<u64>> {
        let raw = self.field(key)?;
        let xs = raw
            .split(' ')
            .map(|s| parse_number(s, key))
            .collect::<Result<Vec<_>>>()?;
        if xs.len() != count {
            return Err(Error::Format(format!(
                "'{key}' needs {count} entries, found {}",
                xs.len()
            )));
        }
        if let Some(x) = xs.iter().find(|&&x| x >= bound) {
            return Err(Error::Format(format!(
                "'{key}' entry {x} is not reduced mod {bound}"
            )));
        }
        Ok(xs)
    }
}

fn parse_number(s: &str, key: &str) -> Result<u64> {
    let canonical =
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
    if !canonical {
        return Err(Error::Format(format!("'{key}' has malformed number '{s}'")));
    }
    s.parse()
        .map_err(|_| Error::Format(format!("'{key}' value '{s}' out of range")))
}

fn parse_platform(lines: &mut Lines<'_>) -> Result<Platform> {
    let kind = lines.field("platform")?;
    let p = lines.number("p")?;
    match kind {
        "extraspecial" => Platform::extraspecial(p, lines.number("n")? as usize),
        "elementary" => Platform::elementary(p, lines.number("d")? as usize),
        other => Err(Error::Format(format!("unknown platform '{other}'"))),
    }
}

fn parse_aut(lines: &mut Lines<'_>, name: &str, platform: Platform) -> Result<AutPlatform> {
    let p = platform.modulus();
    let dim = platform.generator_count();
    let entries = lines.numbers(&format!("{name}.M"), dim * dim, p.value())?;
    let m = MatrixFp::new(p, dim, entries)?;
    match platform {
        Platform::ExtraSpecial(params) => {
            let v = lines.numbers(&format!("{name}.v"), dim, p.value())?;
            let zeta = lines.numbers(&format!("{name}.zeta"), 1, p.value())?[0];
            Ok(AutPlatform::ExtraSpecial(EsAut::validate(
                m, v, zeta, params,
            )?))
        }
        Platform::Elementary { .. } => AutPlatform::elementary(m),
    }
}

/// Parses and revalidates every invariant of the artifact.
pub fn parse_artifact(text: &str) -> Result<Artifact> {
    let mut lines = Lines { iter: text.lines() };
    let header = lines
        .iter
        .next()
        .ok_or_else(|| Error::Format("empty artifact".into()))?;
    let (tag, version) = header
        .split_once(' ')
        .ok_or_else(|| Error::Format(format!("bad header '{header}'")))?;
    let kind = [
        ArtifactKind::Public,
        ArtifactKind::Private,
        ArtifactKind::Ciphertext,
    ]
    .into_iter()
    .find(|k| k.tag() == tag)
    .ok_or_else(|| Error::Format(format!("unknown artifact kind '{tag}'")))?;
    if version != VERSION {
        return Err(Error::Version(format!("{tag} {version}")));
    }
    let platform = parse_platform(&mut lines)?;
    let artifact = match kind {
        ArtifactKind::Public => {
            let phi = parse_aut(&mut lines, "phi", platform)?;
            let phi_m = parse_aut(&mut lines, "phi_m", platform)?;
            Artifact::Public(MorPublicKey {
                platform,
                phi,
                phi_m,
            })
        }
        ArtifactKind::Private => {
            let phi = parse_aut(&mut lines, "phi", platform)?;
            let m = lines.number("m")?;
            let order_phi = lines.number("order")?;
            if order_phi == 0 || !phi.pow(&BigUint::from(order_phi))?.is_identity() {
                return Err(Error::Format(format!(
                    "invariant violated: phi^{order_phi} is not the identity"
                )));
            }
            if m == 0 || m >= order_phi {
                return Err(Error::Format(format!(
                    "invariant violated: m = {m} outside [1, {}]",
                    order_phi.saturating_sub(1)
                )));
            }
            Artifact::Private(MorPrivateKey {
                platform,
                phi,
                m,
                order_phi,
            })
        }
        ArtifactKind::Ciphertext => {
            let phi_r = parse_aut(&mut lines, "phi_r", platform)?;
            let digits = lines.numbers("payload", platform.digits(), platform.modulus().value())?;
            let payload: GroupElement = platform.element_from_digits(&digits)?;
            Artifact::Ciphertext(MorCiphertext { phi_r, payload })
        }
    };
    if let Some(extra) = lines.iter.next() {
        return Err(Error::Format(format!("unexpected trailing line '{extra}'")));
    }
    if !text.ends_with('\n') {
        return Err(Error::Format("missing trailing newline".into()));
    }
    Ok(artifact)
}
