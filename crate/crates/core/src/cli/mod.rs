//! The `morlab` command line.

pub mod artifact;
pub mod bench;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub use artifact::{parse_artifact, write_artifact, Artifact, ArtifactKind};
pub use bench::{bench_suite, BenchConfig, BenchReport, BenchRow, Suite};

use crate::aut::{AutPlatform, Platform};
use crate::cryptanalysis::{
    central_aut_attack, menezes_wu_dlog, pohlig_hellman, unipotent_dlog, DlogAnswer, DlogInstance,
};
use crate::error::{Error, Result};
use crate::field::{factor_integer, is_irreducible, mult_order, PrimeModulus};
use crate::matrix::char_poly;
use crate::protocol::{
    decode_message, encode_message, mor_decrypt, mor_encrypt, mor_keygen_with, KeyKind,
    KeygenOptions, MorPublicKey,
};
use crate::rng::seeded;

#[derive(Debug, Parser)]
#[command(name = "morlab", version, about = "MOR cryptosystem toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlatformArg {
    Extraspecial,
    Elementary,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WeakArg {
    Central,
    Unipotent,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AttackKind {
    Central,
    MenezesWu,
    Unipotent,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Expo,
    Protocol,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair.
    Keygen {
        #[arg(long, value_enum)]
        platform: PlatformArg,
        #[arg(long)]
        p: u64,
        #[arg(long, required_if_eq("platform", "extraspecial"), conflicts_with = "d")]
        n: Option<usize>,
        #[arg(long, required_if_eq("platform", "elementary"))]
        d: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "priv")]
        private: PathBuf,
        /// Deliberately weak automorphism class, for exercising attacks.
        #[arg(long, value_enum)]
        weak: Option<WeakArg>,
        /// Plant this private exponent instead of sampling one.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Encrypt the bytes of a file.
    Encrypt {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decrypt a ciphertext file.
    Decrypt {
        #[arg(long = "priv")]
        private: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover the private exponent of a public key, or the ephemeral exponent
    /// of a ciphertext with --target.
    Attack {
        #[arg(long, value_enum)]
        kind: AttackKind,
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Discrete logarithm in F_p^*.
    Dlog {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        h: u64,
    },
    /// Describe a public key.
    Inspect {
        #[arg(long = "pub")]
        public: PathBuf,
    },
    /// Timing comparisons.
    Bench {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
    },
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_class()
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, data: &[u8]) -> Result<()> {
    fs::write(path, data).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path, kind: ArtifactKind) -> Result<Artifact> {
    let artifact = parse_artifact(&read_text(path)?)?;
    if artifact.kind() != kind {
        return Err(Error::Format(format!(
            "{} holds a {} artifact, expected {}",
            path.display(),
            artifact.kind().tag(),
            kind.tag()
        )));
    }
    Ok(artifact)
}

fn load_public(path: &Path) -> Result<MorPublicKey> {
    match load(path, ArtifactKind::Public)? {
        Artifact::Public(key) => Ok(key),
        _ => unreachable!("kind checked"),
    }
}

fn rng_for(seed: Option<u64>) -> crate::rng::MorRng {
    seeded(seed.unwrap_or_else(rand::random))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Keygen {
            platform,
            p,
            n,
            d,
            seed,
            public,
            private,
            weak,
            m,
        } => {
            let platform = match platform {
                PlatformArg::Extraspecial => Platform::extraspecial(p, n.unwrap_or(1))?,
                PlatformArg::Elementary => Platform::elementary(p, d.unwrap_or(1))?,
            };
            let options = KeygenOptions {
                kind: match weak {
                    None => KeyKind::Standard,
                    Some(WeakArg::Central) => KeyKind::Central,
                    Some(WeakArg::Unipotent) => KeyKind::Unipotent,
                },
                forced_m: m,
            };
            let (pk, sk) = mor_keygen_with(platform, options, &mut rng_for(seed))?;
            write_file(&public, write_artifact(&Artifact::Public(pk)).as_bytes())?;
            write_file(
                &private,
                write_artifact(&Artifact::Private(sk.clone())).as_bytes(),
            )?;
            writeln!(
                out,
                "generated {platform} key, order(phi) = {}",
                sk.order_phi
            )?;
        }
        Command::Encrypt {
            public,
            input,
            out: path,
            seed,
        } => {
            let key = load_public(&public)?;
            let bytes =
                fs::read(&input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
            let message = encode_message(&bytes, key.platform)?;
            let ct = mor_encrypt(&key, &message, &mut rng_for(seed))?;
            write_file(&path, write_artifact(&Artifact::Ciphertext(ct)).as_bytes())?;
        }
        Command::Decrypt {
            private,
            input,
            out: path,
        } => {
            let Artifact::Private(key) = load(&private, ArtifactKind::Private)? else {
                unreachable!("kind checked")
            };
            let Artifact::Ciphertext(ct) = load(&input, ArtifactKind::Ciphertext)? else {
                unreachable!("kind checked")
            };
            let message = mor_decrypt(&key, &ct)?;
            write_file(&path, &decode_message(&message, key.platform)?)?;
        }
        Command::Attack {
            kind,
            public,
            target,
        } => {
            let key = load_public(&public)?;
            let (label, goal) = match target {
                None => ("m", key.phi_m.clone()),
                Some(path) => {
                    let Artifact::Ciphertext(ct) = load(&path, ArtifactKind::Ciphertext)? else {
                        unreachable!("kind checked")
                    };
                    ("r", ct.phi_r)
                }
            };
            let answer = attack(kind, &key, &goal)?;
            writeln!(out, "{}", answer.to_string().replacen('m', label, 1))?;
        }
        Command::Dlog { p, g, h } => {
            let m = PrimeModulus::new(p)?;
            let (g, h) = (m.elem(g), m.elem(h));
            if g.is_zero() || h.is_zero() {
                return Err(Error::InvalidArgument(
                    "g and h must be nonzero mod p".into(),
                ));
            }
            let ord = mult_order(&g, &factor_integer(p - 1)?)?;
            let answer = pohlig_hellman(&DlogInstance::new(g, h, factor_integer(ord)?))?;
            writeln!(out, "{answer}")?;
        }
        Command::Inspect { public } => {
            let key = load_public(&public)?;
            writeln!(out, "{}", inspect(&key)?)?;
        }
        Command::Bench {
            suite,
            sizes,
            reps,
            seed,
            p,
        } => {
            let mut config = match suite {
                SuiteArg::Expo => BenchConfig::expo(),
                SuiteArg::Protocol => BenchConfig::protocol(),
            };
            if let Some(sizes) = sizes {
                config.sizes = sizes;
            }
            if let Some(reps) = reps {
                config.reps = reps;
            }
            if let Some(seed) = seed {
                config.seed = seed;
            }
            if let Some(p) = p {
                config.p = p;
            }
            let report = bench_suite(&config)?;
            write!(out, "{}\n{}", report.table(), report.machine_rows())?;
        }
    }
    Ok(())
}

fn attack(kind: AttackKind, key: &MorPublicKey, goal: &AutPlatform) -> Result<DlogAnswer> {
    match kind {
        AttackKind::Central => central_aut_attack(&MorPublicKey {
            phi_m: goal.clone(),
            ..key.clone()
        }),
        AttackKind::MenezesWu => menezes_wu_dlog(key.phi.matrix(), goal.matrix()),
        AttackKind::Unipotent => unipotent_dlog(key.phi.matrix(), goal.matrix()),
    }
}

/// Platform, `chi_phi`, irreducibility verdict and order of `phi`.
pub fn inspect(key: &MorPublicKey) -> Result<String> {
    let chi = char_poly(key.phi.matrix());
    let irreducible = is_irreducible(&chi)?;
    let order = key.phi.order()?;
    let mut lines = vec![
        format!("platform: {}", key.platform),
        format!("chi_phi: {chi}"),
        format!("irreducible: {}", if irreducible { "yes" } else { "no" }),
        format!("order: {order}"),
    ];
    if let AutPlatform::ExtraSpecial(phi) = &key.phi {
        lines.push(format!(
            "inner: {}",
            if phi.is_inner() { "yes" } else { "no" }
        ));
    }
    Ok(lines.join("\n"))
}
