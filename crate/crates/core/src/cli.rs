//! The `residua` command line.
//!
//! Exit codes: 0 success, 1 invalid signature, 2 bad arguments or malformed
//! input, 3 I/O failure, 4 scheme or key mismatch, 5 decryption-domain
//! error, 6 tally overflow, 7 self-test failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::bcp::{self, BcpPublicKey, Mode};
use crate::encoding::{CiphertextFile, FormatError, KeyFile, PublicKey, SecretKey, SignatureFile};
use crate::error::Error;
use crate::paillier::{self, GeneratorChoice};
use crate::scheme::{self, DecryptionKey, EncryptionKey, Scheme};
use crate::selftest;
use crate::signature::{self, WideMessage};
use crate::variants::capability::{self, capability_matrix};
use crate::variants::cost::{self, CostSubject};
use crate::variants::{v1, v2, v3, v4};

pub const SEED_ENV: &str = "RESIDUA_SEED";

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::new(2, message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SchemeMismatch { .. } | Error::KeyMismatch => 4,
            Error::NotCongruentOne
            | Error::NotInvertible
            | Error::CiphertextNotUnit
            | Error::PadLiftExhausted => 5,
            _ => 2,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Invalid(inner) => {
                CliError::usage(format!("inconsistent key material: {inner}"))
            }
            other => CliError::usage(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "residua",
    version,
    about = "Paillier encryption, its variants, signatures and double-trapdoor encryption"
)]
pub struct Cli {
    /// Seed for all randomness; RESIDUA_SEED takes precedence
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Generator {
    Random,
    OnePlusN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MasterMethod {
    Revised,
    Original,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair, or the three bcp key files
    Keygen {
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        #[arg(long, default_value_t = 2048)]
        bits: u64,
        #[arg(long, value_parser = parse_mode, default_value = "revised")]
        mode: Mode,
        /// Public exponent for v4 (decimal)
        #[arg(long)]
        e: Option<BigUint>,
        /// Base choice for paillier
        #[arg(long, value_enum, default_value = "random")]
        generator: Generator,
        /// Output prefix; writes PREFIX.public.json and the secret files
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a decimal plaintext
    Encrypt(EncryptArgs),
    /// Decrypt to a decimal plaintext
    Decrypt(KeyInArgs),
    /// Recover plaintext and pad, printed as m=<dec> r=<dec>
    DecryptFull(KeyInArgs),
    /// Multiply ciphertexts, encrypting the sum of their plaintexts
    Add {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in", required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Raise a ciphertext to a decimal scalar
    Smul {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        scalar: BigUint,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Refresh the pad of a ciphertext
    Rerand {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sign a file (or --message) with a paillier secret key
    Sign {
        #[arg(long)]
        key: PathBuf,
        #[command(flatten)]
        msg: MessageArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exit 0 if the signature is valid, 1 otherwise
    Verify {
        #[arg(long)]
        key: PathBuf,
        #[command(flatten)]
        msg: MessageArgs,
        #[arg(long)]
        sig: PathBuf,
    },
    /// Apply the trapdoor permutation to a decimal m < n^2
    OwtpEnc {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        message: BigUint,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Invert the trapdoor permutation
    OwtpDec(KeyInArgs),
    /// Generate bcp public, user and master key files
    BcpSetup {
        #[arg(long, default_value_t = 2048)]
        bits: u64,
        #[arg(long, value_parser = parse_mode, default_value = "revised")]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt under a bcp public key
    BcpEncrypt(EncryptArgs),
    /// Decrypt with a bcp user key
    BcpDecUser(KeyInArgs),
    /// Decrypt with a bcp master key
    BcpDecMaster {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "revised")]
        method: MasterMethod,
    },
    /// Encrypt each ballot and write their homomorphic sum
    Tally {
        #[arg(long)]
        key: PathBuf,
        /// Comma-separated decimal ballots
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        ballots: Vec<BigUint>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the scheme comparison table
    Capabilities,
    /// Count and time decryptions for every scheme
    Bench {
        #[arg(long, default_value_t = 2048)]
        bits: u64,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Comma-separated subset of subjects
        #[arg(long, value_delimiter = ',', value_parser = parse_subject)]
        schemes: Option<Vec<CostSubject>>,
        /// Records file, one JSON object per line
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the exhaustive small-modulus checks
    Selftest,
}

#[derive(Debug, clap::Args)]
struct EncryptArgs {
    #[arg(long)]
    key: PathBuf,
    #[arg(long)]
    message: BigUint,
    /// Explicit pad (decimal); drawn at random otherwise
    #[arg(long)]
    pad: Option<BigUint>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct KeyInArgs {
    #[arg(long)]
    key: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Debug, clap::Args)]
#[group(required = true, multiple = false)]
struct MessageArgs {
    /// Message file, read as raw bytes
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Message given inline as UTF-8
    #[arg(long)]
    message: Option<String>,
}

fn parse_scheme(s: &str) -> std::result::Result<Scheme, String> {
    s.parse().map_err(|_| format!("unknown scheme `{s}`"))
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|_| format!("unknown mode `{s}`"))
}

fn parse_subject(s: &str) -> std::result::Result<CostSubject, String> {
    s.parse()
        .map_err(|_| format!("unknown bench subject `{s}`"))
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("residua: {}", e.message);
            e.code
        }
    }
}

fn rng_for(seed: Option<u64>) -> CliResult<ChaCha20Rng> {
    let env = match std::env::var(SEED_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<u64>()
                .map_err(|_| CliError::usage(format!("{SEED_ENV} must be a u64")))?,
        ),
        Err(_) => None,
    };
    Ok(match env.or(seed) {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    })
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::new(3, format!("{}: {e}", path.display())))
}

fn write_to(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::new(3, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => write_to(p, text),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes())
                .map_err(|e| CliError::new(3, e.to_string()))
        }
    }
}

fn load_key(path: &Path) -> CliResult<KeyFile> {
    Ok(KeyFile::parse(&read(path)?)?)
}

fn load_ciphertext(path: &Path) -> CliResult<CiphertextFile> {
    Ok(CiphertextFile::parse(&read(path)?)?)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn secret_of(file: KeyFile) -> CliResult<SecretKey> {
    match file {
        KeyFile::Secret(sk) => Ok(sk),
        other => Err(CliError::usage(format!(
            "expected a secret key file, got role `{}`",
            other.role()
        ))),
    }
}

fn bcp_public(pk: &PublicKey) -> CliResult<&BcpPublicKey> {
    match pk {
        PublicKey::Bcp(k) => Ok(k),
        other => Err(Error::SchemeMismatch {
            expected: Scheme::Bcp,
            found: other.scheme(),
        }
        .into()),
    }
}

/// Dispatch over the single-element schemes.
macro_rules! single {
    ($pk:expr, $k:ident => $body:expr, bcp => $bcp:expr) => {
        match $pk {
            PublicKey::Paillier($k) => $body,
            PublicKey::V1($k) => $body,
            PublicKey::V2($k) => $body,
            PublicKey::V3($k) => $body,
            PublicKey::V4($k) => $body,
            PublicKey::Bcp(_) => $bcp,
        }
    };
}

fn encrypt_file(
    pk: &PublicKey,
    m: &BigUint,
    pad: Option<&BigUint>,
    rng: &mut ChaCha20Rng,
) -> CliResult<CiphertextFile> {
    let id = Some(pk.keyid());
    let file = match pk {
        PublicKey::Paillier(k) => CiphertextFile::single(
            &pad_or_random(k, m, pad, rng, |k, m, r| k.encrypt_with_pad(m, r))?,
            id,
        ),
        PublicKey::V1(k) => CiphertextFile::single(
            &pad_or_random(k, m, pad, rng, |k, m, r| k.encrypt_with_pad(m, r))?,
            id,
        ),
        PublicKey::V2(k) => CiphertextFile::single(
            &pad_or_random(k, m, pad, rng, |k, m, r| k.encrypt_with_pad(m, r))?,
            id,
        ),
        PublicKey::V3(k) => CiphertextFile::single(
            &pad_or_random(k, m, pad, rng, |k, m, r| k.encrypt_with_pad(m, r))?,
            id,
        ),
        PublicKey::V4(k) => CiphertextFile::single(
            &pad_or_random(k, m, pad, rng, |k, m, r| k.encrypt_with_pad(m, r))?,
            id,
        ),
        PublicKey::Bcp(k) => CiphertextFile::pair(&k.encrypt(m, pad, rng)?, id),
    };
    Ok(file)
}

fn pad_or_random<K: EncryptionKey>(
    k: &K,
    m: &BigUint,
    pad: Option<&BigUint>,
    rng: &mut ChaCha20Rng,
    with_pad: impl Fn(&K, &BigUint, &BigUint) -> crate::Result<scheme::Ciphertext>,
) -> crate::Result<scheme::Ciphertext> {
    match pad {
        Some(r) => with_pad(k, m, r),
        None => k.encrypt(m, rng),
    }
}

fn add_files(pk: &PublicKey, files: &[CiphertextFile]) -> CliResult<CiphertextFile> {
    let id = Some(pk.keyid());
    single!(pk, k => {
        let mut acc = files[0].bind_single(pk)?;
        for f in &files[1..] {
            acc = scheme::add(k, &acc, &f.bind_single(pk)?)?;
        }
        Ok(CiphertextFile::single(&acc, id))
    }, bcp => {
        let k = bcp_public(pk)?;
        let mut acc = files[0].bind_pair(pk)?;
        for f in &files[1..] {
            acc = bcp::add(k, &acc, &f.bind_pair(pk)?)?;
        }
        Ok(CiphertextFile::pair(&acc, id))
    })
}

fn execute(cli: Cli) -> CliResult<i32> {
    let seed = cli.seed;
    match cli.command {
        Command::Keygen {
            scheme,
            bits,
            mode,
            e,
            generator,
            out,
        } => {
            let mut rng = rng_for(seed)?;
            let files = keygen(scheme, bits, mode, e.as_ref(), generator, &mut rng)?;
            write_key_files(&out, &files)?;
        }
        Command::BcpSetup { bits, mode, out } => {
            let mut rng = rng_for(seed)?;
            let files = keygen(Scheme::Bcp, bits, mode, None, Generator::Random, &mut rng)?;
            write_key_files(&out, &files)?;
        }
        Command::Encrypt(a) => {
            let mut rng = rng_for(seed)?;
            let pk = load_key(&a.key)?.public();
            let file = encrypt_file(&pk, &a.message, a.pad.as_ref(), &mut rng)?;
            emit(a.out.as_deref(), &file.to_file_string())?;
        }
        Command::BcpEncrypt(a) => {
            let mut rng = rng_for(seed)?;
            let pk = load_key(&a.key)?.public();
            bcp_public(&pk)?;
            let file = encrypt_file(&pk, &a.message, a.pad.as_ref(), &mut rng)?;
            emit(a.out.as_deref(), &file.to_file_string())?;
        }
        Command::Decrypt(a) => {
            let key = load_key(&a.key)?;
            let cf = load_ciphertext(&a.input)?;
            let m = match key {
                KeyFile::Secret(sk) => sk.decrypt(&cf.bind_single(&sk.public())?)?,
                KeyFile::BcpUser(pk, uk) => {
                    let c = cf.bind_pair(&PublicKey::Bcp(pk.clone()))?;
                    bcp::dec_user(&pk, &uk, &c)?
                }
                KeyFile::BcpMaster(pk, mk) => {
                    let c = cf.bind_pair(&PublicKey::Bcp(pk.clone()))?;
                    bcp::dec_master_revised(&pk, &mk, &c)?
                }
                KeyFile::Public(_) => {
                    return Err(CliError::usage("decryption needs a secret key file"))
                }
            };
            println!("{m}");
        }
        Command::DecryptFull(a) => {
            let key = load_key(&a.key)?;
            let cf = load_ciphertext(&a.input)?;
            let (m, r) = match key {
                KeyFile::Secret(sk) => sk.decrypt_full(&cf.bind_single(&sk.public())?)?,
                KeyFile::BcpMaster(pk, mk) => {
                    let c = cf.bind_pair(&PublicKey::Bcp(pk.clone()))?;
                    (
                        bcp::dec_master_revised(&pk, &mk, &c)?,
                        bcp::recover_pad(&pk, &mk, &c)?,
                    )
                }
                other => {
                    return Err(CliError::usage(format!(
                        "decrypt-full needs a secret or master key, got role `{}`",
                        other.role()
                    )))
                }
            };
            println!("m={m} r={r}");
        }
        Command::Add { key, inputs, out } => {
            let pk = load_key(&key)?.public();
            let files = inputs
                .iter()
                .map(|p| load_ciphertext(p))
                .collect::<CliResult<Vec<_>>>()?;
            emit(out.as_deref(), &add_files(&pk, &files)?.to_file_string())?;
        }
        Command::Smul {
            key,
            input,
            scalar,
            out,
        } => {
            let pk = load_key(&key)?.public();
            let cf = load_ciphertext(&input)?;
            let id = Some(pk.keyid());
            let file = single!(&pk, k => {
                CiphertextFile::single(&scheme::scalar_mul(k, &cf.bind_single(&pk)?, &scalar)?, id)
            }, bcp => {
                CiphertextFile::pair(&bcp::scalar_mul(bcp_public(&pk)?, &cf.bind_pair(&pk)?, &scalar)?, id)
            });
            emit(out.as_deref(), &file.to_file_string())?;
        }
        Command::Rerand { key, input, out } => {
            let mut rng = rng_for(seed)?;
            let pk = load_key(&key)?.public();
            let cf = load_ciphertext(&input)?;
            let id = Some(pk.keyid());
            let file = single!(&pk, k => {
                CiphertextFile::single(&scheme::rerandomize(k, &cf.bind_single(&pk)?, &mut rng)?, id)
            }, bcp => {
                CiphertextFile::pair(&bcp::rerandomize(bcp_public(&pk)?, &cf.bind_pair(&pk)?, &mut rng)?, id)
            });
            emit(out.as_deref(), &file.to_file_string())?;
        }
        Command::Sign { key, msg, out } => {
            let SecretKey::Paillier(sk) = secret_of(load_key(&key)?)? else {
                return Err(CliError::usage("signing needs a paillier secret key"));
            };
            let sig = signature::sign(&sk, &message_bytes(&msg)?)?;
            emit(
                out.as_deref(),
                &SignatureFile { signature: sig }.to_file_string(),
            )?;
        }
        Command::Verify { key, msg, sig } => {
            let PublicKey::Paillier(pk) = load_key(&key)?.public() else {
                return Err(CliError::usage("verification needs a paillier key"));
            };
            let sig = SignatureFile::parse(&read(&sig)?)?;
            let ok = signature::verify(&pk, &message_bytes(&msg)?, &sig.signature);
            println!("{}", if ok { "valid" } else { "invalid" });
            return Ok(if ok { 0 } else { 1 });
        }
        Command::OwtpEnc { key, message, out } => {
            let PublicKey::Paillier(pk) = load_key(&key)?.public() else {
                return Err(CliError::usage("the permutation needs a paillier key"));
            };
            let w = WideMessage::new(message, pk.modulus())?;
            let c = signature::owtp_forward(&pk, &w)?;
            let id = Some(PublicKey::Paillier(pk).keyid());
            emit(
                out.as_deref(),
                &CiphertextFile::single(&c, id).to_file_string(),
            )?;
        }
        Command::OwtpDec(a) => {
            let SecretKey::Paillier(sk) = secret_of(load_key(&a.key)?)? else {
                return Err(CliError::usage(
                    "the permutation needs a paillier secret key",
                ));
            };
            let pk = PublicKey::Paillier(sk.public().clone());
            let c = load_ciphertext(&a.input)?.bind_single(&pk)?;
            let w = signature::owtp_inverse(&sk, &c)?;
            println!("m={} m1={} m2={}", w.value(), w.m1(), w.m2());
        }
        Command::BcpDecUser(a) => {
            let KeyFile::BcpUser(pk, uk) = load_key(&a.key)? else {
                return Err(CliError::usage("expected a bcp user key file"));
            };
            let c = load_ciphertext(&a.input)?.bind_pair(&PublicKey::Bcp(pk.clone()))?;
            println!("{}", bcp::dec_user(&pk, &uk, &c)?);
        }
        Command::BcpDecMaster { key, input, method } => {
            let KeyFile::BcpMaster(pk, mk) = load_key(&key)? else {
                return Err(CliError::usage("expected a bcp master key file"));
            };
            let c = load_ciphertext(&input)?.bind_pair(&PublicKey::Bcp(pk.clone()))?;
            let m = match method {
                MasterMethod::Revised => bcp::dec_master_revised(&pk, &mk, &c)?,
                MasterMethod::Original => bcp::dec_master_original(&pk, &mk, &c)?,
            };
            println!("{m}");
        }
        Command::Tally { key, ballots, out } => {
            let mut rng = rng_for(seed)?;
            let pk = load_key(&key)?.public();
            let n = pk.modulus().n();
            let total: BigUint = ballots.iter().sum();
            if &total >= n {
                return Err(CliError::new(
                    6,
                    "ballot total reaches n; the aggregate would wrap",
                ));
            }
            let agg = if ballots.is_empty() {
                encrypt_file(&pk, &BigUint::default(), None, &mut rng)?
            } else {
                let files = ballots
                    .iter()
                    .map(|v| encrypt_file(&pk, v, None, &mut rng))
                    .collect::<CliResult<Vec<_>>>()?;
                add_files(&pk, &files)?
            };
            emit(out.as_deref(), &agg.to_file_string())?;
        }
        Command::Capabilities => {
            print!("{}", capability::render(&capability_matrix()));
        }
        Command::Bench {
            bits,
            trials,
            schemes,
            out,
        } => {
            let mut rng = rng_for(seed)?;
            let subjects = schemes.unwrap_or_else(|| CostSubject::ALL.to_vec());
            let records = cost::modexp_cost_report(&subjects, bits, trials, &mut rng)?;
            print!("{}", cost::render_table(&records));
            if let Some(p) = out {
                write_to(&p, &cost::render_records(&records))?;
            }
        }
        Command::Selftest => {
            let (checks, elapsed) = selftest::run_timed();
            let mut failed = 0;
            for c in &checks {
                if c.passed {
                    println!("PASS {}", c.name);
                } else {
                    failed += 1;
                    println!("FAIL {}: {}", c.name, c.detail);
                }
            }
            println!(
                "{} checks, {failed} failed, {:.2}s",
                checks.len(),
                elapsed.as_secs_f64()
            );
            return Ok(if failed == 0 { 0 } else { 7 });
        }
    }
    Ok(0)
}

fn message_bytes(m: &MessageArgs) -> CliResult<Vec<u8>> {
    match (&m.input, &m.message) {
        (Some(p), _) => fs::read(p).map_err(|e| CliError::new(3, format!("{}: {e}", p.display()))),
        (None, Some(s)) => Ok(s.as_bytes().to_vec()),
        (None, None) => Err(CliError::usage("give --in or --message")),
    }
}

fn keygen(
    scheme: Scheme,
    bits: u64,
    mode: Mode,
    e: Option<&BigUint>,
    generator: Generator,
    rng: &mut ChaCha20Rng,
) -> CliResult<Vec<(&'static str, KeyFile)>> {
    let pair = |pk: PublicKey, sk: SecretKey| {
        vec![
            ("public", KeyFile::Public(pk)),
            ("secret", KeyFile::Secret(sk)),
        ]
    };
    Ok(match scheme {
        Scheme::Paillier => {
            let choice = match generator {
                Generator::Random => GeneratorChoice::Random,
                Generator::OnePlusN => GeneratorChoice::OnePlusN,
            };
            let (pk, sk) = paillier::keygen(bits, choice, rng)?;
            pair(PublicKey::Paillier(pk), SecretKey::Paillier(sk))
        }
        Scheme::V1 => {
            let (pk, sk) = v1::keygen(bits, rng)?;
            pair(PublicKey::V1(pk), SecretKey::V1(sk))
        }
        Scheme::V2 => {
            let (pk, sk) = v2::keygen(bits, rng)?;
            pair(PublicKey::V2(pk), SecretKey::V2(sk))
        }
        Scheme::V3 => {
            let (pk, sk) = v3::keygen(bits, rng)?;
            pair(PublicKey::V3(pk), SecretKey::V3(sk))
        }
        Scheme::V4 => {
            let (pk, sk) = v4::keygen(bits, e, rng)?;
            pair(PublicKey::V4(pk), SecretKey::V4(sk))
        }
        Scheme::Bcp => {
            let (pk, uk, mk) = bcp::setup(bits, mode, rng)?;
            vec![
                ("public", KeyFile::Public(PublicKey::Bcp(pk.clone()))),
                ("user", KeyFile::BcpUser(pk.clone(), uk)),
                ("master", KeyFile::BcpMaster(pk, mk)),
            ]
        }
    })
}

fn write_key_files(prefix: &Path, files: &[(&str, KeyFile)]) -> CliResult<()> {
    for (role, f) in files {
        let path = with_suffix(prefix, &format!(".{role}.json"));
        write_to(&path, &f.to_file_string())?;
        println!("{}", path.display());
    }
    Ok(())
}
