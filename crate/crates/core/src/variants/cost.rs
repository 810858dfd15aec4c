//! Decryption cost by instrumented operation counts and wall time.

use std::fmt::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigUint, RandBigInt};
use rand::Rng;
use serde_json::{json, Value};

use crate::bcp::{self, Mode};
use crate::error::{Error, Result};
use crate::numtheory::{count_ops, OpCounts};
use crate::paillier::{self, GeneratorChoice};
use crate::scheme::{Ciphertext, DecryptionKey, EncryptionKey};
use crate::variants::{v1, v2, v3, v4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostSubject {
    Paillier,
    V1,
    V2,
    V3,
    V4,
    BcpUser,
    BcpMasterRevised,
    BcpMasterOriginal,
}

impl CostSubject {
    pub const ALL: [CostSubject; 8] = [
        CostSubject::Paillier,
        CostSubject::V1,
        CostSubject::V2,
        CostSubject::V3,
        CostSubject::V4,
        CostSubject::BcpUser,
        CostSubject::BcpMasterRevised,
        CostSubject::BcpMasterOriginal,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CostSubject::Paillier => "paillier",
            CostSubject::V1 => "v1",
            CostSubject::V2 => "v2",
            CostSubject::V3 => "v3",
            CostSubject::V4 => "v4",
            CostSubject::BcpUser => "v5-bcp-user",
            CostSubject::BcpMasterRevised => "bcp-master-revised",
            CostSubject::BcpMasterOriginal => "bcp-master-original",
        }
    }
}

impl fmt::Display for CostSubject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CostSubject {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CostSubject::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or(Error::InvalidParameter("unknown cost subject"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostRecord {
    pub subject: CostSubject,
    pub key_bits: u64,
    pub trials: usize,
    pub pows_mod_n_sq: usize,
    pub pows_mod_n: usize,
    pub inversions_mod_n_sq: usize,
    pub inversions_mod_n: usize,
    /// Whether every trial produced the same counts.
    pub counts_stable: bool,
    pub samples_ns: Vec<u128>,
}

impl CostRecord {
    pub fn median_ns(&self) -> u128 {
        let mut s = self.samples_ns.clone();
        s.sort_unstable();
        match s.len() {
            0 => 0,
            k if k % 2 == 1 => s[k / 2],
            k => (s[k / 2 - 1] + s[k / 2]) / 2,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "scheme": self.subject.id(),
            "key_bits": self.key_bits,
            "trials": self.trials,
            "pows_mod_n2": self.pows_mod_n_sq,
            "pows_mod_n": self.pows_mod_n,
            "inversions_mod_n2": self.inversions_mod_n_sq,
            "inversions_mod_n": self.inversions_mod_n,
            "counts_stable": self.counts_stable,
            "median_ns": self.median_ns() as u64,
        })
    }
}

/// Generates one key per subject and times `trials` decryptions of random
/// plaintexts. Only the decryption call is counted and timed.
pub fn modexp_cost_report<R: Rng + ?Sized>(
    subjects: &[CostSubject],
    key_bits: u64,
    trials: usize,
    rng: &mut R,
) -> Result<Vec<CostRecord>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive"));
    }
    subjects
        .iter()
        .map(|&s| measure(s, key_bits, trials, rng))
        .collect()
}

fn measure<R: Rng + ?Sized>(
    subject: CostSubject,
    key_bits: u64,
    trials: usize,
    rng: &mut R,
) -> Result<CostRecord> {
    let runner = Runner::new(subject, key_bits, rng)?;
    let mut first: Option<OpCounts> = None;
    let mut stable = true;
    let mut samples = Vec::with_capacity(trials);
    let mut n = BigUint::default();
    for _ in 0..trials {
        let job = runner.prepare(rng)?;
        let start = Instant::now();
        let (out, counts) = count_ops(|| runner.run(&job));
        samples.push(start.elapsed().as_nanos());
        out?;
        n = runner.n().clone();
        match &first {
            None => first = Some(counts),
            Some(f) => stable &= *f == counts,
        }
    }
    let counts = first.unwrap_or_default();
    let n_sq = &n * &n;
    Ok(CostRecord {
        subject,
        key_bits,
        trials,
        pows_mod_n_sq: counts.pows_mod(&n_sq),
        pows_mod_n: counts.pows_mod(&n),
        inversions_mod_n_sq: counts.inversions_mod(&n_sq),
        inversions_mod_n: counts.inversions_mod(&n),
        counts_stable: stable,
        samples_ns: samples,
    })
}

enum Runner {
    Paillier(paillier::PaillierSecretKey),
    V1(v1::V1SecretKey),
    V2(v2::V2SecretKey),
    V3(v3::V3SecretKey),
    V4(v4::V4SecretKey),
    Bcp {
        subject: CostSubject,
        pk: bcp::BcpPublicKey,
        uk: bcp::BcpUserKey,
        mk: bcp::BcpMasterKey,
    },
}

enum Job {
    Single(Ciphertext),
    Double(bcp::BcpCiphertext),
}

impl Runner {
    fn new<R: Rng + ?Sized>(subject: CostSubject, bits: u64, rng: &mut R) -> Result<Self> {
        Ok(match subject {
            CostSubject::Paillier => {
                Runner::Paillier(paillier::keygen(bits, GeneratorChoice::Random, rng)?.1)
            }
            CostSubject::V1 => Runner::V1(v1::keygen(bits, rng)?.1),
            CostSubject::V2 => Runner::V2(v2::keygen(bits, rng)?.1),
            CostSubject::V3 => Runner::V3(v3::keygen(bits, rng)?.1),
            CostSubject::V4 => Runner::V4(v4::keygen(bits, None, rng)?.1),
            CostSubject::BcpUser
            | CostSubject::BcpMasterRevised
            | CostSubject::BcpMasterOriginal => {
                let mode = if subject == CostSubject::BcpMasterOriginal {
                    Mode::Original
                } else {
                    Mode::Revised
                };
                let (pk, uk, mk) = bcp::setup(bits, mode, rng)?;
                Runner::Bcp {
                    subject,
                    pk,
                    uk,
                    mk,
                }
            }
        })
    }

    fn n(&self) -> &BigUint {
        match self {
            Runner::Paillier(k) => k.public().modulus().n(),
            Runner::V1(k) => k.public().modulus().n(),
            Runner::V2(k) => k.public().modulus().n(),
            Runner::V3(k) => k.public().modulus().n(),
            Runner::V4(k) => k.public().modulus().n(),
            Runner::Bcp { pk, .. } => pk.n(),
        }
    }

    fn prepare<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Job> {
        let m = rng.gen_biguint_below(self.n());
        Ok(match self {
            Runner::Paillier(k) => Job::Single(k.public().encrypt(&m, rng)?),
            Runner::V1(k) => Job::Single(k.public().encrypt(&m, rng)?),
            Runner::V2(k) => Job::Single(k.public().encrypt(&m, rng)?),
            Runner::V3(k) => Job::Single(k.public().encrypt(&m, rng)?),
            Runner::V4(k) => Job::Single(k.public().encrypt(&m, rng)?),
            Runner::Bcp { pk, .. } => Job::Double(pk.encrypt(&m, None, rng)?),
        })
    }

    fn run(&self, job: &Job) -> Result<BigUint> {
        match (self, job) {
            (Runner::Paillier(k), Job::Single(c)) => k.decrypt(c),
            (Runner::V1(k), Job::Single(c)) => k.decrypt(c),
            (Runner::V2(k), Job::Single(c)) => k.decrypt(c),
            (Runner::V3(k), Job::Single(c)) => k.decrypt(c),
            (Runner::V4(k), Job::Single(c)) => k.decrypt(c),
            (
                Runner::Bcp {
                    subject,
                    pk,
                    uk,
                    mk,
                },
                Job::Double(c),
            ) => match subject {
                CostSubject::BcpUser => bcp::dec_user(pk, uk, c),
                CostSubject::BcpMasterRevised => bcp::dec_master_revised(pk, mk, c),
                _ => bcp::dec_master_original(pk, mk, c),
            },
            _ => Err(Error::Internal("cost job does not match runner")),
        }
    }
}

pub fn render_table(records: &[CostRecord]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:>6} {:>7} {:>8} {:>6} {:>8} {:>6} {:>12} {:>7}",
        "scheme", "bits", "trials", "pow n^2", "pow n", "inv n^2", "inv n", "median_us", "ratio"
    );
    let base = records
        .iter()
        .find(|r| r.subject == CostSubject::Paillier)
        .map(|r| r.median_ns().max(1));
    for r in records {
        let ratio = base.map_or("-".to_string(), |b| {
            format!("{:.2}", r.median_ns() as f64 / b as f64)
        });
        let _ = writeln!(
            out,
            "{:<20} {:>6} {:>7} {:>8} {:>6} {:>8} {:>6} {:>12.1} {:>7}",
            r.subject.id(),
            r.key_bits,
            r.trials,
            r.pows_mod_n_sq,
            r.pows_mod_n,
            r.inversions_mod_n_sq,
            r.inversions_mod_n,
            r.median_ns() as f64 / 1000.0,
            ratio
        );
    }
    out
}

/// One JSON object per line.
pub fn render_records(records: &[CostRecord]) -> String {
    records
        .iter()
        .map(|r| format!("{}\n", r.to_json()))
        .collect()
}
