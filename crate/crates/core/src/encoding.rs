//! JSON files for keys, ciphertexts and signatures.
//!
//! Objects are written with sorted keys, two-space indentation and a
//! trailing newline, so equal values serialize to equal bytes. Integers are
//! lowercase big-endian hex without leading zeros; only `s` may carry a
//! leading `-`. Unknown and missing fields are rejected, and every parsed
//! key is checked against its own invariants.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bcp::{BcpCiphertext, BcpMasterKey, BcpPublicKey, BcpUserKey, Mode};
use crate::numtheory::{mod_inv, mod_pow_uint, FactoredModulus, Modulus};
use crate::paillier::{generator_rho, PaillierPublicKey, PaillierSecretKey};
use crate::scheme::{Ciphertext, DecryptionKey, EncryptionKey, Scheme};
use crate::signature::Signature;
use crate::variants::{v1, v2, v3, v4};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("expected a JSON object")]
    NotAnObject,
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("unknown field `{0}`")]
    UnknownField(String),
    #[error("field `{0}` is not a canonical hex integer")]
    BadHex(&'static str),
    #[error("field `{0}` has an unexpected value")]
    BadValue(&'static str),
    #[error("unsupported format version")]
    BadVersion,
    #[error("role `{role}` is not valid for scheme {scheme}")]
    BadRole { scheme: Scheme, role: String },
    #[error("inconsistent key material: {0}")]
    Invalid(#[from] crate::Error),
}

pub type FormatResult<T> = std::result::Result<T, FormatError>;

/// Public half of any scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PublicKey {
    Paillier(PaillierPublicKey),
    V1(v1::V1PublicKey),
    V2(v2::V2PublicKey),
    V3(v3::V3PublicKey),
    V4(v4::V4PublicKey),
    Bcp(BcpPublicKey),
}

/// Secret key of a single-trapdoor scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SecretKey {
    Paillier(PaillierSecretKey),
    V1(v1::V1SecretKey),
    V2(v2::V2SecretKey),
    V3(v3::V3SecretKey),
    V4(v4::V4SecretKey),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeyFile {
    Public(PublicKey),
    Secret(SecretKey),
    BcpUser(BcpPublicKey, BcpUserKey),
    BcpMaster(BcpPublicKey, BcpMasterKey),
}

/// A ciphertext as read from disk, not yet bound to a key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiphertextFile {
    pub scheme: Scheme,
    pub body: CiphertextBody,
    pub keyid: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CiphertextBody {
    Single(BigUint),
    Pair(BigUint, BigUint),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureFile {
    pub signature: Signature,
}

pub fn hex_uint(x: &BigUint) -> String {
    x.to_str_radix(16)
}

pub fn hex_int(x: &BigInt) -> String {
    x.to_str_radix(16)
}

fn parse_hex_digits(s: &str) -> Option<BigUint> {
    let canonical = !s.is_empty()
        && s.bytes().all(|c| matches!(c, b'0'..=b'9' | b'a'..=b'f'))
        && (s == "0" || !s.starts_with('0'));
    if canonical {
        BigUint::parse_bytes(s.as_bytes(), 16)
    } else {
        None
    }
}

pub fn parse_hex_uint(s: &str) -> Option<BigUint> {
    parse_hex_digits(s)
}

pub fn parse_hex_int(s: &str) -> Option<BigInt> {
    match s.strip_prefix('-') {
        Some(rest) => parse_hex_digits(rest)
            .filter(|v| !v.is_zero())
            .map(|v| BigInt::from_biguint(Sign::Minus, v)),
        None => parse_hex_digits(s).map(BigInt::from),
    }
}

/// Canonical text for a JSON object.
pub fn to_canonical(map: Map<String, Value>) -> String {
    // serde_json's default map is ordered by key
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
    s.push('\n');
    s
}

struct Writer(Map<String, Value>);

impl Writer {
    fn new(scheme: Scheme) -> Self {
        let mut m = Map::new();
        m.insert("version".into(), FORMAT_VERSION.into());
        m.insert("scheme".into(), scheme.id().into());
        Writer(m)
    }

    fn str(mut self, k: &str, v: &str) -> Self {
        self.0.insert(k.into(), v.into());
        self
    }

    fn uint(self, k: &str, v: &BigUint) -> Self {
        self.str(k, &hex_uint(v))
    }

    fn finish(self) -> String {
        to_canonical(self.0)
    }
}

struct Reader(Map<String, Value>);

impl Reader {
    fn parse(text: &str) -> FormatResult<Self> {
        match serde_json::from_str::<Value>(text) {
            Ok(Value::Object(m)) => Ok(Reader(m)),
            Ok(_) => Err(FormatError::NotAnObject),
            Err(e) => Err(FormatError::Json(e.to_string())),
        }
    }

    fn str(&mut self, k: &'static str) -> FormatResult<String> {
        match self.0.remove(k) {
            Some(Value::String(s)) => Ok(s),
            Some(_) => Err(FormatError::BadValue(k)),
            None => Err(FormatError::MissingField(k)),
        }
    }

    fn opt_str(&mut self, k: &'static str) -> FormatResult<Option<String>> {
        match self.0.remove(k) {
            Some(Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(FormatError::BadValue(k)),
            None => Ok(None),
        }
    }

    fn uint(&mut self, k: &'static str) -> FormatResult<BigUint> {
        parse_hex_uint(&self.str(k)?).ok_or(FormatError::BadHex(k))
    }

    fn int(&mut self, k: &'static str) -> FormatResult<BigInt> {
        parse_hex_int(&self.str(k)?).ok_or(FormatError::BadHex(k))
    }

    fn header(&mut self) -> FormatResult<Scheme> {
        if self.str("version")? != FORMAT_VERSION {
            return Err(FormatError::BadVersion);
        }
        self.str("scheme")?
            .parse()
            .map_err(|_| FormatError::BadValue("scheme"))
    }

    fn mode(&mut self) -> FormatResult<Mode> {
        self.str("mode")?
            .parse()
            .map_err(|_| FormatError::BadValue("mode"))
    }

    fn finish(self) -> FormatResult<()> {
        match self.0.into_iter().next() {
            Some((k, _)) => Err(FormatError::UnknownField(k)),
            None => Ok(()),
        }
    }
}

fn keyid_of(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl PublicKey {
    pub fn scheme(&self) -> Scheme {
        match self {
            PublicKey::Paillier(_) => Scheme::Paillier,
            PublicKey::V1(_) => Scheme::V1,
            PublicKey::V2(_) => Scheme::V2,
            PublicKey::V3(_) => Scheme::V3,
            PublicKey::V4(_) => Scheme::V4,
            PublicKey::Bcp(_) => Scheme::Bcp,
        }
    }

    pub fn modulus(&self) -> &Modulus {
        match self {
            PublicKey::Paillier(k) => k.modulus(),
            PublicKey::V1(k) => k.modulus(),
            PublicKey::V2(k) => k.modulus(),
            PublicKey::V3(k) => k.modulus(),
            PublicKey::V4(k) => k.modulus(),
            PublicKey::Bcp(k) => k.modulus(),
        }
    }

    fn writer(&self) -> Writer {
        let w = Writer::new(self.scheme()).uint("n", self.modulus().n());
        match self {
            PublicKey::Paillier(k) => w.uint("g", k.g()),
            PublicKey::V1(k) => w.uint("g", k.g()),
            PublicKey::V2(_) => w,
            PublicKey::V3(k) => w.uint("g", k.g()),
            PublicKey::V4(k) => w.uint("e", k.e()),
            PublicKey::Bcp(k) => w
                .uint("g", k.g())
                .uint("h", k.h())
                .str("mode", k.mode().id()),
        }
    }

    pub fn to_file_string(&self) -> String {
        self.writer().str("role", "public").finish()
    }

    /// SHA-256 of the public-key file bytes, as lowercase hex.
    pub fn keyid(&self) -> String {
        keyid_of(&self.to_file_string())
    }

    fn read(r: &mut Reader, scheme: Scheme) -> FormatResult<Self> {
        let modulus = Modulus::new(r.uint("n")?)?;
        Ok(match scheme {
            Scheme::Paillier => PublicKey::Paillier(PaillierPublicKey::new(modulus, r.uint("g")?)?),
            Scheme::V1 => PublicKey::V1(v1::V1PublicKey::new(modulus, r.uint("g")?)?),
            Scheme::V2 => PublicKey::V2(v2::V2PublicKey::new(modulus)),
            Scheme::V3 => PublicKey::V3(v3::V3PublicKey::new(modulus, r.uint("g")?)?),
            Scheme::V4 => PublicKey::V4(v4::V4PublicKey::new(modulus, r.uint("e")?)?),
            Scheme::Bcp => {
                let g = r.uint("g")?;
                let h = r.uint("h")?;
                let mode = r.mode()?;
                PublicKey::Bcp(BcpPublicKey::new(modulus, g, h, mode)?)
            }
        })
    }
}

impl SecretKey {
    pub fn scheme(&self) -> Scheme {
        self.public().scheme()
    }

    pub fn public(&self) -> PublicKey {
        match self {
            SecretKey::Paillier(k) => PublicKey::Paillier(k.public().clone()),
            SecretKey::V1(k) => PublicKey::V1(k.public().clone()),
            SecretKey::V2(k) => PublicKey::V2(k.public().clone()),
            SecretKey::V3(k) => PublicKey::V3(k.public().clone()),
            SecretKey::V4(k) => PublicKey::V4(k.public().clone()),
        }
    }

    pub fn factored_modulus(&self) -> &FactoredModulus {
        match self {
            SecretKey::Paillier(k) => k.factored_modulus(),
            SecretKey::V1(k) => k.factored_modulus(),
            SecretKey::V2(k) => k.factored_modulus(),
            SecretKey::V3(k) => k.factored_modulus(),
            SecretKey::V4(k) => k.factored_modulus(),
        }
    }

    pub fn decrypt(&self, c: &Ciphertext) -> crate::Result<BigUint> {
        match self {
            SecretKey::Paillier(k) => k.decrypt(c),
            SecretKey::V1(k) => k.decrypt(c),
            SecretKey::V2(k) => k.decrypt(c),
            SecretKey::V3(k) => k.decrypt(c),
            SecretKey::V4(k) => k.decrypt(c),
        }
    }

    /// Class and pad; Variant 1 has no pad in Z*_n and refuses.
    pub fn decrypt_full(&self, c: &Ciphertext) -> crate::Result<(BigUint, BigUint)> {
        match self {
            SecretKey::Paillier(k) => k.decrypt_full(c),
            SecretKey::V1(_) => Err(crate::Error::InvalidParameter(
                "v1 ciphertexts carry g^r, not a pad in Z*_n",
            )),
            SecretKey::V2(k) => k.decrypt_full(c),
            SecretKey::V3(k) => k.decrypt_full(c),
            SecretKey::V4(k) => k.decrypt_full(c),
        }
    }

    pub fn to_file_string(&self) -> String {
        let f = self.factored_modulus();
        let w = self
            .public()
            .writer()
            .str("role", "secret")
            .uint("p", f.p())
            .uint("q", f.q());
        let w = match self {
            SecretKey::Paillier(k) => w.str("s", &hex_int(k.s())),
            SecretKey::V1(k) => w.uint("beta", k.exponent()),
            SecretKey::V2(k) => w.uint("kappa", k.kappa()),
            SecretKey::V3(_) => w,
            SecretKey::V4(k) => w.uint("d", k.d()),
        };
        w.finish()
    }

    fn read(r: &mut Reader, public: PublicKey) -> FormatResult<Self> {
        let fmod = read_factors(r, public.modulus())?;
        Ok(match public {
            PublicKey::Paillier(pk) => {
                let s = r.int("s")?;
                SecretKey::Paillier(PaillierSecretKey::from_parts(fmod, pk.g().clone())?.with_s(s)?)
            }
            PublicKey::V1(pk) => {
                let beta = r.uint("beta")?;
                SecretKey::V1(v1::V1SecretKey::with_exponent(fmod, pk.g().clone(), beta)?)
            }
            PublicKey::V2(_) => {
                let kappa = r.uint("kappa")?;
                let sk = v2::V2SecretKey::from_factored(fmod)?;
                if sk.kappa() != &kappa {
                    return Err(FormatError::BadValue("kappa"));
                }
                SecretKey::V2(sk)
            }
            PublicKey::V3(pk) => SecretKey::V3(v3::V3SecretKey::from_parts(fmod, pk.g().clone())?),
            PublicKey::V4(pk) => {
                let d = r.uint("d")?;
                let sk = v4::V4SecretKey::from_parts(fmod, pk.e().clone())?;
                if sk.d() != &d {
                    return Err(FormatError::BadValue("d"));
                }
                SecretKey::V4(sk)
            }
            PublicKey::Bcp(_) => unreachable!("bcp has no single secret key"),
        })
    }
}

fn read_factors(r: &mut Reader, modulus: &Modulus) -> FormatResult<FactoredModulus> {
    let fmod = FactoredModulus::new(r.uint("p")?, r.uint("q")?)?;
    if fmod.n() != modulus.n() {
        return Err(FormatError::BadValue("p"));
    }
    Ok(fmod)
}

fn bcp_public_writer(pk: &BcpPublicKey) -> Writer {
    PublicKey::Bcp(pk.clone()).writer()
}

impl KeyFile {
    pub fn scheme(&self) -> Scheme {
        match self {
            KeyFile::Public(k) => k.scheme(),
            KeyFile::Secret(k) => k.scheme(),
            KeyFile::BcpUser(..) | KeyFile::BcpMaster(..) => Scheme::Bcp,
        }
    }

    pub fn role(&self) -> &'static str {
        match self {
            KeyFile::Public(_) => "public",
            KeyFile::Secret(_) => "secret",
            KeyFile::BcpUser(..) => "user",
            KeyFile::BcpMaster(..) => "master",
        }
    }

    /// The public key embedded in (or equal to) this file.
    pub fn public(&self) -> PublicKey {
        match self {
            KeyFile::Public(k) => k.clone(),
            KeyFile::Secret(k) => k.public(),
            KeyFile::BcpUser(pk, _) | KeyFile::BcpMaster(pk, _) => PublicKey::Bcp(pk.clone()),
        }
    }

    pub fn to_file_string(&self) -> String {
        match self {
            KeyFile::Public(k) => k.to_file_string(),
            KeyFile::Secret(k) => k.to_file_string(),
            KeyFile::BcpUser(pk, uk) => bcp_public_writer(pk)
                .str("role", "user")
                .uint("a", uk.a())
                .finish(),
            KeyFile::BcpMaster(pk, mk) => {
                let f = mk.factored_modulus();
                let w = bcp_public_writer(pk)
                    .str("role", "master")
                    .uint("p", f.p())
                    .uint("q", f.q())
                    .uint("rho", mk.rho());
                match mk {
                    BcpMasterKey::Original { tau, a, .. } => w.uint("tau", tau).uint("a", a),
                    BcpMasterKey::Revised { .. } => w,
                }
                .finish()
            }
        }
    }

    pub fn parse(text: &str) -> FormatResult<Self> {
        let mut r = Reader::parse(text)?;
        let scheme = r.header()?;
        let role = r.str("role")?;
        let public = PublicKey::read(&mut r, scheme)?;
        let file = match (role.as_str(), public) {
            ("public", pk) => KeyFile::Public(pk),
            ("secret", pk) if scheme != Scheme::Bcp => {
                KeyFile::Secret(SecretKey::read(&mut r, pk)?)
            }
            ("user", PublicKey::Bcp(pk)) => {
                let a = r.uint("a")?;
                if mod_pow_uint(pk.g(), &a, pk.modulus().n_sq()) != *pk.h() {
                    return Err(FormatError::BadValue("a"));
                }
                KeyFile::BcpUser(pk, BcpUserKey::new(a))
            }
            ("master", PublicKey::Bcp(pk)) => {
                let mk = read_master(&mut r, &pk)?;
                KeyFile::BcpMaster(pk, mk)
            }
            _ => return Err(FormatError::BadRole { scheme, role }),
        };
        r.finish()?;
        Ok(file)
    }
}

fn read_master(r: &mut Reader, pk: &BcpPublicKey) -> FormatResult<BcpMasterKey> {
    let fmod = read_factors(r, pk.modulus())?;
    let rho = r.uint("rho")?;
    if generator_rho(&fmod, pk.g())? != rho {
        return Err(FormatError::BadValue("rho"));
    }
    Ok(match pk.mode() {
        Mode::Revised => BcpMasterKey::Revised { fmod, rho },
        Mode::Original => {
            let tau = r.uint("tau")?;
            let a = r.uint("a")?;
            if mod_inv(fmod.lambda(), fmod.n())? != tau {
                return Err(FormatError::BadValue("tau"));
            }
            if mod_pow_uint(pk.g(), &a, pk.modulus().n_sq()) != *pk.h() {
                return Err(FormatError::BadValue("a"));
            }
            BcpMasterKey::Original { fmod, rho, tau, a }
        }
    })
}

impl CiphertextFile {
    pub fn single(c: &Ciphertext, keyid: Option<String>) -> Self {
        Self {
            scheme: c.scheme(),
            body: CiphertextBody::Single(c.value().clone()),
            keyid,
        }
    }

    pub fn pair(c: &BcpCiphertext, keyid: Option<String>) -> Self {
        Self {
            scheme: Scheme::Bcp,
            body: CiphertextBody::Pair(c.a().clone(), c.b().clone()),
            keyid,
        }
    }

    pub fn to_file_string(&self) -> String {
        let w = Writer::new(self.scheme);
        let w = match &self.body {
            CiphertextBody::Single(v) => w.uint("value", v),
            CiphertextBody::Pair(a, b) => w.uint("A", a).uint("B", b),
        };
        match &self.keyid {
            Some(id) => w.str("keyid", id),
            None => w,
        }
        .finish()
    }

    pub fn parse(text: &str) -> FormatResult<Self> {
        let mut r = Reader::parse(text)?;
        let scheme = r.header()?;
        let body = if scheme == Scheme::Bcp {
            CiphertextBody::Pair(r.uint("A")?, r.uint("B")?)
        } else {
            CiphertextBody::Single(r.uint("value")?)
        };
        let keyid = r.opt_str("keyid")?;
        if let Some(id) = &keyid {
            if id.len() != 64
                || hex::decode(id).is_err()
                || id.bytes().any(|c| c.is_ascii_uppercase())
            {
                return Err(FormatError::BadValue("keyid"));
            }
        }
        r.finish()?;
        Ok(Self {
            scheme,
            body,
            keyid,
        })
    }

    fn check_binding(&self, pk: &PublicKey) -> crate::Result<()> {
        if self.scheme != pk.scheme() {
            return Err(crate::Error::SchemeMismatch {
                expected: pk.scheme(),
                found: self.scheme,
            });
        }
        if self.keyid.as_ref().is_some_and(|id| *id != pk.keyid()) {
            return Err(crate::Error::KeyMismatch);
        }
        Ok(())
    }

    /// Checks scheme, keyid and unit range against `pk`.
    pub fn bind_single(&self, pk: &PublicKey) -> crate::Result<Ciphertext> {
        self.check_binding(pk)?;
        match &self.body {
            CiphertextBody::Single(v) => Ciphertext::new(v.clone(), self.scheme, pk.modulus()),
            CiphertextBody::Pair(..) => Err(crate::Error::SchemeMismatch {
                expected: pk.scheme(),
                found: Scheme::Bcp,
            }),
        }
    }

    pub fn bind_pair(&self, pk: &PublicKey) -> crate::Result<BcpCiphertext> {
        self.check_binding(pk)?;
        match &self.body {
            CiphertextBody::Pair(a, b) => BcpCiphertext::new(a.clone(), b.clone(), pk.modulus()),
            CiphertextBody::Single(_) => Err(crate::Error::SchemeMismatch {
                expected: Scheme::Bcp,
                found: self.scheme,
            }),
        }
    }
}

impl SignatureFile {
    pub fn to_file_string(&self) -> String {
        Writer::new(Scheme::Paillier)
            .uint("s1", self.signature.s1())
            .uint("s2", self.signature.s2())
            .finish()
    }

    pub fn parse(text: &str) -> FormatResult<Self> {
        let mut r = Reader::parse(text)?;
        if r.header()? != Scheme::Paillier {
            return Err(FormatError::BadValue("scheme"));
        }
        let signature = Signature::new(r.uint("s1")?, r.uint("s2")?);
        r.finish()?;
        Ok(Self { signature })
    }
}

/// Whether the file contents are the canonical serialization of a key.
pub fn is_canonical_key(text: &str) -> bool {
    KeyFile::parse(text).is_ok_and(|k| k.to_file_string() == text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcp;
    use crate::paillier::{keygen, GeneratorChoice};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn hex_is_canonical() {
        assert_eq!(hex_uint(&b(0)), "0");
        assert_eq!(hex_uint(&b(255)), "ff");
        assert_eq!(parse_hex_uint("ff"), Some(b(255)));
        for bad in ["", "FF", "0ff", "00", "0x1", "-1", " 1", "g"] {
            assert_eq!(parse_hex_uint(bad), None, "{bad:?}");
        }
        assert_eq!(parse_hex_int("-1"), Some(BigInt::from(-1)));
        assert_eq!(parse_hex_int("-0"), None);
        assert_eq!(parse_hex_int("--1"), None);
        assert_eq!(hex_int(&BigInt::from(-26)), "-1a");
    }

    fn tiny_paillier_file() -> String {
        let f = FactoredModulus::new(b(3), b(5)).unwrap();
        let sk = PaillierSecretKey::from_parts(f, b(16)).unwrap();
        KeyFile::Secret(SecretKey::Paillier(sk)).to_file_string()
    }

    #[test]
    fn tiny_paillier_secret_file_bytes() {
        let text = tiny_paillier_file();
        assert_eq!(
            text,
            "{\n  \"g\": \"10\",\n  \"n\": \"f\",\n  \"p\": \"3\",\n  \"q\": \"5\",\n  \"role\": \"secret\",\n  \"s\": \"-1\",\n  \"scheme\": \"paillier\",\n  \"version\": \"1\"\n}\n"
        );
        assert!(is_canonical_key(&text));
    }

    #[test]
    fn rejects_unknown_missing_and_inconsistent_fields() {
        let text = tiny_paillier_file();
        let extra = text.replace("\"g\"", "\"extra\": \"1\",\n  \"g\"");
        assert_eq!(
            KeyFile::parse(&extra),
            Err(FormatError::UnknownField("extra".into()))
        );
        let missing = text.replace("  \"s\": \"-1\",\n", "");
        assert_eq!(
            KeyFile::parse(&missing),
            Err(FormatError::MissingField("s"))
        );
        let wrong_q = text.replace("\"q\": \"5\"", "\"q\": \"7\"");
        assert!(KeyFile::parse(&wrong_q).is_err());
        let wrong_s = text.replace("\"s\": \"-1\"", "\"s\": \"1\"");
        assert!(KeyFile::parse(&wrong_s).is_err());
        let other_s = text.replace("\"s\": \"-1\"", "\"s\": \"3\"");
        assert!(KeyFile::parse(&other_s).is_ok());
        let bad_g = text.replace("\"g\": \"10\"", "\"g\": \"3\"");
        assert!(KeyFile::parse(&bad_g).is_err());
        let v2 = text.replace("\"version\": \"1\"", "\"version\": \"2\"");
        assert_eq!(KeyFile::parse(&v2), Err(FormatError::BadVersion));
        let role = text.replace("\"secret\"", "\"user\"");
        assert!(matches!(
            KeyFile::parse(&role),
            Err(FormatError::BadRole { .. })
        ));
        assert!(matches!(
            KeyFile::parse("[1]"),
            Err(FormatError::NotAnObject)
        ));
        assert!(matches!(KeyFile::parse("{"), Err(FormatError::Json(_))));
    }

    #[test]
    fn every_scheme_round_trips() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let mut files = Vec::new();
        let (pk, sk) = keygen(128, GeneratorChoice::Random, &mut rng).unwrap();
        files.push(KeyFile::Public(PublicKey::Paillier(pk)));
        files.push(KeyFile::Secret(SecretKey::Paillier(sk)));
        let (pk, sk) = v1::keygen(128, &mut rng).unwrap();
        files.push(KeyFile::Public(PublicKey::V1(pk)));
        files.push(KeyFile::Secret(SecretKey::V1(sk)));
        let (_, sk) = v2::keygen(128, &mut rng).unwrap();
        files.push(KeyFile::Secret(SecretKey::V2(sk)));
        let (_, sk) = v3::keygen(128, &mut rng).unwrap();
        files.push(KeyFile::Secret(SecretKey::V3(sk)));
        let (_, sk) = v4::keygen(128, None, &mut rng).unwrap();
        files.push(KeyFile::Secret(SecretKey::V4(sk)));
        for mode in [Mode::Original, Mode::Revised] {
            let (pk, uk, mk) = bcp::setup(128, mode, &mut rng).unwrap();
            files.push(KeyFile::Public(PublicKey::Bcp(pk.clone())));
            files.push(KeyFile::BcpUser(pk.clone(), uk));
            files.push(KeyFile::BcpMaster(pk, mk));
        }
        for f in files {
            let text = f.to_file_string();
            assert_eq!(KeyFile::parse(&text).unwrap(), f, "{text}");
            assert!(text.ends_with("}\n"));
        }
    }

    #[test]
    fn revised_master_file_has_exactly_the_declared_fields() {
        let mut rng = ChaCha20Rng::seed_from_u64(12);
        let (pk, _, mk) = bcp::setup(64, Mode::Revised, &mut rng).unwrap();
        let text = KeyFile::BcpMaster(pk, mk).to_file_string();
        let v: Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(
            keys,
            ["g", "h", "mode", "n", "p", "q", "rho", "role", "scheme", "version"]
        );
    }

    #[test]
    fn ciphertext_binding() {
        let f = FactoredModulus::new(b(3), b(5)).unwrap();
        let sk = PaillierSecretKey::from_parts(f, b(16)).unwrap();
        let pk = PublicKey::Paillier(sk.public().clone());
        let c = sk.public().encrypt_with_pad(&b(7), &b(2)).unwrap();
        let file = CiphertextFile::single(&c, Some(pk.keyid()));
        let text = file.to_file_string();
        let back = CiphertextFile::parse(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.bind_single(&pk).unwrap(), c);

        let v2pk = PublicKey::V2(v2::V2PublicKey::new(Modulus::new(b(15)).unwrap()));
        assert!(matches!(
            back.bind_single(&v2pk),
            Err(crate::Error::SchemeMismatch { .. })
        ));
        let other = PublicKey::Paillier(
            PaillierPublicKey::new(Modulus::new(b(15)).unwrap(), b(31)).unwrap(),
        );
        assert!(back.bind_single(&other).is_err());

        let not_unit = text.replace("\"value\": \"53\"", "\"value\": \"5\"");
        assert_eq!(
            CiphertextFile::parse(&not_unit).unwrap().bind_single(&pk),
            Err(crate::Error::CiphertextNotUnit)
        );
    }

    #[test]
    fn signature_file_round_trip() {
        let f = SignatureFile {
            signature: Signature::new(b(7), b(2)),
        };
        let text = f.to_file_string();
        assert_eq!(SignatureFile::parse(&text).unwrap(), f);
        assert!(SignatureFile::parse(&text.replace("paillier", "v2")).is_err());
    }
}
