//! Scheme tags, the shared single-element ciphertext type, and the
//! homomorphic operations common to every scheme whose ciphertexts multiply.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{mod_pow_uint, Modulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Paillier,
    V1,
    V2,
    V3,
    V4,
    Bcp,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Paillier,
        Scheme::V1,
        Scheme::V2,
        Scheme::V3,
        Scheme::V4,
        Scheme::Bcp,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Scheme::Paillier => "paillier",
            Scheme::V1 => "v1",
            Scheme::V2 => "v2",
            Scheme::V3 => "v3",
            Scheme::V4 => "v4",
            Scheme::Bcp => "bcp",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or(Error::InvalidParameter("unknown scheme"))
    }
}

/// A unit of Z*_{n²} tagged with the scheme that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ciphertext {
    value: BigUint,
    scheme: Scheme,
}

impl Ciphertext {
    pub fn new(value: BigUint, scheme: Scheme, modulus: &Modulus) -> Result<Self> {
        if !modulus.is_unit_mod_n_sq(&value) {
            return Err(Error::CiphertextNotUnit);
        }
        Ok(Self { value, scheme })
    }

    /// Caller guarantees `value` is a reduced unit.
    pub(crate) fn from_unit(value: BigUint, scheme: Scheme) -> Self {
        Self { value, scheme }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
}

/// Public-key side of a scheme with single-element ciphertexts.
pub trait EncryptionKey {
    fn modulus(&self) -> &Modulus;

    fn scheme(&self) -> Scheme;

    fn encrypt<R: Rng + ?Sized>(&self, m: &BigUint, rng: &mut R) -> Result<Ciphertext>;

    /// Whether ciphertext products decrypt to plaintext sums.
    fn is_homomorphic(&self) -> bool {
        true
    }

    /// A fresh pad suitable for [`EncryptionKey::blinding_factor`].
    fn sample_pad<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint;

    /// The encryption of zero under `pad`.
    fn blinding_factor(&self, pad: &BigUint) -> Result<BigUint>;

    /// Checks the tag and range of a ciphertext presented under this key.
    fn check(&self, c: &Ciphertext) -> Result<()> {
        if c.scheme() != self.scheme() {
            return Err(Error::SchemeMismatch {
                expected: self.scheme(),
                found: c.scheme(),
            });
        }
        if !self.modulus().is_unit_mod_n_sq(c.value()) {
            return Err(Error::CiphertextNotUnit);
        }
        Ok(())
    }
}

pub trait DecryptionKey {
    type Public: EncryptionKey;

    fn public(&self) -> &Self::Public;

    fn decrypt(&self, c: &Ciphertext) -> Result<BigUint>;
}

fn check_homomorphic<K: EncryptionKey>(pk: &K, c: &Ciphertext) -> Result<()> {
    if !pk.is_homomorphic() {
        return Err(Error::NotHomomorphic(pk.scheme()));
    }
    pk.check(c)
}

/// c1·c2 mod n², an encryption of m1 + m2.
pub fn add<K: EncryptionKey>(pk: &K, c1: &Ciphertext, c2: &Ciphertext) -> Result<Ciphertext> {
    check_homomorphic(pk, c1)?;
    check_homomorphic(pk, c2)?;
    let v = c1.value() * c2.value() % pk.modulus().n_sq();
    Ok(Ciphertext::from_unit(v, pk.scheme()))
}

/// c^k mod n², an encryption of k·m.
pub fn scalar_mul<K: EncryptionKey>(pk: &K, c: &Ciphertext, k: &BigUint) -> Result<Ciphertext> {
    check_homomorphic(pk, c)?;
    let v = mod_pow_uint(c.value(), k, pk.modulus().n_sq());
    Ok(Ciphertext::from_unit(v, pk.scheme()))
}

/// Multiplies by an encryption of zero under a fresh pad.
pub fn rerandomize<K: EncryptionKey, R: Rng + ?Sized>(
    pk: &K,
    c: &Ciphertext,
    rng: &mut R,
) -> Result<Ciphertext> {
    let pad = pk.sample_pad(rng);
    rerandomize_with(pk, c, &pad)
}

pub fn rerandomize_with<K: EncryptionKey>(
    pk: &K,
    c: &Ciphertext,
    pad: &BigUint,
) -> Result<Ciphertext> {
    check_homomorphic(pk, c)?;
    let blind = pk.blinding_factor(pad)?;
    let v = c.value() * blind % pk.modulus().n_sq();
    Ok(Ciphertext::from_unit(v, pk.scheme()))
}

/// The encryption of 0 with the trivial pad, which is 1 for every scheme.
pub fn trivial_zero<K: EncryptionKey>(pk: &K) -> Ciphertext {
    Ciphertext::from_unit(BigUint::one(), pk.scheme())
}
