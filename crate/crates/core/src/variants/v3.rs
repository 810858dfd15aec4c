//! Variant 3: g = (1 + n)^τ · w^n mod n² with τ = λ⁻¹ mod n, so g^λ = 1 + n
//! and decryption is m = L(c^λ mod n²) with no final multiplication.
//!
//! Not secure against chosen-ciphertext attacks: the decryption of a
//! crafted ciphertext leaks enough to factor n.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{l_function, mod_inv, mod_pow_uint, sample_unit, FactoredModulus, Modulus};
use crate::paillier::{generator_rho, least_abs_inverse, pad_from_class};
use crate::scheme::{Ciphertext, DecryptionKey, EncryptionKey, Scheme};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V3PublicKey {
    modulus: Modulus,
    g: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V3SecretKey {
    public: V3PublicKey,
    fmod: FactoredModulus,
    s: BigInt,
}

pub fn keygen<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<(V3PublicKey, V3SecretKey)> {
    let fmod = FactoredModulus::generate(bits, rng)?;
    let w = sample_unit(fmod.n_sq(), rng);
    let sk = V3SecretKey::from_witness(fmod, &w)?;
    Ok((sk.public.clone(), sk))
}

impl V3PublicKey {
    pub fn new(modulus: Modulus, g: BigUint) -> Result<Self> {
        if !modulus.is_unit_mod_n_sq(&g) {
            return Err(Error::InvalidKey("generator is not a unit of Z*_{n^2}"));
        }
        Ok(Self { modulus, g })
    }

    pub fn g(&self) -> &BigUint {
        &self.g
    }

    /// g^m · r^n mod n².
    pub fn encrypt_with_pad(&self, m: &BigUint, r: &BigUint) -> Result<Ciphertext> {
        if m >= self.modulus.n() {
            return Err(Error::PlaintextOutOfRange);
        }
        if !self.modulus.is_unit_mod_n(r) {
            return Err(Error::PadNotUnit);
        }
        let n_sq = self.modulus.n_sq();
        let c = mod_pow_uint(&self.g, m, n_sq) * mod_pow_uint(r, self.modulus.n(), n_sq) % n_sq;
        Ok(Ciphertext::from_unit(c, Scheme::V3))
    }
}

impl EncryptionKey for V3PublicKey {
    fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn scheme(&self) -> Scheme {
        Scheme::V3
    }

    fn encrypt<R: Rng + ?Sized>(&self, m: &BigUint, rng: &mut R) -> Result<Ciphertext> {
        let r = self.sample_pad(rng);
        self.encrypt_with_pad(m, &r)
    }

    fn sample_pad<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        sample_unit(self.modulus.n(), rng)
    }

    fn blinding_factor(&self, pad: &BigUint) -> Result<BigUint> {
        if !self.modulus.is_unit_mod_n(pad) {
            return Err(Error::PadNotUnit);
        }
        Ok(mod_pow_uint(pad, self.modulus.n(), self.modulus.n_sq()))
    }
}

impl V3SecretKey {
    /// Builds g from a unit w of Z*_{n²}.
    pub fn from_witness(fmod: FactoredModulus, w: &BigUint) -> Result<Self> {
        if !fmod.modulus().is_unit_mod_n_sq(w) {
            return Err(Error::InvalidParameter("witness is not a unit of Z*_{n^2}"));
        }
        let tau = mod_inv(fmod.lambda(), fmod.n())?;
        let n_sq = fmod.n_sq();
        let g = fmod.modulus().one_plus_n_pow(&tau) * mod_pow_uint(w, fmod.n(), n_sq) % n_sq;
        Self::from_parts(fmod, g)
    }

    /// Accepts any g with g^λ ≡ 1 + n mod n².
    pub fn from_parts(fmod: FactoredModulus, g: BigUint) -> Result<Self> {
        let rho = generator_rho(&fmod, &g)?;
        if !rho.is_one() {
            return Err(Error::InvalidKey("g^lambda is not 1 + n"));
        }
        let s = least_abs_inverse(fmod.n(), fmod.lambda())?;
        Ok(Self {
            public: V3PublicKey {
                modulus: fmod.modulus().clone(),
                g,
            },
            fmod,
            s,
        })
    }

    pub fn factored_modulus(&self) -> &FactoredModulus {
        &self.fmod
    }

    pub fn decrypt_full(&self, c: &Ciphertext) -> Result<(BigUint, BigUint)> {
        let m = self.decrypt(c)?;
        let r = pad_from_class(
            self.public.modulus(),
            &self.public.g,
            c.value(),
            &m,
            &self.s,
        )?;
        Ok((m, r))
    }
}

impl DecryptionKey for V3SecretKey {
    type Public = V3PublicKey;

    fn public(&self) -> &V3PublicKey {
        &self.public
    }

    fn decrypt(&self, c: &Ciphertext) -> Result<BigUint> {
        self.public.check(c)?;
        let m = self.public.modulus();
        l_function(&mod_pow_uint(c.value(), self.fmod.lambda(), m.n_sq()), m)
    }
}
