//! Variant 1: c = g^{m + r·n} mod n², where ord(g) = α·n.
//!
//! The pad is g^r rather than r, so the key holder learns g^r mod n² but
//! not a pad in Z*_n. Decryption needs any exponent β with α | β and
//! gcd(β/α, n) = 1; λ always qualifies and is what keygen uses, since α
//! itself is only computable when ord(g) can be found by enumeration.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{
    element_order, l_function, mod_inv, mod_pow_uint, sample_unit, FactoredModulus, Modulus,
};
use crate::scheme::{Ciphertext, DecryptionKey, EncryptionKey, Scheme};

/// Largest n² that [`image_deficit`] will enumerate.
pub const ORACLE_GROUP_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V1PublicKey {
    modulus: Modulus,
    g: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V1SecretKey {
    public: V1PublicKey,
    fmod: FactoredModulus,
    exponent: BigUint,
    rho: BigUint,
}

pub fn keygen<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<(V1PublicKey, V1SecretKey)> {
    let fmod = FactoredModulus::generate(bits, rng)?;
    loop {
        let g = sample_unit(fmod.n_sq(), rng);
        match V1SecretKey::from_parts(fmod.clone(), g) {
            Ok(sk) => return Ok((sk.public.clone(), sk)),
            Err(Error::InvalidKey(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

impl V1PublicKey {
    pub fn new(modulus: Modulus, g: BigUint) -> Result<Self> {
        if !modulus.is_unit_mod_n_sq(&g) {
            return Err(Error::InvalidKey("generator is not a unit of Z*_{n^2}"));
        }
        Ok(Self { modulus, g })
    }

    pub fn g(&self) -> &BigUint {
        &self.g
    }

    /// One exponentiation: g^{m + r·n} mod n², with m, r ∈ Z_n.
    pub fn encrypt_with_pad(&self, m: &BigUint, r: &BigUint) -> Result<Ciphertext> {
        let n = self.modulus.n();
        if m >= n {
            return Err(Error::PlaintextOutOfRange);
        }
        if r >= n {
            return Err(Error::PadOutOfRange);
        }
        let c = mod_pow_uint(&self.g, &(m + r * n), self.modulus.n_sq());
        Ok(Ciphertext::from_unit(c, Scheme::V1))
    }
}

impl EncryptionKey for V1PublicKey {
    fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn scheme(&self) -> Scheme {
        Scheme::V1
    }

    fn encrypt<R: Rng + ?Sized>(&self, m: &BigUint, rng: &mut R) -> Result<Ciphertext> {
        let r = self.sample_pad(rng);
        self.encrypt_with_pad(m, &r)
    }

    fn sample_pad<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        rng.gen_biguint_below(self.modulus.n())
    }

    fn blinding_factor(&self, pad: &BigUint) -> Result<BigUint> {
        if pad >= self.modulus.n() {
            return Err(Error::PadOutOfRange);
        }
        Ok(mod_pow_uint(
            &self.g,
            &(pad * self.modulus.n()),
            self.modulus.n_sq(),
        ))
    }
}

impl V1SecretKey {
    /// Working exponent β = λ.
    pub fn from_parts(fmod: FactoredModulus, g: BigUint) -> Result<Self> {
        let beta = fmod.lambda().clone();
        Self::with_exponent(fmod, g, beta)
    }

    /// Working exponent β = α = ord(g)/n, found by enumeration-scale order finding.
    pub fn with_exact_order(fmod: FactoredModulus, g: BigUint) -> Result<Self> {
        let alpha = exact_alpha(&fmod, &g)?;
        Self::with_exponent(fmod, g, alpha)
    }

    pub fn with_exponent(fmod: FactoredModulus, g: BigUint, exponent: BigUint) -> Result<Self> {
        let public = V1PublicKey::new(fmod.modulus().clone(), g)?;
        let gb = mod_pow_uint(&public.g, &exponent, fmod.n_sq());
        let big_l = l_function(&gb, fmod.modulus())
            .map_err(|_| Error::InvalidKey("g^beta is not 1 mod n"))?;
        let rho = mod_inv(&big_l, fmod.n())
            .map_err(|_| Error::InvalidKey("L(g^beta) is not invertible mod n"))?;
        // the exponent must also annihilate every pad g^{rn}
        if !mod_pow_uint(&gb, fmod.n(), fmod.n_sq()).is_one() {
            return Err(Error::InvalidKey("exponent does not annihilate pads"));
        }
        Ok(Self {
            public,
            fmod,
            exponent,
            rho,
        })
    }

    pub fn factored_modulus(&self) -> &FactoredModulus {
        &self.fmod
    }

    pub fn exponent(&self) -> &BigUint {
        &self.exponent
    }

    pub fn rho(&self) -> &BigUint {
        &self.rho
    }

    /// α = ord(g)/n. Only feasible when nλ factors by trial division.
    pub fn exact_alpha(&self) -> Result<BigUint> {
        exact_alpha(&self.fmod, &self.public.g)
    }
}

fn exact_alpha(fmod: &FactoredModulus, g: &BigUint) -> Result<BigUint> {
    let order = element_order(g, fmod.n_sq(), &(fmod.n() * fmod.lambda()))?;
    let (alpha, rem) = order.div_rem(fmod.n());
    if !rem.is_zero() {
        return Err(Error::InvalidKey("n does not divide ord(g)"));
    }
    Ok(alpha)
}

impl DecryptionKey for V1SecretKey {
    type Public = V1PublicKey;

    fn public(&self) -> &V1PublicKey {
        &self.public
    }

    /// m = L(c^β mod n²) · L(g^β mod n²)⁻¹ mod n.
    fn decrypt(&self, c: &Ciphertext) -> Result<BigUint> {
        self.public.check(c)?;
        let m = self.public.modulus();
        let big_l = l_function(&mod_pow_uint(c.value(), &self.exponent, m.n_sq()), m)?;
        Ok(big_l * &self.rho % m.n())
    }
}

/// Size of ⟨g⟩ against the size of Z*_{n²}, with a witness outside ⟨g⟩.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageDeficit {
    pub image_size: u64,
    pub group_size: u64,
    /// Least unit h with no k = s1 + s2·n (s1, s2 ∈ Z_n) such that g^k = h.
    pub witness: Option<u64>,
}

/// Enumerates {g^{s1 + s2·n} : s1, s2 ∈ Z_n}, which is all of ⟨g⟩ since
/// ord(g) ≤ n², and reports what part of Z*_{n²} it misses.
pub fn image_deficit(pk: &V1PublicKey) -> Result<ImageDeficit> {
    let n_sq = u64::try_from(pk.modulus.n_sq().clone()).map_err(|_| Error::TooLarge)?;
    if n_sq > ORACLE_GROUP_LIMIT {
        return Err(Error::TooLarge);
    }
    let n = u64::try_from(pk.modulus.n().clone()).map_err(|_| Error::TooLarge)?;
    let g = u64::try_from(pk.g.clone()).map_err(|_| Error::TooLarge)?;

    let mut in_image = vec![false; n_sq as usize];
    let mut x = 1u64;
    for _ in 0..n_sq {
        in_image[x as usize] = true;
        x = x * g % n_sq;
    }
    let is_unit = |h: u64| num_integer::gcd(h, n) == 1;
    let image_size = in_image.iter().filter(|&&b| b).count() as u64;
    let group_size = (1..n_sq).filter(|&h| is_unit(h)).count() as u64;
    let witness = (1..n_sq).find(|&h| is_unit(h) && !in_image[h as usize]);
    Ok(ImageDeficit {
        image_size,
        group_size,
        witness,
    })
}
