//! Variant 4: c = (1 + m·n) · r^e mod n² with an RSA exponent e.
//!
//! The pad comes back first, as an RSA decryption r = c^d mod n, and the
//! class follows from c·(r^e)⁻¹. Ciphertexts do not multiply into
//! encryptions of sums: the pad is only known mod n, and (r1 r2)^e mod n²
//! differs from ((r1 r2) mod n)^e once the product wraps, which shifts the
//! decrypted class. Every homomorphic operation is refused.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{l_function, mod_inv, mod_pow_uint, sample_unit, FactoredModulus, Modulus};
use crate::scheme::{Ciphertext, DecryptionKey, EncryptionKey, Scheme};

pub const DEFAULT_PUBLIC_EXPONENT: u32 = 65537;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V4PublicKey {
    modulus: Modulus,
    e: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V4SecretKey {
    public: V4PublicKey,
    fmod: FactoredModulus,
    d: BigUint,
}

/// Draws primes until gcd(e, φ(n)) = 1.
pub fn keygen<R: Rng + ?Sized>(
    bits: u64,
    e: Option<&BigUint>,
    rng: &mut R,
) -> Result<(V4PublicKey, V4SecretKey)> {
    let e = e
        .cloned()
        .unwrap_or_else(|| BigUint::from(DEFAULT_PUBLIC_EXPONENT));
    if e < BigUint::from(3u32) || e.is_even() {
        return Err(Error::BadPublicExponent);
    }
    loop {
        let fmod = FactoredModulus::generate(bits, rng)?;
        if &e >= fmod.n() {
            return Err(Error::BadPublicExponent);
        }
        match V4SecretKey::from_parts(fmod, e.clone()) {
            Ok(sk) => return Ok((sk.public.clone(), sk)),
            Err(Error::BadPublicExponent) => continue,
            Err(err) => return Err(err),
        }
    }
}

impl V4PublicKey {
    /// Only checks 3 ≤ e < n; coprimality with φ(n) needs the factors.
    pub fn new(modulus: Modulus, e: BigUint) -> Result<Self> {
        if e < BigUint::from(3u32) || &e >= modulus.n() {
            return Err(Error::BadPublicExponent);
        }
        Ok(Self { modulus, e })
    }

    pub fn e(&self) -> &BigUint {
        &self.e
    }

    pub fn encrypt_with_pad(&self, m: &BigUint, r: &BigUint) -> Result<Ciphertext> {
        if m >= self.modulus.n() {
            return Err(Error::PlaintextOutOfRange);
        }
        if !self.modulus.is_unit_mod_n(r) {
            return Err(Error::PadNotUnit);
        }
        let n_sq = self.modulus.n_sq();
        let c = self.modulus.one_plus_n_pow(m) * mod_pow_uint(r, &self.e, n_sq) % n_sq;
        Ok(Ciphertext::from_unit(c, Scheme::V4))
    }
}

impl EncryptionKey for V4PublicKey {
    fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn scheme(&self) -> Scheme {
        Scheme::V4
    }

    fn encrypt<R: Rng + ?Sized>(&self, m: &BigUint, rng: &mut R) -> Result<Ciphertext> {
        let r = self.sample_pad(rng);
        self.encrypt_with_pad(m, &r)
    }

    fn is_homomorphic(&self) -> bool {
        false
    }

    fn sample_pad<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        sample_unit(self.modulus.n(), rng)
    }

    fn blinding_factor(&self, pad: &BigUint) -> Result<BigUint> {
        if !self.modulus.is_unit_mod_n(pad) {
            return Err(Error::PadNotUnit);
        }
        Ok(mod_pow_uint(pad, &self.e, self.modulus.n_sq()))
    }
}

impl V4SecretKey {
    /// d = e⁻¹ mod φ(n).
    pub fn from_parts(fmod: FactoredModulus, e: BigUint) -> Result<Self> {
        if e < BigUint::from(3u32) || &e >= fmod.n() {
            return Err(Error::BadPublicExponent);
        }
        let d = mod_inv(&e, fmod.phi()).map_err(|_| Error::BadPublicExponent)?;
        Ok(Self {
            public: V4PublicKey {
                modulus: fmod.modulus().clone(),
                e,
            },
            fmod,
            d,
        })
    }

    pub fn factored_modulus(&self) -> &FactoredModulus {
        &self.fmod
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    /// r = c^d mod n.
    pub fn recover_pad(&self, c: &Ciphertext) -> Result<BigUint> {
        self.public.check(c)?;
        let n = self.public.modulus.n();
        Ok(mod_pow_uint(&(c.value() % n), &self.d, n))
    }

    pub fn decrypt_full(&self, c: &Ciphertext) -> Result<(BigUint, BigUint)> {
        let r = self.recover_pad(c)?;
        let m = self.class_given_pad(c, &r)?;
        Ok((m, r))
    }

    fn class_given_pad(&self, c: &Ciphertext, r: &BigUint) -> Result<BigUint> {
        let modulus = &self.public.modulus;
        let n_sq = modulus.n_sq();
        let re = mod_pow_uint(r, &self.public.e, n_sq);
        let u = c.value() * mod_inv(&re, n_sq)? % n_sq;
        l_function(&u, modulus)
    }
}

impl DecryptionKey for V4SecretKey {
    type Public = V4PublicKey;

    fn public(&self) -> &V4PublicKey {
        &self.public
    }

    fn decrypt(&self, c: &Ciphertext) -> Result<BigUint> {
        let r = self.recover_pad(c)?;
        self.class_given_pad(c, &r)
    }
}

/// Checks e·d ≡ 1 mod φ(n) without trusting the stored d.
pub fn exponents_consistent(sk: &V4SecretKey) -> bool {
    (sk.public.e() * &sk.d % sk.fmod.phi()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{add, rerandomize, scalar_mul};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn tiny(p: u64, q: u64, e: u64) -> V4SecretKey {
        V4SecretKey::from_parts(FactoredModulus::new(b(p), b(q)).unwrap(), b(e)).unwrap()
    }

    #[test]
    fn exhaustive_full_recovery() {
        // φ(15) = 8, φ(35) = 24: e = 3 is fine at 15, e = 5 at 35
        for (p, q, e) in [(3u64, 5u64, 3u64), (3, 5, 7), (5, 7, 5), (5, 7, 11)] {
            let sk = tiny(p, q, e);
            assert!(exponents_consistent(&sk));
            let n = p * q;
            for m in 0..n {
                for r in (1..n).filter(|&r| gcd(r, n) == 1) {
                    let c = sk.public().encrypt_with_pad(&b(m), &b(r)).unwrap();
                    assert_eq!(sk.recover_pad(&c).unwrap(), b(r));
                    assert_eq!(sk.decrypt_full(&c).unwrap(), (b(m), b(r)));
                }
            }
        }
    }

    #[test]
    fn example_at_15() {
        let sk = tiny(3, 5, 3);
        assert_eq!(sk.d(), &b(3));
        // (1 + 2·15)·2^3 = 248 mod 225 = 23
        let c = sk.public().encrypt_with_pad(&b(2), &b(2)).unwrap();
        assert_eq!(c.value(), &b(23));
        assert_eq!(sk.decrypt_full(&c).unwrap(), (b(2), b(2)));
    }

    #[test]
    fn bad_exponents() {
        let f = FactoredModulus::new(b(5), b(7)).unwrap();
        for e in [1u64, 2, 3, 35, 36] {
            assert_eq!(
                V4SecretKey::from_parts(f.clone(), b(e)),
                Err(Error::BadPublicExponent),
                "e = {e}"
            );
        }
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        assert_eq!(
            keygen(64, Some(&b(4)), &mut rng),
            Err(Error::BadPublicExponent)
        );
    }

    #[test]
    fn homomorphic_operations_are_refused() {
        let sk = tiny(3, 5, 3);
        let pk = sk.public();
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        let c = pk.encrypt_with_pad(&b(2), &b(2)).unwrap();
        assert_eq!(add(pk, &c, &c), Err(Error::NotHomomorphic(Scheme::V4)));
        assert_eq!(
            scalar_mul(pk, &c, &b(2)),
            Err(Error::NotHomomorphic(Scheme::V4))
        );
        assert_eq!(
            rerandomize(pk, &c, &mut rng),
            Err(Error::NotHomomorphic(Scheme::V4))
        );
    }

    #[test]
    fn raw_products_do_not_decrypt_to_sums() {
        // the product of two ciphertexts is still a valid ciphertext, of
        // something other than the sum for at least one pair
        let sk = tiny(3, 5, 3);
        let pk = sk.public();
        let mut mismatches = 0;
        for (m1, r1, m2, r2) in [(1u64, 2u64, 1u64, 7u64), (3, 4, 5, 8), (0, 2, 0, 2)] {
            let c1 = pk.encrypt_with_pad(&b(m1), &b(r1)).unwrap();
            let c2 = pk.encrypt_with_pad(&b(m2), &b(r2)).unwrap();
            let prod = Ciphertext::new(c1.value() * c2.value() % 225u32, Scheme::V4, pk.modulus())
                .unwrap();
            if sk.decrypt(&prod).unwrap() != b((m1 + m2) % 15) {
                mismatches += 1;
            }
        }
        assert!(mismatches > 0);
    }

    #[test]
    fn default_exponent_keygen() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let (pk, sk) = keygen(256, None, &mut rng).unwrap();
        assert_eq!(pk.e(), &b(65537));
        assert!(exponents_consistent(&sk));
        let m = b(987654321);
        assert_eq!(sk.decrypt(&pk.encrypt(&m, &mut rng).unwrap()).unwrap(), m);
    }
}
