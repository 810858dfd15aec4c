//! Variant 2: g fixed to 1 + n and the secret exponent folded into κ = τλ,
//! with τ = λ⁻¹ mod n, so that decryption is a bare m = L(c^κ mod n²).

use num_bigint::{BigInt, BigUint};
use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{l_function, mod_inv, mod_pow_uint, sample_unit, FactoredModulus, Modulus};
use crate::paillier::{least_abs_inverse, pad_from_class};
use crate::scheme::{Ciphertext, DecryptionKey, EncryptionKey, Scheme};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V2PublicKey {
    modulus: Modulus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V2SecretKey {
    public: V2PublicKey,
    fmod: FactoredModulus,
    kappa: BigUint,
    s: BigInt,
}

pub fn keygen<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<(V2PublicKey, V2SecretKey)> {
    let sk = V2SecretKey::from_factored(FactoredModulus::generate(bits, rng)?)?;
    Ok((sk.public.clone(), sk))
}

impl V2PublicKey {
    pub fn new(modulus: Modulus) -> Self {
        Self { modulus }
    }

    /// (1 + m·n) · r^n mod n².
    pub fn encrypt_with_pad(&self, m: &BigUint, r: &BigUint) -> Result<Ciphertext> {
        if m >= self.modulus.n() {
            return Err(Error::PlaintextOutOfRange);
        }
        if !self.modulus.is_unit_mod_n(r) {
            return Err(Error::PadNotUnit);
        }
        let n_sq = self.modulus.n_sq();
        let c = self.modulus.one_plus_n_pow(m) * mod_pow_uint(r, self.modulus.n(), n_sq) % n_sq;
        Ok(Ciphertext::from_unit(c, Scheme::V2))
    }
}

impl EncryptionKey for V2PublicKey {
    fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn scheme(&self) -> Scheme {
        Scheme::V2
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

impl V2SecretKey {
    pub fn from_factored(fmod: FactoredModulus) -> Result<Self> {
        let tau = mod_inv(fmod.lambda(), fmod.n())?;
        let kappa = tau * fmod.lambda();
        // gcd(n, τλ) = 1, so n still has an inverse modulo κ
        let s = least_abs_inverse(fmod.n(), &kappa)?;
        Ok(Self {
            public: V2PublicKey::new(fmod.modulus().clone()),
            fmod,
            kappa,
            s,
        })
    }

    pub fn factored_modulus(&self) -> &FactoredModulus {
        &self.fmod
    }

    pub fn kappa(&self) -> &BigUint {
        &self.kappa
    }

    /// (m, r) with c = (1 + m·n) r^n mod n², r = (c mod n)^{n⁻¹ mod κ} mod n.
    pub fn decrypt_full(&self, c: &Ciphertext) -> Result<(BigUint, BigUint)> {
        let m = self.decrypt(c)?;
        let modulus = self.public.modulus();
        let g = modulus.one_plus_n_pow(&BigUint::from(1u32));
        let r = pad_from_class(modulus, &g, c.value(), &m, &self.s)?;
        Ok((m, r))
    }
}

impl DecryptionKey for V2SecretKey {
    type Public = V2PublicKey;

    fn public(&self) -> &V2PublicKey {
        &self.public
    }

    fn decrypt(&self, c: &Ciphertext) -> Result<BigUint> {
        self.public.check(c)?;
        let m = self.public.modulus();
        l_function(&mod_pow_uint(c.value(), &self.kappa, m.n_sq()), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::add;

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

    fn tiny(p: u64, q: u64) -> V2SecretKey {
        V2SecretKey::from_factored(FactoredModulus::new(b(p), b(q)).unwrap()).unwrap()
    }

    #[test]
    fn kappa_at_15() {
        // λ = 4, τ = 4⁻¹ mod 15 = 4
        let sk = tiny(3, 5);
        assert_eq!(sk.kappa(), &b(16));
        assert_eq!(sk.kappa() % 4u32, b(0));
        assert_eq!(sk.kappa() % 15u32 * 4u32 % 15u32, b(4));
    }

    #[test]
    fn exhaustive_full_recovery() {
        for (p, q) in [(3u64, 5u64), (5, 7)] {
            let sk = tiny(p, q);
            let n = p * q;
            for m in 0..n {
                for r in (1..n).filter(|&r| gcd(r, n) == 1) {
                    let c = sk.public().encrypt_with_pad(&b(m), &b(r)).unwrap();
                    // independent oracle: plain u64 arithmetic
                    let nn = n * n;
                    let mut rn = 1u64;
                    for _ in 0..n {
                        rn = rn * r % nn;
                    }
                    assert_eq!(c.value(), &b((1 + m * n) % nn * rn % nn));
                    assert_eq!(sk.decrypt_full(&c).unwrap(), (b(m), b(r)));
                }
            }
        }
    }

    #[test]
    fn example_ciphertexts_at_15() {
        let sk = tiny(3, 5);
        let pk = sk.public();
        // 2^15 mod 225 = 143, (1 + 45)·143 mod 225 = 53
        let c = pk.encrypt_with_pad(&b(3), &b(2)).unwrap();
        assert_eq!(c.value(), &b(53));
        assert_eq!(sk.decrypt_full(&c).unwrap(), (b(3), b(2)));
        let sum = add(pk, &c, &pk.encrypt_with_pad(&b(14), &b(7)).unwrap()).unwrap();
        assert_eq!(sk.decrypt(&sum).unwrap(), b(2));
    }

    #[test]
    fn seven_under_pad_two() {
        let sk = tiny(3, 5);
        let c = sk.public().encrypt_with_pad(&b(7), &b(2)).unwrap();
        assert_eq!(c.value(), &b(83));
        assert_eq!(mod_pow_uint(c.value(), sk.kappa(), &b(225)), b(106));
        assert_eq!(sk.decrypt(&c).unwrap(), b(7));
    }

    #[test]
    fn matches_paillier_with_one_plus_n() {
        let f = FactoredModulus::new(b(3), b(5)).unwrap();
        let sk = tiny(3, 5);
        let psk = crate::paillier::PaillierSecretKey::from_parts(f, b(16)).unwrap();
        for m in 0..15u64 {
            for r in (1..15u64).filter(|&r| gcd(r, 15) == 1) {
                let c = sk.public().encrypt_with_pad(&b(m), &b(r)).unwrap();
                let pc = psk.public().encrypt_with_pad(&b(m), &b(r)).unwrap();
                assert_eq!(c.value(), pc.value());
                assert_eq!(sk.decrypt(&c).unwrap(), psk.decrypt(&pc).unwrap());
            }
        }
    }

    #[test]
    fn rejects_non_unit_pad() {
        let sk = tiny(3, 5);
        assert_eq!(
            sk.public().encrypt_with_pad(&b(1), &b(5)),
            Err(Error::PadNotUnit)
        );
        assert_eq!(
            sk.public().encrypt_with_pad(&b(1), &b(0)),
            Err(Error::PadNotUnit)
        );
    }
}
