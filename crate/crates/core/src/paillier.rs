//! The original Paillier scheme: c = g^m r^n mod n².
//!
//! With λ known, the class m is ρ·L(c^λ mod n²) mod n where
//! ρ = L(g^λ mod n²)⁻¹ mod n, and the pad is r = (c·g^{-m})^s mod n for any
//! s with n·s ≡ 1 mod λ. Both ρ and s depend only on the key and are
//! computed once at key construction.
//!
//! Decryption does not check that a ciphertext was honestly produced. The
//! scheme is malleable by design (that is what makes it additively
//! homomorphic) and offers no chosen-ciphertext protection. Its one-wayness
//! rests on the hardness of computing residuosity classes without λ, which
//! is an assumption, not something this crate can check.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{
    l_function, mod_inv, mod_pow, mod_pow_uint, sample_unit, FactoredModulus, Modulus,
};
use crate::scheme::{Ciphertext, DecryptionKey, EncryptionKey, Scheme};

/// How keygen picks the public base g.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GeneratorChoice {
    /// Uniform unit of Z*_{n²}, resampled until it passes validation.
    #[default]
    Random,
    /// g = 1 + n, which has order exactly n.
    OnePlusN,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaillierPublicKey {
    modulus: Modulus,
    g: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaillierSecretKey {
    public: PaillierPublicKey,
    fmod: FactoredModulus,
    rho: BigUint,
    s: BigInt,
}

/// ρ = L(g^λ mod n²)⁻¹ mod n, or an error if g fails the order check.
///
/// gcd(L(g^λ), n) = 1 holds exactly when n divides ord(g), so this one test
/// certifies both the order condition and the invertibility decryption needs.
pub(crate) fn generator_rho(fmod: &FactoredModulus, g: &BigUint) -> Result<BigUint> {
    if !fmod.modulus().is_unit_mod_n_sq(g) {
        return Err(Error::InvalidKey("generator is not a unit of Z*_{n^2}"));
    }
    let big_l = l_function(&mod_pow_uint(g, fmod.lambda(), fmod.n_sq()), fmod.modulus())?;
    mod_inv(&big_l, fmod.n()).map_err(|_| Error::InvalidKey("n does not divide ord(g)"))
}

/// The representative of n⁻¹ mod λ lying in (−λ/2, λ/2].
pub(crate) fn least_abs_inverse(n: &BigUint, lambda: &BigUint) -> Result<BigInt> {
    let s = mod_inv(n, lambda)?;
    let half = lambda >> 1u32;
    let s = BigInt::from_biguint(Sign::Plus, s);
    let lam = BigInt::from_biguint(Sign::Plus, lambda.clone());
    if s > BigInt::from_biguint(Sign::Plus, half) {
        Ok(s - lam)
    } else {
        Ok(s)
    }
}

/// (c·g^{-m})^s mod n: the unique pad below n once m is known.
pub(crate) fn pad_from_class(
    modulus: &Modulus,
    g: &BigUint,
    c: &BigUint,
    m: &BigUint,
    s: &BigInt,
) -> Result<BigUint> {
    let n = modulus.n();
    let g_inv = mod_inv(&(g % n), n)?;
    let residue = (c % n) * mod_pow_uint(&g_inv, m, n) % n;
    mod_pow(&residue, s, n)
}

pub fn keygen<R: Rng + ?Sized>(
    bits: u64,
    choice: GeneratorChoice,
    rng: &mut R,
) -> Result<(PaillierPublicKey, PaillierSecretKey)> {
    let fmod = FactoredModulus::generate(bits, rng)?;
    let sk = loop {
        let g = match choice {
            GeneratorChoice::OnePlusN => fmod.n() + 1u32,
            GeneratorChoice::Random => sample_unit(fmod.n_sq(), rng),
        };
        match PaillierSecretKey::from_parts(fmod.clone(), g) {
            Ok(sk) => break sk,
            Err(Error::InvalidKey(_)) => continue,
            Err(e) => return Err(e),
        }
    };
    Ok((sk.public.clone(), sk))
}

impl PaillierPublicKey {
    pub fn new(modulus: Modulus, g: BigUint) -> Result<Self> {
        if !modulus.is_unit_mod_n_sq(&g) {
            return Err(Error::InvalidKey("generator is not a unit of Z*_{n^2}"));
        }
        Ok(Self { modulus, g })
    }

    pub fn g(&self) -> &BigUint {
        &self.g
    }

    pub fn n(&self) -> &BigUint {
        self.modulus.n()
    }

    /// c = g^m · r^n mod n².
    pub fn encrypt_with_pad(&self, m: &BigUint, r: &BigUint) -> Result<Ciphertext> {
        if m >= self.n() {
            return Err(Error::PlaintextOutOfRange);
        }
        if !self.modulus.is_unit_mod_n(r) {
            return Err(Error::PadNotUnit);
        }
        let n_sq = self.modulus.n_sq();
        let c = mod_pow_uint(&self.g, m, n_sq) * mod_pow_uint(r, self.n(), n_sq) % n_sq;
        Ok(Ciphertext::from_unit(c, Scheme::Paillier))
    }
}

impl EncryptionKey for PaillierPublicKey {
    fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    fn scheme(&self) -> Scheme {
        Scheme::Paillier
    }

    fn encrypt<R: Rng + ?Sized>(&self, m: &BigUint, rng: &mut R) -> Result<Ciphertext> {
        let r = sample_unit(self.n(), rng);
        self.encrypt_with_pad(m, &r)
    }

    fn sample_pad<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        sample_unit(self.n(), rng)
    }

    fn blinding_factor(&self, pad: &BigUint) -> Result<BigUint> {
        if !self.modulus.is_unit_mod_n(pad) {
            return Err(Error::PadNotUnit);
        }
        Ok(mod_pow_uint(pad, self.n(), self.modulus.n_sq()))
    }
}

impl PaillierSecretKey {
    /// Builds the key from a factored modulus and a base g, precomputing ρ and s.
    pub fn from_parts(fmod: FactoredModulus, g: BigUint) -> Result<Self> {
        let rho = generator_rho(&fmod, &g)?;
        let s = least_abs_inverse(fmod.n(), fmod.lambda())?;
        let public = PaillierPublicKey {
            modulus: fmod.modulus().clone(),
            g,
        };
        Ok(Self {
            public,
            fmod,
            rho,
            s,
        })
    }

    /// Replaces s with another representative of n⁻¹ mod λ.
    pub fn with_s(mut self, s: BigInt) -> Result<Self> {
        let lam = BigInt::from_biguint(Sign::Plus, self.fmod.lambda().clone());
        let n = BigInt::from_biguint(Sign::Plus, self.fmod.n().clone());
        if !(n * &s - BigInt::one()).mod_floor(&lam).is_zero() {
            return Err(Error::InvalidKey("n*s is not 1 mod lambda"));
        }
        self.s = s;
        Ok(self)
    }

    pub fn factored_modulus(&self) -> &FactoredModulus {
        &self.fmod
    }

    pub fn lambda(&self) -> &BigUint {
        self.fmod.lambda()
    }

    pub fn rho(&self) -> &BigUint {
        &self.rho
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    /// ρ · L(u^λ mod n²) mod n for any unit u: the class of u with respect to g.
    pub(crate) fn class_of(&self, u: &BigUint) -> Result<BigUint> {
        let m = self.public.modulus();
        let big_l = l_function(&mod_pow_uint(u, self.fmod.lambda(), m.n_sq()), m)?;
        Ok(big_l * &self.rho % m.n())
    }

    /// (m, r) with c = g^m r^n mod n², m ∈ Z_n and r ∈ Z*_n.
    pub fn decrypt_full(&self, c: &Ciphertext) -> Result<(BigUint, BigUint)> {
        self.public.check(c)?;
        self.class_and_pad(c.value())
    }

    pub(crate) fn class_and_pad(&self, c: &BigUint) -> Result<(BigUint, BigUint)> {
        let m = self.class_of(c)?;
        let r = pad_from_class(self.public.modulus(), self.public.g(), c, &m, &self.s)?;
        Ok((m, r))
    }
}

impl DecryptionKey for PaillierSecretKey {
    type Public = PaillierPublicKey;

    fn public(&self) -> &PaillierPublicKey {
        &self.public
    }

    fn decrypt(&self, c: &Ciphertext) -> Result<BigUint> {
        self.public.check(c)?;
        self.class_of(c.value())
    }
}

impl PaillierSecretKey {
    /// True when the stored values are mutually consistent.
    pub fn is_consistent(&self) -> bool {
        let n = self.fmod.n();
        let lam = BigInt::from_biguint(Sign::Plus, self.fmod.lambda().clone());
        let ns = BigInt::from_biguint(Sign::Plus, n.clone()) * &self.s - BigInt::one();
        generator_rho(&self.fmod, self.public.g()).is_ok_and(|rho| rho == self.rho)
            && ns.mod_floor(&lam).is_zero()
            && self.rho.gcd(n).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{add, rerandomize, rerandomize_with, scalar_mul, trivial_zero};
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;
    use std::collections::HashMap;

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

    fn tiny(p: u64, q: u64, g: u64) -> PaillierSecretKey {
        let f = FactoredModulus::new(b(p), b(q)).unwrap();
        PaillierSecretKey::from_parts(f, b(g)).unwrap()
    }

    fn units(n: u64) -> Vec<u64> {
        (1..n).filter(|&x| gcd(x, n) == 1).collect()
    }

    /// Brute-force inverse of (x, y) ↦ g^x y^n with plain u64 arithmetic.
    fn preimage_table(n: u64, g: u64) -> HashMap<u64, (u64, u64)> {
        let nn = n * n;
        let pw = |b: u64, e: u64| (0..e).fold(1u64, |a, _| a * b % nn);
        let mut t = HashMap::new();
        for x in 0..n {
            for &y in &units(n) {
                t.insert(pw(g, x) * pw(y, n) % nn, (x, y));
            }
        }
        t
    }

    #[test]
    fn tiny_key_matches_hand_values() {
        let sk = tiny(3, 5, 16);
        assert_eq!(sk.lambda(), &b(4));
        assert_eq!(sk.rho(), &b(4));
        assert_eq!(sk.s(), &BigInt::from(-1));
        assert!(sk.clone().with_s(BigInt::from(3)).is_ok());
        assert!(sk.clone().with_s(BigInt::from(2)).is_err());
        assert!(sk.is_consistent());
    }

    #[test]
    fn rejects_generator_without_order_n() {
        let f = FactoredModulus::new(b(3), b(5)).unwrap();
        // 7 and 8 have orders 12 and 20, neither divisible by 15
        for g in [0u64, 1, 3, 7, 8, 226] {
            assert!(
                PaillierSecretKey::from_parts(f.clone(), b(g)).is_err(),
                "g = {g}"
            );
        }
    }

    #[test]
    fn encrypt_examples() {
        let sk = tiny(3, 5, 16);
        let pk = sk.public();
        assert_eq!(pk.encrypt_with_pad(&b(7), &b(2)).unwrap().value(), &b(83));
        assert_eq!(pk.encrypt_with_pad(&b(0), &b(1)).unwrap().value(), &b(1));
        for r in units(15) {
            let c = pk.encrypt_with_pad(&b(0), &b(r)).unwrap();
            assert_eq!(c.value(), &mod_pow_uint(&b(r), &b(15), &b(225)));
        }
        assert_eq!(
            pk.encrypt_with_pad(&b(15), &b(1)),
            Err(Error::PlaintextOutOfRange)
        );
        assert_eq!(pk.encrypt_with_pad(&b(1), &b(3)), Err(Error::PadNotUnit));
        assert_eq!(pk.encrypt_with_pad(&b(1), &b(0)), Err(Error::PadNotUnit));
        assert_eq!(pk.encrypt_with_pad(&b(1), &b(16)), Err(Error::PadNotUnit));
    }

    #[test]
    fn decrypt_examples() {
        let sk = tiny(3, 5, 16);
        let c = Ciphertext::new(b(83), Scheme::Paillier, sk.public().modulus()).unwrap();
        assert_eq!(sk.decrypt(&c).unwrap(), b(7));
        assert_eq!(sk.decrypt_full(&c).unwrap(), (b(7), b(2)));
        let one = trivial_zero(sk.public());
        assert_eq!(sk.decrypt(&one).unwrap(), b(0));
        assert_eq!(sk.decrypt_full(&one).unwrap(), (b(0), b(1)));
    }

    #[test]
    fn exhaustive_round_trips_against_brute_force() {
        for (p, q) in [(3u64, 5u64), (5, 7)] {
            let n = p * q;
            let f = FactoredModulus::new(b(p), b(q)).unwrap();
            let gs: Vec<u64> = (2..n * n)
                .filter(|&g| PaillierSecretKey::from_parts(f.clone(), b(g)).is_ok())
                .take(3)
                .chain([n + 1])
                .collect();
            for g in gs {
                let sk = tiny(p, q, g);
                let table = preimage_table(n, g);
                assert_eq!(table.len() as u64, n * units(n).len() as u64);
                for (&c, &(x, y)) in &table {
                    let ct =
                        Ciphertext::new(b(c), Scheme::Paillier, sk.public().modulus()).unwrap();
                    assert_eq!(sk.decrypt(&ct).unwrap(), b(x));
                    assert_eq!(sk.decrypt_full(&ct).unwrap(), (b(x), b(y)));
                    assert_eq!(sk.public().encrypt_with_pad(&b(x), &b(y)).unwrap(), ct);
                }
            }
        }
    }

    #[test]
    fn s_representative_does_not_change_pads() {
        let base = tiny(5, 7, 36);
        let lam = BigInt::from(12);
        let s0 = base.s().clone();
        let keys: Vec<_> = (-1..=2)
            .map(|k| base.clone().with_s(&s0 + &lam * k).unwrap())
            .collect();
        for m in 0..35u64 {
            for r in units(35) {
                let c = base.public().encrypt_with_pad(&b(m), &b(r)).unwrap();
                for k in &keys {
                    assert_eq!(k.decrypt_full(&c).unwrap(), (b(m), b(r)));
                }
            }
        }
    }

    #[test]
    fn homomorphic_add_exhaustive_at_15() {
        let sk = tiny(3, 5, 16);
        let pk = sk.public();
        let u = units(15);
        for m1 in 0..15u64 {
            for m2 in 0..15u64 {
                for &r1 in &u {
                    for &r2 in &u {
                        let c1 = pk.encrypt_with_pad(&b(m1), &b(r1)).unwrap();
                        let c2 = pk.encrypt_with_pad(&b(m2), &b(r2)).unwrap();
                        let c = add(pk, &c1, &c2).unwrap();
                        assert_eq!(
                            sk.decrypt_full(&c).unwrap(),
                            (b((m1 + m2) % 15), b(r1 * r2 % 15))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn add_examples() {
        let sk = tiny(3, 5, 16);
        let pk = sk.public();
        let c1 = pk.encrypt_with_pad(&b(1), &b(4)).unwrap();
        let c2 = pk.encrypt_with_pad(&b(2), &b(7)).unwrap();
        assert_eq!(sk.decrypt(&add(pk, &c1, &c2).unwrap()).unwrap(), b(3));
        assert_eq!(add(pk, &c1, &trivial_zero(pk)).unwrap(), c1);
        let foreign = Ciphertext::new(b(83), Scheme::V2, pk.modulus()).unwrap();
        assert!(matches!(
            add(pk, &c1, &foreign),
            Err(Error::SchemeMismatch { .. })
        ));
    }

    #[test]
    fn scalar_mul_examples() {
        let sk = tiny(3, 5, 16);
        let pk = sk.public();
        let c = pk.encrypt_with_pad(&b(7), &b(2)).unwrap();
        assert_eq!(scalar_mul(pk, &c, &b(1)).unwrap(), c);
        let zero = scalar_mul(pk, &c, &b(0)).unwrap();
        assert_eq!(zero.value(), &b(1));
        assert_eq!(sk.decrypt(&zero).unwrap(), b(0));
        assert_eq!(
            sk.decrypt(&scalar_mul(pk, &c, &b(2)).unwrap()).unwrap(),
            b(14)
        );
        for k in 0..40u64 {
            assert_eq!(
                sk.decrypt(&scalar_mul(pk, &c, &b(k)).unwrap()).unwrap(),
                b(7 * k % 15)
            );
        }
    }

    #[test]
    fn rerandomize_keeps_plaintext_and_multiplies_pad() {
        let sk = tiny(3, 5, 16);
        let pk = sk.public();
        let c = pk.encrypt_with_pad(&b(9), &b(2)).unwrap();
        assert_eq!(rerandomize_with(pk, &c, &b(1)).unwrap(), c);
        for r2 in units(15) {
            let c2 = rerandomize_with(pk, &c, &b(r2)).unwrap();
            assert_eq!(sk.decrypt_full(&c2).unwrap(), (b(9), b(2 * r2 % 15)));
        }
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let c3 = rerandomize(pk, &c, &mut rng).unwrap();
        assert_eq!(sk.decrypt(&c3).unwrap(), b(9));
        assert_eq!(rerandomize_with(pk, &c, &b(5)), Err(Error::PadNotUnit));
    }

    #[test]
    fn keygen_postconditions() {
        let mut rng = ChaCha20Rng::seed_from_u64(42);
        for bits in [16u64, 32, 128, 512] {
            for choice in [GeneratorChoice::Random, GeneratorChoice::OnePlusN] {
                let (pk, sk) = keygen(bits, choice, &mut rng).unwrap();
                assert_eq!(pk.modulus().bit_length(), bits);
                assert!(sk.is_consistent());
                let lam = BigInt::from_biguint(Sign::Plus, sk.lambda().clone());
                let n = BigInt::from_biguint(Sign::Plus, pk.n().clone());
                assert_eq!((n * sk.s()).mod_floor(&lam), BigInt::one());
                if choice == GeneratorChoice::OnePlusN {
                    assert_eq!(pk.g(), &(pk.n() + 1u32));
                    // ρ = λ⁻¹ mod n because L((1+n)^λ) = λ mod n
                    assert_eq!(sk.rho() * sk.lambda() % pk.n(), b(1));
                }
                let m = b(12345) % pk.n();
                let c = pk.encrypt(&m, &mut rng).unwrap();
                assert_eq!(sk.decrypt(&c).unwrap(), m);
            }
        }
        assert!(keygen(17, GeneratorChoice::Random, &mut rng).is_err());
        assert!(keygen(8, GeneratorChoice::Random, &mut rng).is_err());
    }

    #[test]
    fn decrypt_rejects_non_units() {
        let sk = tiny(3, 5, 16);
        let c = Ciphertext::from_unit(b(45), Scheme::Paillier);
        assert_eq!(sk.decrypt(&c), Err(Error::CiphertextNotUnit));
        assert_eq!(sk.decrypt_full(&c), Err(Error::CiphertextNotUnit));
    }
}
