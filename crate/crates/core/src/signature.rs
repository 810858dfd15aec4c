//! Paillier's trapdoor permutation over Z_{n²} and the signature scheme
//! built on it.
//!
//! Both rest on recovering the pad as well as the class: a signature on a
//! digest h is the unique (s1, s2) ∈ Z_n × Z*_n with h = g^{s1} s2^n mod n².

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

use crate::error::{Error, Result};
use crate::numtheory::{mod_pow_uint, Modulus};
use crate::paillier::{PaillierPublicKey, PaillierSecretKey};
use crate::scheme::{Ciphertext, DecryptionKey, EncryptionKey, Scheme};

/// Domain-separation label absorbed before the counter and message.
pub const HASH_LABEL: &[u8] = b"residua/paillier-sign/h2g/v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    s1: BigUint,
    s2: BigUint,
}

impl Signature {
    /// No range checks: out-of-range values simply fail verification.
    pub fn new(s1: BigUint, s2: BigUint) -> Self {
        Self { s1, s2 }
    }

    pub fn s1(&self) -> &BigUint {
        &self.s1
    }

    pub fn s2(&self) -> &BigUint {
        &self.s2
    }
}

/// An element m = m1 + n·m2 of Z_{n²}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WideMessage {
    value: BigUint,
    m1: BigUint,
    m2: BigUint,
}

impl WideMessage {
    pub fn new(value: BigUint, modulus: &Modulus) -> Result<Self> {
        if &value >= modulus.n_sq() {
            return Err(Error::PlaintextOutOfRange);
        }
        let (m2, m1) = value.div_rem(modulus.n());
        Ok(Self { value, m1, m2 })
    }

    pub fn from_halves(m1: BigUint, m2: BigUint, modulus: &Modulus) -> Result<Self> {
        let n = modulus.n();
        if &m1 >= n || &m2 >= n {
            return Err(Error::PlaintextOutOfRange);
        }
        let value = &m1 + n * &m2;
        Ok(Self { value, m1, m2 })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn m1(&self) -> &BigUint {
        &self.m1
    }

    pub fn m2(&self) -> &BigUint {
        &self.m2
    }
}

/// Deterministic map from bytes to a unit of Z*_{n²} that is at least 2.
///
/// SHAKE256(label ‖ counter_be32 ‖ msg) is squeezed to
/// ⌈(2·bits(n) + 64)/8⌉ bytes, read big-endian and reduced mod n²; the
/// counter starts at 0 and increments until the result qualifies.
pub fn hash_to_group(msg: &[u8], modulus: &Modulus) -> Result<BigUint> {
    let len = (2 * modulus.bit_length() as usize + 64).div_ceil(8);
    let mut buf = vec![0u8; len];
    for counter in 0..=u32::MAX {
        let mut xof = Shake256::default();
        xof.update(HASH_LABEL);
        xof.update(&counter.to_be_bytes());
        xof.update(msg);
        xof.finalize_xof().read(&mut buf);
        let h = BigUint::from_bytes_be(&buf) % modulus.n_sq();
        if h > BigUint::one() && h.gcd(modulus.n()).is_one() {
            return Ok(h);
        }
    }
    Err(Error::Internal("hash_to_group counter exhausted"))
}

pub fn sign(sk: &PaillierSecretKey, msg: &[u8]) -> Result<Signature> {
    let h = hash_to_group(msg, sk.public().modulus())?;
    sign_digest(sk, &h)
}

/// Signs an already-hashed group element.
pub fn sign_digest(sk: &PaillierSecretKey, h: &BigUint) -> Result<Signature> {
    if !sk.public().modulus().is_unit_mod_n_sq(h) {
        return Err(Error::CiphertextNotUnit);
    }
    let (s1, s2) = sk.class_and_pad(h)?;
    Ok(Signature { s1, s2 })
}

pub fn verify(pk: &PaillierPublicKey, msg: &[u8], sig: &Signature) -> bool {
    hash_to_group(msg, pk.modulus()).is_ok_and(|h| verify_digest(pk, &h, sig))
}

/// g^{s1} · s2^n ≡ h mod n², with s1 ∈ Z_n and s2 ∈ Z*_n.
pub fn verify_digest(pk: &PaillierPublicKey, h: &BigUint, sig: &Signature) -> bool {
    let m = pk.modulus();
    if &sig.s1 >= m.n() || !m.is_unit_mod_n(&sig.s2) {
        return false;
    }
    let n_sq = m.n_sq();
    let rhs = mod_pow_uint(pk.g(), &sig.s1, n_sq) * mod_pow_uint(&sig.s2, m.n(), n_sq) % n_sq;
    (h % n_sq) == rhs
}

/// c = g^{m1} · m2^n mod n².
pub fn owtp_forward(pk: &PaillierPublicKey, m: &WideMessage) -> Result<Ciphertext> {
    if m.m2.is_zero() || !pk.modulus().is_unit_mod_n(&m.m2) {
        return Err(Error::MessageNotPermutable);
    }
    pk.encrypt_with_pad(&m.m1, &m.m2)
}

pub fn owtp_inverse(sk: &PaillierSecretKey, c: &Ciphertext) -> Result<WideMessage> {
    sk.public().check(c)?;
    debug_assert_eq!(c.scheme(), Scheme::Paillier);
    let (m1, m2) = sk.class_and_pad(c.value())?;
    WideMessage::from_halves(m1, m2, sk.public().modulus())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::FactoredModulus;
    use crate::paillier::{keygen, GeneratorChoice};
    use rand::{RngCore, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn tiny() -> PaillierSecretKey {
        let f = FactoredModulus::new(b(3), b(5)).unwrap();
        PaillierSecretKey::from_parts(f, b(16)).unwrap()
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn hash_is_deterministic_unit() {
        let m = Modulus::new(b(15)).unwrap();
        let h = hash_to_group(b"a", &m).unwrap();
        assert_eq!(h, hash_to_group(b"a", &m).unwrap());
        assert!(m.is_unit_mod_n_sq(&h) && h >= b(2));
        assert_eq!(h, b(HASH_A_AT_15));
        assert_ne!(hash_to_group(b"b", &m).unwrap(), b(0));
    }

    // computed with an independent SHAKE256 implementation; counters 0 and 1
    // are rejected, counter 2 yields 128
    const HASH_A_AT_15: u64 = 128;

    #[test]
    fn hash_outputs_are_units_for_many_messages() {
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let (pk, _) = keygen(256, GeneratorChoice::Random, &mut rng).unwrap();
        for i in 0..2000u32 {
            let h = hash_to_group(&i.to_le_bytes(), pk.modulus()).unwrap();
            assert!(pk.modulus().is_unit_mod_n_sq(&h));
        }
    }

    #[test]
    fn sign_digest_examples() {
        let sk = tiny();
        assert_eq!(
            sign_digest(&sk, &b(83)).unwrap(),
            Signature::new(b(7), b(2))
        );
        assert_eq!(sign_digest(&sk, &b(1)).unwrap(), Signature::new(b(0), b(1)));
        assert!(verify_digest(
            sk.public(),
            &b(83),
            &Signature::new(b(7), b(2))
        ));
    }

    #[test]
    fn honest_signature_is_the_only_verifying_pair_at_15() {
        let sk = tiny();
        let pk = sk.public();
        for h in (1..225u64).filter(|&x| gcd(x, 15) == 1) {
            let honest = sign_digest(&sk, &b(h)).unwrap();
            for s1 in 0..15u64 {
                for s2 in 0..15u64 {
                    let cand = Signature::new(b(s1), b(s2));
                    assert_eq!(
                        verify_digest(pk, &b(h), &cand),
                        cand == honest,
                        "h={h} s1={s1} s2={s2}"
                    );
                }
            }
        }
    }

    #[test]
    fn verify_rejects_malformed_and_perturbed() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let (pk, sk) = keygen(512, GeneratorChoice::Random, &mut rng).unwrap();
        let (other, _) = keygen(512, GeneratorChoice::Random, &mut rng).unwrap();
        let sig = sign(&sk, b"ballot box").unwrap();
        assert!(verify(&pk, b"ballot box", &sig));
        assert!(!verify(&pk, b"ballot boy", &sig));
        assert!(!verify(&other, b"ballot box", &sig));
        let s1p = Signature::new((sig.s1() + 1u32) % pk.n(), sig.s2().clone());
        assert!(!verify(&pk, b"ballot box", &s1p));
        let out_of_range = Signature::new(sig.s1() + pk.n(), sig.s2().clone());
        assert!(!verify(&pk, b"ballot box", &out_of_range));
        assert!(!verify(
            &pk,
            b"ballot box",
            &Signature::new(sig.s1().clone(), b(0))
        ));
        let p = sk.factored_modulus().p().clone();
        assert!(!verify(
            &pk,
            b"ballot box",
            &Signature::new(sig.s1().clone(), p)
        ));
    }

    #[test]
    fn completeness_on_random_messages() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let (pk, sk) = keygen(512, GeneratorChoice::Random, &mut rng).unwrap();
        for _ in 0..200 {
            let mut msg = vec![0u8; (rng.next_u32() % 64) as usize];
            rng.fill_bytes(&mut msg);
            assert!(verify(&pk, &msg, &sign(&sk, &msg).unwrap()));
        }
    }

    #[test]
    fn owtp_examples() {
        let sk = tiny();
        let pk = sk.public();
        let m = pk.modulus();
        let c = owtp_forward(pk, &WideMessage::new(b(37), m).unwrap()).unwrap();
        assert_eq!(c.value(), &b(83));
        assert_eq!(owtp_inverse(&sk, &c).unwrap().value(), &b(37));
        for m1 in 0..15u64 {
            let c = owtp_forward(pk, &WideMessage::new(b(m1 + 15), m).unwrap()).unwrap();
            assert_eq!(c.value(), &mod_pow_uint(&b(16), &b(m1), &b(225)));
        }
        let one = Ciphertext::new(b(1), Scheme::Paillier, m).unwrap();
        let w = owtp_inverse(&sk, &one).unwrap();
        assert_eq!((w.m1(), w.m2(), w.value()), (&b(0), &b(1), &b(15)));
        assert_eq!(
            owtp_forward(pk, &WideMessage::new(b(2 + 15 * 3), m).unwrap()),
            Err(Error::MessageNotPermutable)
        );
        assert_eq!(
            owtp_forward(pk, &WideMessage::new(b(4), m).unwrap()),
            Err(Error::MessageNotPermutable)
        );
        assert_eq!(WideMessage::new(b(225), m), Err(Error::PlaintextOutOfRange));
    }

    #[test]
    fn owtp_is_a_permutation_at_15() {
        let sk = tiny();
        let pk = sk.public();
        let mut hit = vec![0u32; 225];
        for v in 0..225u64 {
            let w = WideMessage::new(b(v), pk.modulus()).unwrap();
            match owtp_forward(pk, &w) {
                Ok(c) => {
                    let idx = u64::try_from(c.value().clone()).unwrap() as usize;
                    hit[idx] += 1;
                    assert_eq!(owtp_inverse(&sk, &c).unwrap(), w);
                }
                Err(e) => {
                    assert_eq!(e, Error::MessageNotPermutable);
                    assert_ne!(gcd(v / 15, 15), 1);
                }
            }
        }
        for (c, &k) in hit.iter().enumerate() {
            assert_eq!(k, u32::from(gcd(c as u64, 15) == 1), "c = {c}");
        }
    }
}
