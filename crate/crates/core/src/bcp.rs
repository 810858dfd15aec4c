//! Double-trapdoor encryption: A = g^r, B = h^r (1 + m·n) mod n², h = g^a.
//!
//! Two independent secrets open a ciphertext. The user key a gives
//! m = L(B / A^a). The master key (λ, ρ) recovers the pad r from A, as in
//! Paillier decryption with x = r and y = 1, and then m.
//!
//! Two setups are supported. [`Mode::Original`] takes g = α² and a < nλ/2
//! and its master decryption needs a and τ = λ⁻¹ mod n. [`Mode::Revised`]
//! takes any g with n | ord(g) and a ∈ Z*_n, and its master key holds no
//! information about a at all.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::numtheory::{l_function, mod_inv, mod_pow_uint, sample_unit, FactoredModulus, Modulus};
use crate::paillier::generator_rho;

/// Upper bound on the multiples of n tried when lifting a recovered pad.
pub const PAD_LIFT_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Original,
    Revised,
}

impl Mode {
    pub fn id(self) -> &'static str {
        match self {
            Mode::Original => "original",
            Mode::Revised => "revised",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(Mode::Original),
            "revised" => Ok(Mode::Revised),
            _ => Err(Error::InvalidParameter("unknown bcp mode")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcpPublicKey {
    modulus: Modulus,
    g: BigUint,
    h: BigUint,
    mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcpUserKey {
    a: BigUint,
}

/// λ and ρ = L(g^λ)⁻¹ mod n in both modes; the original mode also carries
/// τ and a, since its second decryption path needs them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BcpMasterKey {
    Original {
        fmod: FactoredModulus,
        rho: BigUint,
        tau: BigUint,
        a: BigUint,
    },
    Revised {
        fmod: FactoredModulus,
        rho: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BcpCiphertext {
    a: BigUint,
    b: BigUint,
}

impl BcpPublicKey {
    pub fn new(modulus: Modulus, g: BigUint, h: BigUint, mode: Mode) -> Result<Self> {
        if !modulus.is_unit_mod_n_sq(&g) || !modulus.is_unit_mod_n_sq(&h) {
            return Err(Error::InvalidKey("g and h must be units of Z*_{n^2}"));
        }
        Ok(Self {
            modulus,
            g,
            h,
            mode,
        })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> &BigUint {
        self.modulus.n()
    }

    pub fn g(&self) -> &BigUint {
        &self.g
    }

    pub fn h(&self) -> &BigUint {
        &self.h
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn sample_pad<R: Rng + ?Sized>(&self, rng: &mut R) -> BigUint {
        sample_unit(self.modulus.n(), rng)
    }

    /// With `r = None` a fresh pad is drawn from Z*_n.
    pub fn encrypt<R: Rng + ?Sized>(
        &self,
        m: &BigUint,
        r: Option<&BigUint>,
        rng: &mut R,
    ) -> Result<BcpCiphertext> {
        match r {
            Some(r) => self.encrypt_with_pad(m, r),
            None => {
                let r = self.sample_pad(rng);
                self.encrypt_with_pad(m, &r)
            }
        }
    }

    /// Any r ∈ Z_n is accepted: r only ever appears as an exponent.
    pub fn encrypt_with_pad(&self, m: &BigUint, r: &BigUint) -> Result<BcpCiphertext> {
        if m >= self.modulus.n() {
            return Err(Error::PlaintextOutOfRange);
        }
        if r >= self.modulus.n() {
            return Err(Error::PadOutOfRange);
        }
        let n_sq = self.modulus.n_sq();
        let a = mod_pow_uint(&self.g, r, n_sq);
        let b = mod_pow_uint(&self.h, r, n_sq) * self.modulus.one_plus_n_pow(m) % n_sq;
        Ok(BcpCiphertext { a, b })
    }

    pub fn check(&self, c: &BcpCiphertext) -> Result<()> {
        if self.modulus.is_unit_mod_n_sq(&c.a) && self.modulus.is_unit_mod_n_sq(&c.b) {
            Ok(())
        } else {
            Err(Error::CiphertextNotUnit)
        }
    }
}

impl BcpUserKey {
    pub fn new(a: BigUint) -> Self {
        Self { a }
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }
}

impl BcpMasterKey {
    pub fn mode(&self) -> Mode {
        match self {
            BcpMasterKey::Original { .. } => Mode::Original,
            BcpMasterKey::Revised { .. } => Mode::Revised,
        }
    }

    pub fn factored_modulus(&self) -> &FactoredModulus {
        match self {
            BcpMasterKey::Original { fmod, .. } | BcpMasterKey::Revised { fmod, .. } => fmod,
        }
    }

    pub fn rho(&self) -> &BigUint {
        match self {
            BcpMasterKey::Original { rho, .. } | BcpMasterKey::Revised { rho, .. } => rho,
        }
    }
}

impl BcpCiphertext {
    pub fn new(a: BigUint, b: BigUint, modulus: &Modulus) -> Result<Self> {
        if !modulus.is_unit_mod_n_sq(&a) || !modulus.is_unit_mod_n_sq(&b) {
            return Err(Error::CiphertextNotUnit);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }
}

pub fn setup<R: Rng + ?Sized>(
    bits: u64,
    mode: Mode,
    rng: &mut R,
) -> Result<(BcpPublicKey, BcpUserKey, BcpMasterKey)> {
    let fmod = FactoredModulus::generate(bits, rng)?;
    setup_with_modulus(fmod, mode, rng)
}

/// Samples g and a over a fixed factored modulus.
pub fn setup_with_modulus<R: Rng + ?Sized>(
    fmod: FactoredModulus,
    mode: Mode,
    rng: &mut R,
) -> Result<(BcpPublicKey, BcpUserKey, BcpMasterKey)> {
    let n_sq = fmod.n_sq().clone();
    let (g, a) = match mode {
        Mode::Original => {
            let bound = (fmod.n() * fmod.lambda()) >> 1u32;
            let a = rng.gen_biguint_range(&BigUint::one(), &bound);
            let g = loop {
                let alpha = sample_unit(&n_sq, rng);
                let g = &alpha * &alpha % &n_sq;
                if generator_rho(&fmod, &g).is_ok() {
                    break g;
                }
            };
            (g, a)
        }
        Mode::Revised => {
            let g = loop {
                let g = sample_unit(&n_sq, rng);
                if generator_rho(&fmod, &g).is_ok() {
                    break g;
                }
            };
            (g, sample_unit(fmod.n(), rng))
        }
    };
    keys_from_parts(fmod, g, a, mode)
}

/// Derives h = g^a and the master key for given g and a.
pub fn keys_from_parts(
    fmod: FactoredModulus,
    g: BigUint,
    a: BigUint,
    mode: Mode,
) -> Result<(BcpPublicKey, BcpUserKey, BcpMasterKey)> {
    let rho = generator_rho(&fmod, &g)?;
    match mode {
        Mode::Original => {
            let bound = (fmod.n() * fmod.lambda()) >> 1u32;
            if a.is_zero() || a >= bound {
                return Err(Error::InvalidKey("a must lie in [1, n*lambda/2)"));
            }
        }
        Mode::Revised => {
            if !fmod.modulus().is_unit_mod_n(&a) {
                return Err(Error::InvalidKey("a must be a unit of Z_n"));
            }
        }
    }
    let h = mod_pow_uint(&g, &a, fmod.n_sq());
    let pk = BcpPublicKey::new(fmod.modulus().clone(), g, h, mode)?;
    let mk = match mode {
        Mode::Original => {
            let tau = mod_inv(fmod.lambda(), fmod.n())?;
            BcpMasterKey::Original {
                fmod,
                rho,
                tau,
                a: a.clone(),
            }
        }
        Mode::Revised => BcpMasterKey::Revised { fmod, rho },
    };
    Ok((pk, BcpUserKey { a }, mk))
}

/// m = L(B · (A^a)⁻¹ mod n²).
pub fn dec_user(pk: &BcpPublicKey, uk: &BcpUserKey, c: &BcpCiphertext) -> Result<BigUint> {
    pk.check(c)?;
    let n_sq = pk.modulus.n_sq();
    let aa = mod_pow_uint(&c.a, &uk.a, n_sq);
    let u = &c.b * mod_inv(&aa, n_sq)? % n_sq;
    l_function(&u, &pk.modulus)
}

/// r mod n = ρ · L(A^λ mod n²) mod n.
fn pad_mod_n(pk: &BcpPublicKey, mk: &BcpMasterKey, c: &BcpCiphertext) -> Result<BigUint> {
    let fmod = mk.factored_modulus();
    let al = mod_pow_uint(&c.a, fmod.lambda(), pk.modulus.n_sq());
    Ok(l_function(&al, &pk.modulus)? * mk.rho() % pk.modulus.n())
}

/// γ = a·r mod n, m = τ · L((B · g^{-γ})^λ mod n²) mod n.
pub fn dec_master_original(
    pk: &BcpPublicKey,
    mk: &BcpMasterKey,
    c: &BcpCiphertext,
) -> Result<BigUint> {
    let BcpMasterKey::Original { fmod, tau, a, .. } = mk else {
        return Err(Error::WrongMode);
    };
    pk.check(c)?;
    let n = pk.modulus.n();
    let n_sq = pk.modulus.n_sq();
    let r = pad_mod_n(pk, mk, c)?;
    let gamma = a * r % n;
    let gg = mod_pow_uint(&pk.g, &gamma, n_sq);
    let u = &c.b * mod_inv(&gg, n_sq)? % n_sq;
    let big_l = l_function(&mod_pow_uint(&u, fmod.lambda(), n_sq), &pk.modulus)?;
    Ok(big_l * tau % n)
}

/// The least r' ≡ r (mod n) with g^{r'} = A.
///
/// Fresh ciphertexts have r' < n. A sum of k ciphertexts has pad exponent
/// below k·n, so the search walks r' = r, r + n, r + 2n, ... up to
/// [`PAD_LIFT_LIMIT`] steps.
pub fn recover_pad(pk: &BcpPublicKey, mk: &BcpMasterKey, c: &BcpCiphertext) -> Result<BigUint> {
    pk.check(c)?;
    let n = pk.modulus.n();
    let n_sq = pk.modulus.n_sq();
    let mut r = pad_mod_n(pk, mk, c)?;
    let mut x = mod_pow_uint(&pk.g, &r, n_sq);
    if x == c.a {
        return Ok(r);
    }
    // g^n by repeated multiplication keeps the exponentiation count flat
    let step = (0..n.bits()).rev().fold(BigUint::one(), |acc, i| {
        let sq = &acc * &acc % n_sq;
        if n.bit(i) {
            sq * &pk.g % n_sq
        } else {
            sq
        }
    });
    for _ in 1..PAD_LIFT_LIMIT {
        x = x * &step % n_sq;
        r += n;
        if x == c.a {
            return Ok(r);
        }
    }
    Err(Error::PadLiftExhausted)
}

/// m = L(B · (h^{r'})⁻¹ mod n²), never touching a.
pub fn dec_master_revised(
    pk: &BcpPublicKey,
    mk: &BcpMasterKey,
    c: &BcpCiphertext,
) -> Result<BigUint> {
    let r = recover_pad(pk, mk, c)?;
    let n_sq = pk.modulus.n_sq();
    let hr = mod_pow_uint(&pk.h, &r, n_sq);
    let u = &c.b * mod_inv(&hr, n_sq)? % n_sq;
    l_function(&u, &pk.modulus)
}

/// (A1·A2, B1·B2) mod n², an encryption of m1 + m2 under pad r1 + r2.
pub fn add(pk: &BcpPublicKey, c1: &BcpCiphertext, c2: &BcpCiphertext) -> Result<BcpCiphertext> {
    pk.check(c1)?;
    pk.check(c2)?;
    let n_sq = pk.modulus.n_sq();
    Ok(BcpCiphertext {
        a: &c1.a * &c2.a % n_sq,
        b: &c1.b * &c2.b % n_sq,
    })
}

/// (A^k, B^k) mod n², an encryption of k·m under pad k·r.
pub fn scalar_mul(pk: &BcpPublicKey, c: &BcpCiphertext, k: &BigUint) -> Result<BcpCiphertext> {
    pk.check(c)?;
    let n_sq = pk.modulus.n_sq();
    Ok(BcpCiphertext {
        a: mod_pow_uint(&c.a, k, n_sq),
        b: mod_pow_uint(&c.b, k, n_sq),
    })
}

/// Multiplies by a fresh encryption of zero.
pub fn rerandomize<R: Rng + ?Sized>(
    pk: &BcpPublicKey,
    c: &BcpCiphertext,
    rng: &mut R,
) -> Result<BcpCiphertext> {
    let zero = pk.encrypt(&BigUint::zero(), None, rng)?;
    add(pk, c, &zero)
}

/// (1, 1): zero under the zero pad.
pub fn trivial_zero() -> BcpCiphertext {
    BcpCiphertext {
        a: BigUint::one(),
        b: BigUint::one(),
    }
}
