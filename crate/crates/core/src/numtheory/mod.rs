//! Arbitrary-precision number theory shared by every scheme.
//!
//! All values handed out by this module are fully reduced into `[0, m)`.

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

mod counter;
mod prime;

pub use counter::{count_ops, OpCounts};
pub use prime::{gen_prime, is_probable_prime, MILLER_RABIN_ROUNDS};

/// Largest trial divisor [`element_order`] will use to factor the group exponent.
pub const ORDER_TRIAL_BOUND: u64 = 1 << 20;

/// An RSA modulus n together with n².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulus {
    n: BigUint,
    n_sq: BigUint,
}

impl Modulus {
    pub fn new(n: BigUint) -> Result<Self> {
        if n < BigUint::from(15u32) {
            return Err(Error::InvalidModulus("n must be at least 15"));
        }
        if n.is_even() {
            return Err(Error::InvalidModulus("n must be odd"));
        }
        let n_sq = &n * &n;
        Ok(Self { n, n_sq })
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    pub fn n_sq(&self) -> &BigUint {
        &self.n_sq
    }

    pub fn bit_length(&self) -> u64 {
        self.n.bits()
    }

    /// `1 ≤ x < n²` and `gcd(x, n) = 1`.
    pub fn is_unit_mod_n_sq(&self, x: &BigUint) -> bool {
        !x.is_zero() && x < &self.n_sq && x.gcd(&self.n).is_one()
    }

    /// `1 ≤ x < n` and `gcd(x, n) = 1`.
    pub fn is_unit_mod_n(&self, x: &BigUint) -> bool {
        !x.is_zero() && x < &self.n && x.gcd(&self.n).is_one()
    }

    /// 1 + x·n mod n², i.e. (1 + n)^x by the binomial identity.
    pub fn one_plus_n_pow(&self, x: &BigUint) -> BigUint {
        (BigUint::one() + x * &self.n) % &self.n_sq
    }
}

/// n = pq with its factorisation and the derived Carmichael value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredModulus {
    modulus: Modulus,
    p: BigUint,
    q: BigUint,
    lambda: BigUint,
    phi: BigUint,
}

impl FactoredModulus {
    /// Validates that p and q are distinct odd primes with gcd(pq, λ) = 1.
    pub fn new(p: BigUint, q: BigUint) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidModulus("p and q must be distinct"));
        }
        if p.is_even() || q.is_even() {
            return Err(Error::InvalidModulus("p and q must be odd"));
        }
        if !is_probable_prime(&p) || !is_probable_prime(&q) {
            return Err(Error::InvalidModulus("p and q must be prime"));
        }
        let modulus = Modulus::new(&p * &q)?;
        let one = BigUint::one();
        let pm1 = &p - &one;
        let qm1 = &q - &one;
        let lambda = lcm(&pm1, &qm1);
        if !modulus.n().gcd(&lambda).is_one() {
            return Err(Error::InvalidModulus("gcd(n, lambda) must be 1"));
        }
        let phi = pm1 * qm1;
        Ok(Self {
            modulus,
            p,
            q,
            lambda,
            phi,
        })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n(&self) -> &BigUint {
        self.modulus.n()
    }

    pub fn n_sq(&self) -> &BigUint {
        self.modulus.n_sq()
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    pub fn lambda(&self) -> &BigUint {
        &self.lambda
    }

    pub fn phi(&self) -> &BigUint {
        &self.phi
    }

    /// Draws two distinct `bits / 2`-bit primes until n has exactly `bits` bits
    /// and satisfies the invariants of [`FactoredModulus::new`].
    pub fn generate<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<Self> {
        if bits < 16 || !bits.is_multiple_of(2) {
            return Err(Error::InvalidParameter(
                "modulus bits must be even and >= 16",
            ));
        }
        loop {
            let p = gen_prime(bits / 2, rng);
            let q = gen_prime(bits / 2, rng);
            if (&p * &q).bits() != bits {
                continue;
            }
            if let Ok(f) = Self::new(p, q) {
                return Ok(f);
            }
        }
    }
}

/// (u − 1)/n for u ≡ 1 mod n, after reducing u mod n².
pub fn l_function(u: &BigUint, modulus: &Modulus) -> Result<BigUint> {
    let u = u % modulus.n_sq();
    if u.is_zero() || !(&u - 1u32).is_multiple_of(modulus.n()) {
        return Err(Error::NotCongruentOne);
    }
    Ok((u - 1u32) / modulus.n())
}

pub fn lcm(a: &BigUint, b: &BigUint) -> BigUint {
    a.lcm(b)
}

/// x with a·x ≡ 1 mod m.
pub fn mod_inv(a: &BigUint, m: &BigUint) -> Result<BigUint> {
    if m <= &BigUint::one() {
        return Err(Error::NotInvertible);
    }
    counter::record_inversion(m);
    let a = BigInt::from_biguint(Sign::Plus, a % m);
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let eg = a.extended_gcd(&m_int);
    if !eg.gcd.is_one() {
        return Err(Error::NotInvertible);
    }
    Ok(eg.x.mod_floor(&m_int).magnitude().clone())
}

/// base^exp mod m for a non-negative exponent.
pub fn mod_pow_uint(base: &BigUint, exp: &BigUint, m: &BigUint) -> BigUint {
    assert!(!m.is_zero(), "modulus must be positive");
    counter::record_pow(m);
    base.modpow(exp, m)
}

/// base^exp mod m; a negative exponent inverts the base first.
pub fn mod_pow(base: &BigUint, exp: &BigInt, m: &BigUint) -> Result<BigUint> {
    if exp.is_negative() {
        let inv = mod_inv(base, m)?;
        Ok(mod_pow_uint(&inv, exp.magnitude(), m))
    } else {
        Ok(mod_pow_uint(base, exp.magnitude(), m))
    }
}

/// Uniform r in [1, m) with gcd(r, m) = 1, by rejection.
pub fn sample_unit<R: Rng + ?Sized>(m: &BigUint, rng: &mut R) -> BigUint {
    assert!(m >= &BigUint::from(2u32), "sample_unit needs m >= 2");
    loop {
        let r = rng.gen_biguint_below(m);
        if !r.is_zero() && r.gcd(m).is_one() {
            return r;
        }
    }
}

/// Least k ≥ 1 with g^k ≡ 1 mod m, given a multiple of the order.
///
/// Only meant for oracle-scale moduli: the exponent is factored by trial
/// division up to [`ORDER_TRIAL_BOUND`].
pub fn element_order(g: &BigUint, m: &BigUint, group_exponent: &BigUint) -> Result<BigUint> {
    if !g.gcd(m).is_one() {
        return Err(Error::NotInvertible);
    }
    if group_exponent.is_zero() || !g.modpow(group_exponent, m).is_one() {
        return Err(Error::InvalidParameter(
            "group exponent does not annihilate g",
        ));
    }
    let primes = prime::factor_small(group_exponent, ORDER_TRIAL_BOUND).ok_or(Error::TooLarge)?;
    let mut order = group_exponent.clone();
    for p in primes {
        while order.is_multiple_of(&p) {
            let candidate = &order / &p;
            if g.modpow(&candidate, m).is_one() {
                order = candidate;
            } else {
                break;
            }
        }
    }
    Ok(order)
}
