use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

pub const MILLER_RABIN_ROUNDS: usize = 40;
const TRIAL_DIVISION_BOUND: u32 = 1000;

fn small_primes() -> &'static [u32] {
    static PRIMES: std::sync::OnceLock<Vec<u32>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| {
        (2..TRIAL_DIVISION_BOUND)
            .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
            .collect()
    })
}

/// Trial division below 1000, then 40 Miller-Rabin rounds.
///
/// Witnesses come from a ChaCha20 stream keyed by SHA-256 of `n`, so the
/// answer is a pure function of `n`.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u32() {
        if small < 2 {
            return false;
        }
        if small < TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND {
            return small_primes()
                .iter()
                .take_while(|&&p| p * p <= small)
                .all(|&p| small % p != 0);
        }
    }
    if small_primes().iter().any(|&p| (n % p).is_zero()) {
        return false;
    }

    let one = BigUint::one();
    let n_minus_one = n - &one;
    let twos = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> twos;

    let seed: [u8; 32] = Sha256::digest(n.to_bytes_be()).into();
    let mut witnesses = ChaCha20Rng::from_seed(seed);
    let two = BigUint::from(2u32);

    'witness: for _ in 0..MILLER_RABIN_ROUNDS {
        let a = witnesses.gen_biguint_range(&two, &n_minus_one);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..twos {
            x = &x * &x % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An odd probable prime of exactly `bits` bits.
pub fn gen_prime<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> BigUint {
    assert!(bits >= 8, "gen_prime needs at least 8 bits");
    loop {
        let mut candidate = rng.gen_biguint(bits);
        candidate.set_bit(bits - 1, true);
        candidate.set_bit(0, true);
        if is_probable_prime(&candidate) {
            return candidate;
        }
    }
}

/// Distinct-prime factorisation by trial division, giving up past `bound`.
///
/// Returns `None` when a cofactor larger than `bound²` survives.
pub(crate) fn factor_small(n: &BigUint, bound: u64) -> Option<Vec<BigUint>> {
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d <= bound {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        if rest.is_multiple_of(&dd) {
            factors.push(dd.clone());
            while rest.is_multiple_of(&dd) {
                rest /= &dd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        let b = BigUint::from(bound);
        if rest > &b * &b {
            return None;
        }
        factors.push(rest);
    }
    Some(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_oracle(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn agrees_with_trial_division_below_2_pow_16() {
        for n in 0u64..(1 << 16) {
            assert_eq!(
                is_probable_prime(&BigUint::from(n)),
                trial_division_oracle(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn rejects_carmichael_numbers() {
        for n in [
            561u64, 1105, 1729, 2465, 2821, 6601, 8911, 41041, 825265, 321197185,
        ] {
            assert!(!is_probable_prime(&BigUint::from(n)));
        }
        // 2^89 - 1 is prime, 2^89 + 1 is not
        let m89 = (BigUint::one() << 89u32) - 1u32;
        assert!(is_probable_prime(&m89));
        assert!(!is_probable_prime(&(m89 + 2u32)));
    }

    #[test]
    fn generated_primes_pass_independent_trial_division() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for bits in 8..=20u64 {
            for _ in 0..20 {
                let p = gen_prime(bits, &mut rng);
                let v = p.to_u64().unwrap();
                assert!(trial_division_oracle(v), "{v} not prime");
                assert_eq!(p.bits(), bits);
                assert!(p.is_odd());
            }
        }
    }

    #[test]
    fn distinct_seeds_give_distinct_primes() {
        let a = gen_prime(256, &mut ChaCha20Rng::seed_from_u64(1));
        let b = gen_prime(256, &mut ChaCha20Rng::seed_from_u64(2));
        assert_ne!(a, b);
        assert_eq!(a, gen_prime(256, &mut ChaCha20Rng::seed_from_u64(1)));
    }

    #[test]
    fn factor_small_works_and_gives_up() {
        let f = factor_small(&BigUint::from(60u32), 100).unwrap();
        assert_eq!(f, vec![2u32.into(), 3u32.into(), 5u32.into()]);
        let f = factor_small(&BigUint::from(2u32 * 1_000_003), 10).is_none();
        assert!(f);
        let f = factor_small(&BigUint::from(97u32), 10).unwrap();
        assert_eq!(f, vec![BigUint::from(97u32)]);
    }
}
