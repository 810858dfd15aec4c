use thiserror::Error;

use crate::scheme::Scheme;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input to the L-function was not of the form 1 + kn.
    #[error("value is not congruent to 1 modulo n")]
    NotCongruentOne,
    #[error("value is not invertible modulo the given modulus")]
    NotInvertible,
    /// An exhaustive routine was asked to work at a size it cannot enumerate.
    #[error("input exceeds the oracle-scale limit")]
    TooLarge,
    #[error("plaintext must lie in [0, n)")]
    PlaintextOutOfRange,
    #[error("pad must be a unit of Z_n")]
    PadNotUnit,
    #[error("pad must lie in [0, n)")]
    PadOutOfRange,
    #[error("ciphertext is not a unit modulo n^2")]
    CiphertextNotUnit,
    #[error("scheme mismatch: expected {expected}, found {found}")]
    SchemeMismatch { expected: Scheme, found: Scheme },
    /// A ciphertext's key fingerprint names a different public key.
    #[error("ciphertext was produced under a different key")]
    KeyMismatch,
    #[error("{0} ciphertexts do not support homomorphic operations")]
    NotHomomorphic(Scheme),
    /// m2 shares a factor with n, so m has no preimage under the permutation.
    #[error("message is outside the permuted domain (gcd(m2, n) != 1)")]
    MessageNotPermutable,
    #[error("public exponent is not coprime to phi(n)")]
    BadPublicExponent,
    #[error("master key is in the wrong mode for this decryptor")]
    WrongMode,
    #[error("pad exponent could not be lifted within the step bound")]
    PadLiftExhausted,
    #[error("invalid modulus: {0}")]
    InvalidModulus(&'static str),
    #[error("invalid key: {0}")]
    InvalidKey(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("internal error: {0}")]
    Internal(&'static str),
}
