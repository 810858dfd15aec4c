//! Exhaustive checks at n = 15, 21 and 35 against plain u64 arithmetic.
//!
//! 21 = 3·7 has gcd(n, λ) = 3, so no g works there: the suite checks that
//! the library refuses the modulus and that the oracle agrees the
//! encryption map is not a bijection for any base.

use std::time::Instant;

use num_bigint::BigUint;

use crate::bcp::{self, Mode};
use crate::numtheory::FactoredModulus;
use crate::paillier::PaillierSecretKey;
use crate::scheme::{add, DecryptionKey, EncryptionKey};
use crate::signature::{
    owtp_forward, owtp_inverse, sign_digest, verify_digest, Signature, WideMessage,
};
use crate::variants::capability::capability_matrix;
use crate::variants::{v1, v2, v3, v4};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

fn u(x: &BigUint) -> u64 {
    u64::try_from(x.clone()).expect("oracle-scale value")
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|&r| gcd(r, n) == 1).collect()
}

/// Hit counts of (x, y) ↦ g^x y^n mod n² over Z_n × Z*_n.
fn hit_counts(n: u64, g: u64) -> Vec<u32> {
    let nn = n * n;
    let mut hits = vec![0u32; nn as usize];
    for x in 0..n {
        let gx = pow(g, x, nn);
        for y in units(n) {
            hits[(gx * pow(y, n, nn) % nn) as usize] += 1;
        }
    }
    hits
}

fn is_bijection(n: u64, hits: &[u32]) -> bool {
    hits.iter()
        .enumerate()
        .all(|(c, &k)| k == u32::from(gcd(c as u64, n) == 1))
}

/// Bases the library accepts, which must be exactly those the oracle finds bijective.
fn accepted_bases(f: &FactoredModulus) -> Vec<u64> {
    let nn = u(f.n_sq());
    (1..nn)
        .filter(|&g| PaillierSecretKey::from_parts(f.clone(), b(g)).is_ok())
        .collect()
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, name: impl Into<String>, result: Result<(), String>) {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn paillier_leg(p: u64, q: u64) -> Result<(), String> {
    let n = p * q;
    let nn = n * n;
    let f = FactoredModulus::new(b(p), b(q)).map_err(|e| e.to_string())?;
    let accepted = accepted_bases(&f);
    ensure!(
        accepted.len() >= 3,
        "only {} bases accepted",
        accepted.len()
    );
    for g in (1..nn).filter(|&g| gcd(g, n) == 1) {
        let bij = is_bijection(n, &hit_counts(n, g));
        ensure!(
            bij == accepted.binary_search(&g).is_ok(),
            "g = {g}: oracle bijective = {bij}"
        );
    }
    for &g in accepted.iter().step_by(accepted.len() / 3) {
        let sk = PaillierSecretKey::from_parts(f.clone(), b(g)).map_err(|e| e.to_string())?;
        let pk = sk.public();
        for m in 0..n {
            for r in units(n) {
                let c = pk
                    .encrypt_with_pad(&b(m), &b(r))
                    .map_err(|e| e.to_string())?;
                ensure!(
                    u(c.value()) == pow(g, m, nn) * pow(r, n, nn) % nn,
                    "g={g} m={m} r={r}: encrypt"
                );
                let full = sk.decrypt_full(&c).map_err(|e| e.to_string())?;
                ensure!(
                    full == (b(m), b(r)),
                    "g={g} m={m} r={r}: decrypt_full gave {full:?}"
                );
            }
        }
        let cs: Vec<_> = (0..n)
            .map(|m| pk.encrypt_with_pad(&b(m), &b(units(n)[1])).unwrap())
            .collect();
        for (m1, c1) in cs.iter().enumerate() {
            for (m2, c2) in cs.iter().enumerate() {
                let s = add(pk, c1, c2).map_err(|e| e.to_string())?;
                let got = sk.decrypt(&s).map_err(|e| e.to_string())?;
                ensure!(
                    u(&got) == (m1 as u64 + m2 as u64) % n,
                    "g={g}: {m1}+{m2} decrypted to {got}"
                );
            }
        }
    }
    Ok(())
}

fn signature_leg(p: u64, q: u64) -> Result<(), String> {
    let n = p * q;
    let nn = n * n;
    let f = FactoredModulus::new(b(p), b(q)).map_err(|e| e.to_string())?;
    let g = accepted_bases(&f)[0];
    let sk = PaillierSecretKey::from_parts(f, b(g)).map_err(|e| e.to_string())?;
    let pk = sk.public();
    for h in (1..nn).filter(|&h| gcd(h, n) == 1).step_by(7) {
        let sig = sign_digest(&sk, &b(h)).map_err(|e| e.to_string())?;
        let mut found = 0;
        for s1 in 0..n {
            for s2 in units(n) {
                if pow(g, s1, nn) * pow(s2, n, nn) % nn == h {
                    found += 1;
                    ensure!(
                        Signature::new(b(s1), b(s2)) == sig,
                        "h={h}: oracle pair differs"
                    );
                }
            }
        }
        ensure!(found == 1, "h={h}: {found} verifying pairs");
        ensure!(
            verify_digest(pk, &b(h), &sig),
            "h={h}: honest signature rejected"
        );
    }
    for v in 0..nn {
        let w = WideMessage::new(b(v), pk.modulus()).map_err(|e| e.to_string())?;
        let permutable = gcd(v / n, n) == 1;
        match owtp_forward(pk, &w) {
            Ok(c) => {
                ensure!(permutable, "m={v} accepted with gcd(m2, n) != 1");
                let back = owtp_inverse(&sk, &c).map_err(|e| e.to_string())?;
                ensure!(back == w, "m={v}: inverse gave {}", back.value());
            }
            Err(_) => ensure!(!permutable, "m={v} rejected"),
        }
    }
    Ok(())
}

fn variants_leg(p: u64, q: u64) -> Result<(), String> {
    let n = p * q;
    let nn = n * n;
    let f = FactoredModulus::new(b(p), b(q)).map_err(|e| e.to_string())?;
    let lambda = u(f.lambda());
    let e = (3..n)
        .step_by(2)
        .find(|&e| gcd(e, u(f.phi())) == 1)
        .unwrap();
    let v1k = accepted_bases(&f)
        .into_iter()
        .find_map(|g| v1::V1SecretKey::with_exact_order(f.clone(), b(g)).ok());
    let v2k = v2::V2SecretKey::from_factored(f.clone()).map_err(|e| e.to_string())?;
    let psk = PaillierSecretKey::from_parts(f.clone(), b(1 + n)).map_err(|e| e.to_string())?;
    let v4k = v4::V4SecretKey::from_parts(f.clone(), b(e)).map_err(|e| e.to_string())?;
    for w in [1u64, 2, nn - 1] {
        let v3k = v3::V3SecretKey::from_witness(f.clone(), &b(w)).map_err(|e| e.to_string())?;
        ensure!(
            pow(u(v3k.public().g()), lambda, nn) == 1 + n,
            "v3 w={w}: g^lambda != 1+n"
        );
        for m in 0..n {
            for r in units(n) {
                let c = v3k
                    .public()
                    .encrypt_with_pad(&b(m), &b(r))
                    .map_err(|e| e.to_string())?;
                ensure!(v3k.decrypt_full(&c) == Ok((b(m), b(r))), "v3 m={m} r={r}");
            }
        }
    }
    let v1k = v1k.ok_or("no v1 base")?;
    for m in 0..n {
        for r in 0..n {
            let c = v1k
                .public()
                .encrypt_with_pad(&b(m), &b(r))
                .map_err(|e| e.to_string())?;
            ensure!(
                u(c.value()) == pow(u(v1k.public().g()), m + r * n, nn),
                "v1 m={m} r={r}: encrypt"
            );
            ensure!(v1k.decrypt(&c) == Ok(b(m)), "v1 m={m} r={r}");
        }
        for r in units(n) {
            let c2 = v2k
                .public()
                .encrypt_with_pad(&b(m), &b(r))
                .map_err(|e| e.to_string())?;
            let cp = psk
                .public()
                .encrypt_with_pad(&b(m), &b(r))
                .map_err(|e| e.to_string())?;
            ensure!(
                c2.value() == cp.value(),
                "v2 m={m} r={r}: differs from g = 1+n"
            );
            ensure!(v2k.decrypt_full(&c2) == Ok((b(m), b(r))), "v2 m={m} r={r}");
            let c4 = v4k
                .public()
                .encrypt_with_pad(&b(m), &b(r))
                .map_err(|e| e.to_string())?;
            ensure!(
                pow(u(c4.value()) % n, u(v4k.d()), n) == r,
                "v4 m={m} r={r}: c^d mod n != r"
            );
            ensure!(v4k.decrypt_full(&c4) == Ok((b(m), b(r))), "v4 m={m} r={r}");
        }
    }
    let d = v1::image_deficit(v1k.public()).map_err(|e| e.to_string())?;
    let alpha = u(&v1k.exact_alpha().map_err(|e| e.to_string())?);
    ensure!(
        d.image_size == alpha * n,
        "v1 image {} != alpha*n",
        d.image_size
    );
    ensure!(
        d.group_size == n * u(f.phi()),
        "v1 group size {}",
        d.group_size
    );
    if alpha < u(f.phi()) {
        let h = d.witness.ok_or("v1: no witness despite alpha < phi")?;
        ensure!(
            (0..nn).all(|k| pow(u(v1k.public().g()), k, nn) != h),
            "v1 witness {h} is representable"
        );
    }
    Ok(())
}

fn bcp_leg(p: u64, q: u64) -> Result<(), String> {
    let n = p * q;
    let f = FactoredModulus::new(b(p), b(q)).map_err(|e| e.to_string())?;
    let g = accepted_bases(&f)
        .into_iter()
        .find(|&g| (1..n * n).any(|x| x * x % (n * n) == g))
        .ok_or("no square base")?;
    for mode in [Mode::Original, Mode::Revised] {
        let a = units(n)[2];
        let (pk, uk, mk) =
            bcp::keys_from_parts(f.clone(), b(g), b(a), mode).map_err(|e| e.to_string())?;
        for m in 0..n {
            for r in units(n) {
                let c = pk
                    .encrypt_with_pad(&b(m), &b(r))
                    .map_err(|e| e.to_string())?;
                ensure!(
                    bcp::dec_user(&pk, &uk, &c) == Ok(b(m)),
                    "{mode} m={m} r={r}: user"
                );
                ensure!(
                    bcp::dec_master_revised(&pk, &mk, &c) == Ok(b(m)),
                    "{mode} m={m} r={r}: revised"
                );
                ensure!(
                    bcp::recover_pad(&pk, &mk, &c) == Ok(b(r)),
                    "{mode} m={m} r={r}: pad"
                );
                if mode == Mode::Original {
                    ensure!(
                        bcp::dec_master_original(&pk, &mk, &c) == Ok(b(m)),
                        "{mode} m={m} r={r}: original"
                    );
                }
            }
        }
    }
    Ok(())
}

fn degenerate_leg(p: u64, q: u64) -> Result<(), String> {
    let n = p * q;
    ensure!(
        FactoredModulus::new(b(p), b(q)).is_err(),
        "n = {n} accepted"
    );
    for g in (1..n * n).filter(|&g| gcd(g, n) == 1) {
        ensure!(
            !is_bijection(n, &hit_counts(n, g)),
            "oracle finds g = {g} bijective at n = {n}"
        );
    }
    Ok(())
}

/// Runs every check and reports each one; nothing short-circuits.
pub fn run() -> Vec<Check> {
    let mut s = Suite { checks: Vec::new() };
    for (p, q) in [(3u64, 5u64), (5, 7)] {
        let n = p * q;
        s.record(format!("paillier n={n}"), paillier_leg(p, q));
        s.record(format!("signature+owtp n={n}"), signature_leg(p, q));
        s.record(format!("variants n={n}"), variants_leg(p, q));
        s.record(format!("bcp n={n}"), bcp_leg(p, q));
    }
    s.record("degenerate n=21", degenerate_leg(3, 7));
    let trues = capability_matrix()
        .iter()
        .filter(|r| r.signature_transformable == Some(true))
        .count();
    s.record(
        "capabilities",
        if trues == 1 {
            Ok(())
        } else {
            Err(format!("{trues} transformable rows"))
        },
    );
    s.checks
}

/// Runs the suite and reports total wall time.
pub fn run_timed() -> (Vec<Check>, std::time::Duration) {
    let start = Instant::now();
    let checks = run();
    (checks, start.elapsed())
}
