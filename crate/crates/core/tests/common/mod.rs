//! Plain u64 oracles and CLI helpers shared by the integration targets.

#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use num_bigint::BigUint;

pub fn b(x: u64) -> BigUint {
    BigUint::from(x)
}

pub fn u(x: &BigUint) -> u64 {
    u64::try_from(x.clone()).expect("oracle-scale value")
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn pow(mut base: u64, mut e: u64, m: u64) -> u64 {
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

pub fn units(n: u64) -> Vec<u64> {
    (1..n).filter(|&r| gcd(r, n) == 1).collect()
}

/// Hit counts of (x, y) ↦ g^x y^n mod n² over Z_n × Z*_n.
pub fn hit_counts(n: u64, g: u64) -> Vec<u32> {
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

/// True when every unit of Z*_{n²} is hit exactly once and nothing else is.
pub fn is_bijective(n: u64, g: u64) -> bool {
    hit_counts(n, g)
        .iter()
        .enumerate()
        .all(|(c, &k)| k == u32::from(gcd(c as u64, n) == 1))
}

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_residua")
}

pub fn cli(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("RESIDUA_SEED")
        .output()
        .expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}
