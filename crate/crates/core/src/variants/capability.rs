//! Which schemes admit pad recovery and which turn into signatures.

use std::fmt::Write;

/// One row of the comparison.
///
/// `pad_recoverable` says whether a key holder can get the class and the
/// pad back, as implemented in this crate. `signature_transformable` is
/// the published verdict; `None` where no verdict is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapabilityRow {
    pub scheme: &'static str,
    pub verification: &'static str,
    pub pad_recoverable: bool,
    pub signature_transformable: Option<bool>,
    pub known_insecure: bool,
    pub note: &'static str,
}

pub fn capability_matrix() -> Vec<CapabilityRow> {
    vec![
        CapabilityRow {
            scheme: "original",
            verification: "H(m) = g^s1 * s2^n mod n^2",
            pad_recoverable: true,
            signature_transformable: Some(true),
            known_insecure: false,
            note: "",
        },
        CapabilityRow {
            scheme: "v1",
            verification: "H(m) = g^(s1 + s2*n) mod n^2",
            pad_recoverable: false,
            signature_transformable: Some(false),
            known_insecure: false,
            note: "only g^r is recoverable; <g> misses part of Z*_{n^2}",
        },
        CapabilityRow {
            scheme: "v2",
            verification: "H(m) = (1 + s1*n) * s2^n mod n^2",
            pad_recoverable: true,
            signature_transformable: Some(false),
            known_insecure: false,
            note: "pads recoverable with kappa; verdict recorded, not proven",
        },
        CapabilityRow {
            scheme: "v3",
            verification: "",
            pad_recoverable: true,
            signature_transformable: None,
            known_insecure: true,
            note: "chosen-ciphertext decryptions leak the factorization (Sakurai-Takagi)",
        },
        CapabilityRow {
            scheme: "v4",
            verification: "",
            pad_recoverable: true,
            signature_transformable: Some(false),
            known_insecure: false,
            note: "not homomorphic; verdict recorded, not proven",
        },
        CapabilityRow {
            scheme: "v5-bcp",
            verification: "",
            pad_recoverable: true,
            signature_transformable: Some(false),
            known_insecure: false,
            note: "master key recovers r from A",
        },
    ]
}

fn flag(b: bool) -> &'static str {
    if b {
        "True"
    } else {
        "False"
    }
}

/// Fixed-width text table, one line per row after a header.
pub fn render(rows: &[CapabilityRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:<16} {:<24} {:<15} note",
        "scheme", "pad_recoverable", "signature_transformable", "known_insecure"
    );
    for r in rows {
        let t = r.signature_transformable.map_or("-", flag);
        let _ = writeln!(
            out,
            "{:<10} {:<16} {:<24} {:<15} {}",
            r.scheme,
            flag(r.pad_recoverable),
            t,
            flag(r.known_insecure),
            r.note
        );
    }
    out
}
