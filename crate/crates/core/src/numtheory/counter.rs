//! Operation counting for the arithmetic primitives.
//!
//! Counting is off unless a closure runs inside [`count_ops`]. Counts are
//! keyed by the modulus the operation reduced against, so callers can split
//! them into "mod n" and "mod n²" buckets after the fact.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_bigint::BigUint;

thread_local! {
    static ACTIVE: RefCell<Option<OpCounts>> = const { RefCell::new(None) };
}

/// Exponentiations and inversions performed, per modulus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpCounts {
    pows: BTreeMap<BigUint, usize>,
    inversions: BTreeMap<BigUint, usize>,
}

impl OpCounts {
    pub fn pows_mod(&self, m: &BigUint) -> usize {
        self.pows.get(m).copied().unwrap_or(0)
    }

    pub fn inversions_mod(&self, m: &BigUint) -> usize {
        self.inversions.get(m).copied().unwrap_or(0)
    }

    pub fn total_pows(&self) -> usize {
        self.pows.values().sum()
    }

    pub fn total_inversions(&self) -> usize {
        self.inversions.values().sum()
    }
}

/// Runs `f` with counting enabled on this thread and returns what it did.
///
/// Nested calls are isolated: the inner closure's operations are not added
/// to the outer tally.
pub fn count_ops<R>(f: impl FnOnce() -> R) -> (R, OpCounts) {
    let outer = ACTIVE.with(|a| a.borrow_mut().replace(OpCounts::default()));
    let out = f();
    let counts = ACTIVE.with(|a| std::mem::replace(&mut *a.borrow_mut(), outer));
    (out, counts.unwrap_or_default())
}

pub(crate) fn record_pow(m: &BigUint) {
    ACTIVE.with(|a| {
        if let Some(c) = a.borrow_mut().as_mut() {
            *c.pows.entry(m.clone()).or_default() += 1;
        }
    });
}

pub(crate) fn record_inversion(m: &BigUint) {
    ACTIVE.with(|a| {
        if let Some(c) = a.borrow_mut().as_mut() {
            *c.inversions.entry(m.clone()).or_default() += 1;
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{mod_inv, mod_pow_uint};

    #[test]
    fn counts_only_inside_scope() {
        let m = BigUint::from(225u32);
        mod_pow_uint(&BigUint::from(2u32), &BigUint::from(5u32), &m);
        let (_, counts) = count_ops(|| {
            mod_pow_uint(&BigUint::from(2u32), &BigUint::from(5u32), &m);
            mod_pow_uint(&BigUint::from(3u32), &BigUint::from(5u32), &m);
            mod_inv(&BigUint::from(2u32), &m).unwrap();
        });
        assert_eq!(counts.pows_mod(&m), 2);
        assert_eq!(counts.inversions_mod(&m), 1);
        assert_eq!(counts.pows_mod(&BigUint::from(15u32)), 0);
    }

    #[test]
    fn nested_scopes_are_isolated() {
        let m = BigUint::from(15u32);
        let (inner, outer) = count_ops(|| {
            mod_pow_uint(&BigUint::from(2u32), &BigUint::from(3u32), &m);
            count_ops(|| mod_pow_uint(&BigUint::from(2u32), &BigUint::from(3u32), &m)).1
        });
        assert_eq!(inner.total_pows(), 1);
        assert_eq!(outer.total_pows(), 1);
    }
}
