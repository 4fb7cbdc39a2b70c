//! Fixtures shared by the benchmarks.

use ggs_core::{DefiningVector, Portrait, QuotientGroup, TreeShape, DEFAULT_BUDGET};

pub fn gupta_sidki() -> DefiningVector {
    DefiningVector::new(3, &[1, -1]).expect("valid vector")
}

pub fn wreath() -> DefiningVector {
    DefiningVector::new(3, &[1, 0]).expect("valid vector")
}

pub fn alternating(p: u32) -> DefiningVector {
    DefiningVector::alternating(p).expect("odd prime")
}

pub fn group(v: &DefiningVector, n: u32) -> QuotientGroup {
    QuotientGroup::enumerate(v, n, DEFAULT_BUDGET).expect("within budget")
}

/// Deterministic pseudo-random portraits (xorshift), so runs are comparable.
pub fn portraits(shape: TreeShape, count: usize) -> Vec<Portrait> {
    let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
    let p = shape.p() as u64;
    (0..count)
        .map(|_| {
            let labels = (0..shape.internal_count())
                .map(|_| {
                    s ^= s << 13;
                    s ^= s >> 7;
                    s ^= s << 17;
                    (s % p) as u8
                })
                .collect();
            Portrait::from_labels(shape, labels).expect("labels below p")
        })
        .collect()
}
