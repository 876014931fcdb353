//! Seeded inputs shared by the benchmarks.

use qcskit::random::{random_hermitian, rng};
use qcskit::{HermMat, Term};

/// `count` Hermitian generators of size `n`.
pub fn generators(n: usize, count: usize, seed: u64) -> Vec<HermMat> {
    let mut r = rng(seed);
    (0..count).map(|_| random_hermitian(n, &mut r)).collect()
}

/// The genus-`g` closed surface written as a single composite.
pub fn genus_source(g: usize) -> String {
    let mut src = "cap".to_string();
    for _ in 0..g {
        src.push_str(" ; comul ; mul");
    }
    src + " ; cup"
}

pub fn genus_term(g: usize) -> Term {
    qcskit::bord::parse(&genus_source(g)).expect("well-formed surface")
}
