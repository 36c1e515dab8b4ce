//! Oracles shared by several test targets.
#![allow(dead_code)]

pub mod weyl_brute;

/// Coefficient of `x^k` in `Π_j (1 - x^j)^{-s}`.
pub fn colored_partitions(s: usize, k: usize) -> usize {
    let mut p = vec![0usize; k + 1];
    p[0] = 1;
    for _ in 0..s {
        for j in 1..=k {
            for t in j..=k {
                p[t] += p[t - j];
            }
        }
    }
    p[k]
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
