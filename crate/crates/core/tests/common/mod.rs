//! Brute-force oracles shared by the integration suites. Everything here is
//! computed from first principles (digit sums, literal series, exhaustive
//! enumeration) and stays independent of the library's evaluation paths.

use polylat::ProductWeights;
use rand::Rng;

/// Bit reversal of the prec-bit value u.
pub fn bitrev(u: u64, prec: u32) -> u64 {
    u.reverse_bits() >> (64 - prec)
}

/// Sign of the k-th base-2 Walsh function at u / 2^prec, from the digit-sum
/// definition: (-1)^(popcount(k & bitrev(u))).
pub fn wal_sign(k: u64, u: u64, prec: u32) -> f64 {
    if (k & bitrev(u, prec)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Truncated Walsh series sum_{k=1}^{2^blocks - 1} wal_k(u / 2^m) / 2^(alpha
/// floor(log2 k)) for every requested alpha, via exact integer sums of signs
/// per dyadic block.
pub fn phi_series_oracle(u: u64, m: u32, alphas: &[f64], blocks: u32) -> Vec<f64> {
    let y = bitrev(u, m);
    let mut block_sums = vec![0i64; blocks as usize];
    for a in 0..blocks {
        let mut s = 0i64;
        for k in (1u64 << a)..(1u64 << (a + 1)) {
            s += if (k & y).count_ones() % 2 == 0 { 1 } else { -1 };
        }
        block_sums[a as usize] = s;
    }
    alphas
        .iter()
        .map(|&alpha| {
            block_sums
                .iter()
                .enumerate()
                .map(|(a, &s)| s as f64 * 2f64.powf(-alpha * a as f64))
                .sum()
        })
        .collect()
}

/// Analytic bound on the tail sum_{k >= 2^blocks} 1 / 2^(alpha floor(log2 k)).
pub fn phi_series_tail(alpha: f64, blocks: u32) -> f64 {
    2f64.powf((1.0 - alpha) * blocks as f64) / (1.0 - 2f64.powf(1.0 - alpha))
}

/// Random strictly positive weights in [lo, hi).
pub fn random_weights<R: Rng>(rng: &mut R, d: usize, lo: f64, hi: f64) -> ProductWeights {
    ProductWeights::new((0..d).map(|_| rng.gen_range(lo..hi)).collect()).unwrap()
}

/// Relative closeness check that tolerates zero targets.
pub fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}
