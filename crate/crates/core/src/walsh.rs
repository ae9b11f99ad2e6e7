//! Walsh functions, decay functions, quality measures and worst-case
//! integration errors in weighted Walsh spaces.
//!
//! Error sums run in double precision with a fixed ascending summation order
//! (points ascending, dimensions ascending in the inner product) so that
//! repeated evaluations are bit-reproducible.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{f2, Poly};
use crate::pointset::PolyLatticeRule;
use crate::weights::ProductWeights;

/// Exact integer logarithm floor(log_b k) for k >= 1.
#[inline]
pub fn psi_b(k: u64, b: u8) -> u32 {
    debug_assert!(k >= 1);
    k.ilog(b as u64)
}

/// Integer exponent s with wal_k(u / b^prec) = exp(2 pi i s / b): the sum of
/// products of base-b digits kappa_{i-1}(k) * xi_i(u) for i = 1..=prec,
/// reduced mod b.
pub fn walsh_exponent(k: u64, u: u64, prec: u32, b: u8) -> u8 {
    let b64 = b as u64;
    let mut digits_u = [0u8; 64];
    let mut uu = u;
    for i in (1..=prec as usize).rev() {
        digits_u[i] = (uu % b64) as u8; // xi over reversed index: digit prec-i of u
        uu /= b64;
    }
    let mut s = 0u64;
    let mut kk = k;
    for i in 1..=prec as usize {
        if kk == 0 {
            break;
        }
        let kappa = kk % b64;
        kk /= b64;
        s += kappa * digits_u[i] as u64;
    }
    (s % b64) as u8
}

/// The k-th Walsh function in base b evaluated at x = u / b^prec.
///
/// Real-valued (+1 or -1) for b = 2; wal_0 is identically 1.
pub fn walsh_eval(k: u64, u: u64, prec: u32, b: u8) -> Complex64 {
    let s = walsh_exponent(k, u, prec, b);
    if b == 2 {
        return Complex64::new(if s == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    let angle = 2.0 * std::f64::consts::PI * s as f64 / b as f64;
    Complex64::new(angle.cos(), angle.sin())
}

/// Weighted decay function r_{alpha,gamma}(k): the inverse subset weight of
/// supp(k) times the product of b^(alpha * floor(log_b k_j)) over the
/// support. Returns 1 for the zero vector.
pub fn r_alpha_weighted(k_vec: &[u64], alpha: f64, weights: &ProductWeights, b: u8) -> Result<f64> {
    if !(alpha >= 1.0) {
        return Err(Error::invalid(format!("alpha = {alpha} must be >= 1")));
    }
    if weights.len() < k_vec.len() {
        return Err(Error::invalid("weight sequence shorter than k vector"));
    }
    let bf = b as f64;
    let mut r = 1.0;
    for (j, &k) in k_vec.iter().enumerate() {
        if k != 0 {
            r *= bf.powf(alpha * psi_b(k, b) as f64) / weights.get(j);
        }
    }
    Ok(r)
}

/// mu_b(alpha) = b^alpha (b - 1) / (b^alpha - b), the sum of the reciprocal
/// decay function over all k >= 1. Requires alpha > 1 (the series diverges
/// at alpha = 1).
pub fn mu_b(alpha: f64, b: u8) -> Result<f64> {
    if !(alpha > 1.0) {
        return Err(Error::invalid(format!(
            "alpha = {alpha} must be > 1 for a convergent decay series"
        )));
    }
    let bf = b as f64;
    let ba = bf.powf(alpha);
    Ok(ba * (bf - 1.0) / (ba - bf))
}

/// One-dimensional worst-case-error kernel for base 2 at the b-adic rational
/// u / 2^m: mu_2(alpha) for u = 0, else
/// mu_2(alpha) - 2^((1+t)(alpha-1)) (mu_2(alpha) + 1) with t = floor(log2 u) - m.
pub fn phi_alpha(u: u64, m: u32, alpha: f64) -> f64 {
    debug_assert!(m == 0 || u < (1u64 << m));
    let mu = 2f64.powf(alpha) / (2f64.powf(alpha) - 2.0);
    if u == 0 {
        return mu;
    }
    let t = psi_b(u, 2) as i64 - m as i64;
    mu - 2f64.powf((1 + t) as f64 * (alpha - 1.0)) * (mu + 1.0)
}

/// Per-precision lookup of phi_alpha by the integer logarithm of the
/// numerator, so the worst-case error inner loop is one table access per
/// coordinate.
pub(crate) struct PhiTable {
    zero: f64,
    by_log: Vec<f64>,
}

impl PhiTable {
    pub(crate) fn new(m: u32, alpha: f64) -> Self {
        PhiTable {
            zero: phi_alpha(0, m, alpha),
            by_log: (0..m).map(|i| phi_alpha(1u64 << i, m, alpha)).collect(),
        }
    }

    #[inline]
    pub(crate) fn value(&self, u: u64) -> f64 {
        if u == 0 {
            self.zero
        } else {
            self.by_log[u.ilog2() as usize]
        }
    }
}

/// Worst-case integration error of a base-2 rule with product weights:
/// -1 + 2^-m * sum over points of the product of (1 + gamma_j phi_alpha) over
/// dimensions.
///
/// Requires gcd(g_j, p) = 1 for every component. Values can exceed 1 for
/// slowly decaying weights; no clamping is applied.
pub fn wce_product(rule: &PolyLatticeRule, alpha: f64, weights: &ProductWeights) -> Result<f64> {
    if rule.b() != 2 {
        return Err(Error::UnsupportedBase(format!(
            "closed-form worst-case error requires base 2, got {}",
            rule.b()
        )));
    }
    if !(alpha > 1.0) {
        return Err(Error::invalid(format!("alpha = {alpha} must be > 1")));
    }
    if weights.len() < rule.dim() {
        return Err(Error::invalid("weight sequence shorter than the dimension"));
    }
    let maps = rule.dim_maps()?;
    let phi = PhiTable::new(rule.m(), alpha);
    let gammas: Vec<f64> = (0..rule.dim()).map(|j| weights.get(j)).collect();
    let mut total = 0.0;
    for n in 0..rule.n_points() {
        let mut prod = 1.0;
        for (map, gamma) in maps.iter().zip(&gammas) {
            prod *= 1.0 + gamma * phi.value(map.numerator_f2(n));
        }
        total += prod;
    }
    Ok(-1.0 + total / rule.n_points() as f64)
}

fn checked_box_size(b: u8, m: u32, d: usize) -> Result<u64> {
    let mut size: u64 = 1;
    for _ in 0..d {
        for _ in 0..m {
            size = size.checked_mul(b as u64).ok_or(()).map_err(|_| {
                Error::limit("dual box enumeration overflows".to_string())
            })?;
            if size > 1 << 24 {
                return Err(Error::limit(format!(
                    "dual box of b^(m*d) = {b}^({m}*{d}) vectors exceeds 2^24"
                )));
            }
        }
    }
    Ok(size)
}

/// True when tr_m(k) . g = 0 mod p, i.e. the frequency vector k lies in the
/// dual net of the rule. Components of k are truncated mod b^m.
pub fn dual_indicator(rule: &PolyLatticeRule, k_vec: &[u64]) -> Result<bool> {
    if k_vec.len() != rule.dim() {
        return Err(Error::invalid("k vector length does not match dimension"));
    }
    let bm = rule.n_points();
    if rule.b() == 2 {
        let mut dot = 0u64;
        for (k, g) in k_vec.iter().zip(rule.generating()) {
            dot ^= f2::mul(k % bm, g.to_index());
        }
        return Ok(f2::rem(dot, rule.modulus().to_index()) == 0);
    }
    let mut dot = Poly::zero(rule.b())?;
    for (k, g) in k_vec.iter().zip(rule.generating()) {
        let tr = Poly::from_index(k % bm, rule.b())?;
        dot = dot.add(&tr.mul(g)?)?;
    }
    Ok(dot.rem(rule.modulus())?.is_zero())
}

/// All frequency vectors k in {0, ..., b^m - 1}^d lying in the dual net,
/// in lexicographic order (last component fastest). Guarded so the
/// enumeration stays below 2^24 candidates.
pub fn dual_box_set(rule: &PolyLatticeRule) -> Result<Vec<Vec<u64>>> {
    let d = rule.dim();
    checked_box_size(rule.b(), rule.m(), d)?;
    let bm = rule.n_points();
    let mut out = Vec::new();
    let mut k = vec![0u64; d];
    loop {
        if dual_indicator(rule, &k)? {
            out.push(k.clone());
        }
        // odometer increment
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            k[i] += 1;
            if k[i] < bm {
                break;
            }
            k[i] = 0;
        }
    }
}

/// Truncated quality measure: the sum of reciprocal weighted decay over the
/// nonzero dual-box vectors. alpha = 1 gives the alpha-independent measure.
pub fn t_measure(rule: &PolyLatticeRule, weights: &ProductWeights, alpha: f64) -> Result<f64> {
    let mut sum = 0.0;
    for k in dual_box_set(rule)? {
        if k.iter().all(|&x| x == 0) {
            continue;
        }
        sum += 1.0 / r_alpha_weighted(&k, alpha, weights, rule.b())?;
    }
    Ok(sum)
}

/// Character sum (1/b^m) sum over points of wal_k(x_n); equals 1 when k lies
/// in the dual net and 0 otherwise. Returned as the real part of the complex
/// mean (the imaginary part cancels).
pub fn char_sum(rule: &PolyLatticeRule, k_vec: &[u64]) -> Result<f64> {
    if k_vec.len() != rule.dim() {
        return Err(Error::invalid("k vector length does not match dimension"));
    }
    let b = rule.b();
    let m = rule.m();
    let mut acc = Complex64::new(0.0, 0.0);
    for row in rule.rows()? {
        let mut s = 0u32;
        for (k, u) in k_vec.iter().zip(&row) {
            s += walsh_exponent(*k, *u, m, b) as u32;
        }
        let s = (s % b as u32) as u8;
        acc += if b == 2 {
            Complex64::new(if s == 0 { 1.0 } else { -1.0 }, 0.0)
        } else {
            let angle = 2.0 * std::f64::consts::PI * s as f64 / b as f64;
            Complex64::new(angle.cos(), angle.sin())
        };
    }
    Ok(acc.re / rule.n_points() as f64)
}

/// Partial sum of the base-2 Walsh series of -(b-1)(floor(log_b x) + 1) at
/// the dyadic point x = u / 2^prec: sum of wal_k(x) / r_1(k) for k < n_terms.
pub fn log_series_partial(u: u64, prec: u32, n_terms: u64) -> Result<f64> {
    if u == 0 {
        return Err(Error::degenerate(
            "the log series identity holds on (0,1); x = 0 is excluded",
        ));
    }
    if n_terms == 0 || !n_terms.is_power_of_two() {
        return Err(Error::invalid(format!(
            "n_terms = {n_terms} must be a power of 2"
        )));
    }
    let mut sum = 0.0;
    for k in 0..n_terms {
        let w = walsh_eval(k, u, prec, 2).re;
        let r1 = if k == 0 { 1.0 } else { 2f64.powi(psi_b(k, 2) as i32) };
        sum += w / r1;
    }
    Ok(sum)
}

/// Upper bound on the gap e - T between the worst-case error and the
/// truncated quality measure: N^-alpha * (-1 + product of (1 + 2 mu_b(alpha)
/// gamma_j) over the first d weights).
pub fn trunc_gap_bound(
    alpha: f64,
    weights: &ProductWeights,
    d: usize,
    n_points: u64,
    b: u8,
) -> Result<f64> {
    if weights.len() < d {
        return Err(Error::invalid("weight sequence shorter than d"));
    }
    let mu = mu_b(alpha, b)?;
    let mut prod = 1.0;
    for j in 0..d {
        prod *= 1.0 + 2.0 * mu * weights.get(j);
    }
    Ok((prod - 1.0) / (n_points as f64).powf(alpha))
}
