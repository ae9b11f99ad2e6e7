//! Polynomial arithmetic over F_b and the maps that turn polynomials into
//! point coordinates.
//!
//! A polynomial is identified with a non-negative integer through its base-b
//! digits: the integer n with digits n_0, n_1, ... corresponds to
//! n_0 + n_1 x + n_2 x^2 + ... . All textual encodings (vector files, CLI
//! flags) use this decimal integer form, least significant digit = constant
//! coefficient.
//!
//! For base 2 the crate-internal fast paths in [`f2`] work on raw `u64`
//! bitmasks (bit i = coefficient of x^i) instead of [`Poly`] values.

use crate::error::{Error, Result};

/// Polynomial over F_b with a small prime base b.
///
/// Coefficient `i` is the coefficient of x^i. The stored sequence is
/// canonical: the highest stored coefficient is nonzero, or the sequence is
/// empty (the zero polynomial, of degree -infinity).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    base: u8,
    coeffs: Vec<u8>,
}

fn is_small_prime(b: u8) -> bool {
    if b < 2 {
        return false;
    }
    (2..b).all(|q| b % q != 0)
}

impl Poly {
    /// The zero polynomial over F_b.
    pub fn zero(b: u8) -> Result<Self> {
        Self::from_coeffs(b, Vec::new())
    }

    /// The constant polynomial 1 over F_b.
    pub fn one(b: u8) -> Result<Self> {
        Self::from_coeffs(b, vec![1])
    }

    /// The monomial x^k over F_b.
    pub fn x_pow(b: u8, k: usize) -> Result<Self> {
        let mut coeffs = vec![0u8; k + 1];
        coeffs[k] = 1;
        Self::from_coeffs(b, coeffs)
    }

    /// Builds a polynomial from raw coefficients (index i = coefficient of
    /// x^i), reducing each one mod b and normalizing to canonical form.
    pub fn from_coeffs(b: u8, mut coeffs: Vec<u8>) -> Result<Self> {
        if !is_small_prime(b) {
            return Err(Error::invalid(format!("base {b} is not prime")));
        }
        for c in &mut coeffs {
            *c %= b;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Poly { base: b, coeffs })
    }

    /// The polynomial associated with the index `n`: digits of `n` in base
    /// `b` become the coefficients.
    ///
    /// This association is a bijection; [`Poly::to_index`] inverts it.
    pub fn from_index(n: u64, b: u8) -> Result<Self> {
        if !is_small_prime(b) {
            return Err(Error::invalid(format!("base {b} is not prime")));
        }
        let mut coeffs = Vec::new();
        let mut n = n;
        while n > 0 {
            coeffs.push((n % b as u64) as u8);
            n /= b as u64;
        }
        Ok(Poly { base: b, coeffs })
    }

    /// The index whose base-b digits are the coefficients.
    pub fn to_index(&self) -> u64 {
        let mut n = 0u64;
        for &c in self.coeffs.iter().rev() {
            n = n * self.base as u64 + c as u64;
        }
        n
    }

    /// The base b.
    pub fn base(&self) -> u8 {
        self.base
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the constant coefficient is nonzero, i.e. gcd(self, x) = 1.
    pub fn coprime_to_x(&self) -> bool {
        self.coeff(0) != 0
    }

    /// Truncation mod x^w.
    pub fn truncated(&self, w: usize) -> Poly {
        let mut coeffs: Vec<u8> = self.coeffs.iter().copied().take(w).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            base: self.base,
            coeffs,
        }
    }

    fn check_same_base(&self, other: &Poly) -> Result<()> {
        if self.base != other.base {
            return Err(Error::invalid(format!(
                "mismatched bases {} and {}",
                self.base, other.base
            )));
        }
        Ok(())
    }

    /// Sum in F_b[x].
    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_base(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0u8; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = (self.coeff(i) + other.coeff(i)) % self.base;
        }
        Poly::from_coeffs(self.base, coeffs)
    }

    /// Full product in F_b[x].
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        let w = self.coeffs.len() + other.coeffs.len();
        mul_mod_xw(self, other, w.max(1))
    }

    /// Remainder mod `modulus` (polynomial long division).
    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        self.check_same_base(modulus)?;
        let Some(dm) = modulus.degree() else {
            return Err(Error::invalid("zero modulus"));
        };
        let b = self.base;
        let lead_inv = field_inverse(modulus.coeff(dm), b);
        let mut rem = self.coeffs.clone();
        while rem.len() > dm {
            let k = rem.len() - 1;
            let factor = (rem[k] as u16 * lead_inv as u16 % b as u16) as u8;
            if factor != 0 {
                let shift = k - dm;
                for i in 0..=dm {
                    let sub = (factor as u16 * modulus.coeff(i) as u16 % b as u16) as u8;
                    let idx = shift + i;
                    rem[idx] = ((rem[idx] + b) - sub) % b;
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok(Poly { base: b, coeffs: rem })
    }
}

/// Inverse of a nonzero element of F_b, by exhaustive search (b is tiny).
fn field_inverse(a: u8, b: u8) -> u8 {
    debug_assert!(a % b != 0);
    (1..b).find(|&y| (a as u16 * y as u16) % b as u16 == 1).unwrap()
}

/// Truncated product (a * g) mod x^w.
///
/// Choosing `w` larger than deg(a) + deg(g) yields the full product.
pub fn mul_mod_xw(a: &Poly, g: &Poly, w: usize) -> Result<Poly> {
    if a.base != g.base {
        return Err(Error::invalid(format!(
            "mismatched bases {} and {}",
            a.base, g.base
        )));
    }
    let b = a.base as u32;
    let n = w.min(a.coeffs.len() + g.coeffs.len());
    let mut acc = vec![0u32; n];
    for (i, &ai) in a.coeffs.iter().enumerate() {
        if ai == 0 || i >= n {
            continue;
        }
        for (j, &gj) in g.coeffs.iter().enumerate() {
            if i + j >= n {
                break;
            }
            acc[i + j] = (acc[i + j] + ai as u32 * gj as u32) % b;
        }
    }
    Poly::from_coeffs(a.base, acc.into_iter().map(|c| c as u8).collect())
}

/// Numerator u of v_m(q / x^m) = u / b^m, i.e. the value of q mod x^m read as
/// an integer: u = sum of q_j b^j over j < m.
pub fn vm_numerator(q: &Poly, m: u32) -> u64 {
    let b = q.base as u64;
    let mut u = 0u64;
    for j in (0..m as usize).rev() {
        u = u * b + q.coeff(j) as u64;
    }
    u
}

/// Numerator u of v_m(q / p) = u / b^m for a modulus p of degree exactly m
/// and deg(q) < m.
///
/// The first m Laurent coefficients t_1, ..., t_m of q/p are produced by the
/// long-division recurrence t_l = q_{m-l} - sum of p_{m-i} t_{l-i} over
/// i = 1..l-1 (scaled by the inverse of the leading coefficient of p), and
/// u = sum of t_l b^{m-l}. For p = x^m this reduces to [`vm_numerator`].
pub fn laurent_numerator(q: &Poly, p: &Poly, m: u32) -> Result<u64> {
    if q.base != p.base {
        return Err(Error::invalid(format!(
            "mismatched bases {} and {}",
            q.base, p.base
        )));
    }
    if p.degree() != Some(m as usize) {
        return Err(Error::invalid(format!(
            "modulus degree {:?} does not equal m = {m}",
            p.degree()
        )));
    }
    if q.degree().map_or(false, |d| d >= m as usize) {
        return Err(Error::invalid("deg(q) must be < m; reduce q mod p first"));
    }
    let b = p.base as u64;
    let m = m as usize;
    let lead_inv = field_inverse(p.coeff(m), p.base) as u64;
    let mut t = vec![0u64; m + 1]; // t[1..=m]
    let mut u = 0u64;
    for l in 1..=m {
        let mut acc = q.coeff(m - l) as u64 % b;
        for i in 1..l {
            let sub = p.coeff(m - i) as u64 * t[l - i] % b;
            acc = (acc + b - sub) % b;
        }
        t[l] = acc * lead_inv % b;
        u = u * b + t[l];
    }
    Ok(u)
}

/// Digit logarithm: floor(log_b(v_w(q / x^w))) + 1, computed exactly from the
/// coefficients of q mod x^w (no floating point).
///
/// Equals j* - w + 1 where j* is the largest index j < w with q_j != 0, so
/// the result lies in {1-w, ..., 0}.
pub fn digitlog(q: &Poly, w: u32) -> Result<i32> {
    let w = w as usize;
    for j in (0..w).rev() {
        if q.coeff(j) != 0 {
            return Ok(j as i32 - w as i32 + 1);
        }
    }
    Err(Error::degenerate(
        "digit logarithm of a polynomial that is 0 mod x^w",
    ))
}

/// Fixed primitive polynomials over F_2, degrees 1..=24.
///
/// Verified by checking that x has multiplicative order 2^m - 1 in
/// F_2[x]/(p); see the tests.
const PRIMITIVE_F2: [u64; 24] = [
    0b11,                        // x + 1
    0b111,                       // x^2 + x + 1
    0b1011,                      // x^3 + x + 1
    0b10011,                     // x^4 + x + 1
    0b100101,                    // x^5 + x^2 + 1
    0b1000011,                   // x^6 + x + 1
    0b10000011,                  // x^7 + x + 1
    0b100011101,                 // x^8 + x^4 + x^3 + x^2 + 1
    0b1000010001,                // x^9 + x^4 + 1
    0b10000001001,               // x^10 + x^3 + 1
    0b100000000101,              // x^11 + x^2 + 1
    0b1000001010011,             // x^12 + x^6 + x^4 + x + 1
    0b10000000011011,            // x^13 + x^4 + x^3 + x + 1
    0b100010001000011,           // x^14 + x^10 + x^6 + x + 1
    0b1000000000000011,          // x^15 + x + 1
    0b10001000000001011,         // x^16 + x^12 + x^3 + x + 1
    0b100000000000001001,        // x^17 + x^3 + 1
    0b1000000000010000001,       // x^18 + x^7 + 1
    0b10000000000000100111,      // x^19 + x^5 + x^2 + x + 1
    0b100000000000000001001,     // x^20 + x^3 + 1
    0b1000000000000000000101,    // x^21 + x^2 + 1
    0b10000000000000000000011,   // x^22 + x + 1
    0b100000000000000000100001,  // x^23 + x^5 + 1
    0b1000000000000000010000111, // x^24 + x^7 + x^2 + x + 1
];

/// A fixed primitive polynomial of degree m over F_2, for 1 <= m <= 24.
pub fn primitive_poly_f2(m: u32) -> Result<Poly> {
    if !(1..=24).contains(&m) {
        return Err(Error::invalid(format!(
            "no primitive polynomial stored for degree {m} (supported: 1..=24)"
        )));
    }
    Poly::from_index(PRIMITIVE_F2[m as usize - 1], 2)
}

/// Bit-level arithmetic for F_2[x]. Bit i of a word is the coefficient of
/// x^i; all products fit a u64 for the supported precisions (m <= 30).
pub mod f2 {
    /// Carry-less product a * g.
    #[inline]
    pub fn mul(a: u64, mut g: u64) -> u64 {
        let mut r = 0u64;
        let mut a = a;
        while g != 0 {
            if g & 1 != 0 {
                r ^= a;
            }
            a <<= 1;
            g >>= 1;
        }
        r
    }

    /// (a * g) mod x^w.
    #[inline]
    pub fn mul_mod_pow(a: u64, g: u64, w: u32) -> u64 {
        mul(a, g & mask(w)) & mask(w)
    }

    /// All-ones mask of width w.
    #[inline]
    pub fn mask(w: u32) -> u64 {
        if w >= 64 {
            u64::MAX
        } else {
            (1u64 << w) - 1
        }
    }

    /// Digit logarithm of z mod x^w; z mod x^w must be nonzero.
    #[inline]
    pub fn digitlog(z: u64, w: u32) -> i32 {
        let z = z & mask(w);
        debug_assert!(z != 0);
        (63 - z.leading_zeros()) as i32 - w as i32 + 1
    }

    /// a mod p for a nonzero modulus p.
    #[inline]
    pub fn rem(a: u64, p: u64) -> u64 {
        debug_assert!(p != 0);
        let dp = 63 - p.leading_zeros();
        let mut a = a;
        while a >> dp != 0 {
            let da = 63 - a.leading_zeros();
            a ^= p << (da - dp);
        }
        a
    }
}
