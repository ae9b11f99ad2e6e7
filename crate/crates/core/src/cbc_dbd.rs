//! Component-by-component digit-by-digit construction of generating vectors.
//!
//! The search fixes one coefficient (digit) of one component at a time,
//! minimizing a quality function that is independent of the smoothness
//! parameter. Two implementations are provided: a reference version for any
//! prime base that evaluates the quality function literally, and a fast
//! base-2 version that caches running products in a state vector of length
//! 2^m - 1 and finishes in O(d m 2^m) operations.
//!
//! The construction weights are a separate input from any later evaluation
//! weights; callers pick the convention (run with gamma directly, or with
//! gamma^(1/alpha) for a target smoothness alpha).

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::poly::{digitlog, f2, mul_mod_xw, Poly};
use crate::pointset::PolyLatticeRule;
use crate::weights::ProductWeights;

/// A generating vector: d nonzero polynomials over F_b of degree < m.
///
/// The digit-by-digit construction always yields g_1 = 1 and components with
/// constant coefficient 1; the baseline search with a primitive modulus may
/// select components divisible by x, so the type itself only requires them
/// to be nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingVector {
    b: u8,
    m: u32,
    components: Vec<Poly>,
}

impl GeneratingVector {
    pub fn new(b: u8, m: u32, components: Vec<Poly>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("generating vector must have d >= 1 components"));
        }
        for (j, g) in components.iter().enumerate() {
            if g.base() != b {
                return Err(Error::invalid(format!("component {} base mismatch", j + 1)));
            }
            if g.degree().map_or(false, |dg| dg >= m as usize) {
                return Err(Error::invalid(format!("component {} has degree >= m", j + 1)));
            }
            if g.is_zero() {
                return Err(Error::invalid(format!("component {} is zero", j + 1)));
            }
        }
        Ok(GeneratingVector { b, m, components })
    }

    fn from_masks(m: u32, masks: &[u64]) -> Self {
        let components = masks
            .iter()
            .map(|&g| Poly::from_index(g, 2).expect("base 2 is prime"))
            .collect();
        GeneratingVector { b: 2, m, components }
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// Components as integer encodings.
    pub fn indices(&self) -> Vec<u64> {
        self.components.iter().map(Poly::to_index).collect()
    }

    /// The rule with modulus x^m generated by this vector.
    pub fn power_rule(&self) -> Result<PolyLatticeRule> {
        PolyLatticeRule::with_power_modulus(self.b, self.m, self.components.clone())
    }

    /// The rule with the given modulus generated by this vector.
    pub fn rule_with_modulus(&self, modulus: Poly) -> Result<PolyLatticeRule> {
        PolyLatticeRule::new(self.b, self.m, modulus, self.components.clone())
    }
}

fn check_construction_weights(weights: &ProductWeights, d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::invalid("dimension d must be >= 1"));
    }
    if weights.len() < d {
        return Err(Error::invalid(format!(
            "weight sequence has {} entries, need {d}",
            weights.len()
        )));
    }
    if !weights.as_slice()[..d].iter().all(|g| *g > 0.0) {
        return Err(Error::invalid("construction weights must be strictly positive"));
    }
    Ok(())
}

/// Exact scale factor b^e used in the level sums of the quality function.
#[inline]
fn level_scale(b: u8, e: i32) -> f64 {
    (b as f64).powi(e)
}

/// Reusable buffers for the truncated-product table of the fast quality
/// evaluation.
struct Scratch {
    /// prod[z] = z(x) * q(x) as a carry-less product, filled by the XOR
    /// recurrence prod[z] = prod[z without lowest bit] ^ (q << lowest bit).
    prod: Vec<u64>,
    /// fac[z >> 1] = 1 - eta_r * digitlog(z * q mod x^w) for odd z.
    fac: Vec<f64>,
}

/// Cached state of the fast base-2 construction.
///
/// The flat vector `v` of length 2^m - 1 (indexed from 1) stores, at index
/// l * 2^(m-t) for odd l < 2^t, the running product over the already fixed
/// components:
///
///   a(r, t, l) = product over j <= r of (1 - eta_j * digitlog(l g_j mod x^t, t)).
///
/// While digit w of component r is being selected, levels t < w hold
/// a(r, t, l) and levels t >= w still hold a(r-1, t, l); level t = 1 never
/// changes because its digit logarithm is identically zero.
pub struct ConstructionState {
    m: u32,
    d: usize,
    eta: Vec<f64>,
    v: Vec<f64>,
    /// Component currently under construction (1-based).
    r: usize,
    /// Next digit index to fix; m + 1 once the component is finished.
    next_w: u32,
    /// Digit prefix g_{r, next_w - 1} of the current component.
    cur: u64,
    /// Finished components g_1 .. (bitmask encoding).
    fixed: Vec<u64>,
    scratch: RefCell<Scratch>,
}

impl ConstructionState {
    /// Initializes the state for a construction with g_1 = 1: the entry at
    /// index l is seeded with 1 - eta_1 * digitlog(l, m), which equals
    /// a(1, t, l') at index l' * 2^(m-t) for every level t.
    pub fn new(m: u32, d: usize, weights: &ProductWeights) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid("precision m must be >= 1"));
        }
        if m > 30 {
            return Err(Error::limit(format!("m = {m} exceeds the supported maximum 30")));
        }
        check_construction_weights(weights, d)?;
        let eta: Vec<f64> = weights.as_slice()[..d].to_vec();
        let size = 1usize << m;
        let mut v = vec![0.0; size];
        for l in 1..size as u64 {
            v[l as usize] = 1.0 - eta[0] * f2::digitlog(l, m) as f64;
        }
        Ok(ConstructionState {
            m,
            d,
            eta,
            v,
            r: 1,
            next_w: m + 1,
            cur: 1,
            fixed: vec![1],
            scratch: RefCell::new(Scratch {
                prod: vec![0; size],
                fac: vec![0.0; size / 2 + 1],
            }),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Component currently under construction (1-based).
    pub fn current_component(&self) -> usize {
        self.r
    }

    /// Next digit index to be fixed, or m + 1 when the current component is
    /// complete.
    pub fn next_digit(&self) -> u32 {
        self.next_w
    }

    /// Digit prefix of the current component.
    pub fn current_prefix(&self) -> u64 {
        self.cur
    }

    /// Finished components as bitmask encodings.
    pub fn fixed_components(&self) -> &[u64] {
        &self.fixed
    }

    /// State entry a(., t, l) at index l * 2^(m-t); l must be odd and < 2^t.
    pub fn level_entry(&self, t: u32, l: u64) -> Result<f64> {
        if !(1..=self.m).contains(&t) || l % 2 == 0 || l >= 1u64 << t {
            return Err(Error::invalid(format!("no state entry at level {t}, index {l}")));
        }
        Ok(self.v[(l << (self.m - t)) as usize])
    }

    /// Opens the next component (initial digit prefix 1).
    pub fn begin_component(&mut self) -> Result<()> {
        if self.next_w <= self.m {
            return Err(Error::InternalState(format!(
                "component {} still has digits to fix",
                self.r
            )));
        }
        if self.r >= self.d {
            return Err(Error::InternalState("all components are fixed".into()));
        }
        self.r += 1;
        self.cur = 1;
        self.next_w = 2;
        if self.next_w > self.m {
            // m = 1: the digit loop is empty and the component is just 1
            self.fixed.push(self.cur);
        }
        Ok(())
    }

    fn check_digit_position(&self, w: u32) -> Result<()> {
        if self.r < 2 || w != self.next_w || w > self.m {
            return Err(Error::InternalState(format!(
                "digit step w = {w} out of sequence (component {}, expected w = {})",
                self.r, self.next_w
            )));
        }
        Ok(())
    }

    /// Fills fac[z >> 1] = 1 - eta_r * digitlog(z q mod x^w, w) for odd
    /// z < 2^w, via an XOR recurrence over all truncated products.
    fn build_factors(&self, w: u32, q: u64, scratch: &mut Scratch) -> Result<()> {
        let mask = f2::mask(w);
        if q & mask == 0 {
            return Err(Error::degenerate("q is 0 mod x^w"));
        }
        let er = self.eta[self.r - 1];
        let size = 1usize << w;
        let prod = &mut scratch.prod[..size];
        let fac = &mut scratch.fac[..size / 2];
        prod[0] = 0;
        for z in 1..size {
            prod[z] = prod[z & (z - 1)] ^ (q << z.trailing_zeros());
            if z & 1 == 1 {
                fac[z >> 1] = 1.0 - er * f2::digitlog(prod[z] as u64, w) as f64;
            }
        }
        Ok(())
    }

    /// Quality of extending the current component with digit prefix q, using
    /// the cached products: the sum over levels t = w..m of 2^(w-t) times
    /// the level sum of v(l 2^(m-t)) (1 - eta_r digitlog(l q mod x^w, w)).
    ///
    /// Levels are visited in ascending t, indices in ascending odd l; this
    /// fixed order defines the reproducible floating-point result.
    pub fn h_fast(&self, w: u32, q: u64) -> Result<f64> {
        self.check_digit_position(w)?;
        let mut scratch = self.scratch.borrow_mut();
        self.build_factors(w, q, &mut scratch)?;
        let mask = f2::mask(w);
        let fac = &scratch.fac[..1usize << (w - 1)];
        let mut h = 0.0;
        for t in w..=self.m {
            let shift = self.m - t;
            let mut level = 0.0;
            let mut l = 1u64;
            while l < 1u64 << t {
                level += self.v[(l << shift) as usize] * fac[((l & mask) >> 1) as usize];
                l += 2;
            }
            h += level_scale(2, w as i32 - t as i32) * level;
        }
        Ok(h)
    }

    /// Fixes digit w of the current component to g_star and folds the new
    /// factor into every level-w state entry.
    pub fn apply_digit(&mut self, w: u32, g_star: u8) -> Result<()> {
        self.check_digit_position(w)?;
        if g_star > 1 {
            return Err(Error::invalid(format!("digit {g_star} is not an F_2 element")));
        }
        self.cur |= (g_star as u64) << (w - 1);
        let mut scratch = self.scratch.borrow_mut();
        self.build_factors(w, self.cur, &mut scratch)?;
        let fac = &scratch.fac[..1usize << (w - 1)];
        let shift = self.m - w;
        let mut l = 1u64;
        while l < 1u64 << w {
            self.v[(l << shift) as usize] *= fac[(l >> 1) as usize];
            l += 2;
        }
        drop(scratch);
        self.next_w = w + 1;
        if self.next_w > self.m {
            self.fixed.push(self.cur);
        }
        Ok(())
    }
}

/// Fast base-2 component-by-component digit-by-digit construction.
///
/// For every component after the first, digits of order 1..m-1 are chosen
/// one at a time by minimizing the cached quality function; ties select
/// digit 0. Runs in O(d m 2^m) operations and O(2^m) memory.
pub fn construct_fast(m: u32, d: usize, weights: &ProductWeights) -> Result<GeneratingVector> {
    let mut state = ConstructionState::new(m, d, weights)?;
    for _ in 2..=d {
        state.begin_component()?;
        for w in 2..=m {
            let prefix = state.current_prefix();
            let h0 = state.h_fast(w, prefix)?;
            let h1 = state.h_fast(w, prefix | 1 << (w - 1))?;
            state.apply_digit(w, u8::from(h1 < h0))?;
        }
    }
    Ok(GeneratingVector::from_masks(m, state.fixed_components()))
}

/// Digit-wise quality function evaluated literally from its definition:
/// the double sum over levels t = w..m and indices l coprime to x of the
/// candidate factor times the product over the previously selected
/// components.
///
/// `g_prev` holds the r-1 fixed components; `q` is the candidate digit
/// prefix for component r. All of them must have nonzero constant
/// coefficients.
pub fn h_direct(
    b: u8,
    m: u32,
    r: usize,
    w: u32,
    weights: &ProductWeights,
    g_prev: &[Poly],
    q: &Poly,
) -> Result<f64> {
    if r < 1 || g_prev.len() != r - 1 {
        return Err(Error::invalid(format!(
            "need exactly r - 1 = {} previous components, got {}",
            r - 1,
            g_prev.len()
        )));
    }
    if !(1..=m).contains(&w) {
        return Err(Error::invalid(format!("digit index w = {w} not in 1..={m}")));
    }
    check_construction_weights(weights, r)?;
    if q.base() != b || g_prev.iter().any(|g| g.base() != b) {
        return Err(Error::invalid("polynomial base mismatch"));
    }
    if !q.coprime_to_x() || g_prev.iter().any(|g| !g.coprime_to_x()) {
        return Err(Error::degenerate(
            "quality function requires components coprime to x",
        ));
    }
    if b == 2 {
        let g_bits: Vec<u64> = g_prev.iter().map(Poly::to_index).collect();
        return Ok(h_direct_f2(m, w, weights, &g_bits, q.to_index()));
    }

    let bm1 = (b - 1) as f64;
    let er = weights.get(r - 1);
    let mut h = 0.0;
    for t in w..=m {
        let bt = (b as u64).pow(t);
        let mut level = 0.0;
        for l in 1..bt {
            if l % b as u64 == 0 {
                continue;
            }
            let lp = Poly::from_index(l, b)?;
            let kq = digitlog(&mul_mod_xw(&lp, q, w as usize)?, w)?;
            let qfac = 1.0 - er * (bm1 * kq as f64);
            let mut prefix = 1.0;
            for (j, g) in g_prev.iter().enumerate() {
                let kj = digitlog(&mul_mod_xw(&lp, g, t as usize)?, t)?;
                prefix *= 1.0 - weights.get(j) * (bm1 * kj as f64);
            }
            level += prefix * qfac;
        }
        h += level_scale(b, w as i32 - t as i32) * level;
    }
    Ok(h)
}

/// Base-2 lane of [`h_direct`]; performs the identical floating-point
/// operations in the identical order as the cached evaluation.
fn h_direct_f2(m: u32, w: u32, weights: &ProductWeights, g_prev: &[u64], q: u64) -> f64 {
    let er = weights.get(g_prev.len());
    let mask = f2::mask(w);
    let mut h = 0.0;
    for t in w..=m {
        let tmask = f2::mask(t);
        let mut level = 0.0;
        let mut l = 1u64;
        while l < 1u64 << t {
            let qfac = 1.0 - er * f2::digitlog(f2::mul(l & mask, q), w) as f64;
            let mut prefix = 1.0;
            for (j, g) in g_prev.iter().enumerate() {
                prefix *= 1.0 - weights.get(j) * f2::digitlog(f2::mul(l, *g) & tmask, t) as f64;
            }
            level += prefix * qfac;
            l += 2;
        }
        h += level_scale(2, w as i32 - t as i32) * level;
    }
    h
}

/// Reference component-by-component digit-by-digit construction for any
/// prime base, evaluating the quality function literally. The argmin over
/// field elements breaks ties toward the smallest element. For base 2 the
/// output equals [`construct_fast`] exactly.
pub fn construct_reference(
    b: u8,
    m: u32,
    d: usize,
    weights: &ProductWeights,
) -> Result<GeneratingVector> {
    check_construction_weights(weights, d)?;
    if m < 1 {
        return Err(Error::invalid("precision m must be >= 1"));
    }
    let cost = (b as u128).checked_pow(m).and_then(|bm| {
        bm.checked_mul(m as u128)?.checked_mul(d as u128)
    });
    match cost {
        Some(c) if c <= 1 << 26 => {}
        _ => {
            return Err(Error::limit(format!(
                "b^m * m * d = {b}^{m} * {m} * {d} exceeds 2^26"
            )))
        }
    }
    let one = Poly::one(b)?;
    let mut fixed: Vec<Poly> = vec![one.clone()];
    for r in 2..=d {
        let mut cur = one.clone();
        for w in 2..=m {
            let mut best: Option<(f64, u8, Poly)> = None;
            for g in 0..b {
                let candidate = cur.add(&Poly::from_coeffs(
                    b,
                    {
                        let mut c = vec![0u8; w as usize];
                        c[w as usize - 1] = g;
                        c
                    },
                )?)?;
                let h = h_direct(b, m, r, w, weights, &fixed, &candidate)?;
                if best.as_ref().map_or(true, |(hb, _, _)| h < *hb) {
                    best = Some((h, g, candidate));
                }
            }
            let (_, _, chosen) = best.expect("at least one candidate");
            cur = chosen;
        }
        fixed.push(cur);
    }
    GeneratingVector::new(b, m, fixed)
}

/// The quantity H: the sum over n = 1..b^m-1 of the product over components
/// of (1 + eta_j (1-b) digitlog(n g_j mod x^m, m)), minus (b^m - 1).
///
/// Every component must be coprime to x, otherwise some product n g_j
/// vanishes mod x^m and the digit logarithm is undefined.
pub fn h_quantity(g: &GeneratingVector, weights: &ProductWeights) -> Result<f64> {
    let d = g.dim();
    if weights.len() < d {
        return Err(Error::invalid("weight sequence shorter than the dimension"));
    }
    let b = g.b();
    let m = g.m();
    let bm = (b as u64).pow(m);
    let bm1 = (b - 1) as f64;
    let mut sum = 0.0;
    if b == 2 {
        let masks = g.indices();
        let mask = f2::mask(m);
        for n in 1..bm {
            let mut prod = 1.0;
            for (j, gj) in masks.iter().enumerate() {
                let z = f2::mul(n, *gj) & mask;
                if z == 0 {
                    return Err(Error::degenerate("component not coprime to x"));
                }
                prod *= 1.0 - weights.get(j) * f2::digitlog(z, m) as f64;
            }
            sum += prod;
        }
    } else {
        for n in 1..bm {
            let np = Poly::from_index(n, b)?;
            let mut prod = 1.0;
            for (j, gj) in g.components().iter().enumerate() {
                let k = digitlog(&mul_mod_xw(&np, gj, m as usize)?, m)?;
                prod *= 1.0 - weights.get(j) * (bm1 * k as f64);
            }
            sum += prod;
        }
    }
    Ok(sum - (bm - 1) as f64)
}
