//! Polynomial lattice point sets.
//!
//! A rule (b, m, p, g) defines b^m points whose j-th coordinate is
//! v_m(n(x) g_j(x) / p(x)) for the index polynomial n(x). Coordinates are
//! kept as exact integer numerators over b^m; conversion to floats happens
//! only at error-evaluation time.

use crate::error::{Error, Result};
use crate::poly::{f2, laurent_numerator, mul_mod_xw, Poly};

/// A polynomial lattice rule: base b, precision m (b^m points), a modulus of
/// degree exactly m, and d generating polynomials of degree < m.
///
/// Constructed rules additionally satisfy gcd(g_j, p) = 1 (for p = x^m this
/// means every component has a nonzero constant coefficient); the full-grid
/// projection property and the worst-case error formulas assume it.
#[derive(Debug, Clone)]
pub struct PolyLatticeRule {
    b: u8,
    m: u32,
    modulus: Poly,
    gen: Vec<Poly>,
}

impl PolyLatticeRule {
    pub fn new(b: u8, m: u32, modulus: Poly, gen: Vec<Poly>) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("precision m must be >= 1"));
        }
        if modulus.base() != b {
            return Err(Error::invalid("modulus base does not match rule base"));
        }
        if modulus.degree() != Some(m as usize) {
            return Err(Error::invalid(format!(
                "modulus degree {:?} does not equal m = {m}",
                modulus.degree()
            )));
        }
        if gen.is_empty() {
            return Err(Error::invalid("generating vector must have d >= 1 components"));
        }
        for (j, g) in gen.iter().enumerate() {
            if g.base() != b {
                return Err(Error::invalid(format!("component {} base mismatch", j + 1)));
            }
            if g.degree().map_or(false, |dg| dg >= m as usize) {
                return Err(Error::invalid(format!(
                    "component {} has degree >= m = {m}",
                    j + 1
                )));
            }
        }
        if b == 2 && m > 30 {
            return Err(Error::limit(format!("m = {m} exceeds the supported maximum 30")));
        }
        Ok(PolyLatticeRule { b, m, modulus, gen })
    }

    /// Rule with the power modulus x^m.
    pub fn with_power_modulus(b: u8, m: u32, gen: Vec<Poly>) -> Result<Self> {
        let modulus = Poly::x_pow(b, m as usize)?;
        Self::new(b, m, modulus, gen)
    }

    pub fn b(&self) -> u8 {
        self.b
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of points b^m.
    pub fn n_points(&self) -> u64 {
        (self.b as u64).pow(self.m)
    }

    /// Number of dimensions d.
    pub fn dim(&self) -> usize {
        self.gen.len()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn generating(&self) -> &[Poly] {
        &self.gen
    }

    /// Coordinate numerator of point n in dimension j (0-based), an integer
    /// u in [0, b^m) with coordinate value u / b^m.
    pub fn coordinate(&self, n: u64, j: usize) -> Result<u64> {
        if n >= self.n_points() {
            return Err(Error::invalid(format!("point index {n} out of range")));
        }
        if j >= self.dim() {
            return Err(Error::invalid(format!("dimension index {j} out of range")));
        }
        CoordMap::new(self, j)?.numerator(self, n, j)
    }

    pub(crate) fn dim_maps(&self) -> Result<Vec<CoordMap>> {
        (0..self.dim()).map(|j| CoordMap::new(self, j)).collect()
    }

    /// Streaming iterator over rows of coordinate numerators, in point order
    /// n = 0, 1, ..., b^m - 1. Memory use is one row; preferred over
    /// [`PolyLatticeRule::generate_points`] for large m.
    pub fn rows(&self) -> Result<RowIter<'_>> {
        Ok(RowIter {
            rule: self,
            maps: self.dim_maps()?,
            n: 0,
        })
    }

    /// Materializes the full b^m x d matrix of coordinate numerators.
    pub fn generate_points(&self) -> Result<PointMatrix> {
        let n_points = self.n_points();
        let dim = self.dim();
        let maps = self.dim_maps()?;
        let mut numerators = Vec::with_capacity(n_points as usize * dim);
        for n in 0..n_points {
            for (j, map) in maps.iter().enumerate() {
                numerators.push(map.numerator(self, n, j)?);
            }
        }
        Ok(PointMatrix {
            n_points,
            dim,
            numerators,
        })
    }
}

/// Evaluates coordinates of one dimension: the v_m numerator of
/// n(x) g_j(x) mod p. For b = 2 this runs on u64 bitmasks; the general-base
/// path goes through polynomial arithmetic.
pub(crate) enum CoordMap {
    /// b = 2, p = x^m: u(n) = (n * g) mod x^m, one carry-less product.
    F2Power { g: u64, mask: u64 },
    /// b = 2, general p: reduce the product mod p, then apply the
    /// F_2-linear Laurent map tabulated on the monomial basis.
    F2General { g: u64, p: u64, basis: Vec<u64> },
    /// Any base, via Poly arithmetic.
    General,
}

impl CoordMap {
    pub(crate) fn new(rule: &PolyLatticeRule, j: usize) -> Result<CoordMap> {
        if rule.b != 2 {
            return Ok(CoordMap::General);
        }
        let g = rule.gen[j].to_index();
        let xm = Poly::x_pow(2, rule.m as usize)?;
        if rule.modulus == xm {
            Ok(CoordMap::F2Power {
                g,
                mask: f2::mask(rule.m),
            })
        } else {
            let basis = (0..rule.m as usize)
                .map(|i| laurent_numerator(&Poly::x_pow(2, i)?, &rule.modulus, rule.m))
                .collect::<Result<Vec<u64>>>()?;
            Ok(CoordMap::F2General {
                g,
                p: rule.modulus.to_index(),
                basis,
            })
        }
    }

    /// Fast path for base 2; callers guarantee the map is not `General`.
    #[inline]
    pub(crate) fn numerator_f2(&self, n: u64) -> u64 {
        match self {
            CoordMap::F2Power { g, mask } => f2::mul(n, *g) & mask,
            CoordMap::F2General { g, p, basis } => {
                let mut q = f2::rem(f2::mul(n, *g), *p);
                let mut u = 0u64;
                while q != 0 {
                    u ^= basis[q.trailing_zeros() as usize];
                    q &= q - 1;
                }
                u
            }
            CoordMap::General => unreachable!("general base has no u64 fast path"),
        }
    }

    fn numerator(&self, rule: &PolyLatticeRule, n: u64, j: usize) -> Result<u64> {
        match self {
            CoordMap::General => {
                let np = Poly::from_index(n, rule.b)?;
                let prod = mul_mod_xw(&np, &rule.gen[j], 2 * rule.m as usize)?;
                let q = prod.rem(&rule.modulus)?;
                laurent_numerator(&q, &rule.modulus, rule.m)
            }
            _ => Ok(self.numerator_f2(n)),
        }
    }
}

/// Row-streaming point iterator; see [`PolyLatticeRule::rows`].
pub struct RowIter<'a> {
    rule: &'a PolyLatticeRule,
    maps: Vec<CoordMap>,
    n: u64,
}

impl Iterator for RowIter<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.n >= self.rule.n_points() {
            return None;
        }
        let n = self.n;
        self.n += 1;
        Some(
            self.maps
                .iter()
                .enumerate()
                .map(|(j, map)| {
                    map.numerator(self.rule, n, j)
                        .expect("rule invariants checked at construction")
                })
                .collect(),
        )
    }
}

/// Materialized point set: row n holds the coordinate numerators of point n.
#[derive(Debug, Clone)]
pub struct PointMatrix {
    n_points: u64,
    dim: usize,
    numerators: Vec<u64>,
}

impl PointMatrix {
    pub fn n_points(&self) -> u64 {
        self.n_points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, n: u64) -> &[u64] {
        let s = n as usize * self.dim;
        &self.numerators[s..s + self.dim]
    }

    pub fn get(&self, n: u64, j: usize) -> u64 {
        self.numerators[n as usize * self.dim + j]
    }

    /// Copy of one coordinate column, for per-dimension passes.
    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.n_points).map(|n| self.get(n, j)).collect()
    }
}
