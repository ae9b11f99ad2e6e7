//! Exhaustive component-by-component construction minimizing the true
//! worst-case error, used as the comparison series for the digit-by-digit
//! algorithm. O(d 2^2m) time, feasible at desk scale (m <= 14).

use rayon::prelude::*;

use crate::cbc_dbd::GeneratingVector;
use crate::error::{Error, Result};
use crate::poly::{primitive_poly_f2, Poly};
use crate::pointset::{CoordMap, PolyLatticeRule};
use crate::walsh::PhiTable;
use crate::weights::ProductWeights;

/// Modulus family for the baseline search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusKind {
    /// p(x) = x^m; candidate components are the odd encodings.
    Power,
    /// The fixed primitive polynomial of degree m; every nonzero encoding is
    /// a candidate.
    Primitive,
}

impl ModulusKind {
    pub fn modulus(self, m: u32) -> Result<Poly> {
        match self {
            ModulusKind::Power => Poly::x_pow(2, m as usize),
            ModulusKind::Primitive => primitive_poly_f2(m),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModulusKind::Power => "power",
            ModulusKind::Primitive => "primitive",
        }
    }
}

fn candidates(kind: ModulusKind, m: u32) -> Vec<u64> {
    match kind {
        ModulusKind::Power => (1..1u64 << m).step_by(2).collect(),
        ModulusKind::Primitive => (1..1u64 << m).collect(),
    }
}

/// Greedy component-by-component search: component r minimizes the
/// worst-case error of the extended rule over all candidates coprime to the
/// modulus, with the per-point products of the fixed prefix cached (one
/// double per point). Ties break toward the smallest encoding.
///
/// The criterion depends on alpha, unlike the digit-by-digit construction.
pub fn construct_cbc_naive(
    m: u32,
    d: usize,
    alpha: f64,
    weights: &ProductWeights,
    kind: ModulusKind,
) -> Result<GeneratingVector> {
    if m < 1 {
        return Err(Error::invalid("precision m must be >= 1"));
    }
    if m > 14 {
        return Err(Error::limit(format!(
            "m = {m} exceeds the baseline search maximum 14"
        )));
    }
    if d == 0 {
        return Err(Error::invalid("dimension d must be >= 1"));
    }
    if weights.len() < d {
        return Err(Error::invalid("weight sequence shorter than the dimension"));
    }
    if !(alpha > 1.0) {
        return Err(Error::invalid(format!("alpha = {alpha} must be > 1")));
    }

    let modulus = kind.modulus(m)?;
    let n_points = 1u64 << m;
    let phi = PhiTable::new(m, alpha);
    let cand = candidates(kind, m);

    // By the full-grid projection property every candidate yields the same
    // one-dimensional point multiset, so the first component ties across the
    // whole candidate set and the tie-break fixes g_1 = 1.
    let mut components = vec![Poly::one(2)?];
    let mut cache: Vec<f64> = vec![1.0; n_points as usize];
    update_cache(&mut cache, m, &modulus, 1, weights.get(0), &phi)?;

    for r in 1..d {
        let gamma = weights.get(r);
        let scored: Vec<(u64, f64)> = cand
            .par_iter()
            .map(|&g| {
                let e = candidate_error(&cache, m, &modulus, g, gamma, &phi)?;
                Ok((g, e))
            })
            .collect::<Result<_>>()?;
        // candidates are scanned in ascending order, so keeping the strictly
        // smaller error breaks ties toward the smallest encoding
        let mut best = scored[0];
        for &(g, e) in &scored[1..] {
            if e < best.1 {
                best = (g, e);
            }
        }
        update_cache(&mut cache, m, &modulus, best.0, gamma, &phi)?;
        components.push(Poly::from_index(best.0, 2)?);
    }
    GeneratingVector::new(2, m, components)
}

fn component_map(m: u32, modulus: &Poly, g: u64) -> Result<CoordMap> {
    let rule = PolyLatticeRule::new(2, m, modulus.clone(), vec![Poly::from_index(g, 2)?])?;
    CoordMap::new(&rule, 0)
}

/// Error of the prefix extended by candidate g, evaluated against the frozen
/// per-point product cache. Performs the same operations in the same order
/// as a from-scratch evaluation of the extended rule.
fn candidate_error(
    cache: &[f64],
    m: u32,
    modulus: &Poly,
    g: u64,
    gamma: f64,
    phi: &PhiTable,
) -> Result<f64> {
    let map = component_map(m, modulus, g)?;
    let mut acc = 0.0;
    for (n, c) in cache.iter().enumerate() {
        acc += c * (1.0 + gamma * phi.value(map.numerator_f2(n as u64)));
    }
    Ok(-1.0 + acc / cache.len() as f64)
}

fn update_cache(
    cache: &mut [f64],
    m: u32,
    modulus: &Poly,
    g: u64,
    gamma: f64,
    phi: &PhiTable,
) -> Result<()> {
    let map = component_map(m, modulus, g)?;
    for (n, c) in cache.iter_mut().enumerate() {
        *c *= 1.0 + gamma * phi.value(map.numerator_f2(n as u64));
    }
    Ok(())
}
