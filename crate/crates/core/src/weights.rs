//! Product weights modelling the importance of each coordinate.

use crate::error::{Error, Result};

/// A sequence of per-coordinate weights (gamma_1, gamma_2, ...).
///
/// The weight of a coordinate subset u is the product of its members'
/// weights; the empty subset has weight 1. Evaluation accepts zero entries
/// (a zero weight removes the coordinate from the error); the construction
/// algorithms additionally require strictly positive entries and check that
/// themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductWeights {
    gammas: Vec<f64>,
}

impl ProductWeights {
    pub fn new(gammas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::invalid("weight sequence must be non-empty"));
        }
        if let Some(g) = gammas.iter().find(|g| !g.is_finite() || **g < 0.0) {
            return Err(Error::invalid(format!("weight {g} is not a finite non-negative real")));
        }
        Ok(ProductWeights { gammas })
    }

    /// gamma_j = j^{-c} for j = 1..=d.
    pub fn polynomial_decay(c: f64, d: usize) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::invalid(format!("polynomial decay exponent {c} must be > 0")));
        }
        Self::new((1..=d).map(|j| (j as f64).powf(-c)).collect())
    }

    /// gamma_j = q^j for j = 1..=d.
    pub fn geometric(q: f64, d: usize) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::invalid(format!("geometric ratio {q} must lie in (0, 1)")));
        }
        Self::new((1..=d).map(|j| q.powi(j as i32)).collect())
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// gamma_{j+1} (0-based accessor).
    pub fn get(&self, j: usize) -> f64 {
        self.gammas[j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.gammas
    }

    /// All entries strictly positive (required by the construction
    /// algorithms).
    pub fn all_positive(&self) -> bool {
        self.gammas.iter().all(|g| *g > 0.0)
    }

    /// Componentwise power (gamma_j^alpha), used to evaluate rules built
    /// with alpha-independent weights in the space with weights gamma^alpha.
    pub fn powered(&self, alpha: f64) -> Self {
        ProductWeights {
            gammas: self.gammas.iter().map(|g| g.powf(alpha)).collect(),
        }
    }

    /// Product of the weights of the given 0-based coordinates.
    pub fn subset_weight(&self, coords: impl IntoIterator<Item = usize>) -> f64 {
        coords.into_iter().map(|j| self.gammas[j]).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        let w = ProductWeights::polynomial_decay(2.0, 3).unwrap();
        assert_eq!(w.as_slice(), &[1.0, 0.25, 1.0 / 9.0]);
        let w = ProductWeights::geometric(0.95, 2).unwrap();
        assert!((w.get(0) - 0.95).abs() < 1e-15);
        assert!((w.get(1) - 0.9025).abs() < 1e-15);
        assert!(ProductWeights::geometric(1.0, 2).is_err());
        assert!(ProductWeights::polynomial_decay(0.0, 2).is_err());
        assert!(ProductWeights::new(vec![1.0, -0.5]).is_err());
    }

    #[test]
    fn subset_weight_empty_is_one() {
        let w = ProductWeights::new(vec![0.5, 0.25]).unwrap();
        assert_eq!(w.subset_weight([]), 1.0);
        assert_eq!(w.subset_weight([0, 1]), 0.125);
    }
}
