//! Polynomial lattice rules for quasi-Monte Carlo integration in weighted
//! Walsh spaces.
//!
//! The crate constructs generating vectors with a component-by-component
//! digit-by-digit search whose quality criterion is independent of the
//! smoothness parameter, evaluates worst-case integration errors through the
//! closed-form base-2 kernel, and ships the truncated quality measures and
//! series identities needed to verify the construction against brute-force
//! oracles.
//!
//! Entry points:
//!
//! * [`construct_fast`] — base-2 construction in O(d m 2^m) operations
//! * [`construct_reference`] — literal reference construction, any prime base
//! * [`construct_cbc_naive`] — exhaustive per-component baseline search
//! * [`wce_product`] — worst-case error of a rule under product weights
//!
//! All point coordinates are exact b-adic rationals (integer numerators over
//! b^m); floating point enters only in error evaluation, with fixed
//! summation orders so results are reproducible run to run.

pub mod cbc_baseline;
pub mod cbc_dbd;
pub mod error;
pub mod pointset;
pub mod poly;
pub mod vector_file;
pub mod walsh;
pub mod weights;

pub use cbc_baseline::{construct_cbc_naive, ModulusKind};
pub use cbc_dbd::{
    construct_fast, construct_reference, h_direct, h_quantity, ConstructionState,
    GeneratingVector,
};
pub use error::{Error, Result};
pub use pointset::{PointMatrix, PolyLatticeRule};
pub use poly::{
    digitlog, laurent_numerator, mul_mod_xw, primitive_poly_f2, vm_numerator, Poly,
};
pub use vector_file::{read_vector, write_vector, VectorFile};
pub use walsh::{
    char_sum, dual_box_set, dual_indicator, log_series_partial, mu_b, phi_alpha,
    r_alpha_weighted, t_measure, trunc_gap_bound, walsh_eval, walsh_exponent, wce_product,
};
pub use weights::ProductWeights;
