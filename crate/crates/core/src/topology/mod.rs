//! The invariant `ψ = (E² − B²) + 2iE·B` over a configuration and its
//! winding around loops in the non-null region.

mod config;
mod path;
mod winding;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use config::{eval_config, FieldConfig, FieldSource};
pub use path::LoopSpec;
pub use winding::{
    degree, degree_with_tol, eigenvalue_continuation, eigenvalue_continuation_with_tol, gcd, winding,
    winding_with_tol, Parity, WindingReport, MAX_REFINEMENT_DEPTH,
};

use crate::minkowski::SpatialVector;
use crate::skew::SkewField;

/// `ψ_F = (E² − B²) + 2i E·B`, the square of `λ_cF`.
pub fn psi(f: &SkewField) -> Complex64 {
    Complex64::new(f.e_squared() - f.b_squared(), 2.0 * f.e_dot_b())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Singular,
    NullLocus,
    M1,
}

/// Where `point` sits: a singularity, on the null locus `|ψ| ≤ tol·(E²+B²)`,
/// or in the regular region. Vanishing fields count as null locus.
pub fn region_classify<S: FieldSource + ?Sized>(config: &S, point: &SpatialVector, tol: f64) -> Region {
    match config.field_at(point) {
        Err(_) => Region::Singular,
        Ok(f) => {
            if psi(&f).norm() <= tol * f.energy_scale() {
                Region::NullLocus
            } else {
                Region::M1
            }
        }
    }
}

#[cfg(test)]
mod tests;
