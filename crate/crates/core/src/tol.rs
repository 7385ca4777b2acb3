//! Tolerance constants shared across modules.
//!
//! All thresholds are relative to a natural scale of the quantity tested,
//! usually `E² + B²` for field invariants.

/// Relative band for causal classification of a single four-vector.
pub const CAUSAL: f64 = 1e-9;

/// `λ_T ≤ NULL_FIELD · (E² + B² + ε)` marks a field as null (radiative).
pub const NULL_FIELD: f64 = 1e-10;

/// Precondition threshold for invariant-plane extraction.
pub const PLANE_NULL: f64 = 1e-8;

/// Columns of a projector below this fraction of the largest column are discarded.
pub const PIVOT_DISCARD: f64 = 1e-8;

/// Default null-locus band `|ψ| ≤ NULL_LOCUS · (E² + B²)` for loop sampling.
pub const NULL_LOCUS: f64 = 1e-9;

/// Singular-value cutoff (relative to the largest) for span dimensions.
pub const RANK: f64 = 1e-8;

/// Below this `|λ_cF|` the exponential switches to series forms.
pub const EXP_SERIES: f64 = 1e-4;

/// Guard added to field scales so that the zero field does not divide by zero.
pub const SCALE_GUARD: f64 = f64::EPSILON;
