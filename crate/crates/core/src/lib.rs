//! Metric-skew operators on Minkowski space: electromagnetic fields as
//! linear maps, their duality and complex structure, eigenstructure,
//! energy–momentum, boosts, and the winding degree of field configurations.

pub mod battery;
pub mod eigen;
pub mod energy;
pub mod error;
pub mod lorentz;
pub mod minkowski;
pub mod skew;
pub mod tol;
pub mod topology;

pub use eigen::{
    char_poly, complex_eigenplane, eigenvalues, is_null, null_eigendirection, principal_null_pair,
    psi_v, psi_v_determinant, EigenData, PrincipalNullPair, Sign,
};
pub use energy::{
    duality_orbit_check, energy_momentum, invariant_planes, lambda_t, poynting, reconstruct_skew,
    EnergyMomentum, InvariantPlanes,
};
pub use error::{Error, Result};
pub use lorentz::{
    boost_observer, doppler_null, eigenvector_scale_factor, exp_map, lorentz_force, par_perp_decompose,
    poynting_eliminating_velocity, transform_fields, BoostVelocity, FieldTransformResult,
};
pub use minkowski::{
    classify, complex_inner, inner, CausalClass, ComplexFourVector, ComplexNullClass, FourVector,
    SpatialVector,
};
pub use skew::{algebra_span_dim, pauli_basis, ComplexSkewOp, Orientation, SkewField};
pub use topology::{
    degree, eigenvalue_continuation, eval_config, psi, region_classify, winding, FieldConfig,
    FieldSource, LoopSpec, Parity, Region, WindingReport,
};
