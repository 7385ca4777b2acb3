//! Boosted observers, field transformation, Doppler factors, the Lorentz
//! force and the closed-form exponential `e^F`.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigen::{eigenvalues, is_null, principal_null_pair};
use crate::energy::lambda_t;
use crate::error::{Error, Result};
use crate::minkowski::{inner, FourVector, SpatialVector};
use crate::skew::SkewField;
use crate::tol;

/// Relative 3-velocity `w` of a second observer, `‖w‖ < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(into = "[f64; 3]")]
pub struct BoostVelocity(SpatialVector);

impl From<BoostVelocity> for [f64; 3] {
    fn from(w: BoostVelocity) -> Self {
        [w.0.x, w.0.y, w.0.z]
    }
}

impl BoostVelocity {
    pub fn new(w: SpatialVector) -> Result<Self> {
        let speed = w.norm();
        // NaN lands here too
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(speed < 1.0) {
            return Err(Error::SuperluminalVelocity { speed });
        }
        Ok(BoostVelocity(w))
    }

    pub fn zero() -> Self {
        BoostVelocity(SpatialVector::zeros())
    }

    pub fn w(&self) -> &SpatialVector {
        &self.0
    }

    pub fn speed(&self) -> f64 {
        self.0.norm()
    }

    pub fn gamma(&self) -> f64 {
        1.0 / (1.0 - self.0.norm_squared()).sqrt()
    }
}

impl<'de> Deserialize<'de> for BoostVelocity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = <[f64; 3]>::deserialize(d)?;
        BoostVelocity::new(w.into()).map_err(serde::de::Error::custom)
    }
}

/// `u′ = γ(u + w)`.
pub fn boost_observer(w: &BoostVelocity) -> FourVector {
    w.gamma() * FourVector::from_parts(1.0, w.w())
}

/// Fields seen by the boosted observer, as four-vectors orthogonal to `u′`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldTransformResult {
    #[serde(rename = "E_prime")]
    pub e_prime: FourVector,
    #[serde(rename = "B_prime")]
    pub b_prime: FourVector,
    pub observer: FourVector,
}

impl FieldTransformResult {
    pub fn e_dot_b(&self) -> f64 {
        inner(&self.e_prime, &self.b_prime)
    }

    pub fn e2_minus_b2(&self) -> f64 {
        inner(&self.e_prime, &self.e_prime) - inner(&self.b_prime, &self.b_prime)
    }
}

/// `E′ = F u′ = γ(E·w, E + w×B)` and `B′ = −F* u′ = γ(B·w, B − w×E)`.
pub fn transform_fields(f: &SkewField, w: &BoostVelocity) -> FieldTransformResult {
    let observer = boost_observer(w);
    FieldTransformResult {
        e_prime: f.apply(&observer),
        b_prime: -f.hodge_dual().apply(&observer),
        observer,
    }
}

/// Splits `v` into its projection on the `u, w` plane and the remainder.
pub fn par_perp_decompose(v: &FourVector, w: &BoostVelocity) -> Result<(FourVector, FourVector)> {
    let n = w.speed();
    if n == 0.0 {
        return Err(Error::ZeroVelocity);
    }
    let u = FourVector::observer();
    let dir = FourVector::from_spatial(&(w.w() / n));
    let parallel = -inner(v, &u) * u + inner(v, &dir) * dir;
    Ok((parallel, *v - parallel))
}

/// The factor `k` with `s_{u′} = k s_u` for the principal null eigenvector,
/// taken as the ratio `⟨u′, s₋⟩ / ⟨u, s₋⟩`.
pub fn eigenvector_scale_factor(f: &SkewField, w: &BoostVelocity) -> Result<f64> {
    let pair = principal_null_pair(f)?;
    let u = FourVector::observer();
    let ratio = inner(&boost_observer(w), &pair.s_minus) / inner(&u, &pair.s_minus);
    debug_assert!(
        (ratio - scale_factor_closed_form(f, w)).abs() <= 1e-9 * ratio.abs().max(1.0),
        "scale factor disagrees with its closed form"
    );
    Ok(ratio)
}

/// The expanded form `γ[1 + (−(E×B)·w + λ_F E·w − λ_F* B·w)/(λ_T + (E²+B²)/2)]`.
pub fn scale_factor_closed_form(f: &SkewField, w: &BoostVelocity) -> f64 {
    let ev = eigenvalues(f);
    let (e, b, v) = (f.e(), f.b(), w.w());
    let num = -e.cross(b).dot(v) + ev.lambda_f * e.dot(v) - ev.lambda_fstar * b.dot(v);
    w.gamma() * (1.0 + num / (ev.lambda_t + 0.5 * f.energy_scale()))
}

/// Doppler ratio of a null field, `γ(1 − w·(E×B)/E²)`.
pub fn doppler_null(f: &SkewField, w: &BoostVelocity) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::ZeroField);
    }
    if !is_null(f) {
        return Err(Error::NotNull { lambda_t: lambda_t(f) });
    }
    let p = f.e().cross(f.b());
    Ok(w.gamma() * (1.0 - w.w().dot(&p) / f.e_squared()))
}

/// The boost `w = E×B / (λ_T + (E²+B²)/2)` after which `E′ ∥ B′`.
pub fn poynting_eliminating_velocity(f: &SkewField) -> Result<BoostVelocity> {
    let lt = lambda_t(f);
    if is_null(f) {
        return Err(Error::NullField { lambda_t: lt });
    }
    BoostVelocity::new(f.e().cross(f.b()) / (lt + 0.5 * f.energy_scale()))
}

/// Four-acceleration `q F u′` of a charge moving with velocity `w`.
pub fn lorentz_force(f: &SkewField, charge: f64, w: &BoostVelocity) -> FourVector {
    charge * f.apply(&boost_observer(w))
}

/// `sinh(z)/z`, by series near zero.
fn sinhc(z: Complex64) -> Complex64 {
    if z.norm() < tol::EXP_SERIES {
        let z2 = z * z;
        1.0 + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// `e^F = e^{cF/2} e^{c̄F/2}`, where `e^{cF/2} = cosh(λ/2) I + (sinh(λ/2)/λ) cF`
/// and the second factor is the complex conjugate of the first.
/// Null fields use `I + F + F²/2`.
pub fn exp_map(f: &SkewField) -> Matrix4<f64> {
    let m = f.matrix();
    if is_null(f) {
        return Matrix4::identity() + m + m * m * 0.5;
    }
    let half = eigenvalues(f).lambda_cf * 0.5;
    let cf = f.complexify(false);
    let factor = Matrix4::identity() * half.cosh() + cf.matrix() * (sinhc(half) * 0.5);
    let full = factor * factor.map(|z| z.conj());
    debug_assert!(
        full.map(|z| z.im.abs()).max() <= 1e-9 * full.map(|z| z.re.abs()).max().max(1.0),
        "exponential has an imaginary residue"
    );
    full.map(|z| z.re)
}
