//! The energy–momentum operator `T_F = F² − ¼ tr(F²) I`, its invariant
//! planes, and the reconstruction of a field from a given `T`.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{inner, metric, FourVector, SpatialVector};
use crate::skew::{matrix_rows, wrap_angle, SkewField};
use crate::tol;

/// Metric-symmetric, traceless operator with `T² = λ_T² I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyMomentum {
    matrix: Matrix4<f64>,
    lambda_t: f64,
}

impl EnergyMomentum {
    /// Wraps an arbitrary matrix; `λ_T` is read off as `sqrt(tr(Q²)/4)`.
    /// No invariant is checked here, see [`EnergyMomentum::validate`].
    pub fn from_matrix(matrix: Matrix4<f64>) -> Self {
        let lambda_sq = (matrix * matrix).trace() / 4.0;
        EnergyMomentum {
            matrix,
            lambda_t: lambda_sq.max(0.0).sqrt(),
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    pub fn lambda_t(&self) -> f64 {
        self.lambda_t
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        self.matrix * *v
    }

    /// Checks metric symmetry, zero trace, `T² = λ_T² I` and `⟨u, Tu⟩ < 0`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let m = &self.matrix;
        let scale = m.amax();
        if !m.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidTensor("non-finite entries".into()));
        }
        let gm = metric() * m;
        let asym = (gm - gm.transpose()).amax();
        if asym > tol * scale {
            return Err(Error::InvalidTensor(format!("not metric-symmetric (residual {asym:e})")));
        }
        if m.trace().abs() > tol * scale {
            return Err(Error::InvalidTensor(format!("trace {:e} is not zero", m.trace())));
        }
        let sq = m * m - Matrix4::identity() * self.lambda_t.powi(2);
        if sq.amax() > tol * scale * scale {
            return Err(Error::InvalidTensor(format!(
                "square is not scalar (residual {:e})",
                sq.amax()
            )));
        }
        let u = FourVector::observer();
        if inner(&u, &self.apply(&u)) >= 0.0 || scale == 0.0 {
            return Err(Error::InvalidTensor("<u, Qu> is not negative".into()));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct EnergyMomentumRepr {
    matrix: [[f64; 4]; 4],
    #[serde(rename = "lambda_T")]
    lambda_t: f64,
}

impl Serialize for EnergyMomentum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EnergyMomentumRepr {
            matrix: matrix_rows(&self.matrix),
            lambda_t: self.lambda_t,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EnergyMomentum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = EnergyMomentumRepr::deserialize(d)?;
        let m = Matrix4::from_fn(|i, j| r.matrix[i][j]);
        Ok(EnergyMomentum::from_matrix(m))
    }
}

/// `λ_T = sqrt(((E² − B²)/2)² + (E·B)²)`.
pub fn lambda_t(f: &SkewField) -> f64 {
    (0.5 * (f.e_squared() - f.b_squared())).hypot(f.e_dot_b())
}

pub fn energy_momentum(f: &SkewField) -> EnergyMomentum {
    let f2 = f.matrix() * f.matrix();
    let matrix = f2 - Matrix4::identity() * (0.25 * f2.trace());
    EnergyMomentum {
        matrix,
        lambda_t: lambda_t(f),
    }
}

/// Block form of `T_F` in terms of `E` and `B`:
///
/// ```text
///   | (E²+B²)/2    −(E×B)ᵀ               |
///   | E×B          EEᵀ + BBᵀ − (E²+B²)/2 |
/// ```
pub fn energy_momentum_block(f: &SkewField) -> Matrix4<f64> {
    let (e, b) = f.extract_fields();
    let half = 0.5 * f.energy_scale();
    let p = e.cross(&b);
    let spatial = e * e.transpose() + b * b.transpose() - nalgebra::Matrix3::identity() * half;
    let mut m = Matrix4::zeros();
    m[(0, 0)] = half;
    for k in 0..3 {
        m[(0, k + 1)] = -p[k];
        m[(k + 1, 0)] = p[k];
        for j in 0..3 {
            m[(k + 1, j + 1)] = spatial[(k, j)];
        }
    }
    m
}

/// The Poynting four-vector `T u = (E²+B²)/2 u + E×B`.
pub fn poynting(f: &SkewField) -> FourVector {
    FourVector::from_parts(0.5 * f.energy_scale(), &f.e().cross(f.b()))
}

/// Orthonormal spanning pairs of the `±λ_T` eigenplanes of `T_F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantPlanes {
    /// Timelike unit vector first, then a spacelike unit vector.
    pub pi_plus: [FourVector; 2],
    pub pi_minus: [FourVector; 2],
}

/// Eigenplanes `Π± = image(±λ_T I + T)` of a non-null field.
pub fn invariant_planes(f: &SkewField) -> Result<InvariantPlanes> {
    let lt = lambda_t(f);
    if lt <= tol::PLANE_NULL * f.energy_scale() || f.is_zero() {
        return Err(Error::NullField { lambda_t: lt });
    }
    let t = energy_momentum(f);
    planes_of(t.matrix(), lt)
}

fn planes_of(t: &Matrix4<f64>, lt: f64) -> Result<InvariantPlanes> {
    let id = Matrix4::identity();
    let plus = minkowski_pivoted_basis(&(id * lt + t), Some(0));
    let minus = minkowski_pivoted_basis(&(t - id * lt), None);
    match (plus.as_slice(), minus.as_slice()) {
        ([p0, p1], [m0, m1]) => Ok(InvariantPlanes {
            pi_plus: [*p0, *p1],
            pi_minus: [*m0, *m1],
        }),
        _ => Err(Error::InvalidTensor(format!(
            "eigenplanes have dimensions {} and {}, expected 2 and 2",
            plus.len(),
            minus.len()
        ))),
    }
}

/// Modified Gram–Schmidt with column pivoting under the Minkowski metric.
///
/// Columns are picked by largest Euclidean residual; a column whose residual
/// falls below `PIVOT_DISCARD` of the largest input column is dropped. The
/// returned vectors satisfy `⟨v, v⟩ = ±1` and are mutually orthogonal.
fn minkowski_pivoted_basis(m: &Matrix4<f64>, first: Option<usize>) -> Vec<FourVector> {
    let mut cols: Vec<FourVector> = (0..4).map(|j| FourVector(m.column(j).into_owned())).collect();
    let largest = cols.iter().map(|c| c.euclidean_norm()).fold(0.0, f64::max);
    let cutoff = tol::PIVOT_DISCARD * largest;
    let mut basis = Vec::new();
    let mut used = [false; 4];
    let mut forced = first;
    loop {
        let pick = forced.take().or_else(|| {
            (0..4)
                .filter(|&j| !used[j])
                .max_by(|&a, &b| cols[a].euclidean_norm().total_cmp(&cols[b].euclidean_norm()))
        });
        let Some(j) = pick else { break };
        used[j] = true;
        let r = cols[j];
        let n = r.euclidean_norm();
        if n <= cutoff {
            break;
        }
        let q = inner(&r, &r);
        if q.abs() <= 1e-12 * n * n {
            continue;
        }
        let v = (1.0 / q.abs().sqrt()) * r;
        let vv = q.signum();
        for (k, c) in cols.iter_mut().enumerate() {
            if !used[k] {
                *c = *c - (inner(c, &v) / vv) * v;
            }
        }
        basis.push(v);
    }
    basis
}

/// Relative threshold on `λ/‖Q‖` below which reconstruction takes the null branch.
const RECONSTRUCT_NULL: f64 = 1e-7;
/// Relative tolerance for the invariant checks on a reconstruction input.
const RECONSTRUCT_CHECK: f64 = 1e-9;
/// Relative tolerance on the round trip `T_F = Q`.
const RECONSTRUCT_ROUND_TRIP: f64 = 1e-7;

/// Builds some `F` with `T_F = Q`. The result is one representative of a
/// duality-rotation orbit; in the non-null case it has `λ_{F*} = 0`.
pub fn reconstruct_skew(q: &EnergyMomentum) -> Result<SkewField> {
    q.validate(RECONSTRUCT_CHECK)?;
    let m = q.matrix();
    let scale = m.amax();
    let lam = q.lambda_t();
    // near the threshold either branch may be the accurate one, so the
    // other is tried when the first fails its round trip
    let null_first = lam <= RECONSTRUCT_NULL * scale;
    let mut worst = f64::INFINITY;
    for null_branch in [null_first, !null_first] {
        let candidate = if null_branch {
            reconstruct_null(q)
        } else {
            reconstruct_non_null(m, lam)
        };
        let Ok(f) = candidate else { continue };
        let err = (energy_momentum(&f).matrix() - m).amax();
        if err <= RECONSTRUCT_ROUND_TRIP * scale {
            return Ok(f);
        }
        worst = worst.min(err);
    }
    Err(Error::InvalidTensor(format!(
        "reconstruction does not reproduce the tensor (residual {worst:e})"
    )))
}

/// `F` acts as `±λ_F` on the two null lines of `Π₊` and vanishes on `Π₋`.
fn reconstruct_non_null(m: &Matrix4<f64>, lam: f64) -> Result<SkewField> {
    let planes = planes_of(m, lam)?;
    let [t, x] = planes.pi_plus;
    let lambda_f = (2.0 * lam).sqrt();
    let g = metric();
    let gt = g * t.0;
    let gx = g * x.0;
    let fm = (t.0 * gx.transpose() - x.0 * gt.transpose()) * lambda_f;
    SkewField::from_matrix(&fm, 1e-9)
}

/// A null `T` is fixed by `s = Qu`; pick `E ⊥ B`, `|E| = |B|`, `E×B = s`.
fn reconstruct_null(q: &EnergyMomentum) -> Result<SkewField> {
    let s = q.apply(&FourVector::observer());
    let energy = s.t();
    let p = s.spatial();
    let pn = p.norm();
    if energy <= 0.0 || pn == 0.0 {
        return Err(Error::InvalidTensor("null tensor without a propagation direction".into()));
    }
    let n = p / pn;
    let e1 = perpendicular_unit(&n);
    let e2 = n.cross(&e1);
    let amp = energy.sqrt();
    Ok(SkewField::from_fields(amp * e1, amp * e2))
}

/// A unit vector orthogonal to the unit vector `n`, chosen deterministically.
pub(crate) fn perpendicular_unit(n: &SpatialVector) -> SpatialVector {
    let a = n.abs();
    let axis = if a.x <= a.y && a.x <= a.z {
        SpatialVector::x()
    } else if a.y <= a.z {
        SpatialVector::y()
    } else {
        SpatialVector::z()
    };
    n.cross(&axis).normalize()
}

/// If `F` and `F2` share an energy–momentum tensor, returns `θ ∈ (−π, π]`
/// with `e^{iθ}F = F2`.
///
/// Both tensors and the rotated field are compared with relative tolerance
/// `tol`. The angle is the phase of the Hermitian product of the complex
/// field vectors, since `c(e^{iθ}F) = e^{iθ} cF`.
pub fn duality_orbit_check(f: &SkewField, f2: &SkewField, tol: f64) -> Option<f64> {
    let t1 = energy_momentum(f);
    let t2 = energy_momentum(f2);
    let tscale = t1.matrix().amax().max(t2.matrix().amax());
    if (t1.matrix() - t2.matrix()).amax() > tol * tscale {
        return None;
    }
    let a1 = f.complexify(false);
    let a2 = f2.complexify(false);
    let z: Complex64 = a1.a().iter().zip(a2.a().iter()).map(|(p, q)| p.conj() * q).sum();
    if z.norm() == 0.0 {
        return (f.is_zero() && f2.is_zero()).then_some(0.0);
    }
    let theta = wrap_angle(z.arg());
    let rotated = f.duality_rotate(theta);
    let fscale = f.energy_scale().max(f2.energy_scale()).sqrt();
    let de = (rotated.e() - f2.e()).amax();
    let db = (rotated.b() - f2.b()).amax();
    (de.max(db) <= tol * fscale).then_some(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::classify_default;
    use crate::minkowski::CausalClass;

    fn field(e: [f64; 3], b: [f64; 3]) -> SkewField {
        SkewField::from_fields(e.into(), b.into())
    }

    #[test]
    fn energy_momentum_examples() {
        let t = energy_momentum(&field([1.0, 0.0, 0.0], [0.0; 3]));
        let d = Matrix4::from_diagonal(&nalgebra::Vector4::new(0.5, 0.5, -0.5, -0.5));
        assert!((t.matrix() - d).amax() < 1e-15);
        assert_eq!(*energy_momentum(&SkewField::zero()).matrix(), Matrix4::zeros());
        let t = energy_momentum(&field([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]));
        assert_eq!(t.apply(&FourVector::observer()), FourVector::new(1.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn block_form_matches_squared_form() {
        let f = field([1.5, -2.0, 0.3], [0.7, 4.0, -1.0]);
        let t = energy_momentum(&f);
        assert!((t.matrix() - energy_momentum_block(&f)).amax() < 1e-12);
        assert!(t.matrix().trace().abs() < 1e-12);
    }

    #[test]
    fn poynting_examples() {
        assert_eq!(poynting(&field([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])), FourVector::new(1.0, 0.0, 0.0, 1.0));
        assert_eq!(poynting(&SkewField::zero()), FourVector::zero());
        assert_eq!(poynting(&field([2.0, 0.0, 0.0], [0.0, 1.0, 0.0])), FourVector::new(2.5, 0.0, 0.0, 2.0));
        let f = field([0.2, 1.0, -3.0], [1.0, 1.0, 2.0]);
        let tu = energy_momentum(&f).apply(&FourVector::observer());
        assert!((tu - poynting(&f)).euclidean_norm() < 1e-12);
    }

    #[test]
    fn lambda_t_examples() {
        assert_eq!(lambda_t(&field([1.0, 0.0, 0.0], [0.0; 3])), 0.5);
        assert_eq!(lambda_t(&field([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])), 0.0);
        assert_eq!(lambda_t(&field([1.0, 0.0, 0.0], [1.0, 0.0, 0.0])), 1.0);
    }

    fn in_span(v: &FourVector, basis: &[FourVector]) -> bool {
        let mut r = *v;
        for b in basis {
            r = r - (inner(&r, b) / inner(b, b)) * *b;
        }
        r.euclidean_norm() < 1e-10 * v.euclidean_norm().max(1.0)
    }

    #[test]
    fn invariant_planes_examples() {
        let p = invariant_planes(&field([1.0, 0.0, 0.0], [0.0; 3])).unwrap();
        for k in [0, 1] {
            assert!(in_span(&FourVector::basis(k), &p.pi_plus));
        }
        for k in [2, 3] {
            assert!(in_span(&FourVector::basis(k), &p.pi_minus));
        }
        let p = invariant_planes(&field([0.0; 3], [0.0, 0.0, 1.0])).unwrap();
        for k in [0, 3] {
            assert!(in_span(&FourVector::basis(k), &p.pi_plus));
        }
        for k in [1, 2] {
            assert!(in_span(&FourVector::basis(k), &p.pi_minus));
        }
        assert!(matches!(
            invariant_planes(&field([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])),
            Err(Error::NullField { .. })
        ));
    }

    #[test]
    fn invariant_planes_general_field() {
        let f = field([1.0, 2.0, -0.5], [0.3, -1.0, 2.0]);
        let t = energy_momentum(&f);
        let lt = t.lambda_t();
        let p = invariant_planes(&f).unwrap();
        for v in p.pi_plus {
            assert!((t.apply(&v) - lt * v).euclidean_norm() < 1e-8 * lt);
        }
        for v in p.pi_minus {
            assert!((t.apply(&v) + lt * v).euclidean_norm() < 1e-8 * lt);
        }
        assert_eq!(classify_default(&p.pi_plus[0]), CausalClass::Timelike);
        for a in p.pi_plus {
            for b in p.pi_minus {
                assert!(inner(&a, &b).abs() < 1e-10);
            }
        }
        for v in p.pi_minus {
            assert_eq!(classify_default(&v), CausalClass::Spacelike);
        }
        // F maps each plane into itself
        for v in p.pi_plus {
            assert!(in_span(&f.apply(&v), &p.pi_plus));
        }
        for v in p.pi_minus {
            assert!(in_span(&f.apply(&v), &p.pi_minus));
        }
    }

    #[test]
    fn reconstruct_examples() {
        let q = EnergyMomentum::from_matrix(Matrix4::from_diagonal(&nalgebra::Vector4::new(0.5, 0.5, -0.5, -0.5)));
        let f = reconstruct_skew(&q).unwrap();
        assert!((energy_momentum(&f).matrix() - q.matrix()).amax() < 1e-12);
        // the representative is E along x, up to duality rotation
        assert!(duality_orbit_check(&f, &field([1.0, 0.0, 0.0], [0.0; 3]), 1e-9).is_some());

        let zero = EnergyMomentum::from_matrix(Matrix4::zeros());
        assert!(matches!(reconstruct_skew(&zero), Err(Error::InvalidTensor(_))));

        let f = field([2.0, -1.0, 0.5], [0.1, 3.0, 1.0]);
        let q = energy_momentum(&f);
        let g = reconstruct_skew(&q).unwrap();
        assert!((energy_momentum(&g).matrix() - q.matrix()).amax() < 1e-7 * q.matrix().amax());
    }

    #[test]
    fn reconstruct_null_branch() {
        let f = field([0.0, 2.0, 0.0], [0.0, 0.0, 2.0]);
        let q = energy_momentum(&f);
        let g = reconstruct_skew(&q).unwrap();
        assert!((energy_momentum(&g).matrix() - q.matrix()).amax() < 1e-12);
    }

    #[test]
    fn reconstruct_rejects_future_negative() {
        let f = field([1.0, 0.0, 0.0], [0.0; 3]);
        let q = EnergyMomentum::from_matrix(-energy_momentum(&f).matrix());
        assert!(matches!(reconstruct_skew(&q), Err(Error::InvalidTensor(_))));
        let bad = EnergyMomentum::from_matrix(Matrix4::identity());
        assert!(matches!(reconstruct_skew(&bad), Err(Error::InvalidTensor(_))));
    }

    #[test]
    fn orbit_examples() {
        let f = field([1.0, -0.5, 2.0], [0.3, 1.0, -1.0]);
        let th = duality_orbit_check(&f, &f.duality_rotate(0.7), 1e-9).unwrap();
        assert!((th - 0.7).abs() < 1e-12);
        assert_eq!(duality_orbit_check(&f, &f, 1e-9), Some(0.0));
        assert_eq!(duality_orbit_check(&f, &f.scale(2.0), 1e-9), None);
        // same T magnitude but a different plane
        let g = field([-0.5, 1.0, 2.0], [0.3, 1.0, -1.0]);
        assert_eq!(duality_orbit_check(&f, &g, 1e-9), None);
    }

    #[test]
    fn energy_momentum_json() {
        let t = energy_momentum(&field([1.0, 0.0, 0.0], [0.0; 3]));
        let v = serde_json::to_value(t).unwrap();
        assert_eq!(v["lambda_T"], 0.5);
        assert_eq!(v["matrix"][0][0], 0.5);
        assert_eq!(v["matrix"][2][2], -0.5);
    }
}
