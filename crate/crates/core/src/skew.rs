//! Metric-skew operators on Minkowski space and their complexification.
//!
//! A [`SkewField`] is stored as its electric and magnetic parts relative to
//! the standard observer together with the 4×4 block matrix
//!
//! ```text
//!     F = | 0   Eᵀ |        (×B) v = v × B
//!         | E   ×B |
//! ```
//!
//! acting on column vectors ordered `(t, x, y, z)`.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{ComplexField, DMatrix, Matrix4, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::minkowski::{complex_dot, metric, rest_cross, FourVector, SpatialVector};
use crate::tol;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Orientation of the volume form. Reversing it flips the Hodge dual,
/// which negates `B` and exchanges `c` with `c̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Orientation {
    #[default]
    Standard,
    Reversed,
}

/// The cross-product matrix `×c`, i.e. `v ↦ v × c`.
pub fn cross_matrix<T: ComplexField + Copy>(c: &Vector3<T>) -> nalgebra::Matrix3<T> {
    let z = T::zero();
    nalgebra::Matrix3::new(z, c.z, -c.y, -c.z, z, c.x, c.y, -c.x, z)
}

/// The block operator `[[0, aᵀ], [a, ×c]]`.
pub fn block_operator<T: ComplexField + Copy>(a: &Vector3<T>, c: &Vector3<T>) -> Matrix4<T> {
    let mut m = Matrix4::zeros();
    let x = cross_matrix(c);
    for k in 0..3 {
        m[(0, k + 1)] = a[k];
        m[(k + 1, 0)] = a[k];
        for j in 0..3 {
            m[(k + 1, j + 1)] = x[(k, j)];
        }
    }
    m
}

/// A metric-skew-symmetric operator on the tangent space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewField {
    e: SpatialVector,
    b: SpatialVector,
    matrix: Matrix4<f64>,
}

impl SkewField {
    /// The unique operator with the given `E`, `B` relative to `u = e₀`.
    pub fn from_fields(e: SpatialVector, b: SpatialVector) -> Self {
        SkewField {
            e,
            b,
            matrix: block_operator(&e, &b),
        }
    }

    pub fn zero() -> Self {
        Self::from_fields(SpatialVector::zeros(), SpatialVector::zeros())
    }

    /// Reads `E` and `B` off a matrix, rejecting matrices that are not metric-skew.
    pub fn from_matrix(m: &Matrix4<f64>, tol: f64) -> Result<Self> {
        let g = metric();
        let gm = g * m;
        let scale = m.amax().max(tol::SCALE_GUARD);
        let asym = (gm + gm.transpose()).amax();
        if asym > tol * scale {
            return Err(Error::InvalidArgument(format!(
                "matrix is not metric-skew (residual {asym:e})"
            )));
        }
        let e = SpatialVector::new(m[(1, 0)], m[(2, 0)], m[(3, 0)]);
        let b = SpatialVector::new(m[(2, 3)], m[(3, 1)], m[(1, 2)]);
        Ok(Self::from_fields(e, b))
    }

    pub fn e(&self) -> &SpatialVector {
        &self.e
    }

    pub fn b(&self) -> &SpatialVector {
        &self.b
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    /// `(E, B)` as seen by the standard observer.
    pub fn extract_fields(&self) -> (SpatialVector, SpatialVector) {
        (self.e, self.b)
    }

    /// `(E, B)` under the given orientation; reversal negates `B`.
    pub fn fields_in(&self, orientation: Orientation) -> (SpatialVector, SpatialVector) {
        match orientation {
            Orientation::Standard => (self.e, self.b),
            Orientation::Reversed => (self.e, -self.b),
        }
    }

    pub fn e_squared(&self) -> f64 {
        self.e.norm_squared()
    }

    pub fn b_squared(&self) -> f64 {
        self.b.norm_squared()
    }

    pub fn e_dot_b(&self) -> f64 {
        self.e.dot(&self.b)
    }

    /// `E² + B²`, the natural magnitude scale of the field.
    pub fn energy_scale(&self) -> f64 {
        self.e_squared() + self.b_squared()
    }

    pub fn is_zero(&self) -> bool {
        self.e == SpatialVector::zeros() && self.b == SpatialVector::zeros()
    }

    /// Applies the operator to a four-vector.
    pub fn apply(&self, v: &FourVector) -> FourVector {
        self.matrix * *v
    }

    /// `F*`, with `E* = −B` and `B* = E`.
    pub fn hodge_dual(&self) -> SkewField {
        SkewField::from_fields(-self.b, self.e)
    }

    pub fn hodge_dual_in(&self, orientation: Orientation) -> SkewField {
        match orientation {
            Orientation::Standard => self.hodge_dual(),
            Orientation::Reversed => -self.hodge_dual(),
        }
    }

    /// `e^{iθ}F = cos θ F + sin θ F*`.
    pub fn duality_rotate(&self, theta: f64) -> SkewField {
        let (s, c) = theta.sin_cos();
        SkewField::from_fields(c * self.e - s * self.b, c * self.b + s * self.e)
    }

    /// `cF = F − iF*`, or `c̄F = F + iF*` when `conjugate` is set.
    pub fn complexify(&self, conjugate: bool) -> ComplexSkewOp {
        let dual = self.hodge_dual();
        let sign = if conjugate { 1.0 } else { -1.0 };
        let matrix = self.matrix.map(|x| Complex64::new(x, 0.0))
            + dual.matrix.map(|x| Complex64::new(0.0, sign * x));
        let a = Vector3::from_fn(|k, _| Complex64::new(self.e[k], -sign * self.b[k]));
        let op = ComplexSkewOp::new(a, Complex64::new(0.0, 0.0), conjugate);
        debug_assert!(
            (op.matrix - matrix).camax() <= 1e-9 * (1.0 + matrix.camax()),
            "complexified matrix disagrees with its block form"
        );
        ComplexSkewOp { matrix, ..op }
    }

    /// Complexification under the given orientation; reversal swaps `c` and `c̄`.
    pub fn complexify_in(&self, conjugate: bool, orientation: Orientation) -> ComplexSkewOp {
        match orientation {
            Orientation::Standard => self.complexify(conjugate),
            Orientation::Reversed => self.complexify(!conjugate),
        }
    }

    /// `[F, G] = FG − GF`, computed from the closed form in `E`, `B`.
    pub fn commutator(&self, other: &SkewField) -> SkewField {
        let e = -rest_cross(&self.e, &other.b) - rest_cross(&self.b, &other.e);
        let b = rest_cross(&self.e, &other.e) - rest_cross(&self.b, &other.b);
        SkewField::from_fields(e, b)
    }

    pub fn scale(&self, k: f64) -> SkewField {
        SkewField::from_fields(k * self.e, k * self.b)
    }
}

impl Add for SkewField {
    type Output = SkewField;
    fn add(self, rhs: SkewField) -> SkewField {
        SkewField::from_fields(self.e + rhs.e, self.b + rhs.b)
    }
}

impl Sub for SkewField {
    type Output = SkewField;
    fn sub(self, rhs: SkewField) -> SkewField {
        SkewField::from_fields(self.e - rhs.e, self.b - rhs.b)
    }
}

impl Neg for SkewField {
    type Output = SkewField;
    fn neg(self) -> SkewField {
        SkewField::from_fields(-self.e, -self.b)
    }
}

impl Mul<SkewField> for f64 {
    type Output = SkewField;
    fn mul(self, f: SkewField) -> SkewField {
        f.scale(self)
    }
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    #[serde(rename = "E")]
    e: [f64; 3],
    #[serde(rename = "B")]
    b: [f64; 3],
}

impl Serialize for SkewField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldRepr {
            e: [self.e.x, self.e.y, self.e.z],
            b: [self.b.x, self.b.y, self.b.z],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FieldRepr::deserialize(d)?;
        Ok(SkewField::from_fields(r.e.into(), r.b.into()))
    }
}

/// Row-major nested arrays, for JSON output.
pub fn matrix_rows(m: &Matrix4<f64>) -> [[f64; 4]; 4] {
    let mut rows = [[0.0; 4]; 4];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = m[(i, j)];
        }
    }
    rows
}

/// A complex operator `αI + cF` (or `αI + c̄F`).
///
/// `a` is the complex field vector `cF·u`; for `cF` this is `E + iB` and the
/// spatial block is `×(−iA)`, for `c̄F` it is `E − iB` with block `×(+iA)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexSkewOp {
    a: Vector3<Complex64>,
    alpha: Complex64,
    conjugate: bool,
    matrix: Matrix4<Complex64>,
}

impl ComplexSkewOp {
    pub fn new(a: Vector3<Complex64>, alpha: Complex64, conjugate: bool) -> Self {
        let rot = if conjugate { I } else { -I };
        let c = a.map(|z| rot * z);
        let matrix = block_operator(&a, &c) + Matrix4::identity() * alpha;
        ComplexSkewOp {
            a,
            alpha,
            conjugate,
            matrix,
        }
    }

    /// `αI` with no operator part.
    pub fn scalar(alpha: Complex64) -> Self {
        Self::new(Vector3::zeros(), alpha, false)
    }

    pub fn identity() -> Self {
        Self::scalar(Complex64::new(1.0, 0.0))
    }

    pub fn a(&self) -> &Vector3<Complex64> {
        &self.a
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn is_conjugate(&self) -> bool {
        self.conjugate
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.matrix
    }

    /// Same operator part with a new scalar shift.
    pub fn with_alpha(&self, alpha: Complex64) -> Self {
        Self::new(self.a, alpha, self.conjugate)
    }

    /// Entrywise complex conjugate; maps `cF` to `c̄F`.
    pub fn conj(&self) -> Self {
        Self::new(self.a.map(|z| z.conj()), self.alpha.conj(), !self.conjugate)
    }

    /// `A·A` (bilinear), the scalar that the operator part squares to.
    pub fn square_scalar(&self) -> Complex64 {
        complex_dot(&self.a, &self.a)
    }

    /// Principal square root of `A·A`.
    pub fn lambda(&self) -> Complex64 {
        self.square_scalar().sqrt()
    }

    pub fn apply(&self, v: &crate::minkowski::ComplexFourVector) -> crate::minkowski::ComplexFourVector {
        crate::minkowski::ComplexFourVector(self.matrix * v.0)
    }
}

/// `σ_x, σ_y, σ_z` as the complexifications of unit electric fields.
pub fn pauli_basis() -> [ComplexSkewOp; 3] {
    [SpatialVector::x(), SpatialVector::y(), SpatialVector::z()]
        .map(|e| SkewField::from_fields(e, SpatialVector::zeros()).complexify(false))
}

pub fn matrix_commutator<T: ComplexField + Copy>(a: &Matrix4<T>, b: &Matrix4<T>) -> Matrix4<T> {
    a * b - b * a
}

pub fn matrix_anticommutator<T: ComplexField + Copy>(a: &Matrix4<T>, b: &Matrix4<T>) -> Matrix4<T> {
    a * b + b * a
}

/// Dimension of the complex span of all words in `generators` of length at
/// most `max_word_length`, the empty word (identity) included.
pub fn algebra_span_dim(generators: &[ComplexSkewOp], max_word_length: usize) -> Result<usize> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if max_word_length == 0 {
        return Err(Error::InvalidArgument("max_word_length must be at least 1".into()));
    }
    let gens: Vec<Matrix4<Complex64>> = generators.iter().map(|g| *g.matrix()).collect();
    Ok(span_dim_of_words(&gens, max_word_length))
}

/// Words of length ≤ k span the same space as a basis of the words of
/// length ≤ k−1 together with that basis times each generator, so each level
/// only multiplies at most 16 basis matrices.
fn span_dim_of_words(gens: &[Matrix4<Complex64>], max_len: usize) -> usize {
    let mut basis = vec![Matrix4::<Complex64>::identity()];
    for _ in 0..max_len {
        let mut candidates = basis.clone();
        for b in &basis {
            for g in gens {
                candidates.push(b * g);
            }
        }
        let next = orthonormal_span(&candidates);
        let done = next.len() == basis.len();
        basis = next;
        if done || basis.len() == 16 {
            break;
        }
    }
    basis.len()
}

/// Orthonormal basis (as 4×4 matrices) for the span of the flattened inputs.
/// Rank is decided on singular values relative to the largest one.
fn orthonormal_span(mats: &[Matrix4<Complex64>]) -> Vec<Matrix4<Complex64>> {
    let cols = DMatrix::from_fn(16, mats.len(), |r, c| mats[c][(r % 4, r / 4)]);
    let svd = cols.svd(true, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    if smax == 0.0 {
        return Vec::new();
    }
    let u = svd.u.expect("left singular vectors requested");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > tol::RANK * smax)
        .map(|(k, _)| Matrix4::from_fn(|i, j| u[(i + 4 * j, k)]))
        .collect()
}

/// Numeric rank of a set of complex 4×4 matrices viewed as vectors in ℂ¹⁶.
pub fn span_rank(mats: &[Matrix4<Complex64>]) -> usize {
    orthonormal_span(mats).len()
}

/// Reduces an angle to `(−π, π]`.
pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % TAU;
    if t <= -PI {
        t += TAU;
    } else if t > PI {
        t -= TAU;
    }
    t
}
