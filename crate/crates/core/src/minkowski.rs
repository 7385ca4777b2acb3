//! Fixed-frame Minkowski vector algebra.
//!
//! Vectors are expressed in one oriented orthonormal frame `e₀, e₁, e₂, e₃`
//! with signature `−+++` and `e₁ × e₂ = e₃`. The standard observer is
//! `u = e₀`; its rest space holds the spatial vectors `E`, `B` and `w`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector3, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::tol;

/// A vector in the rest space of the standard observer.
pub type SpatialVector = Vector3<f64>;

/// Real four-vector `(t, x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub Vector4<f64>);

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector(Vector4::new(t, x, y, z))
    }

    pub fn zero() -> Self {
        FourVector(Vector4::zeros())
    }

    /// Basis vector `e_k`, `k = 0` being the standard observer.
    pub fn basis(k: usize) -> Self {
        let mut v = Vector4::zeros();
        v[k] = 1.0;
        FourVector(v)
    }

    /// The standard observer `u = e₀`.
    pub fn observer() -> Self {
        Self::basis(0)
    }

    /// Embeds a rest-space vector with zero time component.
    pub fn from_spatial(s: &SpatialVector) -> Self {
        FourVector::new(0.0, s.x, s.y, s.z)
    }

    /// `a·u + s` for a time coefficient `a` and rest-space part `s`.
    pub fn from_parts(time: f64, s: &SpatialVector) -> Self {
        FourVector::new(time, s.x, s.y, s.z)
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> SpatialVector {
        Vector3::new(self.0[1], self.0[2], self.0[3])
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    /// Euclidean norm of the components, used only for scale estimates.
    pub fn euclidean_norm(&self) -> f64 {
        self.0.norm()
    }

    /// `sqrt(|⟨v,v⟩|)`.
    pub fn minkowski_norm(&self) -> f64 {
        inner(self, self).abs().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn to_complex(&self) -> ComplexFourVector {
        ComplexFourVector(self.0.map(|c| Complex64::new(c, 0.0)))
    }
}

impl From<[f64; 4]> for FourVector {
    fn from(a: [f64; 4]) -> Self {
        FourVector::new(a[0], a[1], a[2], a[3])
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector(self.0 + rhs.0)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector(self.0 - rhs.0)
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        FourVector(-self.0)
    }
}

impl Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector(self * v.0)
    }
}

impl Mul<FourVector> for Matrix4<f64> {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector(self * v.0)
    }
}

impl Mul<FourVector> for &Matrix4<f64> {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector(self * v.0)
    }
}

impl Serialize for FourVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FourVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let a = <[f64; 4]>::deserialize(d)?;
        Ok(FourVector::from(a))
    }
}

/// Four-vector with complex components, an element of `T ⊗ ℂ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexFourVector(pub Vector4<Complex64>);

impl ComplexFourVector {
    pub fn new(c: [Complex64; 4]) -> Self {
        ComplexFourVector(Vector4::new(c[0], c[1], c[2], c[3]))
    }

    /// `a + i b` from real and imaginary four-vectors.
    pub fn from_parts(re: &FourVector, im: &FourVector) -> Self {
        ComplexFourVector(Vector4::from_fn(|k, _| Complex64::new(re.0[k], im.0[k])))
    }

    pub fn re(&self) -> FourVector {
        FourVector(self.0.map(|c| c.re))
    }

    pub fn im(&self) -> FourVector {
        FourVector(self.0.map(|c| c.im))
    }

    /// Hermitian (conjugated) Euclidean norm of the components.
    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Causal character of a real four-vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Timelike,
    Spacelike,
    Null,
    Zero,
}

/// Outcome of the null test for `a + i b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComplexNullClass {
    NotNull,
    /// `a` and `b` are linearly dependent null vectors.
    DependentNull,
    /// `a` and `b` are spacelike, of equal length and orthogonal.
    SpacelikeOrthonormalPair,
}

/// The metric `diag(−1, 1, 1, 1)`.
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

/// `⟨v, w⟩ = −v_t w_t + v_x w_x + v_y w_y + v_z w_z`.
pub fn inner(v: &FourVector, w: &FourVector) -> f64 {
    -v.0[0] * w.0[0] + v.0[1] * w.0[1] + v.0[2] * w.0[2] + v.0[3] * w.0[3]
}

/// Complex-bilinear extension of [`inner`]; no conjugation.
pub fn complex_inner(v: &ComplexFourVector, w: &ComplexFourVector) -> Complex64 {
    -v.0[0] * w.0[0] + v.0[1] * w.0[1] + v.0[2] * w.0[2] + v.0[3] * w.0[3]
}

/// Classifies `v` by the sign of `⟨v,v⟩` against the band `tol·‖v‖²`.
///
/// `Zero` is returned when every component is at most `tol` in magnitude.
pub fn classify(v: &FourVector, tol: f64) -> CausalClass {
    debug_assert!(tol > 0.0);
    if v.0.iter().all(|c| c.abs() <= tol) {
        return CausalClass::Zero;
    }
    let q = inner(v, v);
    let band = tol * v.0.norm_squared();
    if q < -band {
        CausalClass::Timelike
    } else if q > band {
        CausalClass::Spacelike
    } else {
        CausalClass::Null
    }
}

/// [`classify`] with the default relative band.
pub fn classify_default(v: &FourVector) -> CausalClass {
    classify(v, tol::CAUSAL)
}

/// Decides whether `a + i b` is a complex null vector and, if so, which kind.
pub fn classify_complex_null(a: &FourVector, b: &FourVector, tol: f64) -> ComplexNullClass {
    debug_assert!(tol > 0.0);
    let scale = a.0.norm_squared() + b.0.norm_squared();
    let band = tol * scale;
    let aa = inner(a, a);
    let bb = inner(b, b);
    let ab = inner(a, b);
    if (aa - bb).abs() > band || ab.abs() > band {
        return ComplexNullClass::NotNull;
    }
    if aa.abs() <= band {
        ComplexNullClass::DependentNull
    } else {
        ComplexNullClass::SpacelikeOrthonormalPair
    }
}

/// Dot product in the observer's rest space.
pub fn rest_dot(a: &SpatialVector, b: &SpatialVector) -> f64 {
    a.dot(b)
}

/// Right-handed cross product in the rest space (`e_x × e_y = e_z`).
pub fn rest_cross(a: &SpatialVector, b: &SpatialVector) -> SpatialVector {
    Vector3::new(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )
}

/// Bilinear dot product of complex 3-vectors (`A·A` is not `|A|²`).
pub fn complex_dot(a: &Vector3<Complex64>, b: &Vector3<Complex64>) -> Complex64 {
    a.x * b.x + a.y * b.y + a.z * b.z
}

/// Cross product of complex 3-vectors, bilinear over ℂ.
pub fn complex_cross(a: &Vector3<Complex64>, b: &Vector3<Complex64>) -> Vector3<Complex64> {
    Vector3::new(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )
}
