//! Eigenvalues of `F`, `cF`, the principal null eigenvectors, and complex
//! eigenplanes.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::energy::lambda_t;
use crate::error::{Error, Result};
use crate::minkowski::{ComplexFourVector, FourVector};
use crate::skew::SkewField;
use crate::tol;

/// The eigenvalue data of a field. `λ_F ≥ 0`, `λ_F·λ_F* = −E·B`, and
/// `λ_cF = λ_F − iλ_F*` so that `λ_cF² = (E² − B²) + 2iE·B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    pub lambda_f: f64,
    pub lambda_fstar: f64,
    pub lambda_cf: Complex64,
    pub lambda_t: f64,
}

#[derive(Serialize, Deserialize)]
struct EigenRepr {
    #[serde(rename = "lambda_F")]
    lambda_f: f64,
    #[serde(rename = "lambda_Fstar")]
    lambda_fstar: f64,
    #[serde(rename = "lambda_cF")]
    lambda_cf: [f64; 2],
    #[serde(rename = "lambda_T")]
    lambda_t: f64,
}

impl Serialize for EigenData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EigenRepr {
            lambda_f: self.lambda_f,
            lambda_fstar: self.lambda_fstar,
            lambda_cf: [self.lambda_cf.re, self.lambda_cf.im],
            lambda_t: self.lambda_t,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EigenData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = EigenRepr::deserialize(d)?;
        Ok(EigenData {
            lambda_f: r.lambda_f,
            lambda_fstar: r.lambda_fstar,
            lambda_cf: Complex64::new(r.lambda_cf[0], r.lambda_cf[1]),
            lambda_t: r.lambda_t,
        })
    }
}

/// True when `λ_T ≤ NULL_FIELD·(E² + B² + ε)`; the zero field counts as null.
pub fn is_null(f: &SkewField) -> bool {
    lambda_t(f) <= tol::NULL_FIELD * (f.energy_scale() + tol::SCALE_GUARD)
}

/// Thm 5.4: `λ_F² = λ_T + (E²−B²)/2`, `λ_F*² = λ_T − (E²−B²)/2`.
///
/// The larger of the two roots is taken directly and the smaller recovered
/// from `λ_F·|λ_F*| = |E·B|`, which avoids cancellation.
pub fn eigenvalues(f: &SkewField) -> EigenData {
    let half_diff = 0.5 * (f.e_squared() - f.b_squared());
    let e_dot_b = f.e_dot_b();
    let lt = half_diff.hypot(e_dot_b);
    let (re, im) = if half_diff >= 0.0 {
        let big = (lt + half_diff).sqrt();
        (big, if big > 0.0 { e_dot_b.abs() / big } else { 0.0 })
    } else {
        let big = (lt - half_diff).sqrt();
        (e_dot_b.abs() / big, big)
    };
    // λ_F* carries −sign(E·B); with E·B = 0 it is taken nonnegative
    let lambda_fstar = if e_dot_b > 0.0 { -im } else { im };
    EigenData {
        lambda_f: re,
        lambda_fstar,
        lambda_cf: Complex64::new(re, -lambda_fstar),
        lambda_t: lt,
    }
}

/// Coefficients of `det(λI − F) = λ⁴ − (E²−B²)λ² − (E·B)²`, highest degree first.
pub fn char_poly(f: &SkewField) -> [f64; 5] {
    let d = f.e_dot_b();
    [1.0, 0.0, -(f.e_squared() - f.b_squared()), 0.0, -d * d]
}

/// The two real null eigendirections `s` (for `+λ_F`) and `s₋` (for `−λ_F`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrincipalNullPair {
    pub s: FourVector,
    pub s_minus: FourVector,
}

/// `s = 2((λ_T + (E²+B²)/2)u + E×B + λ_F E − λ_F* B)`, and `s₋` with the
/// signs of `λ_F`, `λ_F*` flipped. Observer is `e₀`.
pub fn principal_null_pair(f: &SkewField) -> Result<PrincipalNullPair> {
    if f.is_zero() {
        return Err(Error::ZeroField);
    }
    let ev = eigenvalues(f);
    let (e, b) = (f.e(), f.b());
    let time = ev.lambda_t + 0.5 * f.energy_scale();
    let p = e.cross(b);
    let along = ev.lambda_f * e - ev.lambda_fstar * b;
    Ok(PrincipalNullPair {
        s: 2.0 * FourVector::from_parts(time, &(p + along)),
        s_minus: 2.0 * FourVector::from_parts(time, &(p - along)),
    })
}

/// For a null field, the unique null direction `F²u = Tu`.
pub fn null_eigendirection(f: &SkewField) -> Result<FourVector> {
    if f.is_zero() {
        return Err(Error::ZeroField);
    }
    if !is_null(f) {
        return Err(Error::NotNull { lambda_t: lambda_t(f) });
    }
    let m = f.matrix();
    Ok((m * m) * FourVector::observer())
}

/// Which of the eigenvalues `±λ_cF` an eigenplane belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `φ± = ±λ_cF I + cF`; its image is the `±λ_cF` eigenspace of `cF`.
pub fn eigen_projector(f: &SkewField, sign: Sign) -> Matrix4<Complex64> {
    let lam = eigenvalues(f).lambda_cf * sign.value();
    f.complexify(false).with_alpha(lam).matrix().to_owned()
}

/// A spanning pair of the `±λ_cF` eigenplane of `cF`.
///
/// Built from the columns of `φ±` by pivoted Gram–Schmidt under the
/// Hermitian product (the bilinear one vanishes on these null planes).
pub fn complex_eigenplane(f: &SkewField, sign: Sign) -> Result<[ComplexFourVector; 2]> {
    if f.is_zero() {
        return Err(Error::ZeroField);
    }
    let phi = eigen_projector(f, sign);
    let mut cols: Vec<Vector4<Complex64>> = (0..4).map(|j| phi.column(j).into_owned()).collect();
    let largest = cols.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut basis: Vec<Vector4<Complex64>> = Vec::with_capacity(2);
    while basis.len() < 2 {
        let (j, n) = cols
            .iter()
            .enumerate()
            .map(|(j, c)| (j, c.norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("columns remain");
        if n <= tol::PIVOT_DISCARD * largest {
            break;
        }
        let q = cols.swap_remove(j) / Complex64::new(n, 0.0);
        for c in cols.iter_mut() {
            let proj = q.dotc(c);
            *c -= q * proj;
        }
        basis.push(q);
    }
    match basis.as_slice() {
        [a, b] => Ok([ComplexFourVector(*a), ComplexFourVector(*b)]),
        _ => Err(Error::InvalidArgument(format!(
            "eigenplane has dimension {}, expected 2",
            basis.len()
        ))),
    }
}

/// `(αI + cF)v`.
pub fn psi_v(f: &SkewField, alpha: Complex64, v: &ComplexFourVector) -> ComplexFourVector {
    f.complexify(false).with_alpha(alpha).apply(v)
}

/// `det(αI + cF) = (α² − λ_cF²)²`; zero exactly when `α = ±λ_cF`.
pub fn psi_v_determinant(f: &SkewField, alpha: Complex64) -> Complex64 {
    f.complexify(false).with_alpha(alpha).matrix().determinant()
}
