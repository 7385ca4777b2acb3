//! Static field configurations sampled at points of the `t = 0` slice.

use serde::{Deserialize, Serialize};

use crate::energy::perpendicular_unit;
use crate::error::{Error, Result};
use crate::minkowski::SpatialVector;
use crate::skew::SkewField;

/// Anything that yields a field at a spatial point.
pub trait FieldSource {
    /// The field at `point`, or `SingularPoint` where it is undefined.
    fn field_at(&self, point: &SpatialVector) -> Result<SkewField>;
}

impl<S: FieldSource + ?Sized> FieldSource for &S {
    fn field_at(&self, point: &SpatialVector) -> Result<SkewField> {
        (**self).field_at(point)
    }
}

/// A static configuration. JSON is tagged by `"type"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FieldConfig {
    /// Coulomb field `q (r − r₀)/‖r − r₀‖³`, no magnetic part.
    PointCharge {
        charge: f64,
        #[serde(with = "vec3")]
        position: SpatialVector,
    },
    #[serde(rename = "uniform")]
    Uniform {
        #[serde(rename = "E", with = "vec3")]
        e: SpatialVector,
        #[serde(rename = "B", with = "vec3")]
        b: SpatialVector,
    },
    /// `E = a cos(k·r + phase) ê₁`, `B = a cos(k·r + phase) ê₂`, `ê₁ × ê₂ = k̂`.
    /// `wave_vector` gives both direction and wavenumber.
    PlaneWaveNull {
        amplitude: f64,
        #[serde(with = "vec3")]
        wave_vector: SpatialVector,
        #[serde(default)]
        phase: f64,
    },
    Superposition { terms: Vec<FieldConfig> },
}

impl FieldConfig {
    /// The free electron: unit negative charge at the origin.
    pub fn free_electron() -> Self {
        FieldConfig::PointCharge {
            charge: -1.0,
            position: SpatialVector::zeros(),
        }
    }

    /// Free electron plus the constant magnetic field `B = e_x`.
    pub fn electron_in_uniform_b() -> Self {
        FieldConfig::Superposition {
            terms: vec![
                Self::free_electron(),
                FieldConfig::Uniform {
                    e: SpatialVector::zeros(),
                    b: SpatialVector::x(),
                },
            ],
        }
    }

    /// Checks parameters that deserialization cannot.
    pub fn validate(&self) -> Result<()> {
        let finite = |v: &SpatialVector| v.iter().all(|x| x.is_finite());
        match self {
            FieldConfig::PointCharge { charge, position } if !(charge.is_finite() && finite(position)) => {
                Err(Error::InvalidArgument("point charge must be finite".into()))
            }
            FieldConfig::Uniform { e, b } if !(finite(e) && finite(b)) => {
                Err(Error::InvalidArgument("uniform field must be finite".into()))
            }
            FieldConfig::PlaneWaveNull {
                amplitude,
                wave_vector,
                phase,
            } => {
                if !(amplitude.is_finite() && phase.is_finite() && finite(wave_vector)) {
                    Err(Error::InvalidArgument("plane wave must be finite".into()))
                } else if wave_vector.norm() == 0.0 {
                    Err(Error::InvalidArgument("plane wave needs a nonzero wave vector".into()))
                } else {
                    Ok(())
                }
            }
            FieldConfig::Superposition { terms } => terms.iter().try_for_each(FieldConfig::validate),
            _ => Ok(()),
        }
    }
}

impl FieldSource for FieldConfig {
    fn field_at(&self, point: &SpatialVector) -> Result<SkewField> {
        match self {
            FieldConfig::PointCharge { charge, position } => {
                let d = point - position;
                let r = d.norm();
                if r <= f64::EPSILON * (1.0 + position.norm()) {
                    return Err(Error::SingularPoint {
                        point: [point.x, point.y, point.z],
                    });
                }
                Ok(SkewField::from_fields(d * (charge / (r * r * r)), SpatialVector::zeros()))
            }
            FieldConfig::Uniform { e, b } => Ok(SkewField::from_fields(*e, *b)),
            FieldConfig::PlaneWaveNull {
                amplitude,
                wave_vector,
                phase,
            } => {
                let k = wave_vector.normalize();
                let e1 = perpendicular_unit(&k);
                let e2 = k.cross(&e1);
                let a = amplitude * (wave_vector.dot(point) + phase).cos();
                Ok(SkewField::from_fields(a * e1, a * e2))
            }
            FieldConfig::Superposition { terms } => terms
                .iter()
                .try_fold(SkewField::zero(), |acc, t| Ok(acc + t.field_at(point)?)),
        }
    }
}

/// `F` at `point`.
pub fn eval_config<S: FieldSource + ?Sized>(config: &S, point: &SpatialVector) -> Result<SkewField> {
    config.field_at(point)
}

/// Serde helper: a spatial vector as `[x, y, z]`.
pub(crate) mod vec3 {
    use super::SpatialVector;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &SpatialVector, s: S) -> Result<S::Ok, S::Error> {
        [v.x, v.y, v.z].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SpatialVector, D::Error> {
        Ok(<[f64; 3]>::deserialize(d)?.into())
    }
}
