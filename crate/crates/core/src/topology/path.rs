//! Closed loops in the `t = 0` slice, parametrized over `[0, 1)`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::config::vec3;
use crate::energy::perpendicular_unit;
use crate::error::{Error, Result};
use crate::minkowski::SpatialVector;

fn default_samples() -> usize {
    720
}

/// A closed loop. JSON is tagged by `"kind"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LoopSpec {
    /// Counter-clockwise when viewed from the tip of `normal`.
    Circle {
        #[serde(with = "vec3")]
        center: SpatialVector,
        #[serde(with = "vec3")]
        normal: SpatialVector,
        radius: f64,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    /// Vertices in order; the last connects back to the first.
    Polyline {
        #[serde(with = "points")]
        points: Vec<SpatialVector>,
        #[serde(default = "default_samples")]
        samples: usize,
    },
}

impl LoopSpec {
    pub fn circle(center: SpatialVector, normal: SpatialVector, radius: f64) -> Self {
        LoopSpec::Circle {
            center,
            normal,
            radius,
            samples: default_samples(),
        }
    }

    pub fn samples(&self) -> usize {
        match self {
            LoopSpec::Circle { samples, .. } | LoopSpec::Polyline { samples, .. } => *samples,
        }
    }

    pub fn with_samples(mut self, n: usize) -> Self {
        match &mut self {
            LoopSpec::Circle { samples, .. } | LoopSpec::Polyline { samples, .. } => *samples = n,
        }
        self
    }

    /// Same loop traversed backwards.
    pub fn reversed(&self) -> Self {
        match self {
            LoopSpec::Circle {
                center,
                normal,
                radius,
                samples,
            } => LoopSpec::Circle {
                center: *center,
                normal: -normal,
                radius: *radius,
                samples: *samples,
            },
            LoopSpec::Polyline { points, samples } => LoopSpec::Polyline {
                points: points.iter().rev().copied().collect(),
                samples: *samples,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples() < 8 {
            return Err(Error::InvalidArgument(format!(
                "loop needs at least 8 samples, got {}",
                self.samples()
            )));
        }
        match self {
            LoopSpec::Circle {
                center,
                normal,
                radius,
                ..
            } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::InvalidArgument("circle radius must be positive".into()));
                }
                if !(normal.norm() > 0.0 && normal.iter().chain(center.iter()).all(|x| x.is_finite())) {
                    return Err(Error::InvalidArgument("circle needs a finite nonzero normal".into()));
                }
            }
            LoopSpec::Polyline { points, .. } => {
                if points.iter().any(|p| !p.iter().all(|x| x.is_finite())) {
                    return Err(Error::InvalidArgument("polyline points must be finite".into()));
                }
                let mut distinct: Vec<&SpatialVector> = Vec::new();
                for p in points {
                    if !distinct.contains(&p) {
                        distinct.push(p);
                    }
                }
                if distinct.len() < 3 {
                    return Err(Error::InvalidArgument("polyline needs at least 3 distinct points".into()));
                }
            }
        }
        Ok(())
    }

    /// Point at parameter `t`, periodic with period 1.
    pub fn point_at(&self, t: f64) -> SpatialVector {
        let t = t.rem_euclid(1.0);
        match self {
            LoopSpec::Circle {
                center,
                normal,
                radius,
                ..
            } => {
                let n = normal.normalize();
                let a = perpendicular_unit(&n);
                let b = n.cross(&a);
                let (s, c) = (TAU * t).sin_cos();
                center + *radius * (c * a + s * b)
            }
            LoopSpec::Polyline { points, .. } => {
                // arc-length parametrization of the closed polygon
                let n = points.len();
                let lengths: Vec<f64> = (0..n).map(|i| (points[(i + 1) % n] - points[i]).norm()).collect();
                let total: f64 = lengths.iter().sum();
                let mut target = t * total;
                for i in 0..n {
                    if target <= lengths[i] && lengths[i] > 0.0 {
                        let f = target / lengths[i];
                        return points[i] + f * (points[(i + 1) % n] - points[i]);
                    }
                    target -= lengths[i];
                }
                points[0]
            }
        }
    }
}

mod points {
    use super::SpatialVector;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[SpatialVector], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|p| [p.x, p.y, p.z]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<SpatialVector>, D::Error> {
        Ok(Vec::<[f64; 3]>::deserialize(d)?.into_iter().map(Into::into).collect())
    }
}
