use std::f64::consts::PI;

use super::*;
use crate::eigen::eigenvalues;
use crate::error::{Error, Result};

fn v(x: f64, y: f64, z: f64) -> SpatialVector {
    SpatialVector::new(x, y, z)
}

fn linking_loop() -> LoopSpec {
    LoopSpec::circle(v(0.0, 1.0, 0.0), v(0.0, 0.0, 1.0), 0.25)
}

/// Duality-rotates another source by a position-dependent angle.
struct Rotated<S, A> {
    inner: S,
    angle: A,
}

impl<S: FieldSource, A: Fn(&SpatialVector) -> f64> FieldSource for Rotated<S, A> {
    fn field_at(&self, p: &SpatialVector) -> Result<SkewField> {
        Ok(self.inner.field_at(p)?.duality_rotate((self.angle)(p)))
    }
}

#[test]
fn eval_examples() {
    let free = FieldConfig::free_electron();
    let f = eval_config(&free, &v(1.0, 0.0, 0.0)).unwrap();
    assert_eq!(*f.e(), v(-1.0, 0.0, 0.0));
    assert_eq!(*f.b(), v(0.0, 0.0, 0.0));
    let f = eval_config(&FieldConfig::electron_in_uniform_b(), &v(0.0, 2.0, 0.0)).unwrap();
    assert_eq!(*f.e(), v(0.0, -0.25, 0.0));
    assert_eq!(*f.b(), v(1.0, 0.0, 0.0));
    assert!(matches!(
        eval_config(&free, &v(0.0, 0.0, 0.0)),
        Err(Error::SingularPoint { .. })
    ));
}

#[test]
fn plane_wave_is_null() {
    let wave = FieldConfig::PlaneWaveNull {
        amplitude: 2.0,
        wave_vector: v(0.3, -1.0, 0.5),
        phase: 0.4,
    };
    for p in [v(0.0, 0.0, 0.0), v(1.0, 2.0, 3.0), v(-0.7, 0.1, 5.0)] {
        let f = wave.field_at(&p).unwrap();
        assert!(crate::energy::lambda_t(&f) <= 1e-12 * f.energy_scale().max(1.0));
        assert!(f.e().dot(f.b()).abs() < 1e-12);
        let k = v(0.3, -1.0, 0.5);
        assert!(f.e().cross(f.b()).dot(&k) >= 0.0);
    }
}

#[test]
fn psi_examples() {
    let f = SkewField::from_fields(v(1.0, 0.0, 0.0), v(0.0, 0.0, 0.0));
    assert_eq!(psi(&f), Complex64::new(1.0, 0.0));
    let f = SkewField::from_fields(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0));
    assert_eq!(psi(&f), Complex64::new(0.0, 0.0));
    let f = SkewField::from_fields(v(1.0, 0.0, 0.0), v(1.0, 0.0, 0.0));
    assert_eq!(psi(&f), Complex64::new(0.0, 2.0));
    let f = SkewField::from_fields(v(0.3, -2.0, 1.0), v(1.5, 0.2, -0.4));
    let lam = eigenvalues(&f).lambda_cf;
    assert!((lam * lam - psi(&f)).norm() < 1e-12 * f.energy_scale());
}

#[test]
fn region_examples() {
    let cfg = FieldConfig::electron_in_uniform_b();
    assert_eq!(region_classify(&cfg, &v(0.0, 0.0, 1.0), 1e-9), Region::NullLocus);
    assert_eq!(region_classify(&cfg, &v(0.0, 2.0, 0.0), 1e-9), Region::M1);
    assert_eq!(region_classify(&cfg, &v(0.0, 0.0, 0.0), 1e-9), Region::Singular);
}

#[test]
fn winding_examples() {
    let free = FieldConfig::free_electron();
    let r = winding(&free, &LoopSpec::circle(v(0.5, 0.0, 0.0), v(1.0, 1.0, 0.0), 2.0)).unwrap();
    assert_eq!(r.winding, 0);
    assert_eq!(r.parity, Parity::Even);

    let cfg = FieldConfig::electron_in_uniform_b();
    let r = winding(&cfg, &linking_loop()).unwrap();
    assert_eq!(r.winding.abs(), 1);
    assert_eq!(r.parity, Parity::Odd);
    assert!(r.min_abs_psi > 0.0);

    let far = LoopSpec::circle(v(0.0, 5.0, 0.0), v(0.0, 0.0, 1.0), 0.1);
    assert_eq!(winding(&cfg, &far).unwrap().winding, 0);
}

#[test]
fn continuation_examples() {
    let free = FieldConfig::free_electron();
    let l = LoopSpec::circle(v(0.0, 0.0, 0.0), v(0.0, 0.0, 1.0), 1.0);
    assert_eq!(eigenvalue_continuation(&free, &l).unwrap(), Parity::Even);
    let cfg = FieldConfig::electron_in_uniform_b();
    assert_eq!(eigenvalue_continuation(&cfg, &linking_loop()).unwrap(), Parity::Odd);
    let far = LoopSpec::circle(v(0.0, 5.0, 0.0), v(0.0, 0.0, 1.0), 0.1);
    assert_eq!(eigenvalue_continuation(&cfg, &far).unwrap(), Parity::Even);
}

#[test]
fn loop_through_null_circle_fails() {
    let cfg = FieldConfig::electron_in_uniform_b();
    // passes through (0, 0, 1), which lies on the null circle; 8 samples hit it exactly
    let l = LoopSpec::circle(v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), 1.0).with_samples(8);
    assert!(matches!(winding(&cfg, &l), Err(Error::NullLocusCrossing { .. })));
}

#[test]
fn degree_examples() {
    let free = FieldConfig::free_electron();
    let loops = [
        LoopSpec::circle(v(0.0, 0.0, 0.0), v(0.0, 0.0, 1.0), 1.0),
        LoopSpec::circle(v(2.0, 0.0, 0.0), v(0.0, 1.0, 0.0), 0.5),
        LoopSpec::circle(v(0.0, -1.0, 1.0), v(1.0, 1.0, 1.0), 3.0),
    ];
    assert_eq!(degree(&free, &loops).unwrap(), 0);
    assert_eq!(degree(&FieldConfig::electron_in_uniform_b(), &[linking_loop()]).unwrap(), 1);
    assert_eq!(gcd(gcd(0, 2), 4), 2);
    assert!(matches!(degree(&free, &[]), Err(Error::InvalidArgument(_))));
}

#[test]
fn reversal_negates_winding() {
    let cfg = FieldConfig::electron_in_uniform_b();
    let a = winding(&cfg, &linking_loop()).unwrap().winding;
    let b = winding(&cfg, &linking_loop().reversed()).unwrap().winding;
    assert_eq!(a, -b);
}

#[test]
fn sample_doubling_is_stable() {
    let cfg = FieldConfig::electron_in_uniform_b();
    let a = winding(&cfg, &linking_loop()).unwrap().winding;
    let b = winding(&cfg, &linking_loop().with_samples(1440)).unwrap().winding;
    assert_eq!(a, b);
    // coarse sampling relies on refinement but reaches the same integer
    let c = winding(&cfg, &linking_loop().with_samples(8)).unwrap();
    assert_eq!(c.winding, a);
}

#[test]
fn orthogonal_fields_have_zero_winding() {
    // E·B = 0 everywhere: two point charges and a parallel-free B
    let cfg = FieldConfig::Superposition {
        terms: vec![
            FieldConfig::PointCharge {
                charge: 1.0,
                position: v(1.0, 0.0, 0.0),
            },
            FieldConfig::PointCharge {
                charge: -2.0,
                position: v(-1.0, 0.0, 0.0),
            },
        ],
    };
    for l in [
        LoopSpec::circle(v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0), 0.5),
        LoopSpec::circle(v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), 2.0),
    ] {
        assert_eq!(winding(&cfg, &l).unwrap().winding, 0);
    }
}

#[test]
fn constant_duality_rotation_keeps_winding() {
    let cfg = FieldConfig::electron_in_uniform_b();
    let rotated = Rotated {
        inner: cfg.clone(),
        angle: |_: &SpatialVector| 1.1,
    };
    assert_eq!(
        winding(&cfg, &linking_loop()).unwrap().winding,
        winding(&rotated, &linking_loop()).unwrap().winding
    );
}

#[test]
fn azimuthal_rotation_shifts_winding_by_twice() {
    // loop around the z-axis, where the azimuth winds once
    let cfg = FieldConfig::Uniform {
        e: v(1.0, 0.0, 0.0),
        b: v(0.0, 0.0, 0.0),
    };
    let rotated = Rotated {
        inner: cfg.clone(),
        angle: |p: &SpatialVector| p.y.atan2(p.x),
    };
    let l = LoopSpec::circle(v(0.0, 0.0, 0.5), v(0.0, 0.0, 1.0), 1.0);
    assert_eq!(winding(&cfg, &l).unwrap().winding, 0);
    assert_eq!(winding(&rotated, &l).unwrap().winding, 2);

    let cfg = FieldConfig::electron_in_uniform_b();
    let rotated = Rotated {
        inner: cfg.clone(),
        angle: |p: &SpatialVector| p.y.atan2(p.x),
    };
    let l = LoopSpec::circle(v(0.0, 0.0, 0.0), v(0.0, 0.0, 1.0), 2.0);
    let base = winding(&cfg, &l).unwrap().winding;
    assert_eq!(winding(&rotated, &l).unwrap().winding, base + 2);
}

#[test]
fn polyline_loop() {
    let cfg = FieldConfig::electron_in_uniform_b();
    // square around (0, 1, 0) in the z = 0 plane, counter-clockwise about +z
    let square = LoopSpec::Polyline {
        points: vec![v(0.2, 0.8, 0.0), v(0.2, 1.2, 0.0), v(-0.2, 1.2, 0.0), v(-0.2, 0.8, 0.0)],
        samples: 720,
    };
    let circle = linking_loop();
    let ws = winding(&cfg, &square).unwrap().winding;
    assert_eq!(ws.abs(), 1);
    // the circle's orientation about +z matches the square's
    let _ = PI;
    assert_eq!(ws, winding(&cfg, &circle).unwrap().winding);
}

#[test]
fn loop_validation() {
    let bad = LoopSpec::circle(v(0.0, 0.0, 0.0), v(0.0, 0.0, 1.0), 0.0);
    assert!(matches!(bad.validate(), Err(Error::InvalidArgument(_))));
    let few = LoopSpec::Polyline {
        points: vec![v(0.0, 0.0, 0.0), v(1.0, 0.0, 0.0), v(0.0, 0.0, 0.0)],
        samples: 720,
    };
    assert!(few.validate().is_err());
    assert!(linking_loop().with_samples(4).validate().is_err());
}

#[test]
fn config_json_round_trip() {
    let text = r#"{"type":"superposition","terms":[{"type":"point_charge","charge":-1.0,"position":[0,0,0]},{"type":"uniform","E":[0,0,0],"B":[1,0,0]}]}"#;
    let cfg: FieldConfig = serde_json::from_str(text).unwrap();
    assert_eq!(cfg, FieldConfig::electron_in_uniform_b());
    let l: LoopSpec =
        serde_json::from_str(r#"{"kind":"circle","center":[0,1,0],"normal":[0,0,1],"radius":0.25}"#).unwrap();
    assert_eq!(l, linking_loop());
    let r = winding(&cfg, &l).unwrap();
    let j = serde_json::to_value(r).unwrap();
    assert_eq!(j["parity"], "odd");
}
