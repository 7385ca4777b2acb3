//! Seeded randomized check of the algebraic identities, with the largest
//! relative residual seen for each one.

use nalgebra::{Matrix4, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::eigen::{char_poly, eigenvalues, principal_null_pair};
use crate::energy::{energy_momentum, energy_momentum_block};
use crate::error::{Error, Result};
use crate::lorentz::{exp_map, poynting_eliminating_velocity, transform_fields, BoostVelocity};
use crate::minkowski::{inner, FourVector, SpatialVector};
use crate::skew::{block_operator, matrix_commutator, SkewField};

/// Component range of the random fields.
pub const FIELD_BOUND: f64 = 10.0;
/// Relative residual every identity must stay under.
pub const BATTERY_TOL: f64 = 1e-8;
/// Number of leading cases that also run the converse of the square-root theorem.
const CONVERSE_CASES: usize = 100;

/// (name, statement) in report order.
const IDENTITIES: &[(&str, &str)] = &[
    ("thm_3_2", "F F* = F* F = -(E.B) I"),
    ("cor_3_3", "<Fv, F*v> = (E.B) <v,v>; E.B is boost invariant"),
    ("cor_3_4", "lambda_F lambda_F* = -E.B"),
    ("cor_3_5", "F^2 - F*^2 = (E^2 - B^2) I"),
    ("cor_3_6", "E^2 - B^2 is boost invariant"),
    ("cor_3_7", "lambda_F^2 - lambda_F*^2 = E^2 - B^2"),
    ("cor_3_12", "tr(F^2) = 2(E^2 - B^2); T = F^2 - tr(F^2)/4 I matches the block form"),
    ("thm_4_1", "[F1, F2] closed form"),
    ("cor_4_2", "[F1,F2]* = [F1,F2*] = [F1*,F2]; duality rotations add"),
    ("thm_4_3", "[cF, cG] = 2 c[F, G]"),
    ("thm_4_5", "block(A, C)^2 = kI iff k = A.A and C = +-iA"),
    ("cor_4_6", "(cF)^2 = lambda_cF^2 I and its conjugate"),
    ("cor_4_7", "cF cG + cG cF = 2 (A1.A2) I"),
    ("thm_4_8", "cF and conj(cG) commute"),
    ("prop_5_1", "cF conj(cF) = 2T; |lambda_cF|^2 = 2 lambda_T"),
    ("cor_5_2", "T is invariant under duality rotation"),
    ("cor_5_3", "T^2 = lambda_T^2 I"),
    ("thm_5_4", "eigenvalues are +-lambda_F, +-i lambda_F*; characteristic polynomial"),
    ("prop_5_5", "eigenvectors with nonzero eigenvalue are null"),
    ("cor_6_8", "s and s_minus are null eigenvectors for +-lambda_F"),
    ("cor_8_6", "closed-form exponential matches the power series"),
    ("eq_8_15", "Poynting-eliminating boost removes E' x B'"),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityResult {
    pub name: &'static str,
    pub statement: &'static str,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub seed: u64,
    pub cases: usize,
    pub identities: Vec<IdentityResult>,
    pub all_passed: bool,
}

impl BatteryReport {
    pub fn get(&self, name: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|r| r.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.identities.iter().map(|r| r.max_residual).fold(0.0, f64::max)
    }
}

struct Tally {
    results: Vec<IdentityResult>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            results: IDENTITIES
                .iter()
                .map(|&(name, statement)| IdentityResult {
                    name,
                    statement,
                    cases: 0,
                    max_residual: 0.0,
                    tolerance: BATTERY_TOL,
                    passed: true,
                })
                .collect(),
        }
    }

    fn add(&mut self, name: &str, residual: f64) {
        let r = self
            .results
            .iter_mut()
            .find(|r| r.name == name)
            .unwrap_or_else(|| panic!("unknown identity {name}"));
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        r.max_residual = r.max_residual.max(residual);
        r.cases += 1;
    }

    fn finish(mut self, seed: u64, cases: usize) -> BatteryReport {
        for r in &mut self.results {
            r.passed = r.max_residual < r.tolerance;
        }
        let all_passed = self.results.iter().all(|r| r.passed);
        BatteryReport {
            seed,
            cases,
            identities: self.results,
            all_passed,
        }
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, bound: f64) -> SpatialVector {
    SpatialVector::from_fn(|_, _| rng.random_range(-bound..=bound))
}

/// A field with components uniform in `[-bound, bound]`.
pub fn random_field<R: Rng>(rng: &mut R, bound: f64) -> SkewField {
    let e = random_vector(rng, bound);
    let b = random_vector(rng, bound);
    SkewField::from_fields(e, b)
}

/// A random null field: `|E| = |B|`, `E ⊥ B`, amplitude up to `bound`.
pub fn random_null_field<R: Rng>(rng: &mut R, bound: f64) -> SkewField {
    let e = random_vector(rng, bound);
    let d = random_vector(rng, 1.0);
    let n = e.cross(&d).normalize();
    SkewField::from_fields(e, e.norm() * n)
}

/// A velocity uniform in direction with speed uniform in `[0, max_speed]`.
pub fn random_velocity<R: Rng>(rng: &mut R, max_speed: f64) -> BoostVelocity {
    loop {
        let d = random_vector(rng, 1.0);
        let n = d.norm();
        if n > 1e-3 && n <= 1.0 {
            let speed = rng.random_range(0.0..=max_speed);
            return BoostVelocity::new(d * (speed / n)).expect("speed below 1");
        }
    }
}

/// `Σ_{k<terms} M^k / k!`.
pub fn exp_series(m: &Matrix4<f64>, terms: usize) -> Matrix4<f64> {
    let mut term = Matrix4::identity();
    let mut sum = term;
    for k in 1..terms {
        term = term * m / k as f64;
        sum += term;
    }
    sum
}

fn cmat(m: &Matrix4<f64>) -> Matrix4<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

fn identity_c() -> Matrix4<Complex64> {
    Matrix4::identity()
}

/// Runs every identity on `cases` seeded random fields.
pub fn run_battery(seed: u64, cases: usize) -> Result<BatteryReport> {
    if cases == 0 {
        return Err(Error::InvalidArgument("cases must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new();
    for i in 0..cases {
        let f = random_field(&mut rng, FIELD_BOUND);
        let g = random_field(&mut rng, FIELD_BOUND);
        let w = random_velocity(&mut rng, 0.95);
        let v = FourVector(nalgebra::Vector4::from_fn(|_, _| rng.random_range(-1.0..=1.0)));
        let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let phi = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let small = random_field(&mut rng, 1.0);
        let a = Vector3::from_fn(|_, _| Complex64::new(rng.random_range(-10.0..=10.0), rng.random_range(-10.0..=10.0)));
        let c = Vector3::from_fn(|_, _| Complex64::new(rng.random_range(-10.0..=10.0), rng.random_range(-10.0..=10.0)));
        check_case(&mut tally, &f, &g, &w, &v, theta, phi, &small);
        if i < CONVERSE_CASES {
            check_square_root_converse(&mut tally, &a, &c);
        }
    }
    Ok(tally.finish(seed, cases))
}

#[allow(clippy::too_many_arguments)]
fn check_case(
    tally: &mut Tally,
    f: &SkewField,
    g: &SkewField,
    w: &BoostVelocity,
    v: &FourVector,
    theta: f64,
    phi: f64,
    small: &SkewField,
) {
    let id = Matrix4::<f64>::identity();
    let (e2, b2, eb) = (f.e_squared(), f.b_squared(), f.e_dot_b());
    let s = f.energy_scale();
    let sg = g.energy_scale();
    let sfg = (s * sg).sqrt();
    let m = f.matrix();
    let dual = f.hodge_dual();
    let md = dual.matrix();
    let ev = eigenvalues(f);

    tally.add(
        "thm_3_2",
        ((m * md + id * eb).amax()).max((md * m + id * eb).amax()) / s,
    );

    let vv = inner(v, v);
    let vn = v.euclidean_norm().powi(2);
    let boosted = transform_fields(f, w);
    let g2 = w.gamma().powi(2);
    tally.add(
        "cor_3_3",
        ((inner(&f.apply(v), &dual.apply(v)) - eb * vv).abs() / (s * vn))
            .max((boosted.e_dot_b() - eb).abs() / (s * g2)),
    );
    tally.add("cor_3_4", (ev.lambda_f * ev.lambda_fstar + eb).abs() / s);
    tally.add("cor_3_5", (m * m - md * md - id * (e2 - b2)).amax() / s);
    tally.add("cor_3_6", (boosted.e2_minus_b2() - (e2 - b2)).abs() / (s * g2));
    tally.add(
        "cor_3_7",
        (ev.lambda_f.powi(2) - ev.lambda_fstar.powi(2) - (e2 - b2)).abs() / s,
    );
    let f2 = m * m;
    let t = energy_momentum(f);
    tally.add(
        "cor_3_12",
        ((f2.trace() - 2.0 * (e2 - b2)).abs() / s).max((t.matrix() - energy_momentum_block(f)).amax() / s),
    );

    let comm = matrix_commutator(m, g.matrix());
    let closed = f.commutator(g);
    tally.add("thm_4_1", (comm - closed.matrix()).amax() / sfg);

    let comm_dual = closed.hodge_dual();
    let r1 = (comm_dual.matrix() - f.commutator(&g.hodge_dual()).matrix()).amax();
    let r2 = (comm_dual.matrix() - f.hodge_dual().commutator(g).matrix()).amax();
    let rotated = f.duality_rotate(theta).commutator(&g.duality_rotate(phi));
    let r3 = (rotated.matrix() - closed.duality_rotate(theta + phi).matrix()).amax();
    tally.add("cor_4_2", r1.max(r2).max(r3) / sfg);

    let cf = f.complexify(false);
    let cg = g.complexify(false);
    let cfb = f.complexify(true);
    let cgb = g.complexify(true);
    let (cfm, cgm) = (cf.matrix(), cg.matrix());
    let lhs = cfm * cgm - cgm * cfm;
    let rhs = closed.complexify(false).matrix() * Complex64::new(2.0, 0.0);
    tally.add("thm_4_3", (lhs - rhs).camax() / sfg);

    let square = cfm * cfm;
    let square_b = cfb.matrix() * cfb.matrix();
    tally.add(
        "thm_4_5",
        ((square - identity_c() * cf.square_scalar()).camax())
            .max((square_b - identity_c() * cfb.square_scalar()).camax())
            / s,
    );

    let lam2 = ev.lambda_cf * ev.lambda_cf;
    tally.add(
        "cor_4_6",
        ((square - identity_c() * lam2).camax()).max((square_b - identity_c() * lam2.conj()).camax()) / s,
    );

    let a_dot = crate::minkowski::complex_dot(cf.a(), cg.a());
    tally.add(
        "cor_4_7",
        (cfm * cgm + cgm * cfm - identity_c() * (a_dot * 2.0)).camax() / sfg,
    );
    tally.add(
        "thm_4_8",
        (cfm * cgb.matrix() - cgb.matrix() * cfm).camax() / sfg,
    );

    let prod = cfm * cfb.matrix();
    tally.add(
        "prop_5_1",
        ((prod - cmat(t.matrix()) * Complex64::new(2.0, 0.0)).camax() / s)
            .max((ev.lambda_cf.norm_sqr() - 2.0 * t.lambda_t()).abs() / s),
    );

    let mut r = 0.0f64;
    for k in 0..16 {
        let th = k as f64 * std::f64::consts::TAU / 16.0;
        r = r.max((energy_momentum(&f.duality_rotate(th)).matrix() - t.matrix()).amax());
    }
    tally.add("cor_5_2", r / s);
    tally.add(
        "cor_5_3",
        (t.matrix() * t.matrix() - id * t.lambda_t().powi(2)).amax() / (s * s),
    );

    tally.add("thm_5_4", eigen_oracle_residual(f) / s.sqrt());

    let pair = principal_null_pair(f).expect("random field is nonzero");
    let mut r55 = 0.0f64;
    let mut r68 = 0.0f64;
    for (vec, sign) in [(pair.s, 1.0), (pair.s_minus, -1.0)] {
        let n = vec.euclidean_norm();
        r55 = r55.max(ev.lambda_f * inner(&vec, &vec).abs() / (s.sqrt() * n * n));
        let resid = (f.apply(&vec) - (sign * ev.lambda_f) * vec).euclidean_norm();
        r68 = r68.max(resid / (s.sqrt() * n)).max(inner(&vec, &vec).abs() / (n * n));
    }
    tally.add("prop_5_5", r55);
    tally.add("cor_6_8", r68);

    let x = exp_map(small);
    tally.add("cor_8_6", (x - exp_series(small.matrix(), 20)).amax() / x.amax());

    if let Ok(wp) = poynting_eliminating_velocity(f) {
        let b = transform_fields(f, &wp);
        // E′ × B′ vanishes iff the rest-frame Poynting vector T u′ is parallel to u′
        let tu = t.apply(&b.observer);
        let flux = tu + inner(&tu, &b.observer) * b.observer;
        tally.add("eq_8_15", flux.euclidean_norm() / s);
    }
}

/// Largest distance from the dense eigenvalues of `F` to `{±λ_F, ±iλ_F*}`,
/// together with the characteristic polynomial residual at a few points.
fn eigen_oracle_residual(f: &SkewField) -> f64 {
    let ev = eigenvalues(f);
    let expected = [
        Complex64::new(ev.lambda_f, 0.0),
        Complex64::new(-ev.lambda_f, 0.0),
        Complex64::new(0.0, ev.lambda_fstar),
        Complex64::new(0.0, -ev.lambda_fstar),
    ];
    let oracle = f.matrix().complex_eigenvalues();
    let mut used = [false; 4];
    let mut worst = 0.0f64;
    for z in expected {
        let (j, d) = (0..4)
            .filter(|&j| !used[j])
            .map(|j| (j, (oracle[j] - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("four eigenvalues");
        used[j] = true;
        worst = worst.max(d);
    }
    let p = char_poly(f);
    let s = f.energy_scale();
    for x in [-1.0, -0.3, 0.2, 0.9] {
        let lam = x * s.sqrt();
        let det = (Matrix4::identity() * lam - f.matrix()).determinant();
        let poly = p.iter().fold(0.0, |acc, k| acc * lam + k);
        worst = worst.max((det - poly).abs() / (s * s.sqrt()));
    }
    worst
}

/// The converse of the square-root theorem: a generic `C` gives a non-scalar
/// square, while `C = ±iA` gives `(A·A) I`.
fn check_square_root_converse(tally: &mut Tally, a: &Vector3<Complex64>, c: &Vector3<Complex64>) {
    let i = Complex64::new(0.0, 1.0);
    let scale = a.norm_squared();
    let mut r = 0.0f64;
    for sign in [1.0, -1.0] {
        let m = block_operator(a, &a.map(|z| z * i * sign));
        r = r.max((m * m - identity_c() * crate::minkowski::complex_dot(a, a)).camax() / scale);
    }
    let generic = block_operator(a, c);
    let sq = generic * generic;
    let k = sq[(0, 0)];
    // a generic C must be detected as non-scalar
    let off = (sq - identity_c() * k).camax() / (scale + c.norm_squared());
    if off < 1e-6 {
        r = f64::INFINITY;
    }
    tally.add("thm_4_5", r);
}
