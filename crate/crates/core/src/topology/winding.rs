//! Winding of `ψ` along loops, square-root continuation, and the degree.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::FieldSource;
use super::path::LoopSpec;
use super::psi;
use crate::error::{Error, Result};
use crate::tol;

/// Bisection depth limit for both phase and root steps.
pub const MAX_REFINEMENT_DEPTH: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingReport {
    pub winding: i64,
    pub parity: Parity,
    pub min_abs_psi: f64,
    pub samples_used: usize,
    pub refined: bool,
}

/// Evaluates `ψ` along a loop, refusing points on or near the null locus.
struct Sampler<'a, S: ?Sized> {
    source: &'a S,
    path: &'a LoopSpec,
    null_tol: f64,
    evaluations: usize,
    min_abs_psi: f64,
    refined: bool,
}

impl<'a, S: FieldSource + ?Sized> Sampler<'a, S> {
    fn new(source: &'a S, path: &'a LoopSpec, null_tol: f64) -> Result<Self> {
        path.validate()?;
        Ok(Sampler {
            source,
            path,
            null_tol,
            evaluations: 0,
            min_abs_psi: f64::INFINITY,
            refined: false,
        })
    }

    fn psi_at(&mut self, t: f64) -> Result<Complex64> {
        let f = self.source.field_at(&self.path.point_at(t))?;
        let z = psi(&f);
        let abs_psi = z.norm();
        self.evaluations += 1;
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(abs_psi > self.null_tol * f.energy_scale()) {
            return Err(Error::NullLocusCrossing { parameter: t, abs_psi });
        }
        self.min_abs_psi = self.min_abs_psi.min(abs_psi);
        Ok(z)
    }

    fn params(&self) -> impl Iterator<Item = (f64, f64)> {
        let n = self.path.samples();
        (0..n).map(move |k| (k as f64 / n as f64, (k + 1) as f64 / n as f64))
    }

    /// Phase change of `ψ` from `t0` to `t1`, bisecting until every step is within π/2.
    fn phase_step(&mut self, t0: f64, z0: Complex64, t1: f64, z1: Complex64, depth: u32) -> Result<f64> {
        let d = (z1 * z0.conj()).arg();
        if d.abs() <= FRAC_PI_2 {
            return Ok(d);
        }
        if depth >= MAX_REFINEMENT_DEPTH {
            return Err(Error::RefinementExhausted { parameter: t0 });
        }
        self.refined = true;
        let tm = 0.5 * (t0 + t1);
        let zm = self.psi_at(tm)?;
        Ok(self.phase_step(t0, z0, tm, zm, depth + 1)? + self.phase_step(tm, zm, t1, z1, depth + 1)?)
    }

    /// Carries the root `r0 = √ψ(t0)` to `t1`, bisecting while the root turns by more than π/4.
    fn root_step(&mut self, t0: f64, r0: Complex64, t1: f64, z1: Complex64, depth: u32) -> Result<Complex64> {
        let c = z1.sqrt();
        let pick = if (c - r0).norm() <= (c + r0).norm() { c } else { -c };
        if (pick * r0.conj()).arg().abs() <= FRAC_PI_4 {
            return Ok(pick);
        }
        if depth >= MAX_REFINEMENT_DEPTH {
            return Err(Error::AmbiguousContinuation { parameter: t0 });
        }
        self.refined = true;
        let tm = 0.5 * (t0 + t1);
        let zm = self.psi_at(tm)?;
        let rm = self.root_step(t0, r0, tm, zm, depth + 1)?;
        self.root_step(tm, rm, t1, z1, depth + 1)
    }
}

/// Winding number of `ψ` around the loop, with the default null-locus band.
pub fn winding<S: FieldSource + ?Sized>(source: &S, path: &LoopSpec) -> Result<WindingReport> {
    winding_with_tol(source, path, tol::NULL_LOCUS)
}

/// Winding number of `ψ` around the loop; samples with `|ψ| ≤ null_tol·(E²+B²)` are rejected.
pub fn winding_with_tol<S: FieldSource + ?Sized>(source: &S, path: &LoopSpec, null_tol: f64) -> Result<WindingReport> {
    let mut s = Sampler::new(source, path, null_tol)?;
    let first = s.psi_at(0.0)?;
    let mut prev = first;
    let mut total = 0.0;
    let steps: Vec<_> = s.params().collect();
    let last = steps.len() - 1;
    for (i, (t0, t1)) in steps.into_iter().enumerate() {
        let next = if i == last { first } else { s.psi_at(t1)? };
        total += s.phase_step(t0, prev, t1, next, 0)?;
        prev = next;
    }
    let turns = total / TAU;
    let winding = turns.round();
    // increments of a closed loop telescope to a multiple of 2π
    debug_assert!((turns - winding).abs() < 1e-6);
    let winding = winding as i64;
    Ok(WindingReport {
        winding,
        parity: Parity::of(winding),
        min_abs_psi: s.min_abs_psi,
        samples_used: s.evaluations,
        refined: s.refined,
    })
}

/// Follows `√ψ` once around the loop: `Even` if it returns to itself, `Odd` if to its negative.
pub fn eigenvalue_continuation<S: FieldSource + ?Sized>(source: &S, path: &LoopSpec) -> Result<Parity> {
    eigenvalue_continuation_with_tol(source, path, tol::NULL_LOCUS)
}

pub fn eigenvalue_continuation_with_tol<S: FieldSource + ?Sized>(
    source: &S,
    path: &LoopSpec,
    null_tol: f64,
) -> Result<Parity> {
    let mut s = Sampler::new(source, path, null_tol)?;
    let first = s.psi_at(0.0)?;
    let start = first.sqrt();
    let mut root = start;
    let steps: Vec<_> = s.params().collect();
    let last = steps.len() - 1;
    for (i, (t0, t1)) in steps.into_iter().enumerate() {
        let next = if i == last { first } else { s.psi_at(t1)? };
        root = s.root_step(t0, root, t1, next, 0)?;
    }
    Ok(if (root - start).norm() < (root + start).norm() {
        Parity::Even
    } else {
        Parity::Odd
    })
}

/// gcd of `|winding|` over the loops; a lower-bound witness of the degree.
pub fn degree<S: FieldSource + ?Sized>(source: &S, loops: &[LoopSpec]) -> Result<u64> {
    degree_with_tol(source, loops, tol::NULL_LOCUS)
}

pub fn degree_with_tol<S: FieldSource + ?Sized>(source: &S, loops: &[LoopSpec], null_tol: f64) -> Result<u64> {
    if loops.is_empty() {
        return Err(Error::InvalidArgument("degree needs at least one loop".into()));
    }
    loops.iter().try_fold(0u64, |g, l| {
        Ok(gcd(g, winding_with_tol(source, l, null_tol)?.winding.unsigned_abs()))
    })
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
