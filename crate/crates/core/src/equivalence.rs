//! Gauge transforms `f̃(p) ↦ f̃(p) e^{β(p)}` and the integral identity that
//! makes cohomologous star products physically equivalent.
//!
//! If `α₁ = α₂ + ∂β` then, for every tuple of fields,
//!
//! ```text
//! ∫ f₁ ⋆₁ ⋯ ⋆₁ fₙ = ∫ f′₁ ⋆₂ ⋯ ⋆₂ f′ₙ,    f′ = gauge_transform(f, β)
//! ```
//!
//! because along a left-associated chain with total frequency zero the
//! `∂β` phases telescope to `Σₖ β(pₖ)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::cochain::{coboundary, NCochain};
use crate::cocycle::{Cocycle, MAX_BETA_DEGREE, VALIDATION_SAMPLES, VALIDATION_SEED};
use crate::error::{Error, Result};
use crate::modefield::{integral, star, ModeField, MAX_EXPONENT};
use crate::momentum::MomentumVector;
use crate::polynomial::Polynomial;
use crate::report::{Report, Residual, Tracker};
use crate::sampling::Sampler;

/// Trial budget for the seeded non-equivalence witness search.
pub const WITNESS_TRIALS: usize = 1000;

/// Polynomial 1-cochain `β` with `β(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeCochain {
    beta: Polynomial,
}

impl GaugeCochain {
    pub fn new(beta: Polynomial) -> Result<Self> {
        if beta.constant_term() != Complex64::new(0.0, 0.0) {
            return Err(Error::Input(format!(
                "gauge cochain has nonzero constant term {}",
                beta.constant_term()
            )));
        }
        if beta.degree() > MAX_BETA_DEGREE {
            return Err(Error::Input(format!(
                "gauge degree {} exceeds cap {MAX_BETA_DEGREE}",
                beta.degree()
            )));
        }
        Ok(GaugeCochain { beta })
    }

    pub fn zero(dimension: usize) -> Self {
        GaugeCochain {
            beta: Polynomial::zero(dimension),
        }
    }

    pub fn dimension(&self) -> usize {
        self.beta.dimension()
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.beta
    }

    /// `∂β` as a 2-cochain.
    pub fn coboundary(&self) -> NCochain {
        coboundary(&NCochain::from_polynomial(self.beta.clone())).expect("arity 1")
    }
}

pub fn gauge_transform(f: &ModeField, beta: &GaugeCochain) -> Result<ModeField> {
    Error::check_dim(f.dimension(), beta.dimension())?;
    f.map_coefficients(|p| {
        let b = beta.beta.eval(p);
        if b.re.is_nan() || b.re.abs() > MAX_EXPONENT {
            return Err(Error::Range(format!(
                "|Re β(p)| = {:e} exceeds {MAX_EXPONENT} at frequency {p}",
                b.re.abs()
            )));
        }
        Ok(b.exp())
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(c: Complex64) -> Self {
        ComplexValue { re: c.re, im: c.im }
    }
}

/// One row of the identity check: both integrals for the first `n` fields.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceRow {
    pub n: usize,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub abs_residual: f64,
    /// Largest coefficient magnitude met while forming either side.
    pub scale: f64,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    /// `max |α₁ − α₂ − ∂β|` on seeded samples.
    pub precondition: Residual,
    pub rows: Vec<EquivalenceRow>,
    pub passed: bool,
}

/// Chain product tracking the largest coefficient seen along the way.
fn chain_with_scale(a: &Cocycle, fs: &[ModeField]) -> Result<(ModeField, f64)> {
    let mut scale = fs.iter().map(ModeField::max_abs).fold(0.0, f64::max);
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = star(a, &acc, f)?;
        scale = scale.max(acc.max_abs());
    }
    Ok((acc, scale))
}

/// Both sides of the identity for all of `fields`, without the
/// `α₁ = α₂ + ∂β` precondition.
pub fn equivalence_row(
    a1: &Cocycle,
    a2: &Cocycle,
    beta: &GaugeCochain,
    fields: &[ModeField],
    tol: f64,
) -> Result<EquivalenceRow> {
    if fields.is_empty() {
        return Err(Error::Input("at least one field is required".into()));
    }
    Error::check_dim(a1.dimension(), a2.dimension())?;
    Error::check_dim(a1.dimension(), beta.dimension())?;
    let gauged = fields
        .iter()
        .map(|f| gauge_transform(f, beta))
        .collect::<Result<Vec<_>>>()?;
    let (left, s1) = chain_with_scale(a1, fields)?;
    let (right, s2) = chain_with_scale(a2, &gauged)?;
    let lhs = integral(&left);
    let rhs = integral(&right);
    let abs_residual = (lhs - rhs).norm();
    let scale = s1.max(s2);
    let residual = if scale > 0.0 {
        abs_residual / scale
    } else {
        abs_residual
    };
    Ok(EquivalenceRow {
        n: fields.len(),
        lhs: lhs.into(),
        rhs: rhs.into(),
        abs_residual,
        scale,
        residual,
        threshold: tol,
        passed: residual <= tol,
    })
}

/// Pointwise residual of `α₁ − α₂ − ∂β` on seeded samples.
pub fn check_gauge_relation(
    a1: &Cocycle,
    a2: &Cocycle,
    beta: &GaugeCochain,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<Residual> {
    let m = a1.dimension();
    Error::check_dim(m, a2.dimension())?;
    Error::check_dim(m, beta.dimension())?;
    let d = beta.coboundary();
    let mut t = Tracker::new("gauge_relation", tol);
    for (p, q) in Sampler::new(m, seed).pairs(samples) {
        let diff = a1.eval_unchecked(&p, &q)
            - a2.eval_unchecked(&p, &q)
            - d.eval(&[p.clone(), q.clone()])?;
        let scale = a1.eval_unchecked(&p, &q).norm().max(1.0);
        t.observe(diff.norm() / scale, || vec![p.to_string(), q.to_string()]);
    }
    Ok(t.finish())
}

/// Checks the integral identity for every prefix `f₁…fₖ`, `k = 1..=n`.
///
/// When `α₁ − α₂ − ∂β` does not vanish on samples the report carries the
/// failed precondition and no rows.
pub fn check_quantum_equivalence(
    a1: &Cocycle,
    a2: &Cocycle,
    beta: &GaugeCochain,
    fields: &[ModeField],
    tol: f64,
) -> Result<EquivalenceReport> {
    let precondition =
        check_gauge_relation(a1, a2, beta, VALIDATION_SAMPLES, VALIDATION_SEED, tol)?;
    if !precondition.passed {
        return Ok(EquivalenceReport {
            precondition,
            rows: Vec::new(),
            passed: false,
        });
    }
    let rows = (1..=fields.len())
        .map(|k| equivalence_row(a1, a2, beta, &fields[..k], tol))
        .collect::<Result<Vec<_>>>()?;
    let passed = !rows.is_empty() && rows.iter().all(|r| r.passed);
    Ok(EquivalenceReport {
        precondition,
        rows,
        passed,
    })
}

#[derive(Debug, Clone)]
pub struct EquivalenceViolation {
    pub trial: usize,
    pub fields: Vec<ModeField>,
    pub row: EquivalenceRow,
}

/// Seeded search over plane-wave tuples `e_{p₁}, …, e_{pₙ}` with
/// `Σ pₖ = 0` for a tuple whose integrals differ by more than `threshold`.
pub fn find_equivalence_violation(
    a1: &Cocycle,
    a2: &Cocycle,
    beta: &GaugeCochain,
    n: usize,
    seed: u64,
    max_trials: usize,
    threshold: f64,
) -> Result<Option<EquivalenceViolation>> {
    if n < 2 {
        return Err(Error::Input("a violation needs at least two fields".into()));
    }
    let m = a1.dimension();
    let one = Complex64::new(1.0, 0.0);
    let mut sampler = Sampler::new(m, seed);
    for trial in 0..max_trials {
        let mut freqs: Vec<MomentumVector> = (0..n - 1).map(|_| sampler.momentum()).collect();
        let total = freqs
            .iter()
            .fold(MomentumVector::zeros(m), |acc, p| &acc + p);
        freqs.push(-total);
        let fields: Vec<_> = freqs
            .into_iter()
            .map(|p| ModeField::plane_wave(p, one))
            .collect();
        let row = equivalence_row(a1, a2, beta, &fields, threshold)?;
        if !row.passed {
            return Ok(Some(EquivalenceViolation { trial, fields, row }));
        }
    }
    Ok(None)
}

/// `[f₁, …, fₖ] ↦ [fₖ, f₁, …, fₖ₋₁]`.
pub fn rotate_fields(fields: &[ModeField]) -> Vec<ModeField> {
    let mut out = fields.to_vec();
    out.rotate_right(1);
    out
}

/// `∫ f₁ ⋆ ⋯ ⋆ fₖ` against `∫ fₖ ⋆ f₁ ⋆ ⋯ ⋆ fₖ₋₁`, relative to the largest
/// intermediate coefficient.
pub fn check_trace_property(a: &Cocycle, fields: &[ModeField], tol: f64) -> Result<Report> {
    if fields.is_empty() {
        return Err(Error::Input("at least one field is required".into()));
    }
    let (left, s1) = chain_with_scale(a, fields)?;
    let (right, s2) = chain_with_scale(a, &rotate_fields(fields))?;
    let diff = (integral(&left) - integral(&right)).norm();
    let scale = s1.max(s2);
    let mut t = Tracker::new("trace", tol);
    t.observe(if scale > 0.0 { diff / scale } else { diff }, || {
        vec![format!("k = {}", fields.len())]
    });
    Ok(Report::new("trace").with_entry(t.finish()))
}
