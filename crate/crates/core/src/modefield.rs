//! Finite plane-wave sums `f(x) = Σₖ cₖ e^{i pₖ·x}` with exact rational
//! frequencies, and the star product they carry:
//!
//! ```text
//! e_q ⋆ e_p = e^{α(p+q, q)} e_{p+q}
//! ```
//!
//! extended bilinearly. The first factor's frequency sits in the second slot
//! of `α`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::momentum::{ratio, MomentumVector};
use crate::sampling::Sampler;

/// Coefficients with modulus at or below this are dropped.
pub const PRUNE_TOL: f64 = 1e-15;
/// `|Re α|` above this would overflow or underflow `exp`.
pub const MAX_EXPONENT: f64 = 700.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ModeField {
    dimension: usize,
    modes: BTreeMap<MomentumVector, Complex64>,
}

impl ModeField {
    pub fn zero(dimension: usize) -> Self {
        ModeField {
            dimension,
            modes: BTreeMap::new(),
        }
    }

    /// The constant function 1.
    pub fn unit(dimension: usize) -> Self {
        Self::plane_wave(MomentumVector::zeros(dimension), Complex64::new(1.0, 0.0))
    }

    pub fn plane_wave(freq: MomentumVector, coeff: Complex64) -> Self {
        let mut f = Self::zero(freq.dimension());
        f.accumulate(freq, coeff);
        f.prune();
        f
    }

    /// Builds a field from `(frequency, coefficient)` pairs; repeated
    /// frequencies are summed.
    pub fn from_modes<I>(dimension: usize, modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MomentumVector, Complex64)>,
    {
        let mut f = Self::zero(dimension);
        for (p, c) in modes {
            p.check_dim(dimension)?;
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::Input(format!("non-finite coefficient at {p}")));
            }
            f.accumulate(p, c);
        }
        f.prune();
        Ok(f)
    }

    fn accumulate(&mut self, p: MomentumVector, c: Complex64) {
        *self.modes.entry(p).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    fn prune(&mut self) {
        self.modes.retain(|_, c| c.norm() > PRUNE_TOL);
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Modes in ascending frequency order.
    pub fn modes(&self) -> impl Iterator<Item = (&MomentumVector, &Complex64)> {
        self.modes.iter()
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn coefficient(&self, p: &MomentumVector) -> Complex64 {
        self.modes.get(p).copied().unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        self.modes.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &ModeField) -> Result<ModeField> {
        Error::check_dim(self.dimension, other.dimension)?;
        let mut out = self.clone();
        for (p, c) in &other.modes {
            out.accumulate(p.clone(), *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> ModeField {
        let mut out = self.clone();
        for c in out.modes.values_mut() {
            *c *= s;
        }
        out.prune();
        out
    }

    /// Complex conjugate function: `c e_p ↦ c̄ e_{−p}`.
    pub fn conj(&self) -> ModeField {
        ModeField {
            dimension: self.dimension,
            modes: self.modes.iter().map(|(p, c)| (-p, c.conj())).collect(),
        }
    }

    /// Multiplies each coefficient by `factor(p)`, pruning afterwards.
    pub fn map_coefficients<F>(&self, mut factor: F) -> Result<ModeField>
    where
        F: FnMut(&MomentumVector) -> Result<Complex64>,
    {
        let mut out = ModeField::zero(self.dimension);
        for (p, c) in &self.modes {
            out.modes.insert(p.clone(), c * factor(p)?);
        }
        out.prune();
        Ok(out)
    }

    /// Largest coefficient difference over the union of both supports.
    pub fn max_coeff_diff(&self, other: &ModeField) -> f64 {
        let mut worst: f64 = 0.0;
        for (p, c) in &self.modes {
            worst = worst.max((c - other.coefficient(p)).norm());
        }
        for (p, c) in &other.modes {
            if !self.modes.contains_key(p) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    /// [`Self::max_coeff_diff`] divided by the larger of the two fields'
    /// largest coefficients.
    pub fn relative_diff(&self, other: &ModeField) -> f64 {
        let scale = self.max_abs().max(other.max_abs());
        let diff = self.max_coeff_diff(other);
        if scale > 0.0 {
            diff / scale
        } else {
            diff
        }
    }
}

/// `f ⋆ g` under the cocycle `a`.
///
/// Pairs are visited in ascending frequency order and accumulated in that
/// order, so the output is bit-reproducible.
pub fn star(a: &Cocycle, f: &ModeField, g: &ModeField) -> Result<ModeField> {
    let m = a.dimension();
    Error::check_dim(m, f.dimension)?;
    Error::check_dim(m, g.dimension)?;
    let mut out = ModeField::zero(m);
    for (q, cf) in &f.modes {
        for (p, cg) in &g.modes {
            let sum = p + q;
            let phase = a.eval_unchecked(&sum, q);
            if phase.re.is_nan() || phase.re.abs() > MAX_EXPONENT {
                return Err(Error::Range(format!(
                    "|Re α(p+q, q)| = {:e} exceeds {MAX_EXPONENT} at q = {q}, p = {p}",
                    phase.re.abs()
                )));
            }
            out.accumulate(sum, cf * cg * phase.exp());
        }
    }
    out.prune();
    Ok(out)
}

/// Left-associated product `((f₁ ⋆ f₂) ⋆ f₃) ⋯`.
pub fn star_chain(a: &Cocycle, fs: &[ModeField]) -> Result<ModeField> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| Error::Input("star_chain needs at least one field".into()))?;
    Error::check_dim(a.dimension(), first.dimension)?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| star(a, &acc, f))
}

/// `∫ f`, normalised so that `∫ 1 = 1`: the zero-frequency coefficient.
pub fn integral(f: &ModeField) -> Complex64 {
    f.coefficient(&MomentumVector::zeros(f.dimension))
}

/// `(𝔗ₐ f)(x) = f(x + a)`: each mode picks up `e^{i p·a}`.
pub fn translate(f: &ModeField, shift: &[f64]) -> Result<ModeField> {
    Error::check_dim(f.dimension, shift.len())?;
    f.map_coefficients(|p| Ok(Complex64::new(0.0, p.dot_f64(shift)).exp()))
}

/// `∂f/∂x^axis` (axis is zero-based): each mode picks up `i p_axis`.
pub fn derivative(f: &ModeField, axis: usize) -> Result<ModeField> {
    if axis >= f.dimension {
        return Err(Error::Axis {
            axis,
            dimension: f.dimension,
        });
    }
    f.map_coefficients(|p| {
        Ok(Complex64::new(
            0.0,
            crate::momentum::rational_to_f64(&p.coords()[axis]),
        ))
    })
}

/// Plane waves on which the two association orders of `⋆` disagree.
#[derive(Debug, Clone)]
pub struct AssociativityWitness {
    pub fields: [ModeField; 3],
    pub left: ModeField,
    pub right: ModeField,
    /// Relative difference of the two orders.
    pub difference: f64,
}

/// Turns a sampled failure of the cocycle identity at `(p,q,r)` into plane
/// waves `e_r, e_{q−r}, e_{p−q}` and confirms by computing both association
/// orders. Returns the first triple whose relative difference exceeds
/// `threshold`.
pub fn associativity_witness(
    a: &Cocycle,
    samples: &[(MomentumVector, MomentumVector, MomentumVector)],
    threshold: f64,
) -> Result<Option<AssociativityWitness>> {
    let one = Complex64::new(1.0, 0.0);
    for (p, q, r) in samples {
        let fields = [
            ModeField::plane_wave(r.clone(), one),
            ModeField::plane_wave(q - r, one),
            ModeField::plane_wave(p - q, one),
        ];
        let left = star(a, &star(a, &fields[0], &fields[1])?, &fields[2])?;
        let right = star(a, &fields[0], &star(a, &fields[1], &fields[2])?)?;
        let difference = left.relative_diff(&right);
        if difference > threshold {
            return Ok(Some(AssociativityWitness {
                fields,
                left,
                right,
                difference,
            }));
        }
    }
    Ok(None)
}

/// Searches for plane waves `e_q, e_p` with `e_q ⋆ e_p ≠ e_p ⋆ e_q` beyond
/// `threshold` (relative): scaled coordinate-axis pairs first, then seeded random pairs.
pub fn noncommutativity_witness(
    a: &Cocycle,
    threshold: f64,
    seed: u64,
) -> Result<Option<(ModeField, ModeField)>> {
    let m = a.dimension();
    let one = Complex64::new(1.0, 0.0);
    let mut candidates = Vec::new();
    for (n, d) in [(1, 1), (1, 2), (3, 4), (1, 4), (2, 1)] {
        for i in 0..m {
            for j in i + 1..m {
                candidates.push((
                    MomentumVector::axis(m, i, ratio(n, d)),
                    MomentumVector::axis(m, j, ratio(n, d)),
                ));
            }
        }
    }
    candidates.extend(Sampler::new(m, seed).pairs(200));
    for (q, p) in candidates {
        let f = ModeField::plane_wave(q, one);
        let g = ModeField::plane_wave(p, one);
        let fg = star(a, &f, &g)?;
        let gf = star(a, &g, &f)?;
        if fg.relative_diff(&gf) > threshold {
            return Ok(Some((f, g)));
        }
    }
    Ok(None)
}
