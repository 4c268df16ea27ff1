//! The α-cochain complex: spaces `Cⁿ(ℝᵐ)` as black-box evaluators and the
//! coboundary `∂ₙ : Cⁿ → Cⁿ⁺¹`.
//!
//! ```text
//! (∂c)(p₀,…,pₙ) = εₙ Σᵢ (−1)ⁱ c(p₀,…,p̂ᵢ,…,pₙ) + εₙ (−1)ⁿ⁺¹ c(p₀−pₙ,…,pₙ₋₁−pₙ)
//! ```
//!
//! with `εₙ = 1` for odd `n` and `εₙ = i` for even `n`. The face maps (drop one
//! argument, or translate by the last argument and drop it) satisfy the
//! semi-simplicial identities, so the alternating sum squares to zero.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::momentum::MomentumVector;
use crate::polynomial::Polynomial;
use crate::report::{Report, Tracker};

/// Highest arity accepted by [`coboundary`].
pub const MAX_COBOUNDARY_ARITY: usize = 3;

type CochainFn = dyn Fn(&[MomentumVector]) -> Complex64 + Send + Sync;

#[derive(Clone)]
pub struct NCochain {
    arity: usize,
    dimension: usize,
    eval: Arc<CochainFn>,
}

impl fmt::Debug for NCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NCochain")
            .field("arity", &self.arity)
            .field("dimension", &self.dimension)
            .finish_non_exhaustive()
    }
}

impl NCochain {
    /// Wraps an evaluator. The closure is only ever called with `arity`
    /// arguments of dimension `dimension`.
    pub fn new<F>(arity: usize, dimension: usize, eval: F) -> Result<Self>
    where
        F: Fn(&[MomentumVector]) -> Complex64 + Send + Sync + 'static,
    {
        if arity == 0 {
            return Err(Error::Input(
                "C⁰ is the zero space; arity must be ≥ 1".into(),
            ));
        }
        Ok(NCochain {
            arity,
            dimension,
            eval: Arc::new(eval),
        })
    }

    pub fn zero(arity: usize, dimension: usize) -> Result<Self> {
        Self::new(arity, dimension, |_| Complex64::new(0.0, 0.0))
    }

    /// A polynomial 1-cochain. The caller is responsible for `β(0) = 0`;
    /// [`check_membership`] reports violations.
    pub fn from_polynomial(beta: Polynomial) -> Self {
        let m = beta.dimension();
        NCochain {
            arity: 1,
            dimension: m,
            eval: Arc::new(move |args| beta.eval(&args[0])),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn eval(&self, args: &[MomentumVector]) -> Result<Complex64> {
        if args.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                found: args.len(),
            });
        }
        for a in args {
            a.check_dim(self.dimension)?;
        }
        Ok((self.eval)(args))
    }

    pub(crate) fn eval_unchecked(&self, args: &[MomentumVector]) -> Complex64 {
        (self.eval)(args)
    }
}

pub fn eval_cochain(c: &NCochain, args: &[MomentumVector]) -> Result<Complex64> {
    c.eval(args)
}

/// `εₙ`: 1 for odd `n`, `i` for even `n`.
pub fn epsilon(n: usize) -> Complex64 {
    if n % 2 == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    }
}

pub fn coboundary(c: &NCochain) -> Result<NCochain> {
    let n = c.arity;
    if !(1..=MAX_COBOUNDARY_ARITY).contains(&n) {
        return Err(Error::UnsupportedArity(n));
    }
    let inner = c.clone();
    let eps = epsilon(n);
    let last_sign = if (n + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    NCochain::new(n + 1, c.dimension, move |args| {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut face = Vec::with_capacity(n);
        for i in 0..=n {
            face.clear();
            face.extend(
                args.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, a)| a.clone()),
            );
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            acc += inner.eval_unchecked(&face) * sign;
        }
        let last = &args[n];
        face.clear();
        face.extend(args[..n].iter().map(|a| a - last));
        acc += inner.eval_unchecked(&face) * last_sign;
        eps * acc
    })
}

fn describe(args: &[MomentumVector]) -> Vec<String> {
    args.iter().map(ToString::to_string).collect()
}

/// Maximum of `|(∂∂c)(args)|` over the supplied argument tuples, each of
/// length `arity + 2`.
pub fn check_d_squared_zero(
    c: &NCochain,
    samples: &[Vec<MomentumVector>],
    tol: f64,
) -> Result<Report> {
    if c.arity > 2 {
        return Err(Error::UnsupportedArity(c.arity));
    }
    let dd = coboundary(&coboundary(c)?)?;
    let mut t = Tracker::new("d_squared_zero", tol);
    for args in samples {
        let v = dd.eval(args)?;
        t.observe(v.norm(), || describe(args));
    }
    Ok(Report::new("d_squared_zero").with_entry(t.finish()))
}

/// Sampled check of the vanishing conditions defining `Cⁿ`.
///
/// `n = 1`: `c(0) = 0`. `n = 2`: `c(p, 0) = c(p, p) = 0`. `n ≥ 3`: zero last
/// argument, and any two adjacent arguments equal. Each sample tuple has
/// length `arity`; the conditions are imposed by overwriting entries.
pub fn check_membership(c: &NCochain, samples: &[Vec<MomentumVector>], tol: f64) -> Result<Report> {
    let n = c.arity;
    let zero = MomentumVector::zeros(c.dimension);
    let mut report = Report::new(format!("membership_C{n}"));
    if n == 1 {
        let mut t = Tracker::new("vanishes_at_zero", tol);
        let v = c.eval(std::slice::from_ref(&zero))?;
        t.observe(v.norm(), || describe(std::slice::from_ref(&zero)));
        return Ok(report.with_entry(t.finish()));
    }
    let mut last_zero = Tracker::new("last_argument_zero", tol);
    let mut adjacent = Tracker::new("adjacent_equal", tol);
    for args in samples {
        if args.len() != n {
            return Err(Error::Arity {
                expected: n,
                found: args.len(),
            });
        }
        let mut a = args.clone();
        a[n - 1] = zero.clone();
        let v = c.eval(&a)?;
        last_zero.observe(v.norm(), || describe(&a));
        for k in 0..n - 1 {
            let mut a = args.clone();
            a[k + 1] = a[k].clone();
            let v = c.eval(&a)?;
            adjacent.observe(v.norm(), || describe(&a));
        }
    }
    report.entries.push(last_zero.finish());
    report.entries.push(adjacent.finish());
    Ok(report)
}
