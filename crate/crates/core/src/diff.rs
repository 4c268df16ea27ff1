//! Central finite differences for second partials of two-slot functions, with
//! one step of Richardson extrapolation.
//!
//! Steps are exact rationals, so shifted arguments remain exact momenta.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::momentum::{ratio, MomentumVector};

/// Default step `2⁻¹⁰`.
pub const DEFAULT_STEP: f64 = 1.0 / 1024.0;

/// Which argument of `α(z, z')` a derivative acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    First,
    Second,
}

/// A coordinate direction: slot plus axis.
pub type Direction = (Slot, usize);

fn shift(
    p: &MomentumVector,
    q: &MomentumVector,
    (slot, axis): Direction,
    delta: &BigRational,
) -> (MomentumVector, MomentumVector) {
    match slot {
        Slot::First => (p.shifted(axis, delta), q.clone()),
        Slot::Second => (p.clone(), q.shifted(axis, delta)),
    }
}

/// Plain central difference for `∂²f/∂a∂b` at `(p, q)` with step `h`. Error O(h²).
pub fn central_second<F>(
    f: &F,
    p: &MomentumVector,
    q: &MomentumVector,
    a: Direction,
    b: Direction,
    h: &BigRational,
) -> Complex64
where
    F: Fn(&MomentumVector, &MomentumVector) -> Complex64 + ?Sized,
{
    let hf = crate::momentum::rational_to_f64(h);
    if a == b {
        let (pp, qp) = shift(p, q, a, h);
        let (pm, qm) = shift(p, q, a, &-h);
        (f(&pp, &qp) - f(p, q) * 2.0 + f(&pm, &qm)) / (hf * hf)
    } else {
        let corner = |sa: &BigRational, sb: &BigRational| {
            let (p1, q1) = shift(p, q, a, sa);
            let (p2, q2) = shift(&p1, &q1, b, sb);
            f(&p2, &q2)
        };
        let mh = -h;
        (corner(h, h) - corner(h, &mh) - corner(&mh, h) + corner(&mh, &mh)) / (4.0 * hf * hf)
    }
}

/// Richardson-extrapolated second partial: `(4·D(h/2) − D(h)) / 3`. Error O(h⁴).
pub fn second_partial<F>(
    f: &F,
    p: &MomentumVector,
    q: &MomentumVector,
    a: Direction,
    b: Direction,
    h: &BigRational,
) -> Complex64
where
    F: Fn(&MomentumVector, &MomentumVector) -> Complex64 + ?Sized,
{
    let coarse = central_second(f, p, q, a, b, h);
    let half = h * ratio(1, 2);
    let fine = central_second(f, p, q, a, b, &half);
    (fine * 4.0 - coarse) / 3.0
}
