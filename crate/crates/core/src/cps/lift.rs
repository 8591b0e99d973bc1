use rayon::prelude::*;
use serde::Serialize;

use super::Scheme;
use crate::error::{Error, Result};
use crate::numeric::Real;

/// Outcome of comparing `e^{2πiβx}` with `e^{2πiγx⋆}` over a coordinate box.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftReport {
    pub max_deviation: f64,
    /// Coordinates `(m, n)` attaining the maximum.
    pub worst: (i64, i64),
    pub tolerance: f64,
    pub pass: bool,
}

/// `a − round(a)`, exact when `a` is.
fn centered_fraction(a: Real) -> f64 {
    let nearest = (a + Real::ratio(1, 2)).floor();
    (a - Real::integer(nearest)).to_f64()
}

/// Checks whether the character `x ↦ e^{2πiβx}` of `G` agrees on the lattice
/// with `y ↦ e^{2πiγy}` on `H`, over all `|m|, |n| <= radius`.
///
/// Writing `x = m + nα`, the phase difference is `m(β−γ) + n(βα−γα′)`; the
/// two characters agree on the lattice exactly when both coefficients are
/// integers.
pub fn character_lift_check(scheme: &Scheme, beta: Real, gamma: Real, radius: i64, tol: f64) -> Result<LiftReport> {
    let Some(alpha) = scheme.alpha() else {
        return Err(Error::Unsupported(
            "character lifts are implemented for Euclidean internal spaces only".into(),
        ));
    };
    if radius < 0 {
        return Err(Error::InvalidInput("radius must be nonnegative".into()));
    }
    let (a, c) = (Real::Exact(alpha), Real::Exact(alpha.conjugate()));
    let u = centered_fraction(beta - gamma);
    let v = centered_fraction(beta * a - gamma * c);
    let (max_deviation, worst) = (-radius..=radius)
        .into_par_iter()
        .map(|n| {
            let mut best = (0.0f64, (0i64, n));
            for m in -radius..=radius {
                let phase = m as f64 * u + n as f64 * v;
                let d = 2.0 * (std::f64::consts::PI * (phase - phase.round())).sin().abs();
                if d > best.0 {
                    best = (d, (m, n));
                }
            }
            best
        })
        .reduce(|| (0.0, (0, 0)), |x, y| if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x });
    Ok(LiftReport { max_deviation, worst, tolerance: tol, pass: max_deviation <= tol })
}
