use serde::{Deserialize, Serialize};

use crate::cps::weight_eval;
use crate::error::{Error, Result};
use crate::numeric::Real;

/// A compactly supported piecewise-linear function on the line, used to
/// smooth point measures.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BumpFunction {
    knots: Vec<(Real, Real)>,
}

impl BumpFunction {
    /// Knots must be strictly increasing; the function is zero outside them.
    pub fn new(knots: Vec<(Real, Real)>) -> Result<Self> {
        if knots.len() < 2 || knots.windows(2).any(|w| !w[0].0.value_cmp(&w[1].0).is_lt()) {
            return Err(Error::InvalidInput("bump knots must be at least two, strictly increasing".into()));
        }
        if knots.iter().any(|(x, v)| !x.is_finite() || !v.is_finite()) {
            return Err(Error::InvalidInput("bump knots must be finite".into()));
        }
        Ok(Self { knots })
    }

    /// `max(0, 1 - |t| / half_width)`.
    pub fn tent(half_width: Real) -> Result<Self> {
        if half_width.signum().is_le() {
            return Err(Error::InvalidInput("tent half-width must be positive".into()));
        }
        Self::new(vec![(-half_width, Real::zero()), (Real::zero(), Real::one()), (half_width, Real::zero())])
    }

    pub fn knots(&self) -> &[(Real, Real)] {
        &self.knots
    }

    pub fn eval(&self, t: &Real) -> Real {
        weight_eval(&self.knots, t)
    }

    /// Fast evaluation in floating point.
    pub fn eval_f64(&self, t: f64) -> f64 {
        let k = &self.knots;
        if t < k[0].0.to_f64() || t > k[k.len() - 1].0.to_f64() {
            return 0.0;
        }
        let i = k.partition_point(|(x, _)| x.to_f64() <= t).clamp(1, k.len() - 1);
        let (x0, v0) = (k[i - 1].0.to_f64(), k[i - 1].1.to_f64());
        let (x1, v1) = (k[i].0.to_f64(), k[i].1.to_f64());
        v0 + (v1 - v0) * (t - x0) / (x1 - x0)
    }

    /// Smallest `r` with `supp ψ ⊂ [-r, r]`.
    pub fn support_radius(&self) -> Real {
        let lo = self.knots[0].0.abs();
        let hi = self.knots[self.knots.len() - 1].0.abs();
        lo.max(hi)
    }

    /// `[first knot, last knot]`.
    pub fn support(&self) -> (Real, Real) {
        (self.knots[0].0, self.knots[self.knots.len() - 1].0)
    }

    /// `0 <= ψ <= 1` and `ψ(0) = 1`, as required of the smoothing function
    /// in the operator `𝒯`.
    pub fn is_normalized(&self) -> bool {
        let in_range = self
            .knots
            .iter()
            .all(|(_, v)| v.signum().is_ge() && v.value_cmp(&Real::one()).is_le());
        in_range && self.eval(&Real::zero()) == Real::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tent_values() {
        let t = BumpFunction::tent(Real::ratio(1, 2)).unwrap();
        assert_eq!(t.eval(&Real::ratio(1, 4)), Real::ratio(1, 2));
        assert_eq!(t.eval(&Real::one()), Real::zero());
        assert_eq!(t.eval_f64(-0.25), 0.5);
        assert!(t.is_normalized());
        assert_eq!(t.support_radius(), Real::ratio(1, 2));
    }

    #[test]
    fn unnormalized_bump() {
        let b = BumpFunction::new(vec![(Real::integer(-1), Real::zero()), (Real::zero(), Real::integer(2)), (Real::one(), Real::zero())])
            .unwrap();
        assert!(!b.is_normalized());
    }
}
