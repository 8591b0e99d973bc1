use serde::Serialize;

use crate::cps::{WeightFunction, Window};
use crate::error::{Error, Result};
use crate::groups::SpaceDescriptor;
use crate::numeric::Real;

/// Continuous compactly supported `f ≤ 1_W ≤ g` with `∫(g − f) ≤ ε`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RiemannSandwich {
    pub lower: WeightFunction,
    pub upper: WeightFunction,
    pub gap_integral: Real,
    pub target: Window,
    /// Width of each trapezoid flank; zero for clopen windows.
    pub margin: Real,
}

impl RiemannSandwich {
    /// All knots of both trapezoid chains, sorted.
    pub fn breakpoints(&self) -> Vec<Real> {
        let mut v = self.lower.breakpoints();
        v.extend(self.upper.breakpoints());
        v.sort_by(|a, b| a.value_cmp(b));
        v.dedup_by(|a, b| a.value_cmp(b).is_eq());
        v
    }
}

/// Trapezoids with flank `δ`: `g` rises on `[a−δ, a]`, `f` on `[a+δ, a+2δ]`,
/// so each interval contributes `4δ` to the gap. `δ = ε/(4·#intervals)`,
/// shrunk when intervals or the gaps between them are too short to hold the
/// flanks.
///
/// Residue-class and finite-group windows are clopen and get `f = g = 1_W`.
pub fn riemann_sandwich(w: &Window, eps: &Real) -> Result<RiemannSandwich> {
    if eps.signum().is_le() || !eps.is_finite() {
        return Err(Error::InvalidInput(format!("eps must be positive and finite, got {eps}")));
    }
    let set = w.descriptor();
    let space = set.space().clone();
    if set.is_empty() {
        let zero = WeightFunction::zero(space);
        return Ok(RiemannSandwich {
            lower: zero.clone(),
            upper: zero,
            gap_integral: Real::zero(),
            target: w.clone(),
            margin: Real::zero(),
        });
    }
    match space {
        SpaceDescriptor::EuclideanLine => {}
        SpaceDescriptor::PAdic { .. } | SpaceDescriptor::Cyclic { .. } => {
            let h = WeightFunction::indicator(set.clone());
            return Ok(RiemannSandwich {
                lower: h.clone(),
                upper: h,
                gap_integral: Real::zero(),
                target: w.clone(),
                margin: Real::zero(),
            });
        }
        other => return Err(Error::Unsupported(format!("sandwiches are built on R and Z_p, not {other:?}"))),
    }
    let intervals = set.intervals_slice().expect("line set");
    if intervals.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
        return Err(Error::InvalidInput("the window must be bounded".into()));
    }
    let mut delta = *eps / Real::integer(4 * intervals.len() as i64);
    for (a, b) in intervals {
        delta = delta.min((*b - *a) / Real::integer(5));
    }
    for pair in intervals.windows(2) {
        delta = delta.min((pair[1].0 - pair[0].1) / Real::integer(4));
    }
    for (a, b) in intervals {
        for e in [a, b] {
            if !e.is_exact() && delta.to_f64() < 1e-12 * e.to_f64().abs().max(1.0) {
                return Err(Error::InvalidInput(format!(
                    "margin {delta} is not representable next to the float endpoint {e}"
                )));
            }
        }
    }
    let (zero, one) = (Real::zero(), Real::one());
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for &(a, b) in intervals {
        upper.extend([(a - delta, zero), (a, one), (b, one), (b + delta, zero)]);
        lower.extend([(a + delta, zero), (a + delta + delta, one), (b - delta - delta, one), (b - delta, zero)]);
    }
    let lower = WeightFunction::piecewise_linear(lower)?;
    let upper = WeightFunction::piecewise_linear(upper)?;
    let gap_integral = upper.integral()? - lower.integral()?;
    Ok(RiemannSandwich { lower, upper, gap_integral, target: w.clone(), margin: delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupElement, SetDescriptor};

    #[test]
    fn unit_interval() {
        let w = Window::new(SetDescriptor::interval(0, 1));
        let s = riemann_sandwich(&w, &Real::ratio(1, 10)).unwrap();
        assert_eq!(s.margin, Real::ratio(1, 40));
        assert_eq!(s.gap_integral, Real::ratio(1, 10));
        let f = |x: Real| s.lower.eval(&GroupElement::Real(x)).unwrap();
        let g = |x: Real| s.upper.eval(&GroupElement::Real(x)).unwrap();
        assert_eq!(f(Real::ratio(1, 40)), Real::zero());
        assert_eq!(f(Real::ratio(1, 20)), Real::one());
        assert_eq!(f(Real::ratio(19, 20)), Real::one());
        assert_eq!(g(Real::zero()), Real::one());
        assert_eq!(g(Real::ratio(-1, 40)), Real::zero());
        assert_eq!(g(Real::ratio(41, 40)), Real::zero());
    }

    #[test]
    fn empty_and_clopen_windows() {
        let s = riemann_sandwich(&Window::new(SetDescriptor::interval(1, 1)), &Real::one()).unwrap();
        assert!(s.gap_integral.is_zero());
        let class = SetDescriptor::residue_classes(SpaceDescriptor::padic(5, 6).unwrap(), &[(2, 1)]).unwrap();
        let s = riemann_sandwich(&Window::new(class), &Real::ratio(1, 1000)).unwrap();
        assert!(s.gap_integral.is_zero());
        assert_eq!(s.lower, s.upper);
    }

    #[test]
    fn close_intervals_shrink_the_margin() {
        let w = Window::new(SetDescriptor::intervals(vec![
            (Real::zero(), Real::one()),
            (Real::ratio(11, 10), Real::integer(2)),
        ]));
        let s = riemann_sandwich(&w, &Real::one()).unwrap();
        assert_eq!(s.margin, Real::ratio(1, 40));
        assert_eq!(s.gap_integral, Real::ratio(2, 10));
    }

    #[test]
    fn nonpositive_eps_is_refused() {
        let w = Window::new(SetDescriptor::interval(0, 1));
        assert!(riemann_sandwich(&w, &Real::zero()).is_err());
    }
}
