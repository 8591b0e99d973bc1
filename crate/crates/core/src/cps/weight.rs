use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{residue, GroupElement, SetDescriptor, SpaceDescriptor};
use crate::numeric::Real;

/// Value of a locally constant function on one residue class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassValue {
    pub residue: u64,
    pub level: u32,
    pub value: Real,
}

/// Compactly supported weight functions on the internal space whose
/// integrals are exact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WeightFunction {
    Zero { space: SpaceDescriptor },
    Indicator { set: SetDescriptor },
    /// Linear interpolation between strictly increasing knots on
    /// `[x_0, x_last]`, zero outside.
    PiecewiseLinear { knots: Vec<(Real, Real)> },
    /// Constant on each of a disjoint family of residue classes of `Z_p`,
    /// or on single elements of `Z/mZ` (level ignored), zero elsewhere.
    LocallyConstant { space: SpaceDescriptor, classes: Vec<ClassValue> },
    Tensor { left: Box<WeightFunction>, right: Box<WeightFunction> },
    Sum { terms: Vec<WeightFunction> },
}

/// Closed region outside which a weight function vanishes, coarse enough to
/// bound lattice enumeration.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum StarHull {
    Empty,
    Line(Real, Real),
    Anywhere,
    Pair(Box<StarHull>, Box<StarHull>),
}

impl StarHull {
    pub(crate) fn of_set(set: &SetDescriptor) -> Result<Self> {
        if set.is_empty() {
            return Ok(StarHull::Empty);
        }
        if !set.is_bounded() {
            return Err(Error::InvalidInput("windows must be relatively compact".into()));
        }
        if let Some(v) = set.intervals_slice() {
            return Ok(StarHull::Line(v[0].0, v[v.len() - 1].1));
        }
        if let Some(boxes) = set.boxes() {
            let mut acc = StarHull::Empty;
            for (l, r) in boxes {
                acc = acc.union(StarHull::Pair(Box::new(Self::of_set(l)?), Box::new(Self::of_set(r)?)));
            }
            return Ok(acc);
        }
        Ok(StarHull::Anywhere)
    }

    fn union(self, other: StarHull) -> StarHull {
        match (self, other) {
            (StarHull::Empty, x) | (x, StarHull::Empty) => x,
            (StarHull::Line(a, b), StarHull::Line(c, d)) => StarHull::Line(a.min(c), b.max(d)),
            (StarHull::Pair(a, b), StarHull::Pair(c, d)) => {
                StarHull::Pair(Box::new(a.union(*c)), Box::new(b.union(*d)))
            }
            _ => StarHull::Anywhere,
        }
    }
}

impl WeightFunction {
    pub fn zero(space: SpaceDescriptor) -> Self {
        WeightFunction::Zero { space }
    }

    pub fn indicator(set: SetDescriptor) -> Self {
        WeightFunction::Indicator { set }
    }

    pub fn piecewise_linear(knots: Vec<(Real, Real)>) -> Result<Self> {
        let h = WeightFunction::PiecewiseLinear { knots };
        h.validate()?;
        Ok(h)
    }

    /// Tent of height one at `center`, vanishing outside `center ± half_width`.
    pub fn tent(center: Real, half_width: Real) -> Result<Self> {
        Self::piecewise_linear(vec![
            (center - half_width, Real::zero()),
            (center, Real::one()),
            (center + half_width, Real::zero()),
        ])
    }

    pub fn locally_constant(space: SpaceDescriptor, classes: Vec<ClassValue>) -> Result<Self> {
        let h = WeightFunction::LocallyConstant { space, classes };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WeightFunction::Zero { space } => space.validate(),
            WeightFunction::Indicator { set } => {
                if set.is_bounded() {
                    Ok(())
                } else {
                    Err(Error::InvalidInput("indicator weights need a bounded set".into()))
                }
            }
            WeightFunction::PiecewiseLinear { knots } => {
                if knots.len() < 2 {
                    return Err(Error::InvalidInput("a piecewise-linear weight needs two knots".into()));
                }
                if knots.iter().any(|(x, v)| !x.is_finite() || !v.is_finite()) {
                    return Err(Error::InvalidInput("knots must be finite".into()));
                }
                if knots.windows(2).any(|w| !w[0].0.value_cmp(&w[1].0).is_lt()) {
                    return Err(Error::InvalidInput("knots must be strictly increasing".into()));
                }
                Ok(())
            }
            WeightFunction::LocallyConstant { space, classes } => {
                let sets: Vec<SetDescriptor> = classes
                    .iter()
                    .map(|c| class_set(space, c))
                    .collect::<Result<_>>()?;
                let mut union = SetDescriptor::empty(space.clone());
                let mut total = Real::zero();
                for s in &sets {
                    union = union.union(s)?;
                    total = total + s.haar_measure()?;
                }
                if union.haar_measure()? != total {
                    return Err(Error::InvalidInput("locally constant classes overlap".into()));
                }
                Ok(())
            }
            WeightFunction::Tensor { left, right } => {
                SpaceDescriptor::product(left.space(), right.space())?;
                left.validate()?;
                right.validate()
            }
            WeightFunction::Sum { terms } => {
                let Some(first) = terms.first() else {
                    return Err(Error::InvalidInput("empty sum; use the zero weight".into()));
                };
                for t in terms {
                    t.validate()?;
                    if t.space() != first.space() {
                        return Err(Error::DomainMismatch("summands live on different spaces".into()));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn space(&self) -> SpaceDescriptor {
        match self {
            WeightFunction::Zero { space } | WeightFunction::LocallyConstant { space, .. } => space.clone(),
            WeightFunction::Indicator { set } => set.space().clone(),
            WeightFunction::PiecewiseLinear { .. } => SpaceDescriptor::EuclideanLine,
            WeightFunction::Tensor { left, right } => {
                let (l, r) = (left.space(), right.space());
                if l == SpaceDescriptor::EuclideanLine && r == SpaceDescriptor::EuclideanLine {
                    SpaceDescriptor::EuclideanPlane
                } else {
                    SpaceDescriptor::Product { left: Box::new(l), right: Box::new(r) }
                }
            }
            WeightFunction::Sum { terms } => terms[0].space(),
        }
    }

    /// `h(y)`.
    pub fn eval(&self, y: &GroupElement) -> Result<Real> {
        Ok(match self {
            WeightFunction::Zero { .. } => Real::zero(),
            WeightFunction::Indicator { set } => {
                if set.contains(y)? {
                    Real::one()
                } else {
                    Real::zero()
                }
            }
            WeightFunction::PiecewiseLinear { knots } => match y {
                GroupElement::Real(t) => eval_pl(knots, t),
                _ => return Err(Error::DomainMismatch(format!("{y} is not a real number"))),
            },
            WeightFunction::LocallyConstant { space, classes } => {
                if !space.contains_element(y) {
                    return Err(Error::DomainMismatch(format!("{y} is not in {space:?}")));
                }
                let GroupElement::Residue(r) = y else { unreachable!() };
                classes
                    .iter()
                    .find(|c| class_contains(space, c, *r))
                    .map(|c| c.value)
                    .unwrap_or_else(Real::zero)
            }
            WeightFunction::Tensor { left, right } => match y {
                GroupElement::Pair(a, b) => left.eval(a)? * right.eval(b)?,
                _ => return Err(Error::DomainMismatch(format!("{y} is not a pair"))),
            },
            WeightFunction::Sum { terms } => {
                let mut acc = Real::zero();
                for t in terms {
                    acc = acc + t.eval(y)?;
                }
                acc
            }
        })
    }

    /// `∫ h dθ_H`, exact when the data are.
    pub fn integral(&self) -> Result<Real> {
        Ok(match self {
            WeightFunction::Zero { .. } => Real::zero(),
            WeightFunction::Indicator { set } => set.haar_measure()?,
            WeightFunction::PiecewiseLinear { knots } => knots
                .windows(2)
                .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) * Real::ratio(1, 2))
                .sum(),
            WeightFunction::LocallyConstant { space, classes } => {
                let mut acc = Real::zero();
                for c in classes {
                    acc = acc + c.value * class_set(space, c)?.haar_measure()?;
                }
                acc
            }
            WeightFunction::Tensor { left, right } => left.integral()? * right.integral()?,
            WeightFunction::Sum { terms } => {
                let mut acc = Real::zero();
                for t in terms {
                    acc = acc + t.integral()?;
                }
                acc
            }
        })
    }

    pub(crate) fn star_hull(&self) -> Result<StarHull> {
        Ok(match self {
            WeightFunction::Zero { .. } => StarHull::Empty,
            WeightFunction::Indicator { set } => StarHull::of_set(set)?,
            WeightFunction::PiecewiseLinear { knots } => StarHull::Line(knots[0].0, knots[knots.len() - 1].0),
            WeightFunction::LocallyConstant { classes, .. } => {
                if classes.is_empty() {
                    StarHull::Empty
                } else {
                    StarHull::Anywhere
                }
            }
            WeightFunction::Tensor { left, right } => match (left.star_hull()?, right.star_hull()?) {
                (StarHull::Empty, _) | (_, StarHull::Empty) => StarHull::Empty,
                (l, r) => StarHull::Pair(Box::new(l), Box::new(r)),
            },
            WeightFunction::Sum { terms } => {
                let mut acc = StarHull::Empty;
                for t in terms {
                    acc = acc.union(t.star_hull()?);
                }
                acc
            }
        })
    }

    /// Breakpoints of a weight on the line (knots, or indicator endpoints).
    pub fn breakpoints(&self) -> Vec<Real> {
        match self {
            WeightFunction::PiecewiseLinear { knots } => knots.iter().map(|k| k.0).collect(),
            WeightFunction::Indicator { set } => set.boundary_points(),
            WeightFunction::Sum { terms } => {
                let mut v: Vec<Real> = terms.iter().flat_map(|t| t.breakpoints()).collect();
                v.sort_by(|a, b| a.value_cmp(b));
                v.dedup_by(|a, b| a.value_cmp(b).is_eq());
                v
            }
            _ => vec![],
        }
    }
}

pub(crate) fn eval_pl(knots: &[(Real, Real)], t: &Real) -> Real {
    let first = &knots[0];
    let last = &knots[knots.len() - 1];
    if t.value_cmp(&first.0).is_lt() || t.value_cmp(&last.0).is_gt() {
        return Real::zero();
    }
    let i = knots.partition_point(|(x, _)| x.value_cmp(t).is_le());
    if i == knots.len() {
        return last.1;
    }
    let (x0, v0) = knots[i - 1];
    let (x1, v1) = knots[i];
    if t.value_cmp(&x0).is_eq() {
        return v0;
    }
    v0 + (v1 - v0) * ((*t - x0) / (x1 - x0))
}

fn class_set(space: &SpaceDescriptor, c: &ClassValue) -> Result<SetDescriptor> {
    match space {
        SpaceDescriptor::PAdic { .. } => SetDescriptor::residue_classes(space.clone(), &[(c.residue, c.level)]),
        SpaceDescriptor::Cyclic { .. } => SetDescriptor::elements(space.clone(), [c.residue]),
        other => Err(Error::DomainMismatch(format!("locally constant weights live on Z_p or Z/mZ, not {other:?}"))),
    }
}

fn class_contains(space: &SpaceDescriptor, c: &ClassValue, r: u64) -> bool {
    match space {
        SpaceDescriptor::PAdic { p, .. } => residue::contains(*p, &[(c.residue, c.level)], r),
        _ => r == c.residue % space.modulus().unwrap_or(1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tent_evaluation_and_integral() {
        let h = WeightFunction::tent(Real::ratio(1, 2), Real::ratio(1, 2)).unwrap();
        let star = GroupElement::Real(Real::Exact("3/2-1/2*sqrt(5)".parse().unwrap()));
        let v = h.eval(&star).unwrap();
        assert!((v.to_f64() - 0.763_932_022_500_210_3).abs() < 1e-15);
        assert!(v.is_exact());
        assert_eq!(h.integral().unwrap(), Real::ratio(1, 2));
        assert_eq!(h.eval(&GroupElement::Real(Real::integer(2))).unwrap(), Real::zero());
    }

    #[test]
    fn locally_constant_integral() {
        let space = SpaceDescriptor::padic(3, 4).unwrap();
        let h = WeightFunction::locally_constant(
            space.clone(),
            vec![
                ClassValue { residue: 1, level: 1, value: Real::integer(2) },
                ClassValue { residue: 2, level: 2, value: Real::integer(9) },
            ],
        )
        .unwrap();
        assert_eq!(h.integral().unwrap(), Real::ratio(2, 3) + Real::integer(1));
        assert_eq!(h.eval(&GroupElement::Residue(4)).unwrap(), Real::integer(2));
        assert_eq!(h.eval(&GroupElement::Residue(11)).unwrap(), Real::integer(9));
        assert_eq!(h.eval(&GroupElement::Residue(5)).unwrap(), Real::zero());
        let overlapping = WeightFunction::locally_constant(
            space,
            vec![
                ClassValue { residue: 1, level: 1, value: Real::one() },
                ClassValue { residue: 4, level: 2, value: Real::one() },
            ],
        );
        assert!(overlapping.is_err());
    }

    #[test]
    fn tensor_weight() {
        let l = WeightFunction::indicator(SetDescriptor::interval(0, 2));
        let r = WeightFunction::tent(Real::zero(), Real::one()).unwrap();
        let h = WeightFunction::Tensor { left: Box::new(l), right: Box::new(r) };
        assert_eq!(h.space(), SpaceDescriptor::EuclideanPlane);
        assert_eq!(h.integral().unwrap(), Real::integer(2));
    }

    #[test]
    fn knots_must_increase() {
        assert!(WeightFunction::piecewise_linear(vec![(Real::one(), Real::one()), (Real::zero(), Real::zero())]).is_err());
    }
}
