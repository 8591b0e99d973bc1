use crate::error::{Error, Result};
use crate::groups::{GroupElement, SetDescriptor, SpaceDescriptor};
use crate::numeric::Real;

/// A finite, strictly increasing point set on the line or the integers,
/// together with the patch it is known to be complete on.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    points: Vec<Real>,
    patch: SetDescriptor,
}

pub(crate) fn element_on(space: &SpaceDescriptor, x: &Real) -> Result<GroupElement> {
    match space {
        SpaceDescriptor::EuclideanLine => Ok(GroupElement::Real(*x)),
        SpaceDescriptor::Integers => x
            .as_integer()
            .map(GroupElement::Integer)
            .ok_or_else(|| Error::DomainMismatch(format!("{x} is not an integer"))),
        other => Err(Error::Unsupported(format!("point sets live on R or Z, not {other:?}"))),
    }
}

impl PointSet {
    /// Sorts and deduplicates; every point must lie in the patch.
    pub fn new(mut points: Vec<Real>, patch: SetDescriptor) -> Result<Self> {
        let space = patch.space().clone();
        for x in &points {
            if !patch.contains(&element_on(&space, x)?)? {
                return Err(Error::InvalidInput(format!("point {x} lies outside the patch")));
            }
        }
        points.sort_by(|a, b| a.value_cmp(b));
        points.dedup_by(|a, b| a.value_cmp(b).is_eq());
        Ok(Self { points, patch })
    }

    pub fn from_integers(points: impl IntoIterator<Item = i64>, patch: SetDescriptor) -> Result<Self> {
        Self::new(points.into_iter().map(Real::integer).collect(), patch)
    }

    /// `{n in Z : lo <= n <= hi}` restricted by a predicate.
    pub fn integers_where(lo: i64, hi: i64, keep: impl Fn(i64) -> bool) -> Self {
        let points = (lo..=hi).filter(|&n| keep(n)).map(Real::integer).collect();
        Self { points, patch: SetDescriptor::int_closed(lo, hi) }
    }

    /// Skips validation; callers guarantee order and containment.
    pub(crate) fn from_sorted(points: Vec<Real>, patch: SetDescriptor) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0].value_cmp(&w[1]).is_lt()));
        Self { points, patch }
    }

    pub fn points(&self) -> &[Real] {
        &self.points
    }

    pub fn patch(&self) -> &SetDescriptor {
        &self.patch
    }

    pub fn space(&self) -> &SpaceDescriptor {
        self.patch.space()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.points.iter().map(Real::to_f64).collect()
    }

    /// Integer coordinates, if every point is an integer.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.points.iter().map(Real::as_integer).collect()
    }

    pub fn contains(&self, x: &Real) -> bool {
        self.points.binary_search_by(|p| p.value_cmp(x)).is_ok()
    }

    /// Restriction to the part of the patch inside `[lo, hi]` (closed).
    pub fn restrict(&self, lo: &Real, hi: &Real) -> Result<Self> {
        let window = match self.space() {
            SpaceDescriptor::Integers => SetDescriptor::int_closed(lo.ceil(), hi.floor()),
            _ => SetDescriptor::interval(*lo, *hi),
        };
        let patch = self.patch.intersection(&window)?;
        let mut points: Vec<Real> = self
            .points
            .iter()
            .filter(|x| lo.value_cmp(x).is_le() && x.value_cmp(hi).is_le())
            .copied()
            .collect();
        if self.space() == &SpaceDescriptor::EuclideanLine {
            // The closed right end may fall outside the half-open patch.
            points.retain(|x| x.value_cmp(hi).is_lt());
        }
        Ok(Self { points, patch })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_deduplicated() {
        let ps = PointSet::from_integers([3, 1, 2, 3], SetDescriptor::int_closed(0, 5)).unwrap();
        assert_eq!(ps.to_integers().unwrap(), vec![1, 2, 3]);
        assert!(ps.contains(&Real::integer(2)));
    }

    #[test]
    fn points_outside_patch_are_rejected() {
        assert!(PointSet::from_integers([7], SetDescriptor::int_closed(0, 5)).is_err());
        let line = SetDescriptor::interval(0, 1);
        assert!(PointSet::new(vec![Real::one()], line).is_err());
    }
}
