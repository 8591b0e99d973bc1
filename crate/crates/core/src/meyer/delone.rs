use crate::error::{Error, Result};
use crate::meyer::PointSet;
use crate::numeric::Real;

fn gaps(ps: &PointSet) -> impl Iterator<Item = Real> + '_ {
    ps.points().windows(2).map(|w| w[1] - w[0])
}

/// Smallest distance between two points; an open interval shorter than
/// this contains at most one point.
pub fn min_gap(ps: &PointSet) -> Result<Real> {
    gaps(ps)
        .min_by(|a, b| a.value_cmp(b))
        .ok_or_else(|| Error::InvalidInput("min_gap needs at least two points".into()))
}

/// Half the minimal gap: the largest radius `r` such that the balls of
/// radius `r` around the points are disjoint. Infinite for fewer than two
/// points.
pub fn discreteness_radius(ps: &PointSet) -> Real {
    match min_gap(ps) {
        Ok(g) => g * Real::ratio(1, 2),
        Err(_) => Real::infinity(),
    }
}

/// Half the maximal gap between consecutive points (edges of the patch are
/// not counted).
pub fn covering_radius(ps: &PointSet) -> Result<Real> {
    if ps.is_empty() {
        return Err(Error::InvalidInput("covering radius of an empty set".into()));
    }
    Ok(gaps(ps).max_by(|a, b| a.value_cmp(b)).map(|g| g * Real::ratio(1, 2)).unwrap_or_else(Real::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::SetDescriptor;

    #[test]
    fn radii_of_simple_sets() {
        let z = PointSet::integers_where(-10, 10, |_| true);
        assert_eq!(discreteness_radius(&z), Real::ratio(1, 2));
        assert_eq!(covering_radius(&z).unwrap(), Real::ratio(1, 2));
        let odd = PointSet::new(
            vec![Real::zero(), Real::ratio(1, 10), Real::one()],
            SetDescriptor::interval(0, 2),
        )
        .unwrap();
        assert_eq!(discreteness_radius(&odd), Real::ratio(1, 20));
        assert_eq!(min_gap(&PointSet::integers_where(-20, 20, |n| n.rem_euclid(5) == 2)).unwrap(), Real::integer(5));
    }

    #[test]
    fn degenerate_sets() {
        let one = PointSet::integers_where(0, 0, |_| true);
        assert!(min_gap(&one).is_err());
        assert_eq!(discreteness_radius(&one), Real::infinity());
        let none = PointSet::integers_where(0, 5, |_| false);
        assert!(covering_radius(&none).is_err());
    }
}
