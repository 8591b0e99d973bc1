use super::PointMeasure;
use crate::error::Result;
use crate::meyer::PointSet;
use crate::numeric::{Real, Weight};

/// Weights closer than this are equal when either is a float.
pub const WEIGHT_TOLERANCE: f64 = 1e-12;

fn parts_differ(a: &Real, b: &Real) -> bool {
    if a.is_exact() && b.is_exact() {
        !a.value_cmp(b).is_eq()
    } else {
        (a.to_f64() - b.to_f64()).abs() > WEIGHT_TOLERANCE
    }
}

pub(crate) fn weights_differ(a: &Weight, b: &Weight) -> bool {
    parts_differ(&a.re, &b.re) || parts_differ(&a.im, &b.im)
}

/// `{x : μ({x}) ≠ ν({x})}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub set: PointSet,
    /// The patches differed and the comparison was restricted to their
    /// intersection.
    pub restricted: bool,
}

pub fn discrepancy_set(mu: &PointMeasure, nu: &PointMeasure) -> Result<Discrepancy> {
    let restricted = mu.patch() != nu.patch();
    let patch = mu.patch().intersection(nu.patch())?;
    let space = patch.space().clone();
    let mut positions: Vec<Real> = Vec::new();
    for (x, _) in mu.atoms().iter().chain(nu.atoms()) {
        if !patch.contains(&crate::meyer::point_set::element_on(&space, x)?)? {
            continue;
        }
        if weights_differ(&mu.weight_at(x), &nu.weight_at(x)) {
            positions.push(*x);
        }
    }
    Ok(Discrepancy { set: PointSet::new(positions, patch)?, restricted })
}
