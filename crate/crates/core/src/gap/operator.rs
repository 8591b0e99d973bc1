use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{line_hull, smooth, BumpFunction, PointMeasure};
use crate::meyer::{min_gap, PointSet};
use crate::numeric::{Real, Weight};

/// Default smoothing function for `𝒯`: a tent of half-width `0.45·min_gap(Γ)`,
/// so every translate of its support meets `Γ` in at most one point.
pub fn default_psi(gamma: &PointSet) -> Result<BumpFunction> {
    BumpFunction::tent(min_gap(gamma)? * Real::ratio(9, 20))
}

/// `𝒯(μ) = (ψ * μ)·ω`: weight `(ψ*μ)(x)·ω({x})` at every atom `x` of `ω`.
///
/// Needs `0 ≤ ψ ≤ 1`, `ψ(0) = 1` and a support radius below half the
/// minimal gap of `supp ω`. Atoms within the support radius of the patch edge
/// may miss contributions; [`interior_patch`] gives the part where the
/// result is complete.
pub fn t_operator(psi: &BumpFunction, omega: &PointMeasure, mu: &PointMeasure) -> Result<PointMeasure> {
    if !psi.is_normalized() {
        return Err(Error::Precondition("psi must satisfy 0 <= psi <= 1 and psi(0) = 1".into()));
    }
    if omega.patch().space() != mu.patch().space() {
        return Err(Error::DomainMismatch("omega and mu live on different spaces".into()));
    }
    let support = omega.support();
    if support.len() >= 2 {
        let gap = min_gap(&support)?;
        let radius = psi.support_radius();
        if (radius * Real::integer(2)).value_cmp(&gap).is_ge() {
            return Err(Error::Precondition(format!(
                "psi has support radius {radius}, which must be below half the minimal gap {gap} of supp(omega)"
            )));
        }
    }
    let atoms = omega
        .atoms()
        .par_iter()
        .map(|(x, w)| Ok((*x, smooth(psi, mu, x)?.value * *w)))
        .collect::<Result<Vec<(Real, Weight)>>>()?;
    Ok(PointMeasure::from_sorted(atoms, omega.patch().clone()))
}

/// `[lo + r, hi − r]` for the closed hull `[lo, hi]` of the patch.
pub fn interior_patch(mu: &PointMeasure, psi: &BumpFunction) -> Result<(Real, Real)> {
    let (lo, hi) = line_hull(mu.patch())?;
    let r = psi.support_radius();
    Ok((lo + r, hi - r))
}
