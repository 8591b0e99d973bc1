use serde::Serialize;

use super::sandwich::{riemann_sandwich, RiemannSandwich};
use crate::cps::{Scheme, Window};
use crate::error::{Error, Result};
use crate::groups::{SetDescriptor, SpaceDescriptor, VanHoveSpec};
use crate::measures::{discrepancy_set, mean_estimate, uniform_upper_density, DensityEstimate, MeanEstimate, PointMeasure};
use crate::meyer::PointSet;
use crate::numeric::Real;

/// Witness that `δ_Λ` is generalized almost periodic at tolerance `ε`:
/// `0 ≤ μ_ε ≤ δ_Λ ≤ ν_ε ≤ δ_Γ` with `M(ν_ε − μ_ε) ≤ D_S ∫(g − f) ≤ ε`.
///
/// The approximation of an arbitrary strongly almost periodic measure by
/// such a pair is this certificate followed by `t_operator`: `f` and `g` of
/// the sandwich are the two continuous functions it asks for.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub eps: Real,
    #[serde(skip)]
    pub mu_eps: PointMeasure,
    #[serde(skip)]
    pub nu_eps: PointMeasure,
    #[serde(skip)]
    pub lambda: PointSet,
    /// `Γ = ⋏(C)` for the compact `C` below.
    #[serde(skip)]
    pub gamma: PointSet,
    pub enclosing: SetDescriptor,
    pub certified_bound: Real,
    pub empirical_mean_gap: MeanEstimate,
    pub empirical_discrepancy_density: DensityEstimate,
    pub ordering_holds: bool,
    pub sandwich: RiemannSandwich,
}

/// Compact JSON summary of a certificate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub eps: f64,
    pub certified_bound: f64,
    pub empirical_mean_gap: f64,
    pub discrepancy_density: f64,
    pub horizon: u64,
    pub ordering_holds: bool,
    pub sandwich_breakpoints: Vec<f64>,
}

impl Certificate {
    pub fn report(&self) -> CertificateReport {
        CertificateReport {
            eps: self.eps.to_f64(),
            certified_bound: self.certified_bound.to_f64(),
            empirical_mean_gap: self.empirical_mean_gap.value,
            discrepancy_density: self.empirical_discrepancy_density.value,
            horizon: self.empirical_mean_gap.horizon,
            ordering_holds: self.ordering_holds,
            sandwich_breakpoints: self.sandwich.breakpoints().iter().map(Real::to_f64).collect(),
        }
    }
}

/// Largest `k/10^9` not above `x`.
fn rational_floor(x: Real) -> Real {
    const SCALE: i64 = 1_000_000_000;
    Real::ratio((x * Real::integer(SCALE)).floor() as i128, SCALE as i128)
}

/// `μ ≤ δ_Λ ≤ ν ≤ δ_Γ` atom by atom, exact.
pub fn check_ordering(mu: &PointMeasure, nu: &PointMeasure, lambda: &PointSet, gamma: &PointSet) -> bool {
    let zero = Real::zero();
    let one = Real::one();
    let in_gamma = |x: &Real| gamma.contains(x);
    if !mu.atoms().iter().chain(nu.atoms()).all(|(x, _)| in_gamma(x)) || !lambda.points().iter().all(in_gamma) {
        return false;
    }
    gamma.points().iter().all(|x| {
        let m = mu.weight_at(x);
        let n = nu.weight_at(x);
        let l = if lambda.contains(x) { one } else { zero };
        m.im.is_zero()
            && n.im.is_zero()
            && m.re.value_cmp(&zero).is_ge()
            && m.re.value_cmp(&l).is_le()
            && l.value_cmp(&n.re).is_le()
            && n.re.value_cmp(&one).is_le()
    })
}

/// Builds `μ_ε = Ω(f)` and `ν_ε = Ω(g)` on `patch` from a sandwich of the
/// window with `∫(g − f) ≤ ε / (2 D_S)`, so that the certified bound is at
/// most `ε/2` and the discrepancy set, whose internal measure is `3/2` of the
/// gap, has density below `ε`.
///
/// `patch` must contain `A_{n_max}` of `v`.
pub fn gap_certificate(
    scheme: &Scheme,
    w: &Window,
    eps: &Real,
    patch: &SetDescriptor,
    v: &VanHoveSpec,
    n_max: u64,
) -> Result<Certificate> {
    if !w.is_regular() {
        return Err(Error::Precondition(format!(
            "window {:?} is not regular (nonempty interior: {}, compact closure: {})",
            w.descriptor(),
            w.interior_nonempty(),
            w.closure_compact()
        )));
    }
    if eps.signum().is_le() || !eps.is_finite() {
        return Err(Error::InvalidInput(format!("eps must be positive and finite, got {eps}")));
    }
    let d_s = scheme.density_constant();
    let eps_internal = rational_floor(*eps / (Real::integer(2) * d_s));
    if eps_internal.signum().is_le() {
        return Err(Error::InvalidInput(format!("eps {eps} is too small to certify")));
    }
    let sandwich = riemann_sandwich(w, &eps_internal)?;
    let certified_bound = d_s * sandwich.gap_integral;
    if certified_bound.value_cmp(eps).is_gt() {
        return Err(Error::Precondition(format!("certified bound {certified_bound} exceeds eps {eps}")));
    }
    let enclosing = match scheme.internal_space() {
        SpaceDescriptor::EuclideanLine => {
            let Some(&[(a, b)]) = w.descriptor().hull()?.intervals_slice() else {
                unreachable!("nonempty bounded line set")
            };
            let widen = Real::one().max(sandwich.margin * Real::integer(2));
            SetDescriptor::interval(a - widen, b + widen)
        }
        space => SetDescriptor::whole(space)?,
    };
    let mu = scheme.omega_comb(&sandwich.lower, patch)?;
    let nu = scheme.omega_comb(&sandwich.upper, patch)?;
    let lambda = scheme.cut_and_project(w.descriptor(), patch)?.to_point_set()?;
    let gamma = scheme.cut_and_project(&enclosing, patch)?.to_point_set()?;
    let ordering_holds = check_ordering(&mu, &nu, &lambda, &gamma);
    let difference = nu.linear_combination(Real::one(), &mu, -Real::one())?;
    let empirical_mean_gap = mean_estimate(&difference, v, n_max, &[])?;
    let empirical_discrepancy_density = uniform_upper_density(&discrepancy_set(&mu, &nu)?.set, v, n_max)?;
    Ok(Certificate {
        eps: *eps,
        mu_eps: mu,
        nu_eps: nu,
        lambda,
        gamma,
        enclosing,
        certified_bound,
        empirical_mean_gap,
        empirical_discrepancy_density,
        ordering_holds,
        sandwich,
    })
}
