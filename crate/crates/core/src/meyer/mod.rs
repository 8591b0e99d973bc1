//! Delone and Meyer properties of point sets, and the `Λ_θ` / `M_θ`
//! constructions: `Λ_θ` is a Meyer set of uniform density zero, and
//! `Z \ M_θ` is a relatively dense subset of `Z` that is not a model set.
//!
//! `θ` defaults to `π`. Its transcendence, which the construction needs, is
//! taken on faith: at the scales used here no digit relation can collide in
//! floating point, but that is not a proof.

mod delone;
pub(crate) mod point_set;
mod theta;
mod verdict;

pub use delone::{covering_radius, discreteness_radius, min_gap};
pub use point_set::PointSet;
pub use theta::{
    density_bound_check, digit_difference, lambda_theta, m_theta, m_theta_from, DensityBound, ThetaElement, ThetaSet,
    MIN_THETA,
};
pub use verdict::{meyer_test, MeyerClass, MeyerVerdict, DEFAULT_F_SEARCH_BOUND, MAX_TRIPLES};
