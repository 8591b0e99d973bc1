//! Weighted Dirac combs on patches and their van Hove averages.
//!
//! Limits are never claimed: means, densities and almost periods are
//! reported together with the horizon they were computed at.

mod bump;
mod discrepancy;
mod mean;
mod periods;
mod point_measure;

pub use bump::BumpFunction;
pub use discrepancy::{discrepancy_set, Discrepancy, WEIGHT_TOLERANCE};
pub(crate) use mean::line_hull;
pub use mean::{
    horizon_schedule, mean_estimate, sample_smoothed, smooth, uniform_upper_density,
    uniform_upper_density_with_tail, DensityEstimate, MeanEstimate, MeanSample, SampledFunction, Smoothed,
    DEFAULT_TAIL_FRACTION,
};
pub use periods::{almost_periods, AlmostPeriods};
pub use point_measure::PointMeasure;
