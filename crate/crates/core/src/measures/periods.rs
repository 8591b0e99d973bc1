use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SampledFunction;
use crate::error::{Error, Result};

/// Grid shifts `t ∈ [0, horizon]` with `sup |f − f(· + t)| < ε` on a common
/// comparison range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlmostPeriods {
    pub periods: Vec<f64>,
    /// Largest gap between consecutive periods; equals the horizon when `0`
    /// is the only period found.
    pub max_gap: f64,
    pub eps: f64,
    pub horizon: f64,
    /// Number of samples each shift is compared on.
    pub compared: usize,
}

/// Shifts are multiples of the sampling pitch up to `horizon`; every shift
/// is compared on the first `len − horizon/pitch` samples, so all of them
/// see the same base range.
pub fn almost_periods(f: &SampledFunction, eps: f64, horizon: f64) -> Result<AlmostPeriods> {
    if f.pitch.is_nan() || f.pitch <= 0.0 || eps.is_nan() || eps <= 0.0 || horizon.is_nan() || horizon < 0.0 {
        return Err(Error::InvalidInput("need positive pitch and eps, nonnegative horizon".into()));
    }
    let shifts = (horizon / f.pitch).round() as usize;
    if shifts >= f.values.len() {
        return Err(Error::InvalidInput(format!(
            "horizon {horizon} exceeds the sampled range of {} samples at pitch {}",
            f.values.len(),
            f.pitch
        )));
    }
    let compared = f.values.len() - shifts;
    let v = &f.values;
    let hits: Vec<usize> = (0..=shifts)
        .into_par_iter()
        .filter(|&s| (0..compared).all(|i| (v[i + s] - v[i]).abs() < eps))
        .collect();
    let periods: Vec<f64> = hits.iter().map(|&s| s as f64 * f.pitch).collect();
    let max_gap = if hits.len() < 2 {
        horizon
    } else {
        hits.windows(2).map(|w| (w[1] - w[0]) as f64 * f.pitch).fold(0.0, f64::max)
    };
    Ok(AlmostPeriods { periods, max_gap, eps, horizon, compared })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_function_has_every_shift() {
        let f = SampledFunction { start: 0.0, pitch: 0.5, values: vec![0.0; 100] };
        let p = almost_periods(&f, 1e-3, 10.0).unwrap();
        assert_eq!(p.periods.len(), 21);
        assert_eq!(p.max_gap, 0.5);
    }

    #[test]
    fn periodic_samples() {
        let values = (0..400).map(|i| ((i % 8) as f64 - 3.5).abs()).collect();
        let f = SampledFunction { start: 0.0, pitch: 0.25, values };
        let p = almost_periods(&f, 1e-9, 20.0).unwrap();
        assert_eq!(p.periods, (0..=10).map(|k| 2.0 * k as f64).collect::<Vec<_>>());
        assert_eq!(p.max_gap, 2.0);
    }

    #[test]
    fn horizon_must_fit() {
        let f = SampledFunction { start: 0.0, pitch: 1.0, values: vec![0.0; 10] };
        assert!(almost_periods(&f, 0.1, 10.0).is_err());
    }
}
