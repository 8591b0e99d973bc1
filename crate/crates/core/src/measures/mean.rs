use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BumpFunction, PointMeasure};
use crate::error::{Error, Result};
use crate::groups::{SetDescriptor, SpaceDescriptor, VanHoveSpec};
use crate::meyer::PointSet;
use crate::numeric::{Real, Weight};

/// `(φ * μ)(x)` and whether the patch cut off part of the convolution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Smoothed {
    pub value: Weight,
    pub truncated: bool,
}

/// Closed hull `[lo, hi]` of a one-dimensional patch.
pub(crate) fn line_hull(patch: &SetDescriptor) -> Result<(Real, Real)> {
    let hull = patch.hull()?;
    if let Some(&[(a, b)]) = hull.intervals_slice() {
        return Ok((a, b));
    }
    if let Some(&[(a, b)]) = hull.int_ranges_slice() {
        return Ok((Real::integer(a), Real::integer(b - 1)));
    }
    if patch.is_empty() {
        return Err(Error::InvalidInput("empty patch".into()));
    }
    Err(Error::Unsupported(format!("{:?} is not one-dimensional", patch.space())))
}

/// `Σ_t φ(x − t) w_t`, exact when the data are.
pub fn smooth(phi: &BumpFunction, mu: &PointMeasure, x: &Real) -> Result<Smoothed> {
    let (lo, hi) = phi.support();
    let (a, b) = (*x - hi, *x - lo);
    let atoms = mu.atoms();
    let start = atoms.partition_point(|(t, _)| t.value_cmp(&a).is_lt());
    let end = atoms.partition_point(|(t, _)| t.value_cmp(&b).is_le());
    let mut value = Weight::zero();
    for (t, w) in &atoms[start..end.max(start)] {
        value = value + w.scale(phi.eval(&(*x - *t)));
    }
    let (p0, p1) = line_hull(mu.patch())?;
    let truncated = a.value_cmp(&p0).is_lt() || b.value_cmp(&p1).is_gt();
    Ok(Smoothed { value, truncated })
}

/// Real part of `φ * μ` sampled at `start + i·pitch`, in floating point.
pub fn sample_smoothed(phi: &BumpFunction, mu: &PointMeasure, start: f64, pitch: f64, count: usize) -> SampledFunction {
    let (lo, hi) = phi.support();
    let (lo, hi) = (lo.to_f64(), hi.to_f64());
    let xs: Vec<f64> = mu.atoms().iter().map(|(t, _)| t.to_f64()).collect();
    let ws: Vec<f64> = mu.atoms().iter().map(|(_, w)| w.re.to_f64()).collect();
    let values = (0..count)
        .into_par_iter()
        .map(|i| {
            let x = start + i as f64 * pitch;
            let s = xs.partition_point(|&t| t < x - hi);
            let e = xs.partition_point(|&t| t <= x - lo);
            (s..e.max(s)).map(|j| phi.eval_f64(x - xs[j]) * ws[j]).sum()
        })
        .collect();
    SampledFunction { start, pitch, values }
}

/// Values of a function on the grid `start + i·pitch`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub start: f64,
    pub pitch: f64,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanSample {
    pub n: u64,
    /// `Re μ(x_0 + A_n) / |A_n|` for the first translate `x_0`.
    pub value: f64,
    /// Largest minus smallest value over all translates.
    pub spread: f64,
}

/// Horizon-indexed van Hove averages `μ(x + A_n) / |A_n|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub sequence: Vec<MeanSample>,
    pub value: f64,
    pub imag: f64,
    pub spread: f64,
    pub horizon: u64,
    pub translates: Vec<f64>,
}

/// `1, 2, 5, 10, 20, 50, …` below `n_max`, then `n_max`.
pub fn horizon_schedule(n_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut decade = 1u64;
    'outer: loop {
        for m in [1, 2, 5] {
            let n = decade.saturating_mul(m);
            if n >= n_max {
                break 'outer;
            }
            out.push(n);
        }
        decade = decade.saturating_mul(10);
    }
    out.push(n_max);
    out
}

fn mass_of(mu: &PointMeasure, set: &SetDescriptor) -> Weight {
    if let Some(v) = set.intervals_slice() {
        return v.iter().map(|(a, b)| mu.mass_in(a, b)).sum();
    }
    if let Some(v) = set.int_ranges_slice() {
        return v.iter().map(|&(a, b)| mu.mass_in(&Real::integer(a), &Real::integer(b))).sum();
    }
    Weight::zero()
}

fn check_one_dimensional(space: &SpaceDescriptor) -> Result<()> {
    match space {
        SpaceDescriptor::EuclideanLine | SpaceDescriptor::Integers => Ok(()),
        other => Err(Error::Unsupported(format!("averaging is implemented on R and Z, not {other:?}"))),
    }
}

/// Averages of `μ` over translates `x + A_n` of the van Hove sets.
///
/// `translates[0]` is the reported centre; an empty list means `[0]`.
pub fn mean_estimate(mu: &PointMeasure, v: &VanHoveSpec, n_max: u64, translates: &[Real]) -> Result<MeanEstimate> {
    check_one_dimensional(v.space())?;
    if mu.patch().space() != v.space() {
        return Err(Error::DomainMismatch("measure and van Hove sequence live in different spaces".into()));
    }
    let zero = [Real::zero()];
    let shifts = if translates.is_empty() { &zero[..] } else { translates };
    let space = v.space().clone();
    let elements = shifts
        .iter()
        .map(|x| crate::meyer::point_set::element_on(&space, x))
        .collect::<Result<Vec<_>>>()?;
    let outer = v.set_at(n_max)?;
    for e in &elements {
        let needed = outer.translate(e)?;
        if !needed.difference(mu.patch())?.is_empty() {
            let (lo, hi) = line_hull(&needed)?;
            return Err(Error::PatchTooSmall(format!("the patch must contain [{lo}, {hi}]")));
        }
    }
    let mut sequence = Vec::new();
    let mut last = (Weight::zero(), 0.0);
    for n in horizon_schedule(n_max) {
        let a = v.set_at(n)?;
        let volume = a.haar_measure()?;
        let values = elements
            .iter()
            .map(|e| Ok(mass_of(mu, &a.translate(e)?)))
            .collect::<Result<Vec<Weight>>>()?;
        let re: Vec<f64> = values.iter().map(|w| (w.re / volume).to_f64()).collect();
        let max = re.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = re.iter().copied().fold(f64::INFINITY, f64::min);
        sequence.push(MeanSample { n, value: re[0], spread: max - min });
        last = (values[0].scale(Real::one() / volume), max - min);
    }
    Ok(MeanEstimate {
        value: last.0.re.to_f64(),
        imag: last.0.im.to_f64(),
        spread: last.1,
        horizon: n_max,
        translates: shifts.iter().map(Real::to_f64).collect(),
        sequence,
    })
}

/// Finite-horizon estimate of `limsup_n sup_x card(Λ ∩ (x + A_n)) / |A_n|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    pub value: f64,
    pub horizon: u64,
    /// `(n, sup_x count / |A_n|)` over the tail range.
    pub per_n: Vec<(u64, f64)>,
}

/// Fraction of `n_max` covered by the tail range `[(1 - f) n_max, n_max]`
/// over which the supremum is maximized.
pub const DEFAULT_TAIL_FRACTION: f64 = 0.1;
const TAIL_SAMPLES: u64 = 10;

pub fn uniform_upper_density(ps: &PointSet, v: &VanHoveSpec, n_max: u64) -> Result<DensityEstimate> {
    uniform_upper_density_with_tail(ps, v, n_max, DEFAULT_TAIL_FRACTION)
}

/// The supremum over translates is exact: the count in a window of fixed
/// length only changes at positions where an end meets a point, so it is
/// enough to try windows whose left end sits on a point, plus the window
/// flush with the right end of the patch.
pub fn uniform_upper_density_with_tail(ps: &PointSet, v: &VanHoveSpec, n_max: u64, tail: f64) -> Result<DensityEstimate> {
    check_one_dimensional(v.space())?;
    if ps.space() != v.space() {
        return Err(Error::DomainMismatch("point set and van Hove sequence live in different spaces".into()));
    }
    if n_max == 0 || !(0.0..1.0).contains(&tail) {
        return Err(Error::InvalidInput("need n_max >= 1 and a tail fraction in [0, 1)".into()));
    }
    let first = ((n_max as f64) * (1.0 - tail)).ceil().max(1.0) as u64;
    let mut ns: Vec<u64> = (0..=TAIL_SAMPLES).map(|i| first + (n_max - first) * i / TAIL_SAMPLES).collect();
    ns.dedup();
    let (lo, hi) = line_hull(ps.patch())?;
    let per_n = ns
        .par_iter()
        .map(|&n| {
            let a = v.set_at(n)?;
            let volume = a.haar_measure()?.to_f64();
            let count = match ps.to_integers().filter(|_| *v.space() == SpaceDescriptor::Integers) {
                Some(pts) => max_count_integers(&pts, lo.as_integer().unwrap(), hi.as_integer().unwrap(), 2 * n as i64),
                None => max_count_line(ps.points(), lo, hi, Real::integer(2 * n as i64)),
            };
            match count {
                Some(c) => Ok((n, c as f64 / volume)),
                None => Err(Error::PatchTooSmall(format!(
                    "a translate of A_{n} does not fit in the patch [{lo}, {hi}]"
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let value = per_n.iter().map(|x| x.1).fold(0.0, f64::max);
    Ok(DensityEstimate { value, horizon: n_max, per_n })
}

/// Largest count in `{y, …, y + span}` with the window inside `[lo, hi]`.
fn max_count_integers(pts: &[i64], lo: i64, hi: i64, span: i64) -> Option<usize> {
    if hi - lo < span {
        return None;
    }
    let count_from = |y: i64| {
        let s = pts.partition_point(|&p| p < y);
        let e = pts.partition_point(|&p| p <= y + span);
        e - s
    };
    let mut best = count_from(hi - span);
    let mut j = 0;
    for (i, &p) in pts.iter().enumerate() {
        if p < lo || p + span > hi {
            continue;
        }
        j = j.max(i);
        while j < pts.len() && pts[j] <= p + span {
            j += 1;
        }
        best = best.max(j - i);
    }
    Some(best)
}

/// Largest count in `[y, y + span)` with the window inside `[lo, hi]`.
fn max_count_line(pts: &[Real], lo: Real, hi: Real, span: Real) -> Option<usize> {
    if (hi - lo).value_cmp(&span).is_lt() {
        return None;
    }
    let count_from = |y: Real| {
        let s = pts.partition_point(|p| p.value_cmp(&y).is_lt());
        let e = pts.partition_point(|p| p.value_cmp(&(y + span)).is_lt());
        e - s
    };
    let mut best = count_from(hi - span);
    let mut j = 0;
    for (i, p) in pts.iter().enumerate() {
        let end = *p + span;
        if p.value_cmp(&lo).is_lt() || end.value_cmp(&hi).is_gt() {
            continue;
        }
        j = j.max(i);
        while j < pts.len() && pts[j].value_cmp(&end).is_lt() {
            j += 1;
        }
        best = best.max(j - i);
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comb_of_integers(lo: i64, hi: i64, keep: impl Fn(i64) -> bool) -> PointMeasure {
        let patch = SetDescriptor::interval(lo, hi);
        let ps = PointSet::new((lo..hi).filter(|&n| keep(n)).map(Real::integer).collect(), patch).unwrap();
        PointMeasure::dirac_comb(&ps)
    }

    #[test]
    fn smoothing_examples() {
        let z = comb_of_integers(-100, 100, |_| true);
        let tent = BumpFunction::tent(Real::ratio(1, 2)).unwrap();
        let s = smooth(&tent, &z, &Real::ratio(1, 4)).unwrap();
        assert_eq!(s.value, Weight::real(Real::ratio(1, 2)));
        assert!(!s.truncated);
        let evens = comb_of_integers(-100, 100, |n| n % 2 == 0);
        let wide = BumpFunction::tent(Real::one()).unwrap();
        assert_eq!(smooth(&wide, &evens, &Real::one()).unwrap().value, Weight::zero());
        assert!(smooth(&wide, &evens, &Real::integer(-100)).unwrap().truncated);
    }

    #[test]
    fn mean_of_integer_comb() {
        let z = comb_of_integers(-200, 200, |_| true);
        let vh = VanHoveSpec::new(SpaceDescriptor::EuclideanLine).unwrap();
        let est = mean_estimate(&z, &vh, 100, &[Real::zero(), Real::ratio(1, 2)]).unwrap();
        assert_eq!(est.value, 1.0);
        assert!(est.spread <= 1.0 / 100.0);
        assert_eq!(est.sequence.last().unwrap().n, 100);
        let err = mean_estimate(&z, &vh, 300, &[]).unwrap_err();
        assert!(matches!(err, Error::PatchTooSmall(_)));
    }

    #[test]
    fn schedule_shape() {
        assert_eq!(horizon_schedule(100), vec![1, 2, 5, 10, 20, 50, 100]);
        assert_eq!(horizon_schedule(7), vec![1, 2, 5, 7]);
    }

    #[test]
    fn upper_density_of_progressions() {
        let vh = VanHoveSpec::new(SpaceDescriptor::Integers).unwrap();
        let z = PointSet::integers_where(-500, 500, |_| true);
        assert_eq!(uniform_upper_density(&z, &vh, 200).unwrap().value, 1.0);
        let five = PointSet::integers_where(-500, 500, |n| n.rem_euclid(5) == 2);
        let d = uniform_upper_density(&five, &vh, 200).unwrap().value;
        assert!((d - 0.2).abs() <= 1.0 / 200.0, "{d}");
    }

    #[test]
    fn density_sweep_counts_closed_integer_windows() {
        assert_eq!(max_count_integers(&[0, 2, 4, 6], 0, 10, 4), Some(3));
        assert_eq!(max_count_integers(&[0, 2], 0, 3, 4), None);
        let pts: Vec<Real> = [0, 2, 4, 6].iter().map(|&n| Real::integer(n)).collect();
        assert_eq!(max_count_line(&pts, Real::zero(), Real::integer(10), Real::integer(4)), Some(2));
    }
}
