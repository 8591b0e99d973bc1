use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::SetDescriptor;
use crate::meyer::PointSet;
use crate::numeric::Real;

/// `Λ_θ ∩ [0, bound]`: all sums `Σ c_j θ^j` with `c_j ∈ {0, 1}`, each with
/// its digit vector (bit `j` of `digits` is `c_j`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaSet {
    pub theta: f64,
    pub bound: f64,
    pub elements: Vec<ThetaElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaElement {
    pub value: f64,
    pub digits: u64,
}

/// Below this the counting estimates for `Λ_θ` are not available.
pub const MIN_THETA: f64 = 3.0;

fn check(theta: f64, bound: f64) -> Result<()> {
    if theta.is_nan() || theta <= MIN_THETA || !theta.is_finite() {
        return Err(Error::InvalidInput(format!("theta = {theta} must exceed 3")));
    }
    if bound.is_nan() || bound < 0.0 || !bound.is_finite() {
        return Err(Error::InvalidInput("bound must be finite and nonnegative".into()));
    }
    Ok(())
}

/// Complete enumeration by a depth-first search over digits from the top;
/// a digit is only set while the partial sum stays below the bound, which
/// prunes exactly the sums that exceed it since all digits are nonnegative.
pub fn lambda_theta(theta: f64, bound: f64) -> Result<ThetaSet> {
    check(theta, bound)?;
    let mut powers = Vec::new();
    let mut p = 1.0f64;
    while p <= bound && powers.len() < 63 {
        powers.push(p);
        p *= theta;
    }
    let mut elements = Vec::with_capacity(1 << powers.len().min(20));
    fn dfs(powers: &[f64], j: usize, sum: f64, digits: u64, bound: f64, out: &mut Vec<ThetaElement>) {
        if j == 0 {
            out.push(ThetaElement { value: sum, digits });
            return;
        }
        let i = j - 1;
        if sum + powers[i] <= bound {
            dfs(powers, i, sum + powers[i], digits | (1 << i), bound, out);
        }
        dfs(powers, i, sum, digits, bound, out);
    }
    dfs(&powers, powers.len(), 0.0, 0, bound, &mut elements);
    elements.sort_by(|a, b| a.value.total_cmp(&b.value));
    elements.dedup_by(|a, b| a.value == b.value);
    Ok(ThetaSet { theta, bound, elements })
}

fn next_up(x: f64) -> f64 {
    if x >= 0.0 {
        f64::from_bits(x.to_bits() + 1)
    } else {
        x
    }
}

impl ThetaSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.elements.iter().map(|e| e.value).collect()
    }

    /// As a point set on the line, complete on `[-bound, bound]`.
    pub fn to_point_set(&self) -> PointSet {
        let patch = SetDescriptor::interval(Real::float(-self.bound), Real::float(next_up(self.bound)));
        PointSet::from_sorted(self.elements.iter().map(|e| Real::float(e.value)).collect(), patch)
    }

    /// `card(Λ_θ ∩ [t, t + n])`.
    pub fn count_in(&self, t: f64, n: f64) -> Result<usize> {
        if t + n > self.bound {
            return Err(Error::InvalidInput(format!(
                "the enumeration is complete up to {} but [{t}, {}] was requested",
                self.bound,
                t + n
            )));
        }
        let s = self.elements.partition_point(|e| e.value < t);
        let e = self.elements.partition_point(|e| e.value <= t + n);
        Ok(e - s)
    }
}

/// Signed digits of `x − y`, least significant first, without trailing
/// zeros.
pub fn digit_difference(x: &ThetaElement, y: &ThetaElement) -> Vec<i8> {
    let mut v: Vec<i8> = (0..64).map(|j| ((x.digits >> j) & 1) as i8 - ((y.digits >> j) & 1) as i8).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `M_θ = {⌊x⌋, ⌊x⌋ + 1 : x ∈ Λ_θ}` for the enumerated `x <= bound`.
///
/// The result is complete on `[-⌊bound⌋, ⌊bound⌋]`; the patch also covers
/// `⌊bound⌋ + 1`, which is reported whenever an enumerated `x` produces it.
pub fn m_theta(theta: f64, bound: f64) -> Result<PointSet> {
    let lambda = lambda_theta(theta, bound)?;
    Ok(m_theta_from(&lambda))
}

pub fn m_theta_from(lambda: &ThetaSet) -> PointSet {
    let top = lambda.bound.floor() as i64;
    let mut ints: Vec<i64> = lambda
        .elements
        .iter()
        .flat_map(|e| {
            let f = e.value.floor() as i64;
            [f, f + 1]
        })
        .collect();
    ints.sort_unstable();
    ints.dedup();
    let patch = SetDescriptor::int_closed(-top, top + 1);
    PointSet::from_sorted(ints.into_iter().map(Real::integer).collect(), patch)
}

/// Outcome of the counting inequality
/// `card(Λ_θ ∩ [t, t+n]) / n < (9 n^{log_θ 3} + 1) / n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityBound {
    pub t: f64,
    pub n: f64,
    pub count: usize,
    pub count_ratio: f64,
    pub bound: f64,
    pub ok: bool,
}

pub fn density_bound_check(lambda: &ThetaSet, t: f64, n: f64) -> Result<DensityBound> {
    if n.is_nan() || n <= 0.0 {
        return Err(Error::InvalidInput("window length must be positive".into()));
    }
    let count = lambda.count_in(t, n)?;
    let exponent = 3f64.ln() / lambda.theta.ln();
    let bound = (9.0 * n.powf(exponent) + 1.0) / n;
    let count_ratio = count as f64 / n;
    Ok(DensityBound { t, n, count, count_ratio, bound, ok: count_ratio < bound })
}
