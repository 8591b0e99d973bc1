use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::groups::SetDescriptor;
use crate::meyer::point_set::element_on;
use crate::meyer::PointSet;
use crate::numeric::{Real, Weight};

/// A finitely supported weighted Dirac comb `sum_x w_x delta_x`, valid on a
/// patch of the line or the integers.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMeasure {
    atoms: Vec<(Real, Weight)>,
    patch: SetDescriptor,
}

impl PointMeasure {
    /// Merges repeated positions and drops zero weights.
    pub fn new(mut atoms: Vec<(Real, Weight)>, patch: SetDescriptor) -> Result<Self> {
        let space = patch.space().clone();
        for (x, _) in &atoms {
            if !patch.contains(&element_on(&space, x)?)? {
                return Err(Error::InvalidInput(format!("atom at {x} lies outside the patch")));
            }
        }
        atoms.sort_by(|a, b| a.0.value_cmp(&b.0));
        let mut merged: Vec<(Real, Weight)> = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            match merged.last_mut() {
                Some(last) if last.0.value_cmp(&x).is_eq() => last.1 = last.1 + w,
                _ => merged.push((x, w)),
            }
        }
        merged.retain(|(_, w)| !w.is_zero());
        Ok(Self { atoms: merged, patch })
    }

    pub(crate) fn from_sorted(atoms: Vec<(Real, Weight)>, patch: SetDescriptor) -> Self {
        debug_assert!(atoms.windows(2).all(|w| w[0].0.value_cmp(&w[1].0).is_lt()));
        Self { atoms: atoms.into_iter().filter(|(_, w)| !w.is_zero()).collect(), patch }
    }

    pub fn zero(patch: SetDescriptor) -> Self {
        Self { atoms: vec![], patch }
    }

    /// `delta_Lambda` on the patch of the point set.
    pub fn dirac_comb(ps: &PointSet) -> Self {
        let atoms = ps.points().iter().map(|x| (*x, Weight::real(Real::one()))).collect();
        Self { atoms, patch: ps.patch().clone() }
    }

    pub fn atoms(&self) -> &[(Real, Weight)] {
        &self.atoms
    }

    pub fn patch(&self) -> &SetDescriptor {
        &self.patch
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn support(&self) -> PointSet {
        PointSet::from_sorted(self.atoms.iter().map(|(x, _)| *x).collect(), self.patch.clone())
    }

    /// `mu({x})`.
    pub fn weight_at(&self, x: &Real) -> Weight {
        match self.atoms.binary_search_by(|(p, _)| p.value_cmp(x)) {
            Ok(i) => self.atoms[i].1,
            Err(_) => Weight::zero(),
        }
    }

    /// All weights real and nonnegative.
    pub fn is_positive(&self) -> bool {
        self.atoms.iter().all(|(_, w)| w.is_nonnegative())
    }

    /// `mu([lo, hi))`.
    pub fn mass_in(&self, lo: &Real, hi: &Real) -> Weight {
        let start = self.atoms.partition_point(|(x, _)| x.value_cmp(lo).is_lt());
        let end = self.atoms.partition_point(|(x, _)| x.value_cmp(hi).is_lt());
        self.atoms[start..end.max(start)].iter().map(|(_, w)| *w).sum()
    }

    /// `sup_t |mu|([t, t+1))`, the translation-boundedness constant on the
    /// patch.
    pub fn translation_bound(&self) -> f64 {
        let xs: Vec<f64> = self.atoms.iter().map(|(x, _)| x.to_f64()).collect();
        let ws: Vec<f64> = self.atoms.iter().map(|(_, w)| w.modulus()).collect();
        let (mut best, mut acc, mut j) = (0.0f64, 0.0f64, 0usize);
        for i in 0..xs.len() {
            while j < xs.len() && xs[j] < xs[i] + 1.0 {
                acc += ws[j];
                j += 1;
            }
            best = best.max(acc);
            acc -= ws[i];
        }
        best
    }

    pub fn scale(&self, factor: Real) -> Self {
        let atoms = self.atoms.iter().map(|(x, w)| (*x, w.scale(factor))).collect();
        Self::from_sorted(atoms, self.patch.clone())
    }

    /// `a mu + b nu` on the common patch.
    pub fn linear_combination(&self, a: Real, other: &Self, b: Real) -> Result<Self> {
        if self.patch != other.patch {
            return Err(Error::DomainMismatch("measures live on different patches".into()));
        }
        let mut atoms = Vec::with_capacity(self.len() + other.len());
        atoms.extend(self.atoms.iter().map(|(x, w)| (*x, w.scale(a))));
        atoms.extend(other.atoms.iter().map(|(x, w)| (*x, w.scale(b))));
        Self::new(atoms, self.patch.clone())
    }

    /// `mu <= nu` atom by atom (both real).
    pub fn le(&self, other: &Self) -> bool {
        let positions = self.atoms.iter().chain(&other.atoms).map(|(x, _)| *x);
        positions.into_iter().all(|x| self.weight_at(&x).partial_le(&other.weight_at(&x)) == Some(true))
    }

    /// Rows `x,re_weight,im_weight`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re_weight,im_weight\n");
        for (x, w) in &self.atoms {
            let _ = writeln!(out, "{},{},{}", x.to_f64(), w.re.to_f64(), w.im.to_f64());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: i64) -> Weight {
        Weight::real(Real::integer(v))
    }

    #[test]
    fn merging_and_zero_dropping() {
        let patch = SetDescriptor::int_closed(0, 10);
        let m = PointMeasure::new(
            vec![(Real::integer(3), w(1)), (Real::integer(1), w(2)), (Real::integer(3), w(-1))],
            patch,
        )
        .unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.weight_at(&Real::integer(1)), w(2));
    }

    #[test]
    fn translation_bound_of_comb() {
        let ps = PointSet::integers_where(0, 100, |n| n % 2 == 0);
        let m = PointMeasure::dirac_comb(&ps);
        assert_eq!(m.translation_bound(), 1.0);
        assert_eq!(m.mass_in(&Real::integer(0), &Real::integer(10)), w(5));
    }

    #[test]
    fn domination() {
        let ps = PointSet::integers_where(0, 20, |_| true);
        let all = PointMeasure::dirac_comb(&ps);
        let half = all.scale(Real::ratio(1, 2));
        assert!(half.le(&all));
        assert!(!all.le(&half));
    }
}
