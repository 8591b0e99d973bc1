use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::weight::{StarHull, WeightFunction};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, SetDescriptor, SpaceDescriptor};
use crate::measures::PointMeasure;
use crate::meyer::PointSet;
use crate::numeric::{QuadraticNumber, Rational, Real, Weight};

/// `{(m + n α, m + n α′)}` in `R x R` for an irrational quadratic `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticScheme {
    alpha: QuadraticNumber,
}

/// `{(n, n mod p^k)}` in `Z x Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicScheme {
    p: u64,
    k: u32,
}

/// A lattice of `G` with trivial internal space: `Z` itself, or `c Z` in `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrivialScheme {
    spacing: Option<Rational>,
}

/// A cut-and-project scheme with an exactly represented lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SchemeConfig", into = "SchemeConfig")]
pub enum Scheme {
    Quadratic(QuadraticScheme),
    PAdic(PAdicScheme),
    Trivial(TrivialScheme),
    Product(Box<Scheme>, Box<Scheme>),
}

/// JSON shape of a scheme, e.g. `{"type": "quadratic", "alpha": "golden"}`
/// or `{"type": "padic", "p": 3, "k": 6}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SchemeConfig {
    Quadratic {
        #[serde(default = "golden")]
        alpha: String,
    },
    Padic {
        p: u64,
        #[serde(default = "default_depth")]
        k: u32,
    },
    Trivial {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        spacing: Option<Real>,
    },
    Product {
        left: Box<SchemeConfig>,
        right: Box<SchemeConfig>,
    },
}

fn golden() -> String {
    "golden".into()
}

fn default_depth() -> u32 {
    12
}

impl TryFrom<SchemeConfig> for Scheme {
    type Error = Error;
    fn try_from(c: SchemeConfig) -> Result<Self> {
        match c {
            SchemeConfig::Quadratic { alpha } => {
                let alpha = match alpha.trim() {
                    "golden" => QuadraticNumber::golden_ratio(),
                    "silver" => "1+sqrt(2)".parse()?,
                    text => text.parse()?,
                };
                Scheme::quadratic(alpha)
            }
            SchemeConfig::Padic { p, k } => Scheme::padic(p, k),
            SchemeConfig::Trivial { spacing: None } => Ok(Scheme::trivial()),
            SchemeConfig::Trivial { spacing: Some(c) } => {
                let c = c.as_rational().ok_or_else(|| Error::InvalidInput("spacing must be rational".into()))?;
                Scheme::trivial_lattice(c)
            }
            SchemeConfig::Product { left, right } => Scheme::product((*left).try_into()?, (*right).try_into()?),
        }
    }
}

impl From<Scheme> for SchemeConfig {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Quadratic(q) => SchemeConfig::Quadratic {
                alpha: if q.alpha == QuadraticNumber::golden_ratio() { golden() } else { q.alpha.to_string() },
            },
            Scheme::PAdic(PAdicScheme { p, k }) => SchemeConfig::Padic { p, k },
            Scheme::Trivial(TrivialScheme { spacing }) => {
                SchemeConfig::Trivial { spacing: spacing.map(Real::rational) }
            }
            Scheme::Product(l, r) => {
                SchemeConfig::Product { left: Box::new((*l).into()), right: Box::new((*r).into()) }
            }
        }
    }
}

/// A lattice point with its integer coordinates and both projections.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
    pub direct: GroupElement,
    pub star: GroupElement,
}

/// The points of `⋏(W)` inside a patch, sorted by their direct coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    points: Vec<LatticePoint>,
    patch: SetDescriptor,
}

impl Projection {
    pub fn lattice_points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn patch(&self) -> &SetDescriptor {
        &self.patch
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The projected set as a point set on the line or the integers.
    pub fn to_point_set(&self) -> Result<PointSet> {
        let points = self
            .points
            .iter()
            .map(|p| p.direct.as_line().ok_or_else(|| Error::Unsupported("point sets are one-dimensional".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointSet::from_sorted(points, self.patch.clone()))
    }

    /// Rows `m,n,x,x_star`; `n` is blank for one-coordinate lattices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,x,x_star\n");
        for p in &self.points {
            let m = p.coords.first().map(|v| v.to_string()).unwrap_or_default();
            let n = p.coords.get(1).map(|v| v.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{m},{n},{},{}", csv_value(&p.direct), csv_value(&p.star));
        }
        out
    }
}

pub(crate) fn csv_value(e: &GroupElement) -> String {
    match e {
        GroupElement::Real(x) => match x.as_integer() {
            Some(n) => n.to_string(),
            None => format!("{}", x.to_f64()),
        },
        GroupElement::Integer(n) => n.to_string(),
        GroupElement::Residue(r) => r.to_string(),
        GroupElement::Pair(a, b) => format!("{} {}", csv_value(a), csv_value(b)),
    }
}

impl Scheme {
    /// Rejects rational `α`, for which the projection to `G` would not be
    /// injective on the lattice.
    pub fn quadratic(alpha: QuadraticNumber) -> Result<Self> {
        if alpha.is_rational() {
            return Err(Error::InvalidInput(format!("alpha = {alpha} is rational; the lattice would be degenerate")));
        }
        Ok(Scheme::Quadratic(QuadraticScheme { alpha }))
    }

    pub fn golden() -> Self {
        Scheme::Quadratic(QuadraticScheme { alpha: QuadraticNumber::golden_ratio() })
    }

    pub fn padic(p: u64, k: u32) -> Result<Self> {
        SpaceDescriptor::padic(p, k)?;
        Ok(Scheme::PAdic(PAdicScheme { p, k }))
    }

    /// `G = Z`, `H = {0}`.
    pub fn trivial() -> Self {
        Scheme::Trivial(TrivialScheme { spacing: None })
    }

    /// `L = c Z` in `G = R`, `H = {0}`.
    pub fn trivial_lattice(spacing: Rational) -> Result<Self> {
        if spacing <= Rational::from_integer(0) {
            return Err(Error::InvalidInput("lattice spacing must be positive".into()));
        }
        Ok(Scheme::Trivial(TrivialScheme { spacing: Some(spacing) }))
    }

    pub fn product(left: Scheme, right: Scheme) -> Result<Self> {
        if matches!(left, Scheme::Product(..)) || matches!(right, Scheme::Product(..)) {
            return Err(Error::InvalidInput("products may not be nested".into()));
        }
        Ok(Scheme::Product(Box::new(left), Box::new(right)))
    }

    pub fn alpha(&self) -> Option<QuadraticNumber> {
        match self {
            Scheme::Quadratic(q) => Some(q.alpha),
            _ => None,
        }
    }

    pub fn direct_space(&self) -> SpaceDescriptor {
        match self {
            Scheme::Quadratic(_) => SpaceDescriptor::EuclideanLine,
            Scheme::PAdic(_) => SpaceDescriptor::Integers,
            Scheme::Trivial(t) => match t.spacing {
                None => SpaceDescriptor::Integers,
                Some(_) => SpaceDescriptor::EuclideanLine,
            },
            Scheme::Product(l, r) => pair_space(l.direct_space(), r.direct_space()),
        }
    }

    pub fn internal_space(&self) -> SpaceDescriptor {
        match self {
            Scheme::Quadratic(_) => SpaceDescriptor::EuclideanLine,
            Scheme::PAdic(s) => SpaceDescriptor::PAdic { p: s.p, k: s.k },
            Scheme::Trivial(_) => SpaceDescriptor::trivial(),
            Scheme::Product(l, r) => pair_space(l.internal_space(), r.internal_space()),
        }
    }

    /// Number of integer coordinates of a lattice point.
    pub fn rank(&self) -> usize {
        match self {
            Scheme::Quadratic(_) => 2,
            Scheme::PAdic(_) | Scheme::Trivial(_) => 1,
            Scheme::Product(l, r) => l.rank() + r.rank(),
        }
    }

    fn check_rank(&self, coords: &[i64]) -> Result<()> {
        if coords.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("expected {} lattice coordinates, got {}", self.rank(), coords.len())))
        }
    }

    /// The projection of a lattice point to `G`.
    pub fn direct(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_rank(coords)?;
        Ok(match self {
            Scheme::Quadratic(q) => GroupElement::Real(q.combine(coords[0], coords[1], &q.alpha)),
            Scheme::PAdic(_) => GroupElement::Integer(coords[0]),
            Scheme::Trivial(t) => match t.spacing {
                None => GroupElement::Integer(coords[0]),
                Some(c) => GroupElement::Real(Real::rational(c * coords[0] as i128)),
            },
            Scheme::Product(l, r) => {
                let (a, b) = coords.split_at(l.rank());
                GroupElement::pair(l.direct(a)?, r.direct(b)?)
            }
        })
    }

    /// The star map `x ↦ x⋆`.
    pub fn star(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_rank(coords)?;
        Ok(match self {
            Scheme::Quadratic(q) => GroupElement::Real(q.combine(coords[0], coords[1], &q.alpha.conjugate())),
            Scheme::PAdic(s) => GroupElement::Residue(s.reduce(coords[0])),
            Scheme::Trivial(_) => GroupElement::Residue(0),
            Scheme::Product(l, r) => {
                let (a, b) = coords.split_at(l.rank());
                GroupElement::pair(l.star(a)?, r.star(b)?)
            }
        })
    }

    pub fn lattice_point(&self, coords: &[i64]) -> Result<LatticePoint> {
        Ok(LatticePoint { coords: coords.to_vec(), direct: self.direct(coords)?, star: self.star(coords)? })
    }

    /// The lattice point projecting to `x`, if any.
    pub fn locate(&self, x: &GroupElement) -> Result<LatticePoint> {
        let off = || Error::OffLattice { point: x.to_string() };
        let coords = match (self, x) {
            (Scheme::Quadratic(q), GroupElement::Real(Real::Exact(v))) => {
                let (a, b) = (q.alpha.rational_part(), q.alpha.surd_part());
                if !v.is_rational() && v.radicand() != q.alpha.radicand() {
                    return Err(off());
                }
                let n = v.surd_part() / b;
                let m = v.rational_part() - n * a;
                if !n.is_integer() || !m.is_integer() {
                    return Err(off());
                }
                let to_i64 = |r: Rational| i64::try_from(r.to_integer()).map_err(|_| off());
                vec![to_i64(m)?, to_i64(n)?]
            }
            (Scheme::PAdic(_), e) | (Scheme::Trivial(TrivialScheme { spacing: None }), e) => {
                vec![e.as_line().and_then(|v| v.as_integer()).ok_or_else(off)?]
            }
            (Scheme::Trivial(TrivialScheme { spacing: Some(c) }), GroupElement::Real(v)) => {
                let n = v.as_rational().map(|r| r / c).filter(|n| n.is_integer()).ok_or_else(off)?;
                vec![i64::try_from(n.to_integer()).map_err(|_| off())?]
            }
            (Scheme::Product(l, r), GroupElement::Pair(a, b)) => {
                let mut c = l.locate(a)?.coords;
                c.extend(r.locate(b)?.coords);
                c
            }
            _ => return Err(off()),
        };
        self.lattice_point(&coords)
    }

    /// `D_S` with `dens(⋏(W)) = D_S θ_H(W)`: the reciprocal covolume of the
    /// lattice under the fixed Haar normalizations.
    pub fn density_constant(&self) -> Real {
        match self {
            Scheme::Quadratic(q) => {
                let gap = q.alpha.checked_sub(&q.alpha.conjugate()).expect("same field");
                let inv = QuadraticNumber::from_integer(1).checked_div(&gap).expect("alpha is irrational");
                Real::Exact(inv).abs()
            }
            Scheme::PAdic(_) => Real::one(),
            Scheme::Trivial(t) => match t.spacing {
                None => Real::one(),
                Some(c) => Real::rational(c.recip()),
            },
            Scheme::Product(l, r) => l.density_constant() * r.density_constant(),
        }
    }

    /// All lattice points whose direct coordinate lies in the hull of the
    /// patch and whose star lies in `star`; a superset of what callers keep.
    fn candidates(&self, patch: &SetDescriptor, star: &StarHull) -> Result<Vec<LatticePoint>> {
        if patch.is_empty() || *star == StarHull::Empty {
            return Ok(vec![]);
        }
        match self {
            Scheme::Quadratic(q) => {
                let Some(&[(p0, p1)]) = patch.hull()?.intervals_slice() else {
                    unreachable!("non-empty line set")
                };
                let (w0, w1) = match star {
                    StarHull::Line(a, b) => (*a, *b),
                    _ => return Err(Error::DomainMismatch("window is not a subset of R".into())),
                };
                q.enumerate(p0, p1, w0, w1).map(|v| {
                    v.into_iter()
                        .map(|(m, n)| self.lattice_point(&[m, n]))
                        .collect::<Result<Vec<_>>>()
                })?
            }
            Scheme::PAdic(_) | Scheme::Trivial(TrivialScheme { spacing: None }) => {
                let ranges = patch.int_ranges_slice().expect("integer patch");
                let mut out = Vec::new();
                for &(a, b) in ranges {
                    for n in a..b {
                        out.push(self.lattice_point(&[n])?);
                    }
                }
                Ok(out)
            }
            Scheme::Trivial(TrivialScheme { spacing: Some(c) }) => {
                let Some(&[(p0, p1)]) = patch.hull()?.intervals_slice() else {
                    unreachable!("non-empty line set")
                };
                let cr = Real::rational(*c);
                let (lo, hi) = ((p0 / cr).floor() - 1, (p1 / cr).ceil() + 1);
                (lo..=hi).map(|n| self.lattice_point(&[n])).collect()
            }
            Scheme::Product(l, r) => {
                let (sl, sr) = match star {
                    StarHull::Pair(a, b) => ((**a).clone(), (**b).clone()),
                    StarHull::Anywhere => (StarHull::Anywhere, StarHull::Anywhere),
                    _ => return Err(Error::DomainMismatch("window is not a product set".into())),
                };
                let (pl, pr) = factor_hulls(patch)?;
                let left = l.candidates(&pl, &sl)?;
                let right = r.candidates(&pr, &sr)?;
                let mut out = Vec::with_capacity(left.len() * right.len());
                for a in &left {
                    for b in &right {
                        let mut coords = a.coords.clone();
                        coords.extend(&b.coords);
                        out.push(LatticePoint {
                            coords,
                            direct: GroupElement::pair(a.direct.clone(), b.direct.clone()),
                            star: GroupElement::pair(a.star.clone(), b.star.clone()),
                        });
                    }
                }
                Ok(out)
            }
        }
    }

    fn check_patch(&self, patch: &SetDescriptor) -> Result<()> {
        if patch.space() != &self.direct_space() {
            return Err(Error::DomainMismatch(format!(
                "patch lives in {:?}, the scheme's direct space is {:?}",
                patch.space(),
                self.direct_space()
            )));
        }
        if !patch.is_bounded() {
            return Err(Error::InvalidInput("the patch must be bounded".into()));
        }
        Ok(())
    }

    fn select(
        &self,
        patch: &SetDescriptor,
        star: &StarHull,
        keep: impl Fn(&GroupElement) -> Result<bool> + Sync,
    ) -> Result<Vec<LatticePoint>> {
        let candidates = self.candidates(patch, star)?;
        let kept: Vec<Option<LatticePoint>> = candidates
            .into_par_iter()
            .map(|p| Ok((patch.contains(&p.direct)? && keep(&p.star)?).then_some(p)))
            .collect::<Result<_>>()?;
        let mut points: Vec<LatticePoint> = kept.into_iter().flatten().collect();
        points.sort_by(|a, b| match (a.direct.as_line(), b.direct.as_line()) {
            (Some(x), Some(y)) => x.value_cmp(&y),
            _ => a.direct.cmp(&b.direct),
        });
        Ok(points)
    }

    /// `⋏(W) ∩ patch`, enumerated completely from coordinate bounds.
    pub fn cut_and_project(&self, window: &SetDescriptor, patch: &SetDescriptor) -> Result<Projection> {
        self.check_patch(patch)?;
        if window.space() != &self.internal_space() {
            return Err(Error::DomainMismatch(format!(
                "window lives in {:?}, the internal space is {:?}",
                window.space(),
                self.internal_space()
            )));
        }
        let hull = StarHull::of_set(window)?;
        let points = self.select(patch, &hull, |y| window.contains(y))?;
        Ok(Projection { points, patch: patch.clone() })
    }

    /// `Ω(h) = Σ h(x⋆) δ_x` on the patch (one-dimensional direct spaces).
    pub fn omega_comb(&self, h: &WeightFunction, patch: &SetDescriptor) -> Result<PointMeasure> {
        self.check_patch(patch)?;
        h.validate()?;
        if h.space() != self.internal_space() {
            return Err(Error::DomainMismatch("weight function does not live on the internal space".into()));
        }
        if patch.space().factors().is_some() {
            return Err(Error::Unsupported("weighted combs are one-dimensional".into()));
        }
        let hull = h.star_hull()?;
        let points = self.select(patch, &hull, |y| Ok(!h.eval(y)?.is_zero()))?;
        let atoms = points
            .iter()
            .map(|p| Ok((p.direct.as_line().expect("one-dimensional"), Weight::real(h.eval(&p.star)?))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointMeasure::from_sorted(atoms, patch.clone()))
    }
}

fn pair_space(l: SpaceDescriptor, r: SpaceDescriptor) -> SpaceDescriptor {
    if l == SpaceDescriptor::EuclideanLine && r == SpaceDescriptor::EuclideanLine {
        SpaceDescriptor::EuclideanPlane
    } else {
        SpaceDescriptor::Product { left: Box::new(l), right: Box::new(r) }
    }
}

fn factor_hulls(set: &SetDescriptor) -> Result<(SetDescriptor, SetDescriptor)> {
    let (ls, rs) = set.space().factors().expect("product space");
    let mut left = SetDescriptor::empty(ls);
    let mut right = SetDescriptor::empty(rs);
    for (l, r) in set.boxes().expect("product set") {
        left = left.union(l)?;
        right = right.union(r)?;
    }
    Ok((left.hull()?, right.hull()?))
}

impl PAdicScheme {
    fn reduce(&self, n: i64) -> u64 {
        let m = self.p.pow(self.k) as i128;
        (n as i128).rem_euclid(m) as u64
    }
}

impl QuadraticScheme {
    fn combine(&self, m: i64, n: i64, unit: &QuadraticNumber) -> Real {
        let value = QuadraticNumber::from_integer(n)
            .checked_mul(unit)
            .and_then(|v| v.checked_add(&QuadraticNumber::from_integer(m)));
        match value {
            Some(v) => Real::Exact(v),
            None => Real::float(m as f64 + n as f64 * unit.to_f64()),
        }
    }

    /// All `(m, n)` with `m + nα ∈ [p0, p1]` and `m + nα′ ∈ [w0, w1]`.
    ///
    /// Subtracting the two conditions bounds `n (α − α′)`; for fixed `n`
    /// both conditions are intervals in `m`.
    fn enumerate(&self, p0: Real, p1: Real, w0: Real, w1: Real) -> Result<Vec<(i64, i64)>> {
        if !(p0.is_finite() && p1.is_finite() && w0.is_finite() && w1.is_finite()) {
            return Err(Error::InvalidInput("unbounded patch or window".into()));
        }
        let exact = [p0, p1, w0, w1].iter().all(Real::is_exact);
        let slack = if exact { 0 } else { 1 };
        let alpha = Real::Exact(self.alpha);
        let conj = Real::Exact(self.alpha.conjugate());
        let delta = alpha - conj;
        let (a, b) = ((p0 - w1) / delta, (p1 - w0) / delta);
        let (lo, hi) = if a.value_cmp(&b).is_le() { (a, b) } else { (b, a) };
        let (n_lo, n_hi) = (lo.floor() - slack, hi.ceil() + slack);
        let rows: Vec<Vec<(i64, i64)>> = (n_lo..=n_hi)
            .into_par_iter()
            .map(|n| {
                let nr = Real::integer(n);
                let lo = (p0 - nr * alpha).max(w0 - nr * conj);
                let hi = (p1 - nr * alpha).min(w1 - nr * conj);
                (lo.ceil() - slack..=hi.floor() + slack).map(|m| (m, n)).collect()
            })
            .collect();
        Ok(rows.into_iter().flatten().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: &GroupElement) -> f64 {
        x.to_f64().unwrap()
    }

    #[test]
    fn star_of_golden_lattice_point() {
        let s = Scheme::golden();
        let star = s.star(&[1, 1]).unwrap();
        assert_eq!(star, GroupElement::Real(Real::Exact("3/2-1/2*sqrt(5)".parse().unwrap())));
        assert!((re(&star) - 0.381_966_011_250_105).abs() < 1e-15);
        assert_eq!(s.star(&[0, 0]).unwrap(), GroupElement::Real(Real::zero()));
        let p = Scheme::padic(3, 4).unwrap();
        assert_eq!(p.star(&[7]).unwrap(), GroupElement::Residue(7));
        assert_eq!(p.star(&[-1]).unwrap(), GroupElement::Residue(80));
    }

    #[test]
    fn padic_residue_window_gives_progression() {
        let s = Scheme::padic(5, 4).unwrap();
        let w = SetDescriptor::residue_classes(s.internal_space(), &[(2, 1)]).unwrap();
        let got = s.cut_and_project(&w, &SetDescriptor::int_closed(-20, 20)).unwrap();
        let xs = got.to_point_set().unwrap().to_integers().unwrap();
        assert_eq!(xs, vec![-18, -13, -8, -3, 2, 7, 12, 17]);
    }

    #[test]
    fn empty_window_gives_empty_set() {
        let s = Scheme::golden();
        let w = SetDescriptor::empty(SpaceDescriptor::EuclideanLine);
        assert!(s.cut_and_project(&w, &SetDescriptor::interval(0, 20)).unwrap().is_empty());
    }

    #[test]
    fn golden_density_constant_is_inverse_sqrt5() {
        let d = Scheme::golden().density_constant();
        assert_eq!(d, Real::Exact("1/5*sqrt(5)".parse().unwrap()));
        assert_eq!(Scheme::padic(3, 2).unwrap().density_constant(), Real::one());
        assert_eq!(Scheme::trivial().density_constant(), Real::one());
        assert_eq!(Scheme::trivial_lattice(Rational::new(1, 2)).unwrap().density_constant(), Real::integer(2));
    }

    #[test]
    fn locate_inverts_direct() {
        let s = Scheme::golden();
        let p = s.lattice_point(&[-4, 7]).unwrap();
        assert_eq!(s.locate(&p.direct).unwrap(), p);
        assert!(matches!(
            s.locate(&GroupElement::Real(Real::ratio(1, 2))),
            Err(Error::OffLattice { .. })
        ));
    }

    #[test]
    fn omega_of_indicator_is_dirac_comb() {
        let s = Scheme::golden();
        let w = SetDescriptor::interval(0, 1);
        let patch = SetDescriptor::interval(-50, 50);
        let comb = s.omega_comb(&WeightFunction::indicator(w.clone()), &patch).unwrap();
        let set = s.cut_and_project(&w, &patch).unwrap().to_point_set().unwrap();
        assert_eq!(comb, PointMeasure::dirac_comb(&set));
    }

    #[test]
    fn tent_weight_at_known_star() {
        let s = Scheme::golden();
        let h = WeightFunction::tent(Real::ratio(1, 2), Real::ratio(1, 2)).unwrap();
        let patch = SetDescriptor::interval(-5, 5);
        let comb = s.omega_comb(&h, &patch).unwrap();
        let x = s.direct(&[1, 1]).unwrap().as_line().unwrap();
        assert!((comb.weight_at(&x).re.to_f64() - 0.763_932_022_500_21).abs() < 1e-12);
    }

    #[test]
    fn product_scheme_projects_boxes() {
        let s = Scheme::product(Scheme::golden(), Scheme::padic(2, 3).unwrap()).unwrap();
        let w = SetDescriptor::product(
            &SetDescriptor::interval(0, 1),
            &SetDescriptor::residue_classes(SpaceDescriptor::padic(2, 3).unwrap(), &[(1, 1)]).unwrap(),
        )
        .unwrap();
        let patch = SetDescriptor::product(&SetDescriptor::interval(0, 10), &SetDescriptor::int_closed(0, 9)).unwrap();
        let got = s.cut_and_project(&w, &patch).unwrap();
        let left = Scheme::golden()
            .cut_and_project(&SetDescriptor::interval(0, 1), &SetDescriptor::interval(0, 10))
            .unwrap();
        assert_eq!(got.len(), left.len() * 5);
        assert_eq!(s.density_constant(), Scheme::golden().density_constant());
    }

    #[test]
    fn config_round_trip() {
        let s: Scheme = serde_json::from_str(r#"{"type":"padic","p":3,"k":6}"#).unwrap();
        assert_eq!(s, Scheme::padic(3, 6).unwrap());
        let g: Scheme = serde_json::from_str(r#"{"type":"quadratic","alpha":"golden"}"#).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"type":"quadratic","alpha":"golden"}"#);
        assert!(serde_json::from_str::<Scheme>(r#"{"type":"quadratic","alpha":"3"}"#).is_err());
    }
}
