use serde::Serialize;

use super::delone::{covering_radius, discreteness_radius};
use crate::error::{Error, Result};
use crate::measures::line_hull;
use crate::meyer::PointSet;
use crate::numeric::Real;

pub const DEFAULT_F_SEARCH_BOUND: usize = 64;

/// Largest number of triple differences one scale may enumerate. Sets with
/// many distinct differences (far from Meyer) hit this on large patches.
pub const MAX_TRIPLES: usize = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeyerClass {
    Meyer,
    /// The triple-difference gap shrinks with the patch.
    NotMeyer,
    /// Nothing could be concluded at this patch size.
    Inconclusive,
}

/// Patch-scale evidence for or against the Meyer property.
///
/// Scales are the full patch and its central half. At each scale the points
/// of the central third are combined, so every difference that is reported
/// is complete for the points used.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeyerVerdict {
    pub class: MeyerClass,
    pub uniformly_discrete: bool,
    pub discreteness_radius: Real,
    pub relatively_dense: bool,
    pub covering_radius: Real,
    pub covering_radius_half: Real,
    pub triple_difference_gap: Real,
    pub triple_difference_gap_half: Real,
    /// `F` with `(Λ−Λ) ∩ test region ⊂ Λ + F`, if the search succeeded.
    pub f_found: Option<Vec<Real>>,
    /// A difference no candidate translate could cover.
    pub uncovered: Option<Real>,
}

fn same(a: &Real, b: &Real) -> bool {
    if a.is_exact() && b.is_exact() {
        a.value_cmp(b).is_eq()
    } else {
        (a.to_f64() - b.to_f64()).abs() <= 1e-9 * a.to_f64().abs().max(1.0)
    }
}

fn sorted_unique(mut v: Vec<Real>) -> Vec<Real> {
    v.sort_by(|a, b| a.value_cmp(b));
    v.dedup_by(|a, b| same(a, b));
    v
}

fn between<'a>(pts: &'a [Real], lo: &Real, hi: &Real) -> &'a [Real] {
    let s = pts.partition_point(|p| p.value_cmp(lo).is_lt());
    let e = pts.partition_point(|p| p.value_cmp(hi).is_le());
    &pts[s..e.max(s)]
}

struct Scale {
    core: Vec<Real>,
    differences: Vec<Real>,
    region: (Real, Real),
    triple_gap: Real,
}

fn analyse(pts: &[Real], lo: Real, hi: Real) -> Result<Scale> {
    let third = (hi - lo) * Real::ratio(1, 3);
    let core = between(pts, &(lo + third), &(hi - third)).to_vec();
    let mid = (lo + hi) * Real::ratio(1, 2);
    let half_width = (hi - lo) * Real::ratio(1, 6);
    let region = (mid - half_width, mid + half_width);
    let differences = sorted_unique(core.iter().flat_map(|x| core.iter().map(move |y| *x - *y)).collect());
    let total: usize = differences
        .iter()
        .map(|d| between(&core, &(*d - region.1), &(*d - region.0)).len())
        .sum();
    if total > MAX_TRIPLES {
        return Err(Error::InvalidInput(format!(
            "{total} triple differences exceed the limit of {MAX_TRIPLES}; use a smaller patch"
        )));
    }
    let mut triples = Vec::with_capacity(total);
    for d in &differences {
        for z in between(&core, &(*d - region.1), &(*d - region.0)) {
            triples.push(*d - *z);
        }
    }
    let triples = sorted_unique(triples);
    let triple_gap = triples
        .windows(2)
        .map(|w| w[1] - w[0])
        .min_by(|a, b| a.value_cmp(b))
        .unwrap_or_else(Real::infinity);
    Ok(Scale { core, differences, region, triple_gap })
}

/// Greedy cover of the differences in the test region by translates of Λ.
fn search_cover(pts: &[Real], scale: &Scale, reach: Real, bound: usize) -> (Option<Vec<Real>>, Option<Real>) {
    let targets: Vec<Real> = between(&scale.differences, &scale.region.0, &scale.region.1).to_vec();
    let mut candidates: Vec<(Real, usize)> = Vec::new();
    for (i, d) in targets.iter().enumerate() {
        for l in between(pts, &(*d - reach), &(*d + reach)) {
            candidates.push((*d - *l, i));
        }
    }
    candidates.sort_by(|a, b| a.0.value_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut groups: Vec<(Real, Vec<usize>)> = Vec::new();
    for (f, i) in candidates {
        match groups.last_mut() {
            Some((g, members)) if same(g, &f) => {
                if members.last() != Some(&i) {
                    members.push(i);
                }
            }
            _ => groups.push((f, vec![i])),
        }
    }
    let mut covered = vec![false; targets.len()];
    let mut remaining = targets.len();
    let mut chosen = Vec::new();
    while remaining > 0 && chosen.len() < bound {
        let best = groups
            .iter()
            .enumerate()
            .map(|(k, (_, m))| (m.iter().filter(|&&i| !covered[i]).count(), k))
            .max_by(|a, b| {
                a.0.cmp(&b.0)
                    .then_with(|| groups[b.1].0.abs().value_cmp(&groups[a.1].0.abs()))
                    .then(b.1.cmp(&a.1))
            });
        match best {
            Some((gain, k)) if gain > 0 => {
                for &i in &groups[k].1 {
                    if !covered[i] {
                        covered[i] = true;
                        remaining -= 1;
                    }
                }
                chosen.push(groups[k].0);
            }
            _ => break,
        }
    }
    if remaining == 0 {
        chosen.sort_by(|a, b| a.value_cmp(b));
        (Some(chosen), None)
    } else {
        let witness = covered.iter().position(|c| !c).map(|i| targets[i]);
        (None, witness)
    }
}

/// Needs a patch at least four covering radii long, and refuses patches
/// whose triple-difference scan would exceed [`MAX_TRIPLES`].
pub fn meyer_test(ps: &PointSet, f_search_bound: usize) -> Result<MeyerVerdict> {
    if ps.len() < 2 {
        return Err(Error::InvalidInput("the Meyer test needs at least two points".into()));
    }
    let (lo, hi) = line_hull(ps.patch())?;
    let cover = covering_radius(ps)?;
    if (hi - lo).value_cmp(&(cover * Real::integer(4))).is_lt() {
        return Err(Error::PatchTooSmall(format!(
            "the patch must be at least 4 covering radii ({}) long",
            cover * Real::integer(4)
        )));
    }
    let pts = ps.points();
    let full = analyse(pts, lo, hi)?;
    let quarter = (hi - lo) * Real::ratio(1, 4);
    let mid = (lo + hi) * Real::ratio(1, 2);
    let half = analyse(pts, mid - quarter, mid + quarter)?;
    let half_points = between(pts, &(mid - quarter), &(mid + quarter));
    let cover_half = if half_points.is_empty() {
        Real::infinity()
    } else {
        covering_radius(&PointSet::from_sorted(half_points.to_vec(), ps.patch().clone()))?
    };
    let relatively_dense = cover.value_cmp(&cover_half).is_le();
    let (f_found, uncovered) = if full.core.is_empty() {
        (None, None)
    } else {
        search_cover(pts, &full, cover * Real::integer(4), f_search_bound)
    };
    let shrinking = (full.triple_gap * Real::integer(2)).value_cmp(&half.triple_gap).is_le();
    let stable = full.triple_gap.value_cmp(&half.triple_gap).is_eq() || same(&full.triple_gap, &half.triple_gap);
    let class = if shrinking {
        MeyerClass::NotMeyer
    } else if stable && relatively_dense && f_found.is_some() {
        MeyerClass::Meyer
    } else {
        MeyerClass::Inconclusive
    };
    let radius = discreteness_radius(ps);
    Ok(MeyerVerdict {
        class,
        uniformly_discrete: radius.signum().is_gt(),
        discreteness_radius: radius,
        relatively_dense,
        covering_radius: cover,
        covering_radius_half: cover_half,
        triple_difference_gap: full.triple_gap,
        triple_difference_gap_half: half.triple_gap,
        f_found,
        uncovered,
    })
}
