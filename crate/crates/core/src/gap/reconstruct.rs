use std::collections::HashMap;

use serde::Serialize;

use crate::cps::Scheme;
use crate::error::{Error, Result};
use crate::groups::{GroupElement, SetDescriptor, SpaceDescriptor};
use crate::meyer::point_set::element_on;
use crate::meyer::PointSet;
use crate::numeric::Real;

/// A residue cell is split only while each child is expected to hold at
/// least this many points of `Λ` (at the density of `Λ` in the patch).
pub const MIN_CELL_POINTS: usize = 8;

/// Window read off from the star values of a finite patch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowEstimate {
    pub window_estimate: SetDescriptor,
    /// Haar measure of the part of the internal space whose membership the
    /// patch cannot decide.
    pub boundary_mass_estimate: f64,
    /// Merge threshold on `R`; residue level reached on `Z_p`.
    pub resolution: f64,
    pub point_count: usize,
}

/// Recovers `W` from `Λ = ⋏(W) ∩ patch`.
///
/// On `R` the sorted star values are merged into blocks wherever
/// consecutive values are at most `gap_threshold` apart (default `5/N`);
/// each block `[s, t]` becomes `[s, t + τ/1000)` so that no star value is
/// lost, and its two edges each contribute the mean spacing inside the
/// block to the boundary mass.
///
/// On `Z_p` the cells `r + p^j Z_p` are classified top-down against the
/// lattice points of the patch: a cell is kept whole when every lattice
/// point of the patch in it belongs to `Λ`, dropped when none does, and
/// split otherwise. Splitting stops once a child would be expected to hold
/// fewer than [`MIN_CELL_POINTS`] points of `Λ`; the cells still mixed there
/// make up the boundary mass. Scaling the resolution with the density of
/// `Λ` keeps a sparse set from looking decided merely because its cells are
/// too small to contain any of its points. Finite internal groups are classified element by element.
pub fn reconstruct_window(scheme: &Scheme, lambda: &PointSet, gap_threshold: Option<Real>) -> Result<WindowEstimate> {
    let space = scheme.internal_space();
    let stars = lambda
        .points()
        .iter()
        .map(|x| Ok(scheme.locate(&element_on(lambda.space(), x)?)?.star))
        .collect::<Result<Vec<GroupElement>>>()?;
    match space {
        SpaceDescriptor::EuclideanLine => {
            let values = stars.iter().map(|s| s.as_line().expect("line star")).collect();
            reconstruct_line(values, gap_threshold)
        }
        SpaceDescriptor::PAdic { p, k } => {
            let grid = lattice_grid(scheme, lambda)?;
            reconstruct_padic(p, k, &space, &grid, lambda)
        }
        SpaceDescriptor::Cyclic { m } => {
            let grid = lattice_grid(scheme, lambda)?;
            reconstruct_cyclic(m, &space, &grid, lambda)
        }
        other => Err(Error::Unsupported(format!("window reconstruction in {other:?}"))),
    }
}

fn residue(e: &GroupElement) -> u64 {
    match e {
        GroupElement::Residue(r) => *r,
        other => unreachable!("residue star expected, got {other:?}"),
    }
}

/// `(star residue, in Λ)` for every lattice point of the patch.
fn lattice_grid(scheme: &Scheme, lambda: &PointSet) -> Result<Vec<(u64, bool)>> {
    let whole = SetDescriptor::whole(scheme.internal_space())?;
    let all = scheme.cut_and_project(&whole, lambda.patch())?;
    all.lattice_points()
        .iter()
        .map(|p| {
            let x = p.direct.as_line().expect("one-dimensional direct space");
            Ok((residue(&p.star), lambda.contains(&x)))
        })
        .collect()
}

fn reconstruct_line(mut values: Vec<Real>, gap_threshold: Option<Real>) -> Result<WindowEstimate> {
    let n = values.len();
    let tau = match gap_threshold {
        Some(t) if t.signum().is_gt() => t,
        Some(t) => return Err(Error::InvalidInput(format!("gap threshold must be positive, got {t}"))),
        None if n > 0 => Real::ratio(5, n as i128),
        None => Real::one(),
    };
    if n == 0 {
        return Ok(WindowEstimate {
            window_estimate: SetDescriptor::empty(SpaceDescriptor::EuclideanLine),
            boundary_mass_estimate: 0.0,
            resolution: tau.to_f64(),
            point_count: 0,
        });
    }
    values.sort_by(|a, b| a.value_cmp(b));
    let mut blocks: Vec<(Real, Real, usize)> = vec![(values[0], values[0], 1)];
    for v in &values[1..] {
        let last = blocks.last_mut().expect("nonempty");
        if (*v - last.1).value_cmp(&tau).is_le() {
            last.1 = *v;
            last.2 += 1;
        } else {
            blocks.push((*v, *v, 1));
        }
    }
    let pad = tau / Real::integer(1000);
    let mut mass = 0.0;
    let mut intervals = Vec::with_capacity(blocks.len());
    for (s, t, count) in &blocks {
        let spacing = if *count > 1 { (*t - *s).to_f64() / (*count - 1) as f64 } else { tau.to_f64() };
        mass += 2.0 * spacing;
        intervals.push((*s, *t + pad));
    }
    Ok(WindowEstimate {
        window_estimate: SetDescriptor::intervals(intervals),
        boundary_mass_estimate: mass,
        resolution: tau.to_f64(),
        point_count: n,
    })
}

#[derive(Clone, Copy, Default)]
struct Cell {
    total: usize,
    inside: usize,
}

fn reconstruct_padic(
    p: u64,
    k: u32,
    space: &SpaceDescriptor,
    grid: &[(u64, bool)],
    lambda: &PointSet,
) -> Result<WindowEstimate> {
    let inside = grid.iter().filter(|g| g.1).count();
    let density = if grid.is_empty() { 0.0 } else { inside as f64 / grid.len() as f64 };
    let mut kept: Vec<(u64, u32)> = Vec::new();
    let mut mass = 0.0;
    let mut level_reached = 0;
    // Cells still to classify, each with the grid entries it holds.
    let mut frontier: Vec<(u64, Vec<(u64, bool)>)> = vec![(0, grid.to_vec())];
    for j in 0..=k {
        level_reached = j;
        let modulus = p.pow(j) as f64;
        let mut next = Vec::new();
        for (r, members) in frontier {
            let cell = members.iter().fold(Cell::default(), |c, &(_, inside)| Cell {
                total: c.total + 1,
                inside: c.inside + inside as usize,
            });
            if cell.inside == 0 {
                continue;
            }
            if cell.inside == cell.total {
                kept.push((r, j));
                continue;
            }
            if j == k || (cell.total as f64) * density < (MIN_CELL_POINTS as u64 * p) as f64 {
                kept.push((r, j));
                mass += 1.0 / modulus;
                continue;
            }
            let step = p.pow(j);
            let mut children: HashMap<u64, Vec<(u64, bool)>> = HashMap::new();
            for (s, inside) in members {
                children.entry(s % (step * p)).or_default().push((s, inside));
            }
            let mut children: Vec<_> = children.into_iter().collect();
            children.sort_by_key(|c| c.0);
            next.extend(children);
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(WindowEstimate {
        window_estimate: SetDescriptor::residue_classes(space.clone(), &kept)?,
        boundary_mass_estimate: mass,
        resolution: level_reached as f64,
        point_count: lambda.len(),
    })
}

fn reconstruct_cyclic(m: u64, space: &SpaceDescriptor, grid: &[(u64, bool)], lambda: &PointSet) -> Result<WindowEstimate> {
    let mut cells = vec![Cell::default(); m as usize];
    for &(r, inside) in grid {
        cells[r as usize].total += 1;
        cells[r as usize].inside += inside as usize;
    }
    let kept: Vec<u64> = (0..m).filter(|&r| cells[r as usize].inside > 0).collect();
    let mixed = cells.iter().filter(|c| c.inside > 0 && c.inside < c.total).count();
    Ok(WindowEstimate {
        window_estimate: SetDescriptor::elements(space.clone(), kept)?,
        boundary_mass_estimate: mixed as f64 / m as f64,
        resolution: 0.0,
        point_count: lambda.len(),
    })
}
