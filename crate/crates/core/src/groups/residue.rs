//! Finite unions of residue classes `r + p^j Z_p`.
//!
//! Sets are handled by refining every class to a common level, operating on
//! plain residue sets, and coarsening back to a canonical list in which no
//! class has all `p` children present.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Refinement beyond this many residues is refused.
pub const MAX_REFINED_RESIDUES: u64 = 1 << 22;

pub(crate) type Class = (u64, u32);

pub(crate) fn max_level(classes: &[Class]) -> u32 {
    classes.iter().map(|c| c.1).max().unwrap_or(0)
}

pub(crate) fn refine(p: u64, classes: &[Class], level: u32) -> Result<BTreeSet<u64>> {
    let modulus = p.pow(level);
    if modulus > MAX_REFINED_RESIDUES {
        return Err(Error::Unsupported(format!(
            "residue set algebra at level {level} needs {modulus} residues"
        )));
    }
    let mut out = BTreeSet::new();
    for &(r, j) in classes {
        debug_assert!(j <= level);
        let step = p.pow(j);
        let count = p.pow(level - j);
        for i in 0..count {
            out.insert(r + i * step);
        }
    }
    Ok(out)
}

pub(crate) fn coarsen(p: u64, residues: &BTreeSet<u64>, level: u32) -> Vec<Class> {
    let mut levels: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); level as usize + 1];
    levels[level as usize] = residues.clone();
    for j in (1..=level).rev() {
        let parent_step = p.pow(j - 1);
        let current = std::mem::take(&mut levels[j as usize]);
        let mut keep = BTreeSet::new();
        let mut parents = BTreeSet::new();
        for &r in &current {
            let parent = r % parent_step;
            if parents.contains(&parent) {
                continue;
            }
            if (0..p).all(|i| current.contains(&(parent + i * parent_step))) {
                parents.insert(parent);
            }
        }
        for &r in &current {
            if !parents.contains(&(r % parent_step)) {
                keep.insert(r);
            }
        }
        levels[j as usize] = keep;
        levels[j as usize - 1].extend(parents);
    }
    let mut out: Vec<Class> = levels
        .into_iter()
        .enumerate()
        .flat_map(|(j, set)| set.into_iter().map(move |r| (r, j as u32)))
        .collect();
    out.sort_by_key(|&(r, j)| (j, r));
    out
}

pub(crate) fn canonicalize(p: u64, classes: &[Class]) -> Result<Vec<Class>> {
    let normalized: Vec<Class> = classes.iter().map(|&(r, j)| (r % p.pow(j), j)).collect();
    let level = max_level(&normalized);
    Ok(coarsen(p, &refine(p, &normalized, level)?, level))
}

fn binary(
    p: u64,
    a: &[Class],
    b: &[Class],
    op: impl Fn(&BTreeSet<u64>, &BTreeSet<u64>) -> BTreeSet<u64>,
) -> Result<Vec<Class>> {
    let level = max_level(a).max(max_level(b));
    let ra = refine(p, a, level)?;
    let rb = refine(p, b, level)?;
    Ok(coarsen(p, &op(&ra, &rb), level))
}

pub(crate) fn union(p: u64, a: &[Class], b: &[Class]) -> Result<Vec<Class>> {
    binary(p, a, b, |x, y| x.union(y).copied().collect())
}

pub(crate) fn intersection(p: u64, a: &[Class], b: &[Class]) -> Result<Vec<Class>> {
    binary(p, a, b, |x, y| x.intersection(y).copied().collect())
}

pub(crate) fn difference(p: u64, a: &[Class], b: &[Class]) -> Result<Vec<Class>> {
    binary(p, a, b, |x, y| x.difference(y).copied().collect())
}

pub(crate) fn complement(p: u64, a: &[Class]) -> Result<Vec<Class>> {
    difference(p, &[(0, 0)], a)
}

pub(crate) fn translate(p: u64, a: &[Class], t: u64) -> Vec<Class> {
    let mut out: Vec<Class> = a.iter().map(|&(r, j)| ((r + t % p.pow(j)) % p.pow(j), j)).collect();
    out.sort_by_key(|&(r, j)| (j, r));
    out
}

pub(crate) fn negate(p: u64, a: &[Class]) -> Vec<Class> {
    let mut out: Vec<Class> = a
        .iter()
        .map(|&(r, j)| {
            let m = p.pow(j);
            ((m - r % m) % m, j)
        })
        .collect();
    out.sort_by_key(|&(r, j)| (j, r));
    out
}

/// `(a + p^i Z_p) + (c + p^j Z_p) = (a + c) + p^min(i,j) Z_p`.
pub(crate) fn minkowski_sum(p: u64, a: &[Class], b: &[Class]) -> Result<Vec<Class>> {
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for &(r1, j1) in a {
        for &(r2, j2) in b {
            let j = j1.min(j2);
            let m = p.pow(j);
            sums.push(((r1 % m + r2 % m) % m, j));
        }
    }
    canonicalize(p, &sums)
}

/// `{x : x + b subset of a}` computed as the complement of `a^c - b`.
pub(crate) fn erosion(p: u64, a: &[Class], b: &[Class]) -> Result<Vec<Class>> {
    let outside = complement(p, a)?;
    let reach = minkowski_sum(p, &outside, &negate(p, b))?;
    complement(p, &reach)
}

pub(crate) fn contains(p: u64, a: &[Class], x: u64) -> bool {
    a.iter().any(|&(r, j)| x % p.pow(j) == r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_sibling_groups_merge() {
        let classes = [(0, 1), (1, 1), (2, 1)];
        assert_eq!(canonicalize(3, &classes).unwrap(), vec![(0, 0)]);
        let classes = [(1, 2), (4, 2), (7, 2), (2, 1)];
        assert_eq!(canonicalize(3, &classes).unwrap(), vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn complement_of_class() {
        let c = complement(5, &[(2, 1)]).unwrap();
        assert_eq!(c, vec![(0, 1), (1, 1), (3, 1), (4, 1)]);
    }

    #[test]
    fn erosion_of_clopen_by_own_subgroup() {
        let e = erosion(3, &[(1, 1)], &[(0, 1)]).unwrap();
        assert_eq!(e, vec![(1, 1)]);
        let e = erosion(3, &[(1, 1)], &[(0, 0)]).unwrap();
        assert!(e.is_empty());
    }

    #[test]
    fn refusing_huge_refinement() {
        assert!(refine(2, &[(0, 30)], 30).is_err());
    }
}
