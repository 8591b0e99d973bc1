//! Finite set descriptors and their exact set algebra.
//!
//! Atoms are half-open intervals `[a, b)` on the line, half-open integer
//! ranges, residue classes of `Z_p`, elements of `Z/mZ`, and products of
//! atoms. Boundaries of intervals are null sets, so interior and closure of
//! a line set agree with the set itself up to Haar measure zero; every
//! operation here is exact modulo such null sets (and exact outright on the
//! totally disconnected groups).

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::residue::{self, Class};
use super::space::{GroupElement, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::numeric::{Rational, Real};

/// Serialized building block of a [`SetDescriptor`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Atom {
    /// `[start, end)` in `R`.
    Interval { start: Real, end: Real },
    /// `{start, ..., end - 1}` in `Z`.
    Range { start: i64, end: i64 },
    /// `residue + p^level Z_p`.
    Residue { residue: u64, level: u32 },
    /// One element of `Z/mZ`.
    Element { value: u64 },
    Product { left: Box<Atom>, right: Box<Atom> },
}

#[derive(Clone, Debug, PartialEq)]
enum Parts {
    Line(Vec<(Real, Real)>),
    Ints(Vec<(i64, i64)>),
    Residues(Vec<Class>),
    Elements(Vec<u64>),
    Boxes(Vec<(SetDescriptor, SetDescriptor)>),
}

/// A canonicalized finite union of atoms in a fixed space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSetDescriptor", into = "RawSetDescriptor")]
pub struct SetDescriptor {
    space: SpaceDescriptor,
    parts: Parts,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawSetDescriptor {
    space: SpaceDescriptor,
    atoms: Vec<Atom>,
}

impl TryFrom<RawSetDescriptor> for SetDescriptor {
    type Error = Error;
    fn try_from(raw: RawSetDescriptor) -> Result<Self> {
        SetDescriptor::new(raw.space, raw.atoms)
    }
}

impl From<SetDescriptor> for RawSetDescriptor {
    fn from(s: SetDescriptor) -> Self {
        RawSetDescriptor { atoms: s.atoms(), space: s.space }
    }
}

fn le(a: &Real, b: &Real) -> bool {
    a.value_cmp(b) != Ordering::Greater
}

fn lt(a: &Real, b: &Real) -> bool {
    a.value_cmp(b) == Ordering::Less
}

fn vmax(a: Real, b: Real) -> Real {
    if lt(&a, &b) {
        b
    } else {
        a
    }
}

fn vmin(a: Real, b: Real) -> Real {
    if lt(&b, &a) {
        b
    } else {
        a
    }
}

fn canon_line(mut v: Vec<(Real, Real)>) -> Vec<(Real, Real)> {
    v.retain(|(a, b)| lt(a, b));
    v.sort_by(|x, y| x.0.value_cmp(&y.0).then(x.1.value_cmp(&y.1)));
    let mut out: Vec<(Real, Real)> = Vec::with_capacity(v.len());
    for (a, b) in v {
        match out.last_mut() {
            Some(last) if le(&a, &last.1) => last.1 = vmax(last.1, b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn canon_ints(mut v: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    v.retain(|(a, b)| a < b);
    v.sort();
    let mut out: Vec<(i64, i64)> = Vec::with_capacity(v.len());
    for (a, b) in v {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn line_intersection(a: &[(Real, Real)], b: &[(Real, Real)]) -> Vec<(Real, Real)> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let lo = vmax(a[i].0, b[j].0);
        let hi = vmin(a[i].1, b[j].1);
        if lt(&lo, &hi) {
            out.push((lo, hi));
        }
        if lt(&a[i].1, &b[j].1) {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

fn line_difference(a: &[(Real, Real)], b: &[(Real, Real)]) -> Vec<(Real, Real)> {
    let mut out = Vec::new();
    for &(s, e) in a {
        let mut cursor = s;
        for &(bs, be) in b {
            if !lt(&cursor, &e) {
                break;
            }
            if le(&be, &cursor) || le(&e, &bs) {
                continue;
            }
            if lt(&cursor, &bs) {
                out.push((cursor, bs));
            }
            cursor = vmax(cursor, be);
        }
        if lt(&cursor, &e) {
            out.push((cursor, e));
        }
    }
    canon_line(out)
}

fn int_intersection(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let lo = a[i].0.max(b[j].0);
        let hi = a[i].1.min(b[j].1);
        if lo < hi {
            out.push((lo, hi));
        }
        if a[i].1 < b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

fn int_difference(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for &(s, e) in a {
        let mut cursor = s;
        for &(bs, be) in b {
            if cursor >= e {
                break;
            }
            if be <= cursor || e <= bs {
                continue;
            }
            if cursor < bs {
                out.push((cursor, bs));
            }
            cursor = cursor.max(be);
        }
        if cursor < e {
            out.push((cursor, e));
        }
    }
    canon_ints(out)
}

const UNBOUNDED_LOW: i64 = i64::MIN;
const UNBOUNDED_HIGH: i64 = i64::MAX;

fn int_unbounded(r: &(i64, i64)) -> bool {
    r.0 == UNBOUNDED_LOW || r.1 == UNBOUNDED_HIGH
}

fn max_cyclic_order(m: u64) -> Result<()> {
    if m > residue::MAX_REFINED_RESIDUES {
        Err(Error::Unsupported(format!("complements in Z/{m}Z are too large to enumerate")))
    } else {
        Ok(())
    }
}

impl SetDescriptor {
    /// Validates atoms against the space and canonicalizes them.
    pub fn new(space: SpaceDescriptor, atoms: Vec<Atom>) -> Result<Self> {
        space.validate()?;
        let mismatch = |a: &Atom| Error::DomainMismatch(format!("atom {a:?} does not belong to {space:?}"));
        let parts = match &space {
            SpaceDescriptor::EuclideanLine => {
                let mut v = Vec::with_capacity(atoms.len());
                for a in &atoms {
                    match a {
                        Atom::Interval { start, end } => v.push((*start, *end)),
                        _ => return Err(mismatch(a)),
                    }
                }
                Parts::Line(canon_line(v))
            }
            SpaceDescriptor::Integers => {
                let mut v = Vec::with_capacity(atoms.len());
                for a in &atoms {
                    match a {
                        Atom::Range { start, end } => v.push((*start, *end)),
                        _ => return Err(mismatch(a)),
                    }
                }
                Parts::Ints(canon_ints(v))
            }
            SpaceDescriptor::PAdic { p, k } => {
                let mut v = Vec::with_capacity(atoms.len());
                for a in &atoms {
                    match a {
                        Atom::Residue { residue, level } if level <= k => v.push((*residue, *level)),
                        _ => return Err(mismatch(a)),
                    }
                }
                Parts::Residues(residue::canonicalize(*p, &v)?)
            }
            SpaceDescriptor::Cyclic { m } => {
                let mut v = BTreeSet::new();
                for a in &atoms {
                    match a {
                        Atom::Element { value } => {
                            v.insert(value % m);
                        }
                        _ => return Err(mismatch(a)),
                    }
                }
                Parts::Elements(v.into_iter().collect())
            }
            SpaceDescriptor::EuclideanPlane | SpaceDescriptor::Product { .. } => {
                let (ls, rs) = space.factors().expect("product");
                let mut acc = SetDescriptor::empty(space.clone());
                for a in &atoms {
                    match a {
                        Atom::Product { left, right } => {
                            let l = SetDescriptor::new(ls.clone(), vec![(**left).clone()])?;
                            let r = SetDescriptor::new(rs.clone(), vec![(**right).clone()])?;
                            acc = acc.union(&SetDescriptor::product(&l, &r)?)?;
                        }
                        _ => return Err(mismatch(a)),
                    }
                }
                return Ok(acc);
            }
        };
        Ok(Self { space, parts })
    }

    pub fn empty(space: SpaceDescriptor) -> Self {
        let parts = match &space {
            SpaceDescriptor::EuclideanLine => Parts::Line(vec![]),
            SpaceDescriptor::Integers => Parts::Ints(vec![]),
            SpaceDescriptor::PAdic { .. } => Parts::Residues(vec![]),
            SpaceDescriptor::Cyclic { .. } => Parts::Elements(vec![]),
            _ => Parts::Boxes(vec![]),
        };
        Self { space, parts }
    }

    /// The whole group; unbounded for `R` and `Z`.
    pub fn whole(space: SpaceDescriptor) -> Result<Self> {
        let parts = match &space {
            SpaceDescriptor::EuclideanLine => Parts::Line(vec![(Real::neg_infinity(), Real::infinity())]),
            SpaceDescriptor::Integers => Parts::Ints(vec![(UNBOUNDED_LOW, UNBOUNDED_HIGH)]),
            SpaceDescriptor::PAdic { .. } => Parts::Residues(vec![(0, 0)]),
            SpaceDescriptor::Cyclic { m } => {
                max_cyclic_order(*m)?;
                Parts::Elements((0..*m).collect())
            }
            _ => {
                let (l, r) = space.factors().expect("product");
                return SetDescriptor::product(&SetDescriptor::whole(l)?, &SetDescriptor::whole(r)?);
            }
        };
        Ok(Self { space, parts })
    }

    /// `[start, end)` in `R`.
    pub fn interval(start: impl Into<Real>, end: impl Into<Real>) -> Self {
        Self::intervals(vec![(start.into(), end.into())])
    }

    pub fn intervals(list: Vec<(Real, Real)>) -> Self {
        Self { space: SpaceDescriptor::EuclideanLine, parts: Parts::Line(canon_line(list)) }
    }

    /// `{start, ..., end - 1}` in `Z`.
    pub fn int_range(start: i64, end: i64) -> Self {
        Self::int_ranges(vec![(start, end)])
    }

    /// `{start, ..., end}` in `Z`.
    pub fn int_closed(start: i64, end: i64) -> Self {
        Self::int_range(start, end.saturating_add(1))
    }

    pub fn int_ranges(list: Vec<(i64, i64)>) -> Self {
        Self { space: SpaceDescriptor::Integers, parts: Parts::Ints(canon_ints(list)) }
    }

    pub fn integers(points: impl IntoIterator<Item = i64>) -> Self {
        Self::int_ranges(points.into_iter().map(|n| (n, n + 1)).collect())
    }

    pub fn residue_classes(space: SpaceDescriptor, classes: &[(u64, u32)]) -> Result<Self> {
        let atoms = classes.iter().map(|&(residue, level)| Atom::Residue { residue, level }).collect();
        Self::new(space, atoms)
    }

    pub fn elements(space: SpaceDescriptor, values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let atoms = values.into_iter().map(|value| Atom::Element { value }).collect();
        Self::new(space, atoms)
    }

    /// Cartesian product of two sets in non-product spaces.
    pub fn product(left: &SetDescriptor, right: &SetDescriptor) -> Result<Self> {
        let space = SpaceDescriptor::product(left.space.clone(), right.space.clone())?;
        let space = if left.space == SpaceDescriptor::EuclideanLine && right.space == SpaceDescriptor::EuclideanLine {
            SpaceDescriptor::EuclideanPlane
        } else {
            space
        };
        let boxes = if left.is_empty() || right.is_empty() {
            vec![]
        } else {
            vec![(left.clone(), right.clone())]
        };
        Ok(Self { space, parts: Parts::Boxes(boxes) })
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    pub fn atoms(&self) -> Vec<Atom> {
        match &self.parts {
            Parts::Line(v) => v.iter().map(|&(start, end)| Atom::Interval { start, end }).collect(),
            Parts::Ints(v) => v.iter().map(|&(start, end)| Atom::Range { start, end }).collect(),
            Parts::Residues(v) => v.iter().map(|&(residue, level)| Atom::Residue { residue, level }).collect(),
            Parts::Elements(v) => v.iter().map(|&value| Atom::Element { value }).collect(),
            Parts::Boxes(v) => v
                .iter()
                .flat_map(|(l, r)| {
                    let ra = r.atoms();
                    l.atoms().into_iter().flat_map(move |la| {
                        ra.clone().into_iter().map(move |rb| Atom::Product {
                            left: Box::new(la.clone()),
                            right: Box::new(rb),
                        })
                    })
                })
                .collect(),
        }
    }

    /// Disjoint sorted intervals of a line set.
    pub fn intervals_slice(&self) -> Option<&[(Real, Real)]> {
        match &self.parts {
            Parts::Line(v) => Some(v),
            _ => None,
        }
    }

    pub fn int_ranges_slice(&self) -> Option<&[(i64, i64)]> {
        match &self.parts {
            Parts::Ints(v) => Some(v),
            _ => None,
        }
    }

    pub fn residue_classes_slice(&self) -> Option<&[(u64, u32)]> {
        match &self.parts {
            Parts::Residues(v) => Some(v),
            _ => None,
        }
    }

    pub fn elements_slice(&self) -> Option<&[u64]> {
        match &self.parts {
            Parts::Elements(v) => Some(v),
            _ => None,
        }
    }

    /// Disjoint product boxes of a product set.
    pub fn boxes(&self) -> Option<&[(SetDescriptor, SetDescriptor)]> {
        match &self.parts {
            Parts::Boxes(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        match &self.parts {
            Parts::Line(v) => v.is_empty(),
            Parts::Ints(v) => v.is_empty(),
            Parts::Residues(v) => v.is_empty(),
            Parts::Elements(v) => v.is_empty(),
            Parts::Boxes(v) => v.is_empty(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        match &self.parts {
            Parts::Line(v) => v.iter().all(|(a, b)| a.is_finite() && b.is_finite()),
            Parts::Ints(v) => !v.iter().any(int_unbounded),
            Parts::Residues(_) | Parts::Elements(_) => true,
            Parts::Boxes(v) => v.iter().all(|(l, r)| l.is_bounded() && r.is_bounded()),
        }
    }

    /// Haar measure under the normalization of the space.
    pub fn haar_measure(&self) -> Result<Real> {
        if !self.is_bounded() {
            return Err(Error::MeasureInfinite);
        }
        Ok(match (&self.parts, &self.space) {
            (Parts::Line(v), _) => v.iter().map(|(a, b)| *b - *a).sum(),
            (Parts::Ints(v), _) => Real::integer(v.iter().map(|(a, b)| b - a).sum()),
            (Parts::Residues(v), SpaceDescriptor::PAdic { p, .. }) => Real::rational(
                v.iter().map(|&(_, j)| Rational::new(1, (*p as i128).pow(j))).sum(),
            ),
            (Parts::Elements(v), _) => Real::integer(v.len() as i64),
            (Parts::Boxes(v), _) => {
                let mut total = Real::zero();
                for (l, r) in v {
                    total = total + l.haar_measure()? * r.haar_measure()?;
                }
                total
            }
            _ => unreachable!("parts always match the space"),
        })
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        if !self.space.contains_element(x) {
            return Err(Error::DomainMismatch(format!("{x} is not an element of {:?}", self.space)));
        }
        Ok(match (&self.parts, x) {
            (Parts::Line(v), GroupElement::Real(t)) => line_contains(v, t),
            (Parts::Ints(v), GroupElement::Integer(n)) => {
                let i = v.partition_point(|&(a, _)| a <= *n);
                i > 0 && *n < v[i - 1].1
            }
            (Parts::Residues(v), GroupElement::Residue(r)) => {
                let p = match self.space {
                    SpaceDescriptor::PAdic { p, .. } => p,
                    _ => unreachable!(),
                };
                residue::contains(p, v, *r)
            }
            (Parts::Elements(v), GroupElement::Residue(r)) => v.binary_search(r).is_ok(),
            (Parts::Boxes(v), GroupElement::Pair(a, b)) => {
                for (l, r) in v {
                    if l.contains(a)? && r.contains(b)? {
                        return Ok(true);
                    }
                }
                false
            }
            _ => unreachable!("element checked against space"),
        })
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!("{:?} vs {:?}", self.space, other.space)))
        }
    }

    fn p(&self) -> u64 {
        match self.space {
            SpaceDescriptor::PAdic { p, .. } => p,
            _ => unreachable!("residue parts only live in p-adic spaces"),
        }
    }

    fn with_parts(&self, parts: Parts) -> Self {
        Self { space: self.space.clone(), parts }
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(match (&self.parts, &other.parts) {
            (Parts::Line(a), Parts::Line(b)) => self.with_parts(Parts::Line(canon_line([&a[..], &b[..]].concat()))),
            (Parts::Ints(a), Parts::Ints(b)) => self.with_parts(Parts::Ints(canon_ints([&a[..], &b[..]].concat()))),
            (Parts::Residues(a), Parts::Residues(b)) => {
                self.with_parts(Parts::Residues(residue::union(self.p(), a, b)?))
            }
            (Parts::Elements(a), Parts::Elements(b)) => {
                let s: BTreeSet<u64> = a.iter().chain(b).copied().collect();
                self.with_parts(Parts::Elements(s.into_iter().collect()))
            }
            (Parts::Boxes(a), Parts::Boxes(_)) => {
                let extra = other.difference(self)?;
                let mut boxes = a.clone();
                boxes.extend(extra.boxes().expect("boxes").iter().cloned());
                self.with_parts(Parts::Boxes(boxes))
            }
            _ => unreachable!("same space"),
        })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(match (&self.parts, &other.parts) {
            (Parts::Line(a), Parts::Line(b)) => self.with_parts(Parts::Line(line_intersection(a, b))),
            (Parts::Ints(a), Parts::Ints(b)) => self.with_parts(Parts::Ints(int_intersection(a, b))),
            (Parts::Residues(a), Parts::Residues(b)) => {
                self.with_parts(Parts::Residues(residue::intersection(self.p(), a, b)?))
            }
            (Parts::Elements(a), Parts::Elements(b)) => {
                let bs: BTreeSet<u64> = b.iter().copied().collect();
                self.with_parts(Parts::Elements(a.iter().copied().filter(|x| bs.contains(x)).collect()))
            }
            (Parts::Boxes(a), Parts::Boxes(b)) => {
                let mut out = Vec::new();
                for (al, ar) in a {
                    for (bl, br) in b {
                        let l = al.intersection(bl)?;
                        let r = ar.intersection(br)?;
                        if !l.is_empty() && !r.is_empty() {
                            out.push((l, r));
                        }
                    }
                }
                self.with_parts(Parts::Boxes(out))
            }
            _ => unreachable!("same space"),
        })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(match (&self.parts, &other.parts) {
            (Parts::Line(a), Parts::Line(b)) => self.with_parts(Parts::Line(line_difference(a, b))),
            (Parts::Ints(a), Parts::Ints(b)) => self.with_parts(Parts::Ints(int_difference(a, b))),
            (Parts::Residues(a), Parts::Residues(b)) => {
                self.with_parts(Parts::Residues(residue::difference(self.p(), a, b)?))
            }
            (Parts::Elements(a), Parts::Elements(b)) => {
                let bs: BTreeSet<u64> = b.iter().copied().collect();
                self.with_parts(Parts::Elements(a.iter().copied().filter(|x| !bs.contains(x)).collect()))
            }
            (Parts::Boxes(a), Parts::Boxes(b)) => {
                let mut current = a.clone();
                for (bl, br) in b {
                    let mut next = Vec::new();
                    for (al, ar) in &current {
                        let l_out = al.difference(bl)?;
                        if !l_out.is_empty() {
                            next.push((l_out, ar.clone()));
                        }
                        let l_in = al.intersection(bl)?;
                        let r_out = ar.difference(br)?;
                        if !l_in.is_empty() && !r_out.is_empty() {
                            next.push((l_in, r_out));
                        }
                    }
                    current = next;
                }
                self.with_parts(Parts::Boxes(current))
            }
            _ => unreachable!("same space"),
        })
    }

    pub fn translate(&self, t: &GroupElement) -> Result<Self> {
        if !self.space.contains_element(t) {
            return Err(Error::DomainMismatch(format!("{t} is not an element of {:?}", self.space)));
        }
        Ok(match (&self.parts, t) {
            (Parts::Line(v), GroupElement::Real(s)) => {
                self.with_parts(Parts::Line(v.iter().map(|(a, b)| (*a + *s, *b + *s)).collect()))
            }
            (Parts::Ints(v), GroupElement::Integer(s)) => self.with_parts(Parts::Ints(
                v.iter()
                    .map(|&(a, b)| {
                        let shift = |x: i64| {
                            if x == UNBOUNDED_LOW || x == UNBOUNDED_HIGH {
                                x
                            } else {
                                x + s
                            }
                        };
                        (shift(a), shift(b))
                    })
                    .collect(),
            )),
            (Parts::Residues(v), GroupElement::Residue(s)) => {
                self.with_parts(Parts::Residues(residue::translate(self.p(), v, *s)))
            }
            (Parts::Elements(v), GroupElement::Residue(s)) => {
                let m = self.space.modulus().expect("cyclic");
                let set: BTreeSet<u64> = v.iter().map(|x| (x + s) % m).collect();
                self.with_parts(Parts::Elements(set.into_iter().collect()))
            }
            (Parts::Boxes(v), GroupElement::Pair(a, b)) => {
                let mut out = Vec::with_capacity(v.len());
                for (l, r) in v {
                    out.push((l.translate(a)?, r.translate(b)?));
                }
                self.with_parts(Parts::Boxes(out))
            }
            _ => unreachable!("element checked against space"),
        })
    }

    /// `-A`.
    pub fn negate(&self) -> Result<Self> {
        Ok(match &self.parts {
            Parts::Line(v) => self.with_parts(Parts::Line(canon_line(v.iter().map(|(a, b)| (-*b, -*a)).collect()))),
            Parts::Ints(v) => self.with_parts(Parts::Ints(canon_ints(
                v.iter()
                    .map(|&(a, b)| {
                        let lo = if b == UNBOUNDED_HIGH { UNBOUNDED_LOW } else { 1 - b };
                        let hi = if a == UNBOUNDED_LOW { UNBOUNDED_HIGH } else { 1 - a };
                        (lo, hi)
                    })
                    .collect(),
            ))),
            Parts::Residues(v) => self.with_parts(Parts::Residues(residue::negate(self.p(), v))),
            Parts::Elements(v) => {
                let m = self.space.modulus().expect("cyclic");
                let set: BTreeSet<u64> = v.iter().map(|x| (m - x) % m).collect();
                self.with_parts(Parts::Elements(set.into_iter().collect()))
            }
            Parts::Boxes(v) => {
                let mut out = Vec::with_capacity(v.len());
                for (l, r) in v {
                    out.push((l.negate()?, r.negate()?));
                }
                self.with_parts(Parts::Boxes(out))
            }
        })
    }

    /// Minkowski sum `A + K`.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(match (&self.parts, &other.parts) {
            (Parts::Line(a), Parts::Line(b)) => {
                let mut v = Vec::with_capacity(a.len() * b.len());
                for (s1, e1) in a {
                    for (s2, e2) in b {
                        v.push((*s1 + *s2, *e1 + *e2));
                    }
                }
                self.with_parts(Parts::Line(canon_line(v)))
            }
            (Parts::Ints(a), Parts::Ints(b)) => {
                if a.iter().chain(b).any(int_unbounded) {
                    return Err(Error::MeasureInfinite);
                }
                let mut v = Vec::with_capacity(a.len() * b.len());
                for (s1, e1) in a {
                    for (s2, e2) in b {
                        v.push((s1 + s2, e1 + e2 - 1));
                    }
                }
                self.with_parts(Parts::Ints(canon_ints(v)))
            }
            (Parts::Residues(a), Parts::Residues(b)) => {
                self.with_parts(Parts::Residues(residue::minkowski_sum(self.p(), a, b)?))
            }
            (Parts::Elements(a), Parts::Elements(b)) => {
                let m = self.space.modulus().expect("cyclic");
                let set: BTreeSet<u64> =
                    a.iter().flat_map(|x| b.iter().map(move |y| (x + y) % m)).collect();
                self.with_parts(Parts::Elements(set.into_iter().collect()))
            }
            (Parts::Boxes(a), Parts::Boxes(b)) => {
                let mut acc = SetDescriptor::empty(self.space.clone());
                for (al, ar) in a {
                    for (bl, br) in b {
                        let piece = self.with_parts(Parts::Boxes(vec![(al.minkowski_sum(bl)?, ar.minkowski_sum(br)?)]));
                        acc = acc.union(&piece)?;
                    }
                }
                acc
            }
            _ => unreachable!("same space"),
        })
    }

    /// Erosion `{x : x + K subset of A}` for nonempty `K`.
    pub fn erosion(&self, kernel: &Self) -> Result<Self> {
        self.same_space(kernel)?;
        if kernel.is_empty() {
            return Err(Error::InvalidInput("erosion by the empty set is the whole group".into()));
        }
        Ok(match (&self.parts, &kernel.parts) {
            (Parts::Line(a), Parts::Line(k)) => {
                let mut result: Option<Vec<(Real, Real)>> = None;
                for (c, d) in k {
                    let eroded: Vec<(Real, Real)> = a
                        .iter()
                        .map(|(s, e)| (*s - *c, *e - *d))
                        .filter(|(s, e)| lt(s, e))
                        .collect();
                    result = Some(match result {
                        None => eroded,
                        Some(prev) => line_intersection(&prev, &eroded),
                    });
                }
                self.with_parts(Parts::Line(canon_line(result.unwrap_or_default())))
            }
            (Parts::Ints(a), Parts::Ints(k)) => {
                let mut result: Option<Vec<(i64, i64)>> = None;
                for &(c, d) in k {
                    let eroded: Vec<(i64, i64)> = a
                        .iter()
                        .map(|&(s, e)| {
                            let lo = if s == UNBOUNDED_LOW { s } else { s - c };
                            let hi = if e == UNBOUNDED_HIGH { e } else { e - d + 1 };
                            (lo, hi)
                        })
                        .filter(|(s, e)| s < e)
                        .collect();
                    result = Some(match result {
                        None => eroded,
                        Some(prev) => int_intersection(&prev, &eroded),
                    });
                }
                self.with_parts(Parts::Ints(canon_ints(result.unwrap_or_default())))
            }
            (Parts::Residues(a), Parts::Residues(k)) => {
                self.with_parts(Parts::Residues(residue::erosion(self.p(), a, k)?))
            }
            (Parts::Elements(_), Parts::Elements(_)) => {
                let whole = SetDescriptor::whole(self.space.clone())?;
                let outside = whole.difference(self)?;
                whole.difference(&outside.minkowski_sum(&kernel.negate()?)?)?
            }
            (Parts::Boxes(_), Parts::Boxes(kb)) => {
                let mut result: Option<SetDescriptor> = None;
                for (kl, kr) in kb {
                    let piece = self.with_parts(Parts::Boxes(vec![(kl.clone(), kr.clone())]));
                    let eroded = self.erode_by_box(&piece)?;
                    result = Some(match result {
                        None => eroded,
                        Some(prev) => prev.intersection(&eroded)?,
                    });
                }
                result.expect("kernel nonempty")
            }
            _ => unreachable!("same space"),
        })
    }

    /// `(A - k0) \ ((U \ A) - K)` with `U` a box containing `(A - k0) + K`.
    fn erode_by_box(&self, kernel: &Self) -> Result<Self> {
        let k0 = kernel.any_point().expect("nonempty kernel");
        let shifted = self.translate(&self.space.negate(&k0)?)?;
        let universe = shifted.minkowski_sum(kernel)?.hull()?;
        let outside = universe.difference(self)?;
        shifted.difference(&outside.minkowski_sum(&kernel.negate()?)?)
    }

    /// Smallest box-shaped superset: an interval or range on `R`/`Z`, the
    /// whole group on compact factors.
    pub fn hull(&self) -> Result<Self> {
        Ok(match &self.parts {
            Parts::Line(v) => match (v.first(), v.last()) {
                (Some(f), Some(l)) => self.with_parts(Parts::Line(vec![(f.0, l.1)])),
                _ => self.clone(),
            },
            Parts::Ints(v) => match (v.first(), v.last()) {
                (Some(f), Some(l)) => self.with_parts(Parts::Ints(vec![(f.0, l.1)])),
                _ => self.clone(),
            },
            Parts::Residues(_) | Parts::Elements(_) => SetDescriptor::whole(self.space.clone())?,
            Parts::Boxes(v) => {
                if v.is_empty() {
                    return Ok(self.clone());
                }
                let (ls, rs) = self.space.factors().expect("product");
                let mut left = SetDescriptor::empty(ls);
                let mut right = SetDescriptor::empty(rs);
                for (l, r) in v {
                    left = left.union(l)?;
                    right = right.union(r)?;
                }
                self.with_parts(Parts::Boxes(vec![(left.hull()?, right.hull()?)]))
            }
        })
    }

    /// Some element of a nonempty set.
    pub fn any_point(&self) -> Option<GroupElement> {
        match &self.parts {
            Parts::Line(v) => v.iter().find(|(a, _)| a.is_finite()).map(|(a, _)| GroupElement::Real(*a)),
            Parts::Ints(v) => v
                .iter()
                .find(|(a, _)| *a != UNBOUNDED_LOW)
                .map(|(a, _)| GroupElement::Integer(*a)),
            Parts::Residues(v) => v.first().map(|&(r, _)| GroupElement::Residue(r)),
            Parts::Elements(v) => v.first().map(|&r| GroupElement::Residue(r)),
            Parts::Boxes(v) => v
                .first()
                .and_then(|(l, r)| Some(GroupElement::pair(l.any_point()?, r.any_point()?))),
        }
    }

    /// `∂^K A = ((A+K) ∩ (G∖A°)) ∪ ((−K + cl(G∖A)) ∩ A)`.
    ///
    /// Up to null sets this is `((A+K) \ A) ∪ (A \ (A ⊖ K))`, which is what is
    /// computed. For an empty `K` the boundary is empty.
    pub fn k_boundary(&self, kernel: &Self) -> Result<Self> {
        self.same_space(kernel)?;
        if kernel.is_empty() || self.is_empty() {
            return Ok(SetDescriptor::empty(self.space.clone()));
        }
        let dilated = self.minkowski_sum(kernel)?;
        let eroded = self.erosion(kernel)?;
        dilated.difference(self)?.union(&self.difference(&eroded)?)
    }

    /// Topological boundary points of the atoms (interval endpoints); empty
    /// for the clopen atoms of the other groups.
    pub fn boundary_points(&self) -> Vec<Real> {
        match &self.parts {
            Parts::Line(v) => v.iter().flat_map(|(a, b)| [*a, *b]).filter(|x| x.is_finite()).collect(),
            _ => vec![],
        }
    }
}

fn line_contains(v: &[(Real, Real)], t: &Real) -> bool {
    let i = v.partition_point(|(a, _)| le(a, t));
    i > 0 && lt(t, &v[i - 1].1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn padic(p: u64, k: u32) -> SpaceDescriptor {
        SpaceDescriptor::padic(p, k).unwrap()
    }

    #[test]
    fn haar_examples() {
        assert_eq!(SetDescriptor::interval(0, 2).haar_measure().unwrap(), Real::integer(2));
        let class = SetDescriptor::residue_classes(padic(3, 4), &[(2, 1)]).unwrap();
        assert_eq!(class.haar_measure().unwrap(), Real::ratio(1, 3));
        assert_eq!(SetDescriptor::integers([0, 1, 5]).haar_measure().unwrap(), Real::integer(3));
    }

    #[test]
    fn unbounded_measure_is_an_error() {
        let ray = SetDescriptor::interval(Real::zero(), Real::infinity());
        assert_eq!(ray.haar_measure(), Err(Error::MeasureInfinite));
        let all = SetDescriptor::whole(SpaceDescriptor::Integers).unwrap();
        assert_eq!(all.haar_measure(), Err(Error::MeasureInfinite));
    }

    #[test]
    fn k_boundary_of_interval() {
        let a = SetDescriptor::interval(0, 10);
        let k = SetDescriptor::interval(-1, 1);
        let b = a.k_boundary(&k).unwrap();
        assert_eq!(
            b.intervals_slice().unwrap(),
            &[(Real::integer(-1), Real::integer(1)), (Real::integer(9), Real::integer(11))]
        );
        assert_eq!(b.haar_measure().unwrap(), Real::integer(4));
    }

    #[test]
    fn k_boundary_with_trivial_kernel() {
        let a = SetDescriptor::intervals(vec![(Real::ratio(1, 3), Real::integer(2)), (Real::integer(5), Real::integer(7))]);
        let k = SetDescriptor::interval(0, Real::ratio(1, 1_000_000_000));
        assert!(a.k_boundary(&k).unwrap().haar_measure().unwrap() <= Real::ratio(4, 1_000_000_000));
        let z = SetDescriptor::int_closed(-3, 3);
        assert!(z.k_boundary(&SetDescriptor::integers([0])).unwrap().is_empty());
    }

    #[test]
    fn k_boundary_of_clopen_class_is_empty() {
        let a = SetDescriptor::residue_classes(padic(5, 3), &[(2, 1)]).unwrap();
        let k = SetDescriptor::residue_classes(padic(5, 3), &[(0, 1)]).unwrap();
        assert!(a.k_boundary(&k).unwrap().is_empty());
        let big = SetDescriptor::whole(padic(5, 3)).unwrap();
        assert_eq!(a.k_boundary(&big).unwrap().haar_measure().unwrap(), Real::integer(1));
    }

    #[test]
    fn integer_ranges_set_algebra() {
        let a = SetDescriptor::int_closed(0, 9);
        let k = SetDescriptor::int_closed(-1, 1);
        let b = a.k_boundary(&k).unwrap();
        assert_eq!(b.int_ranges_slice().unwrap(), &[(-1, 1), (9, 11)]);
        assert_eq!(a.negate().unwrap().int_ranges_slice().unwrap(), &[(-9, 1)]);
    }

    #[test]
    fn cyclic_boundary() {
        let s = SpaceDescriptor::cyclic(12).unwrap();
        let a = SetDescriptor::elements(s.clone(), 0..4).unwrap();
        let k = SetDescriptor::elements(s, [0, 1]).unwrap();
        let b = a.k_boundary(&k).unwrap();
        assert_eq!(b.elements_slice().unwrap(), &[3, 4]);
    }

    #[test]
    fn product_box_boundary() {
        let a = SetDescriptor::product(&SetDescriptor::interval(0, 4), &SetDescriptor::interval(0, 4)).unwrap();
        let k = SetDescriptor::product(&SetDescriptor::interval(-1, 1), &SetDescriptor::interval(-1, 1)).unwrap();
        let b = a.k_boundary(&k).unwrap();
        // [-1,5)^2 minus [1,3)^2.
        assert_eq!(b.haar_measure().unwrap(), Real::integer(32));
        let inside = GroupElement::pair(GroupElement::Real(Real::integer(2)), GroupElement::Real(Real::integer(2)));
        let ring = GroupElement::pair(GroupElement::Real(Real::ratio(1, 2)), GroupElement::Real(Real::integer(2)));
        assert!(!b.contains(&inside).unwrap());
        assert!(b.contains(&ring).unwrap());
    }

    #[test]
    fn product_union_is_disjoint() {
        let a = SetDescriptor::product(&SetDescriptor::interval(0, 2), &SetDescriptor::int_range(0, 2)).unwrap();
        let b = SetDescriptor::product(&SetDescriptor::interval(1, 3), &SetDescriptor::int_range(1, 3)).unwrap();
        let u = a.union(&b).unwrap();
        assert_eq!(u.haar_measure().unwrap(), Real::integer(4 + 4 - 1));
    }

    #[test]
    fn mixed_spaces_are_rejected() {
        let a = SetDescriptor::interval(0, 1);
        let b = SetDescriptor::int_range(0, 1);
        assert!(matches!(a.k_boundary(&b), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn json_round_trip_canonicalizes() {
        let text = r#"{"space":{"kind":"euclidean_line"},"atoms":[
            {"interval":{"start":"1/2","end":"2/1"}},{"interval":{"start":0,"end":"1/1"}}]}"#;
        let s: SetDescriptor = serde_json::from_str(text).unwrap();
        assert_eq!(s, SetDescriptor::interval(0, 2));
        let back = serde_json::to_string(&s).unwrap();
        assert!(back.contains("\"0/1\""), "{back}");
        let again: SetDescriptor = serde_json::from_str(&back).unwrap();
        assert_eq!(again, s);
    }
}
