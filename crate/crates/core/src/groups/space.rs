use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Real;

/// Largest `p^k` accepted for a truncated p-adic space.
pub const MAX_PADIC_MODULUS: u64 = 1 << 40;

/// The ambient groups this crate knows how to measure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceDescriptor {
    EuclideanLine,
    EuclideanPlane,
    Integers,
    /// `Z_p` truncated at depth `k` (elements are residues mod `p^k`).
    #[serde(rename = "padic")]
    PAdic { p: u64, k: u32 },
    /// `Z/mZ`; `m = 1` is the trivial group.
    Cyclic { m: u64 },
    Product { left: Box<SpaceDescriptor>, right: Box<SpaceDescriptor> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaarNormalization {
    Lebesgue,
    Counting,
    /// Total mass one.
    Probability,
    Product,
}

/// An element of one of the catalogued groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupElement {
    Real(Real),
    Integer(i64),
    /// Residue in `Z_p` (mod `p^k`) or in `Z/mZ`.
    Residue(u64),
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl GroupElement {
    pub fn pair(a: GroupElement, b: GroupElement) -> Self {
        GroupElement::Pair(Box::new(a), Box::new(b))
    }

    /// Coordinate on the line for elements of `R` or `Z`.
    pub fn as_line(&self) -> Option<Real> {
        match self {
            GroupElement::Real(x) => Some(*x),
            GroupElement::Integer(n) => Some(Real::integer(*n)),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.as_line().map(|x| x.to_f64())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Real(x) => write!(f, "{x}"),
            GroupElement::Integer(n) => write!(f, "{n}"),
            GroupElement::Residue(r) => write!(f, "[{r}]"),
            GroupElement::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl SpaceDescriptor {
    pub fn padic(p: u64, k: u32) -> Result<Self> {
        let s = SpaceDescriptor::PAdic { p, k };
        s.validate()?;
        Ok(s)
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        let s = SpaceDescriptor::Cyclic { m };
        s.validate()?;
        Ok(s)
    }

    pub fn trivial() -> Self {
        SpaceDescriptor::Cyclic { m: 1 }
    }

    pub fn product(left: SpaceDescriptor, right: SpaceDescriptor) -> Result<Self> {
        let s = SpaceDescriptor::Product { left: Box::new(left), right: Box::new(right) };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceDescriptor::PAdic { p, k } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidInput(format!("p = {p} is not prime")));
                }
                if *k == 0 {
                    return Err(Error::InvalidInput("p-adic precision k must be >= 1".into()));
                }
                match p.checked_pow(*k) {
                    Some(m) if m <= MAX_PADIC_MODULUS => Ok(()),
                    _ => Err(Error::InvalidInput(format!("{p}^{k} exceeds the supported modulus"))),
                }
            }
            SpaceDescriptor::Cyclic { m } if *m == 0 => {
                Err(Error::InvalidInput("cyclic order m must be >= 1".into()))
            }
            SpaceDescriptor::Product { left, right } => {
                if left.factors().is_some() || right.factors().is_some() {
                    return Err(Error::InvalidInput("products may not be nested".into()));
                }
                left.validate()?;
                right.validate()
            }
            _ => Ok(()),
        }
    }

    /// Factors of a product space; the plane is `R x R`.
    pub fn factors(&self) -> Option<(SpaceDescriptor, SpaceDescriptor)> {
        match self {
            SpaceDescriptor::EuclideanPlane => {
                Some((SpaceDescriptor::EuclideanLine, SpaceDescriptor::EuclideanLine))
            }
            SpaceDescriptor::Product { left, right } => Some(((**left).clone(), (**right).clone())),
            _ => None,
        }
    }

    pub fn haar_normalization(&self) -> HaarNormalization {
        match self {
            SpaceDescriptor::EuclideanLine => HaarNormalization::Lebesgue,
            SpaceDescriptor::Integers | SpaceDescriptor::Cyclic { .. } => HaarNormalization::Counting,
            SpaceDescriptor::PAdic { .. } => HaarNormalization::Probability,
            SpaceDescriptor::EuclideanPlane | SpaceDescriptor::Product { .. } => HaarNormalization::Product,
        }
    }

    pub fn is_compact(&self) -> bool {
        match self {
            SpaceDescriptor::PAdic { .. } | SpaceDescriptor::Cyclic { .. } => true,
            SpaceDescriptor::EuclideanLine | SpaceDescriptor::Integers => false,
            _ => {
                let (l, r) = self.factors().expect("product");
                l.is_compact() && r.is_compact()
            }
        }
    }

    pub fn is_discrete(&self) -> bool {
        match self {
            SpaceDescriptor::Integers | SpaceDescriptor::Cyclic { .. } => true,
            SpaceDescriptor::EuclideanLine | SpaceDescriptor::PAdic { .. } => false,
            _ => {
                let (l, r) = self.factors().expect("product");
                l.is_discrete() && r.is_discrete()
            }
        }
    }

    /// `p^k` for p-adic spaces, `m` for cyclic ones.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            SpaceDescriptor::PAdic { p, k } => Some(p.pow(*k)),
            SpaceDescriptor::Cyclic { m } => Some(*m),
            _ => None,
        }
    }

    pub fn zero(&self) -> GroupElement {
        match self {
            SpaceDescriptor::EuclideanLine => GroupElement::Real(Real::zero()),
            SpaceDescriptor::Integers => GroupElement::Integer(0),
            SpaceDescriptor::PAdic { .. } | SpaceDescriptor::Cyclic { .. } => GroupElement::Residue(0),
            _ => {
                let (l, r) = self.factors().expect("product");
                GroupElement::pair(l.zero(), r.zero())
            }
        }
    }

    pub fn contains_element(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (SpaceDescriptor::EuclideanLine, GroupElement::Real(_)) => true,
            (SpaceDescriptor::Integers, GroupElement::Integer(_)) => true,
            (SpaceDescriptor::PAdic { .. } | SpaceDescriptor::Cyclic { .. }, GroupElement::Residue(r)) => {
                *r < self.modulus().expect("modulus")
            }
            (_, GroupElement::Pair(a, b)) => match self.factors() {
                Some((l, r)) => l.contains_element(a) && r.contains_element(b),
                None => false,
            },
            _ => false,
        }
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains_element(x) {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!("{x} is not an element of {self:?}")))
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (x, y) {
            (GroupElement::Real(a), GroupElement::Real(b)) => GroupElement::Real(*a + *b),
            (GroupElement::Integer(a), GroupElement::Integer(b)) => GroupElement::Integer(a + b),
            (GroupElement::Residue(a), GroupElement::Residue(b)) => {
                let m = self.modulus().expect("modulus") as u128;
                GroupElement::Residue(((*a as u128 + *b as u128) % m) as u64)
            }
            (GroupElement::Pair(a1, b1), GroupElement::Pair(a2, b2)) => {
                let (l, r) = self.factors().expect("product");
                GroupElement::pair(l.add(a1, a2)?, r.add(b1, b2)?)
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn negate(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        Ok(match x {
            GroupElement::Real(a) => GroupElement::Real(-*a),
            GroupElement::Integer(a) => GroupElement::Integer(-a),
            GroupElement::Residue(a) => {
                let m = self.modulus().expect("modulus");
                GroupElement::Residue((m - a) % m)
            }
            GroupElement::Pair(a, b) => {
                let (l, r) = self.factors().expect("product");
                GroupElement::pair(l.negate(a)?, r.negate(b)?)
            }
        })
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.add(x, &self.negate(y)?)
    }

    /// Invariant metric: absolute value on `R` and `Z`, `p^-v(x-y)` on
    /// `Z_p` (zero below the truncation depth), circular distance on `Z/mZ`,
    /// maximum over factors of a product.
    pub fn distance(&self, x: &GroupElement, y: &GroupElement) -> Result<f64> {
        let d = self.sub(x, y)?;
        Ok(match (self, &d) {
            (SpaceDescriptor::EuclideanLine, GroupElement::Real(a)) => a.abs().to_f64(),
            (SpaceDescriptor::Integers, GroupElement::Integer(a)) => a.unsigned_abs() as f64,
            (SpaceDescriptor::PAdic { p, k }, GroupElement::Residue(a)) => {
                if *a == 0 {
                    0.0
                } else {
                    let mut v = 0u32;
                    let mut r = *a;
                    while r % p == 0 && v < *k {
                        r /= p;
                        v += 1;
                    }
                    (*p as f64).powi(-(v as i32))
                }
            }
            (SpaceDescriptor::Cyclic { m }, GroupElement::Residue(a)) => (*a).min(m - a) as f64,
            (_, GroupElement::Pair(a, b)) => {
                let (l, r) = self.factors().expect("product");
                let zl = l.zero();
                let zr = r.zero();
                l.distance(a, &zl)?.max(r.distance(b, &zr)?)
            }
            _ => unreachable!("checked in sub"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_parameters() {
        assert!(SpaceDescriptor::padic(4, 3).is_err());
        assert!(SpaceDescriptor::padic(3, 0).is_err());
        assert!(SpaceDescriptor::padic(2, 60).is_err());
        assert!(SpaceDescriptor::cyclic(0).is_err());
        let plane = SpaceDescriptor::EuclideanPlane;
        assert!(SpaceDescriptor::product(plane, SpaceDescriptor::Integers).is_err());
        assert!(SpaceDescriptor::product(SpaceDescriptor::Integers, SpaceDescriptor::padic(5, 2).unwrap()).is_ok());
    }

    #[test]
    fn padic_metric() {
        let s = SpaceDescriptor::padic(3, 4).unwrap();
        let d = s.distance(&GroupElement::Residue(10), &GroupElement::Residue(1)).unwrap();
        assert!((d - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(s.distance(&GroupElement::Residue(5), &GroupElement::Residue(5)).unwrap(), 0.0);
        assert_eq!(s.negate(&GroupElement::Residue(1)).unwrap(), GroupElement::Residue(80));
    }

    #[test]
    fn cyclic_metric_wraps() {
        let s = SpaceDescriptor::cyclic(10).unwrap();
        assert_eq!(s.distance(&GroupElement::Residue(1), &GroupElement::Residue(9)).unwrap(), 2.0);
    }

    #[test]
    fn serde_shape() {
        let s = SpaceDescriptor::padic(3, 6).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"kind":"padic","p":3,"k":6}"#);
    }
}
