//! Standard van Hove sequences: `[-n, n)` on the line, `{-n, ..., n}` on the
//! integers, squares on the plane, and products with a whole compact factor.

use super::sets::SetDescriptor;
use super::space::SpaceDescriptor;
use crate::error::{Error, Result};
use crate::numeric::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct VanHoveSpec {
    space: SpaceDescriptor,
}

impl VanHoveSpec {
    /// Refuses compact groups, where no van Hove sequence is needed.
    pub fn new(space: SpaceDescriptor) -> Result<Self> {
        space.validate()?;
        if space.is_compact() {
            return Err(Error::Unsupported(format!(
                "{space:?} is compact; means over it are plain Haar integrals"
            )));
        }
        Ok(Self { space })
    }

    pub fn space(&self) -> &SpaceDescriptor {
        &self.space
    }

    /// The `n`-th set of the sequence (`n >= 1`).
    pub fn set_at(&self, n: u64) -> Result<SetDescriptor> {
        if n == 0 {
            return Err(Error::InvalidInput("van Hove index starts at 1".into()));
        }
        set_for(&self.space, n)
    }

    /// `θ(∂^K A_n) / θ(A_n)`, which tends to zero along the sequence.
    pub fn ratio(&self, n: u64, kernel: &SetDescriptor) -> Result<Real> {
        let a = self.set_at(n)?;
        Ok(a.k_boundary(kernel)?.haar_measure()? / a.haar_measure()?)
    }
}

fn set_for(space: &SpaceDescriptor, n: u64) -> Result<SetDescriptor> {
    let n = i64::try_from(n).map_err(|_| Error::InvalidInput("van Hove index too large".into()))?;
    match space {
        SpaceDescriptor::EuclideanLine => Ok(SetDescriptor::interval(-n, n)),
        SpaceDescriptor::Integers => Ok(SetDescriptor::int_closed(-n, n)),
        s if s.is_compact() => SetDescriptor::whole(s.clone()),
        s => {
            let (l, r) = s.factors().expect("non-compact product");
            SetDescriptor::product(&set_for(&l, n as u64)?, &set_for(&r, n as u64)?)
        }
    }
}
