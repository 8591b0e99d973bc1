use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groups::SetDescriptor;
use crate::numeric::Real;

/// A window in the internal space together with its regularity data.
///
/// Atoms are half-open intervals, residue classes or single elements of a
/// finite group; intervals have finite boundaries and the others are clopen,
/// so the boundary always has Haar measure zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SetDescriptor", into = "SetDescriptor")]
pub struct Window {
    descriptor: SetDescriptor,
    interior_nonempty: bool,
    closure_compact: bool,
}

impl TryFrom<SetDescriptor> for Window {
    type Error = crate::error::Error;
    fn try_from(d: SetDescriptor) -> Result<Self> {
        Ok(Window::new(d))
    }
}

impl From<Window> for SetDescriptor {
    fn from(w: Window) -> Self {
        w.descriptor
    }
}

impl Window {
    pub fn new(descriptor: SetDescriptor) -> Self {
        // Every nonempty atom is open up to a null set: intervals have
        // positive length after canonicalization, classes are open.
        let interior_nonempty = !descriptor.is_empty();
        let closure_compact = descriptor.is_bounded();
        Self { descriptor, interior_nonempty, closure_compact }
    }

    pub fn descriptor(&self) -> &SetDescriptor {
        &self.descriptor
    }

    pub fn interior_nonempty(&self) -> bool {
        self.interior_nonempty
    }

    pub fn closure_compact(&self) -> bool {
        self.closure_compact
    }

    /// Haar measure of the topological boundary.
    pub fn boundary_measure(&self) -> Real {
        Real::zero()
    }

    /// Relatively compact, nonempty interior, null boundary.
    pub fn is_regular(&self) -> bool {
        self.interior_nonempty && self.closure_compact && self.boundary_measure().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regularity_flags() {
        assert!(Window::new(SetDescriptor::interval(0, 1)).is_regular());
        assert!(!Window::new(SetDescriptor::interval(1, 1)).is_regular());
        let ray = SetDescriptor::interval(Real::zero(), Real::infinity());
        assert!(!Window::new(ray).is_regular());
    }
}
