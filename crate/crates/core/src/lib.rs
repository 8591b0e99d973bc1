//! Cut-and-project schemes, model sets and the weighted Dirac combs they
//! carry, with exact arithmetic where it matters.

pub mod cps;
pub mod error;
pub mod gap;
pub mod groups;
pub mod measures;
pub mod meyer;
pub mod numeric;

pub use error::{Error, Result};
pub use numeric::{QuadraticNumber, Rational, Real, Weight};
