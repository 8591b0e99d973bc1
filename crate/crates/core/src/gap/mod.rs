//! Generalized almost periodicity: Riemann sandwiches, certificates for
//! regular model sets, the operator `𝒯`, and window reconstruction.

mod certificate;
mod operator;
mod reconstruct;
mod sandwich;

pub use crate::meyer::min_gap;
pub use certificate::{check_ordering, gap_certificate, Certificate, CertificateReport};
pub use operator::{default_psi, interior_patch, t_operator};
pub use reconstruct::{reconstruct_window, WindowEstimate, MIN_CELL_POINTS};
pub use sandwich::{riemann_sandwich, RiemannSandwich};
