//! Cut-and-project schemes `(G, H, L)`, model sets `⋏(W)` and weighted
//! combs `Ω(h)`.

mod lift;
mod scheme;
mod weight;
mod window;

pub use lift::{character_lift_check, LiftReport};
pub use scheme::{LatticePoint, PAdicScheme, Projection, QuadraticScheme, Scheme, SchemeConfig, TrivialScheme};
pub(crate) use weight::eval_pl as weight_eval;
pub use weight::{ClassValue, WeightFunction};
pub use window::Window;
