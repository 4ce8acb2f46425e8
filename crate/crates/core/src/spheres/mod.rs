//! Spheres in the cut complex and exhaustions of infinite spaces by them.

mod exhaustion;
mod recognize;
mod sphere;

pub use exhaustion::*;
pub use recognize::*;
pub use sphere::*;
