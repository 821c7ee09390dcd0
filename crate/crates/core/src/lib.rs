//! Evolutoids, involutoids and wavefronts of convex curves in the hyperbolic
//! plane, the Euclidean plane and the sphere.

pub mod commands;
pub mod curve;
pub mod error;
pub mod evolutoid;
pub mod figures;
pub mod involutoid;
pub mod io;
pub mod measures;
pub mod numeric;
pub mod series;
pub mod space;
pub mod verify;
pub mod wavefront;

pub use error::{Error, Result};
pub use space::{SpaceForm, Vec3};
