//! Exact-arithmetic library for net logarithmic tangent sheaves on complete
//! intersections: Gröbner machinery over Q and simple extensions, presented
//! graded modules with their homological toolbox, the construction pipeline,
//! restriction to rational curves, and stability certificates.

pub mod error;
pub mod scalar;
pub mod poly;
pub mod modvec;
pub mod groebner;
pub mod macaulay;
pub mod hilbert;
pub mod module;
pub mod homtools;
pub mod pipeline;
pub mod curve;
pub mod stability;
pub mod verify;

pub use error::{Error, Result};
