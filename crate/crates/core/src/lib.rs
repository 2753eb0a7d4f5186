//! Exact computations on the secant variety of lines to the spinor variety.
//!
//! The half-spin space is `⋀^ev E` for `E = C^n`, acted on by `V = E ⊕ E^∨`
//! through Clifford multiplication. Every computation is exact over `Q` or
//! a quadratic extension `Q(sqrt d)`.

pub mod apolarity;
pub mod error;
pub mod isotropic;
pub mod multilinear;
pub mod orbit;
pub mod verify;

pub use error::{Result, SpinorError};
pub use multilinear::*;
