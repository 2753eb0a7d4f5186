//! The exactness layer: scalars, exterior and Clifford algebra, Pfaffians,
//! linear algebra and polynomial families.

pub mod exterior;
pub mod index_set;
pub mod linalg;
mod modular;
pub mod pfaffian;
pub mod poly;
pub mod scalar;
pub mod vector;

pub use exterior::{clifford_apply, contract, dual_apply, pairing, wedge, CoSpinor, ExteriorElement, Spinor};
pub use index_set::IndexSet;
pub use linalg::{determinant, exact_kernel, exact_rank, Matrix};
pub use pfaffian::pfaffian;
pub use poly::{poly_divide_t, poly_eval, UniPoly, UniPolySpinor};
pub use scalar::Scalar;
pub use vector::{scalar_product, Vector};
