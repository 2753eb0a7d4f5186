//! Orbits of the spin group on the secant variety of lines.

mod classify;
mod dims;
mod group;
mod label;
mod pencil;
mod sigma2;
mod witt;

pub use classify::{classify, classify_detailed, same_certificate, sample, verify_certificate, Classification, Sample};
pub use dims::{closed_form_dims, is_tangent_at, orbit_dimension, tangent_cone_span, terracini_deficient, DimensionTable};
pub use group::{
    conjugate, conjugate_subspace, group_apply, group_apply_inverse, random_group_element, reflect, GroupElement,
};
pub use label::{generating_certificate, representative, tangent_representative, Certificate, OrbitLabel};
pub use sigma2::decompositions_sigma2;
pub use witt::{factor_extract, factor_lift, witt_standardize};
