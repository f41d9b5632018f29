//! Projective and complete resolutions.

mod assemble;
mod complete;
mod projective;

pub use assemble::{assemble_complex_resolution, AssembledResolution};
pub use complete::{
    complete_resolution, cyclic_group_complete_resolution, finite_dimension_complete_resolution,
    frobenius_complete_resolution, pad_split_surjective, zero_resolution, CompleteResolution, Flavor,
};
pub use projective::{
    closed_resolution, is_projective, projective_resolution, truncated_resolution, Closure, ProjectiveResolution,
    DEFAULT_HORIZON,
};

#[cfg(test)]
mod tests;
