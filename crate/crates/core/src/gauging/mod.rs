//! ℤ₂ cohomology, particle-hole gauging of cyclic metric groups, boson
//! condensation, and the gauging counts.

mod cohomology;
mod condense;
mod equivariant;

pub use cohomology::{z2_cohomology, z2_cohomology_brute_force, Z2Module, MAX_COCHAINS};
pub use condense::{
    condense_boson, BosonEvidence, CondensationReport, Orbit, TrivialComponent, MAX_LABELING_NODES,
};
pub use equivariant::{
    count_gaugings_per_form, count_metaplectic, equivariantize, gauge_cyclic, gauge_particle_hole,
    particle_hole_extension, CrossedExtension, EquivariantObject, GaugingDatum,
};
