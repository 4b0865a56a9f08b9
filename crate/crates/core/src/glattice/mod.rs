//! Finite permutation groups, lattices with a group action, their cohomology,
//! and flasque resolutions.

mod cohomology;
mod group;
mod lattice;
mod resolution;

pub use cohomology::{
    coflasque_report, flasque_report, h1, is_coflasque, is_flasque, tate_h0, tate_h_minus1, ClassCheck,
    VanishingReport,
};
pub use group::{max_group_order, FiniteGroup, Perm, Subgroup, DEFAULT_MAX_GROUP_ORDER, MAX_GROUP_ORDER_ENV};
pub use lattice::GLattice;
pub use resolution::{
    flasque_resolution, permutation_lattice_from_summands, FlasqueResolution, LatticeSequence, SequenceChecks,
};
