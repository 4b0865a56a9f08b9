//! Reduction graphs of models of curves, with subgroup labels encoding residue
//! fields, and the obstruction group computed as graph cohomology.

mod base_change;
mod graph;
mod monotonic;
mod systems;
mod table;

pub use base_change::base_change;
pub use graph::{
    Branch, ComponentKind, ComponentVertex, GaloisContext, PointVertex, ReductionGraph, ReductionGraphBuilder,
};
pub use monotonic::{is_monotonic, monotonic_implies_trivial, psi_injection, MonotonicReport, PsiReport, VanishingCheck};
pub use systems::{
    build_hk_system, build_hkappa_system, phi_surjection, sha, sha_all_p1_report, PhiReport, ShaP1Report,
};
pub use table::{CohomologyTable, CustomComponentData};
