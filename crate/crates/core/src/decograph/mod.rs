//! Decorated graphs: graphs with a coefficient system of abelian groups, their
//! cohomology, the six-term sequence, and contraction.

mod contraction;
mod graph;
mod sequence;
mod system;

pub use contraction::{contract, contract_to_point, is_redundant, ContractionOutcome, ContractionStep};
pub use graph::{Graph, HalfEdge};
pub use sequence::{six_term, ShortExactSequence, SixTerm};
pub use system::{
    cokernel_system, image_system, topological_h1, CochainComplex, CoefficientSystem, DecoratedGraph, SystemMorphism,
};
