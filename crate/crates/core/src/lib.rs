//! Local-global obstruction groups of tori over arithmetic curves, computed as
//! cohomology of decorated reduction graphs.

pub mod abelian;
pub mod cli;
pub mod error;
pub mod decograph;
pub mod glattice;
pub mod reduction;

pub use error::{Error, Result};
