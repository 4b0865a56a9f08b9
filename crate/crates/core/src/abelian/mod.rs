//! Exact arithmetic of finitely generated abelian groups.

mod group;
mod matrix;
mod snf;

pub use group::{compose, exact_at, finite_order, GroupHom, InvariantFactors, PresentedGroup};
pub use matrix::IntegerMatrix;
pub use snf::{hermite_rows, integer_kernel, smith_normal_form, solve_echelon, solve_integer, Smith};
