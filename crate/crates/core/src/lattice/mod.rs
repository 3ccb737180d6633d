//! Exact arithmetic of integer lattices carrying symmetric trilinear
//! (cubic) forms and linear forms: evaluation, unimodular basis change and
//! vanishing-locus searches.

mod cubic;
mod matrix;
mod roots;
mod vanishing;
mod vector;

pub use cubic::{change_basis, CubicForm};
pub use matrix::{
    covector_kernel_basis, integer_kernel_basis, SquareMatrix, UnimodularMap,
};
pub use roots::rational_roots_cubic;
pub use vanishing::{
    find_vanishing_hyperplanes, find_vanishing_lines, hyperplane_kernel,
    vanishes_on_span, DEFAULT_HYPERPLANE_BOUND,
};
pub use vector::{IntVector, LinearForm};
