//! Exact linear algebra over the rationals.

mod matrix;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use subspace::{
    image_basis, induced_map, kernel_basis, quotient, solve, solve_with, subquotient,
    QuotientPresentation, Subspace,
};
