//! Exact rational linear algebra and feasibility LPs.

mod cone;
mod matrix;
mod simplex;

pub use cone::{cone_dimension, relative_interior, single_ray_generator};
pub use matrix::{kernel_basis, rank, solve_square, RationalMatrix};
pub use simplex::{solve_feasibility, Bound, FeasibilityProblem, FeasibilityResult};
