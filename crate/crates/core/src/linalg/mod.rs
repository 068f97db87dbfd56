//! Exact dense linear algebra: echelon forms, kernels, images, preimages and
//! the subspace lattice. Everything here is degree-agnostic.

mod matrix;
mod subspace;

pub use matrix::{rref, Echelon, Matrix};
pub use subspace::{
    image, intersect, kernel, preimage_space, quotient_dim, sum_space, LinalgError, Subspace,
};
