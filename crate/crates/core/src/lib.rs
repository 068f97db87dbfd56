//! Exact computations with graded modules over the exterior algebra
//! `E(e1, e2)` with `0 < |e1| < |e2|` and its quotient `E(e1, e2)/(e1 e2)`.
//!
//! The crate builds lightning flashes and free modules, computes the
//! filtration `F_j = e2⁻¹(e1 F_{j-1})` and related invariants, decomposes
//! finite modules into flashes with a checkable certificate, and runs the
//! finite-stage checks showing that `∏ M(n)` is not a sum of flashes.
//!
//! ```
//! use lightning_flash::module::{counterexample_stage, AlgebraParams};
//! use lightning_flash::operators::filtration;
//!
//! let params = AlgebraParams::default();
//! let stage = counterexample_stage(4, &params).unwrap();
//! let f2 = filtration(&stage, 2);
//! assert_eq!(f2.part(0).dim(), 3);
//! ```

pub mod cli;
pub mod decompose;
pub mod field;
pub mod io;
pub mod linalg;
pub mod module;
pub mod operators;
pub mod suite;

pub use field::{Elem, Field};
pub use module::{AlgebraParams, FlashShape, Generator, Module, Variant};
