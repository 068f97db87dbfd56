//! Text formats: module documents, build expressions, and Graphviz output.

mod document;
mod dot;
mod expr;

pub use document::{basis_names, parse_module, print_module, ParseError};
pub use dot::to_dot;
pub use expr::{build_module, parse_expr, ExprError, Term};
