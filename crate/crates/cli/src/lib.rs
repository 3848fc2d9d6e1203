//! Expression language and command-line front end for `qclifford`.

pub mod app;
pub mod expr;

pub use app::{run, Outcome};
pub use expr::{eval, evaluate, parse, parse_list, Expr};
