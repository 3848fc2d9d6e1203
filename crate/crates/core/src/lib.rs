//! Exact arithmetic in the quantized Clifford algebras Cl_q(n, k).
//!
//! Coefficients live in Q(ζ_m)(q) ([`scalar`]); elements are kept in the
//! normal form ∏ ψ_a^{p_a} (ψ_a*)^{d_a} ω_a^{v_a} ([`algebra`]).

pub mod algebra;
pub mod error;
pub mod linalg;
pub mod qgroup;
pub mod repr;
pub mod scalar;
pub mod structure;

pub use algebra::{AlgebraContext, Convention, Element, GeneratorKind, Monomial, Twist};
pub use error::{Error, Result};
pub use scalar::Scalar;
