//! The algebra Cl_q(n, k): contexts, normal-form monomials and elements,
//! multiplication, the alternative basis B′, and the (anti-)involutions.

mod alt;
mod context;
mod convention;
mod element;
pub(crate) mod engine;
mod involution;
mod monomial;
mod relations;
pub mod text;

pub use alt::{enumerate_alt_basis, from_alt_basis, is_alt_letter, to_alt_basis, AltElement};
pub use context::{AlgebraContext, Convention, QMode, Twist};
pub use convention::convert_convention;
pub use element::{Degree, Element, GeneratorKind};
pub use involution::{involution, Involution, InvolutionKind};
pub use monomial::{enumerate_basis, Letter, Monomial};
pub use relations::{
    defining_relations, generator_images, relation_residuals, ElementAlgebra, GeneratorImages, Realization, Relation,
};
pub use text::{MonomialRecord, TermRecord};

use crate::error::Result;

/// Shorthand for [`Element::generator`].
pub fn generator(ctx: &AlgebraContext, kind: GeneratorKind, a: usize) -> Result<Element> {
    Element::generator(ctx, kind, a)
}

/// Product in normal form.
pub fn multiply(x: &Element, y: &Element) -> Result<Element> {
    x.checked_mul(y)
}

/// Normal form of ω_a^e.
pub fn omega_power(ctx: &AlgebraContext, a: usize, e: i64) -> Result<Element> {
    Element::omega_power(ctx, a, e)
}

/// ℤ^n-degree or the inhomogeneous marker.
pub fn degree(x: &Element) -> Degree {
    x.degree()
}
