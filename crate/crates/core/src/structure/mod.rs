//! Structural elements: brackets, central generators, volume elements,
//! standardized coordinates, the tensor factorisation Γ, the classical
//! Clifford algebra and the Takeuchi splitting ϑ.

mod center;
pub mod classical;
mod takeuchi;
mod tensor;

pub use center::{center_basis, z_monomials, CenterReport};
pub use classical::{classical_context, CarAlgebra, CarElement};
pub use takeuchi::{
    component_count, component_exponents, takeuchi, takeuchi_component, takeuchi_inverse, TakeuchiComponent,
};
pub use tensor::{gamma, gamma_inverse, TensorElement, TensorRecord};

use crate::algebra::{AlgebraContext, Convention, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// x·y − t·y·x; t = −1 gives the anticommutator, t = 1 the commutator.
pub fn bracket(x: &Element, y: &Element, t: &Scalar) -> Result<Element> {
    x.checked_mul(y)?.checked_sub(&y.checked_mul(x)?.scale(t)?)
}

pub fn commutator(x: &Element, y: &Element) -> Result<Element> {
    bracket(x, y, &Scalar::one())
}

pub fn anticommutator(x: &Element, y: &Element) -> Result<Element> {
    bracket(x, y, &Scalar::from_int(-1))
}

/// z_a = qω_a − (q−1)ψ_aψ_a*ω_a^{k+1}, or qω_a − (q−1)φ_aφ_a*ω_a in the φ presentation.
pub fn central_generator(ctx: &AlgebraContext, a: usize) -> Result<Element> {
    let w = Element::omega_power(ctx, a, 1)?;
    let pd = Element::raising(ctx, a)?.checked_mul(&Element::lowering(ctx, a)?)?;
    let tail = match ctx.convention() {
        Convention::Psi => Element::omega_power(ctx, a, ctx.k_integer()? as i64 + 1)?,
        Convention::Phi => w.clone(),
    };
    let q = ctx.q();
    w.scale(q)?.checked_sub(&pd.checked_mul(&tail)?.scale(&q.checked_sub(&Scalar::one())?)?)
}

/// f_r = [ψ_1, ψ_1*] ⋯ [ψ_r, ψ_r*] (with φ in the φ presentation); f_0 = 1.
pub fn volume_element(ctx: &AlgebraContext, r: usize) -> Result<Element> {
    if r > ctx.n() {
        return Err(Error::IndexOutOfRange { index: r as i64, max: ctx.n() });
    }
    let mut acc = Element::one(ctx);
    for a in 1..=r {
        acc = acc.checked_mul(&commutator(&Element::raising(ctx, a)?, &Element::lowering(ctx, a)?)?)?;
    }
    Ok(acc)
}

/// ε_{2j−1} = ψ_j* − ψ_j, ε_{2j} = ψ_j* + ψ_j (1 ≤ j ≤ 2n).
pub fn standardized_coordinate(ctx: &AlgebraContext, j: usize) -> Result<Element> {
    if j == 0 || j > 2 * ctx.n() {
        return Err(Error::IndexOutOfRange { index: j as i64, max: 2 * ctx.n() });
    }
    let a = j.div_ceil(2);
    let p = Element::raising(ctx, a)?;
    let d = Element::lowering(ctx, a)?;
    if j % 2 == 1 {
        d.checked_sub(&p)
    } else {
        d.checked_add(&p)
    }
}
