//! The Takeuchi splitting ϑ = (ϑ_z)_z of Cl_q(n,k) into (2k)^n copies of the
//! classical Clifford algebra, with the inverse given by a discrete Fourier
//! transform in powers of ω.
//!
//! Per index, with z = ζ_{2k}^j and P = v v*:
//!   ψ ↦ z v,  ψ* ↦ z^{k−1} v*,  ω ↦ z (P + q^{-1}(1 − P)).
//! The z^{k−1} on ψ* is forced by ψψ* + q^k ψ*ψ = ω^{-k}.

use std::collections::HashMap;

use super::central_generator;
use super::classical::classical_context;
use crate::algebra::{convert_convention, AlgebraContext, Convention, Element, Letter};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One ϑ_z component, tagged by the exponents j with z_a = ζ_{2k}^{j_a}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TakeuchiComponent {
    pub exponents: Vec<u32>,
    pub value: Element,
}

pub fn component_count(ctx: &AlgebraContext) -> usize {
    (ctx.twice_k() as usize).pow(ctx.n() as u32)
}

/// Exponent tuples in component order: (ζ⁰, …, ζ^{2k−1}) per index, row-major
/// with index 1 varying slowest.
pub fn component_exponents(ctx: &AlgebraContext) -> Vec<Vec<u32>> {
    let t = ctx.twice_k();
    let mut out = vec![Vec::new()];
    for _ in 0..ctx.n() {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                (0..t).map(move |j| {
                    let mut e = e.clone();
                    e.push(j);
                    e
                })
            })
            .collect();
    }
    out
}

fn source(x: &Element) -> Result<(Element, u32)> {
    let ctx = x.ctx();
    let k = ctx
        .twist()
        .as_integer()
        .ok_or_else(|| Error::Precondition("the Takeuchi splitting needs an integer twist".into()))?;
    let y = if ctx.convention() == Convention::Phi { convert_convention(x, Convention::Psi)? } else { x.clone() };
    Ok((y, k))
}

struct Images {
    src: AlgebraContext,
    cl: AlgebraContext,
    k: u32,
    cache: HashMap<(usize, u32, Letter), Element>,
}

impl Images {
    fn new(src: &AlgebraContext, k: u32) -> Result<Self> {
        Ok(Images { src: src.clone(), cl: classical_context(src)?, k, cache: HashMap::new() })
    }

    /// ϑ_z of the letter at index a (1-based), z_a = ζ^j.
    fn letter(&mut self, a: usize, j: u32, l: Letter) -> Result<Element> {
        if let Some(e) = self.cache.get(&(a, j, l)) {
            return Ok(e.clone());
        }
        let cl = &self.cl;
        let t = 2 * self.k as i64;
        let e = l.p as i64 + (self.k as i64 - 1) * l.d as i64 + l.v as i64;
        let z = self.src.zeta_2k().pow((j as i64 * e).rem_euclid(t))?;
        let mut acc = Element::from_scalar(cl, z);
        if l.p {
            acc = acc.checked_mul(&Element::raising(cl, a)?)?;
        }
        if l.d {
            acc = acc.checked_mul(&Element::lowering(cl, a)?)?;
        }
        if l.v > 0 {
            let proj = Element::raising(cl, a)?.checked_mul(&Element::lowering(cl, a)?)?;
            let qv = self.src.q_pow(-(l.v as i64));
            let tail = Element::from_scalar(cl, qv.clone())
                .checked_add(&proj.scale(&Scalar::one().checked_sub(&qv)?)?)?;
            acc = acc.checked_mul(&tail)?;
        }
        self.cache.insert((a, j, l), acc.clone());
        Ok(acc)
    }

    fn apply(&mut self, x: &Element, exps: &[u32]) -> Result<Element> {
        let mut out = Element::zero(&self.cl);
        for (m, c) in x.terms() {
            let mut acc = Element::from_scalar(&self.cl, c.clone());
            for (i, l) in m.letters().iter().enumerate() {
                if *l != Letter::ONE {
                    acc = acc.checked_mul(&self.letter(i + 1, exps[i], *l)?)?;
                }
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }
}

/// ϑ_z(x) for z = (ζ^{j_1}, …, ζ^{j_n}).
pub fn takeuchi_component(x: &Element, exponents: &[u32]) -> Result<Element> {
    let (y, k) = source(x)?;
    if exponents.len() != y.ctx().n() {
        return Err(Error::RankMismatch { expected: y.ctx().n(), found: exponents.len() });
    }
    Images::new(y.ctx(), k)?.apply(&y, exponents)
}

/// All (2k)^n components in the fixed order.
pub fn takeuchi(x: &Element) -> Result<Vec<TakeuchiComponent>> {
    let (y, k) = source(x)?;
    let mut img = Images::new(y.ctx(), k)?;
    component_exponents(y.ctx())
        .into_iter()
        .map(|exponents| {
            let value = img.apply(&y, &exponents)?;
            Ok(TakeuchiComponent { exponents, value })
        })
        .collect()
}

/// ϑ^{-1} of a tuple of classical elements (given in component order), in
/// the ψ presentation of `ctx`.
pub fn takeuchi_inverse(ctx: &AlgebraContext, components: &[Element]) -> Result<Element> {
    let ctx = &ctx.with_convention(Convention::Psi)?;
    let k = ctx.k_integer()?;
    let t = 2 * k;
    if components.len() != component_count(ctx) {
        return Err(Error::RankMismatch { expected: component_count(ctx), found: components.len() });
    }
    let cl = classical_context(ctx)?;
    let zeta = ctx.zeta_2k();
    let inv_t = Scalar::from_ratio(1, t as i64);
    let n = ctx.n();
    // lifts[a][j] = [e, V, V*, V V*]
    let mut lifts: Vec<Vec<[Element; 4]>> = Vec::with_capacity(n);
    for a in 1..=n {
        let psi = Element::raising(ctx, a)?;
        let psid = Element::lowering(ctx, a)?;
        let za = central_generator(ctx, a)?;
        let wpow: Vec<Element> = (0..t).map(|m| Element::omega_power(ctx, a, m as i64)).collect::<Result<_>>()?;
        let mut zpow = vec![Element::one(ctx)];
        for m in 1..t as usize {
            zpow.push(zpow[m - 1].checked_mul(&za)?);
        }
        let mut per_j = Vec::with_capacity(t as usize);
        for j in 0..t as i64 {
            let (mut e, mut v, mut vd) = (Element::zero(ctx), Element::zero(ctx), Element::zero(ctx));
            for m in 0..t as i64 {
                let mi = m as usize;
                let ce = zeta.pow(-j * m)?.checked_mul(&inv_t)?;
                e = e.checked_add(&zpow[mi].scale(&ce)?)?;
                let cv = zeta.pow(-j * (m + 1))?.checked_mul(&ctx.q_pow(m))?.checked_mul(&inv_t)?;
                v = v.checked_add(&psi.checked_mul(&wpow[mi])?.scale(&cv)?)?;
                let cd = zeta.pow(-j * (m + k as i64 - 1))?.checked_mul(&inv_t)?;
                vd = vd.checked_add(&psid.checked_mul(&wpow[mi])?.scale(&cd)?)?;
            }
            let vvd = v.checked_mul(&vd)?;
            per_j.push([e, v, vd, vvd]);
        }
        lifts.push(per_j);
    }
    let mut out = Element::zero(ctx);
    for (x, exps) in components.iter().zip(component_exponents(ctx)) {
        if x.ctx().n() != n || x.ctx().twice_k() != 1 || x.ctx().convention() != Convention::Phi {
            return Err(Error::Precondition("components must lie in the classical (k = 1/2) algebra".into()));
        }
        let x = x.with_context(&cl).map_err(|_| Error::ConductorMismatch(x.ctx().conductor(), cl.conductor()))?;
        for (m, c) in x.terms() {
            let mut acc = Element::from_scalar(ctx, c.clone());
            for (i, l) in m.letters().iter().enumerate() {
                let slot = (l.p as usize) | (l.d as usize) << 1;
                acc = acc.checked_mul(&lifts[i][exps[i] as usize][slot])?;
            }
            out = out.checked_add(&acc)?;
        }
    }
    Ok(out)
}
