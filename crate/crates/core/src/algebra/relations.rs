//! The defining relations, evaluated in any algebra that receives images of
//! the generators (the algebra itself, matrix representations, ϑ components).

use super::context::{AlgebraContext, Convention};
use super::element::Element;
use crate::error::Result;
use crate::scalar::Scalar;

/// A named relation residual; the relation holds iff `residual` is zero.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub residual: Element,
}

/// Minimal ring interface needed to evaluate relations.
pub trait Realization {
    type Value: Clone;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn scale(&self, a: &Self::Value, s: &Scalar) -> Result<Self::Value>;
    fn is_zero(&self, a: &Self::Value) -> bool;

    fn pow(&self, a: &Self::Value, e: u32) -> Result<Self::Value> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }
}

/// Images of the odd generators, ω_a and ω_a^{-1}, one entry per index.
#[derive(Clone, Debug)]
pub struct GeneratorImages<V> {
    pub raising: Vec<V>,
    pub lowering: Vec<V>,
    pub w: Vec<V>,
    pub winv: Vec<V>,
}

/// The algebra acting on itself.
pub struct ElementAlgebra(pub AlgebraContext);

impl Realization for ElementAlgebra {
    type Value = Element;
    fn one(&self) -> Element {
        Element::one(&self.0)
    }
    fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        a.checked_add(b)
    }
    fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        a.checked_sub(b)
    }
    fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        a.checked_mul(b)
    }
    fn scale(&self, a: &Element, s: &Scalar) -> Result<Element> {
        a.scale(s)
    }
    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }
}

/// The generators of `ctx` as elements.
pub fn generator_images(ctx: &AlgebraContext) -> Result<GeneratorImages<Element>> {
    let idx = 1..=ctx.n();
    Ok(GeneratorImages {
        raising: idx.clone().map(|a| Element::raising(ctx, a)).collect::<Result<_>>()?,
        lowering: idx.clone().map(|a| Element::lowering(ctx, a)).collect::<Result<_>>()?,
        w: idx.clone().map(|a| Element::omega_power(ctx, a, 1)).collect::<Result<_>>()?,
        winv: idx.map(|a| Element::omega_power(ctx, a, -1)).collect::<Result<_>>()?,
    })
}

/// Every defining relation of `ctx`'s presentation, as `lhs − rhs` evaluated in `r`.
pub fn relation_residuals<R: Realization>(
    ctx: &AlgebraContext,
    r: &R,
    img: &GeneratorImages<R::Value>,
) -> Result<Vec<(String, R::Value)>> {
    let n = ctx.n();
    let mut out = Vec::new();
    let one = r.one();
    let q = ctx.q().clone();
    let (x, xs) = match ctx.convention() {
        Convention::Psi => ("psi", "psid"),
        Convention::Phi => ("phi", "phid"),
    };
    let (w, winv) = (&img.w, &img.winv);
    for a in 0..n {
        let (pa, da) = (&img.raising[a], &img.lowering[a]);
        out.push((format!("w{0}*winv{0} = 1", a + 1), r.sub(&r.mul(&w[a], &winv[a])?, &one)?));
        out.push((format!("winv{0}*w{0} = 1", a + 1), r.sub(&r.mul(&winv[a], &w[a])?, &one)?));
        for b in 0..n {
            let (pb, db) = (&img.raising[b], &img.lowering[b]);
            let qd = if a == b { q.clone() } else { Scalar::one() };
            let qdi = qd.inv()?;
            out.push((
                format!("w{0}*w{1} = w{1}*w{0}", a + 1, b + 1),
                r.sub(&r.mul(&w[a], &w[b])?, &r.mul(&w[b], &w[a])?)?,
            ));
            out.push((
                format!("w{0}*{x}{1} = q^d {x}{1}*w{0}", a + 1, b + 1),
                r.sub(&r.mul(&w[a], pb)?, &r.scale(&r.mul(pb, &w[a])?, &qd)?)?,
            ));
            out.push((
                format!("w{0}*{xs}{1} = q^-d {xs}{1}*w{0}", a + 1, b + 1),
                r.sub(&r.mul(&w[a], db)?, &r.scale(&r.mul(db, &w[a])?, &qdi)?)?,
            ));
            if a <= b {
                out.push((
                    format!("{x}{0}*{x}{1} + {x}{1}*{x}{0} = 0", a + 1, b + 1),
                    r.add(&r.mul(pa, pb)?, &r.mul(pb, pa)?)?,
                ));
                out.push((
                    format!("{xs}{0}*{xs}{1} + {xs}{1}*{xs}{0} = 0", a + 1, b + 1),
                    r.add(&r.mul(da, db)?, &r.mul(db, da)?)?,
                ));
            }
            if a != b {
                out.push((
                    format!("{x}{0}*{xs}{1} + {xs}{1}*{x}{0} = 0", a + 1, b + 1),
                    r.add(&r.mul(pa, db)?, &r.mul(db, pa)?)?,
                ));
            }
        }
        let pd = r.mul(pa, da)?;
        let dp = r.mul(da, pa)?;
        match ctx.convention() {
            Convention::Psi => {
                let k = ctx.k_integer()?;
                let wk = r.pow(&w[a], k)?;
                let wmk = r.pow(&winv[a], k)?;
                let qk = ctx.q_pow(k as i64);
                let qmk = ctx.q_pow(-(k as i64));
                out.push((
                    format!("psi{0}*psid{0} + q^k psid{0}*psi{0} = w{0}^-k", a + 1),
                    r.sub(&r.add(&pd, &r.scale(&dp, &qk)?)?, &wmk)?,
                ));
                out.push((
                    format!("psi{0}*psid{0} + q^-k psid{0}*psi{0} = w{0}^k", a + 1),
                    r.sub(&r.add(&pd, &r.scale(&dp, &qmk)?)?, &wk)?,
                ));
            }
            Convention::Phi => {
                let t = ctx.twice_k();
                let w2k = r.pow(&w[a], t)?;
                let w4k = r.pow(&w[a], 2 * t)?;
                let qm2k = ctx.q_pow(-(t as i64));
                out.push((
                    format!("phi{0}*phid{0} + phid{0}*phi{0} = 1", a + 1),
                    r.sub(&r.add(&pd, &dp)?, &one)?,
                ));
                out.push((
                    format!("phi{0}*phid{0} + q^-2k phid{0}*phi{0} = w{0}^2k", a + 1),
                    r.sub(&r.add(&pd, &r.scale(&dp, &qm2k)?)?, &w2k)?,
                ));
                let rhs = r.sub(&r.scale(&w2k, &(&Scalar::one() + &qm2k))?, &r.scale(&one, &qm2k)?)?;
                out.push((format!("w{0}^4k = (1 + q^-2k) w{0}^2k - q^-2k", a + 1), r.sub(&w4k, &rhs)?));
            }
        }
    }
    Ok(out)
}

/// Every defining relation of the context's presentation, reduced by the engine.
pub fn defining_relations(ctx: &AlgebraContext) -> Result<Vec<Relation>> {
    let img = generator_images(ctx)?;
    Ok(relation_residuals(ctx, &ElementAlgebra(ctx.clone()), &img)?
        .into_iter()
        .map(|(id, residual)| Relation { id, residual })
        .collect())
}
