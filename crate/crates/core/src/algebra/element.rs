use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::context::{AlgebraContext, Convention};
use super::engine::{add_term, LocalTerms};
use super::monomial::{Letter, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Generator names accepted by [`Element::generator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Psi,
    Psid,
    W,
    Phi,
    Phid,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Psi => "psi",
            GeneratorKind::Psid => "psid",
            GeneratorKind::W => "w",
            GeneratorKind::Phi => "phi",
            GeneratorKind::Phid => "phid",
        }
    }
}

/// ℤ^n-degree of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(Vec<i64>),
    Inhomogeneous,
}

/// A finite linear combination of basis monomials.
#[derive(Clone)]
pub struct Element {
    ctx: AlgebraContext,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero(ctx: &AlgebraContext) -> Self {
        Element { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &AlgebraContext) -> Self {
        Element::from_scalar(ctx, Scalar::one())
    }

    pub fn from_scalar(ctx: &AlgebraContext, s: Scalar) -> Self {
        let mut e = Element::zero(ctx);
        if !s.is_zero() {
            e.terms.insert(Monomial::identity(ctx.n()), s);
        }
        e
    }

    pub fn from_monomial(ctx: &AlgebraContext, m: Monomial, c: Scalar) -> Result<Self> {
        m.validate(ctx)?;
        let mut e = Element::zero(ctx);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        Ok(e)
    }

    /// Build from (monomial, coefficient) pairs, validating and merging.
    pub fn from_terms(ctx: &AlgebraContext, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            m.validate(ctx)?;
            add_term(&mut map, m, c)?;
        }
        Ok(Element { ctx: ctx.clone(), terms: map })
    }

    pub(crate) fn from_map(ctx: &AlgebraContext, terms: BTreeMap<Monomial, Scalar>) -> Self {
        Element { ctx: ctx.clone(), terms }
    }

    /// A generator ψ_a, ψ_a*, ω_a, φ_a, φ_a* (1-based index).
    pub fn generator(ctx: &AlgebraContext, kind: GeneratorKind, a: usize) -> Result<Self> {
        ctx.check_index(a)?;
        let conv = ctx.convention();
        let ok = match kind {
            GeneratorKind::W => true,
            GeneratorKind::Psi | GeneratorKind::Psid => conv == Convention::Psi,
            GeneratorKind::Phi | GeneratorKind::Phid => conv == Convention::Phi,
        };
        if !ok {
            return Err(Error::ConventionMismatch(kind.name().into(), conv.to_string()));
        }
        let l = match kind {
            GeneratorKind::Psi | GeneratorKind::Phi => Letter::new(true, false, 0),
            GeneratorKind::Psid | GeneratorKind::Phid => Letter::new(false, true, 0),
            GeneratorKind::W => {
                if ctx.twice_k() == 1 {
                    // k = 1/2: ω is not a basis letter; use its normal form.
                    return Element::omega_power(ctx, a, 1);
                }
                Letter::new(false, false, 1)
            }
        };
        Element::from_monomial(ctx, Monomial::single(ctx.n(), a, l), Scalar::one())
    }

    /// The odd generator "ψ_a" of the current presentation (φ_a in φ).
    pub fn raising(ctx: &AlgebraContext, a: usize) -> Result<Self> {
        ctx.check_index(a)?;
        Element::from_monomial(ctx, Monomial::single(ctx.n(), a, Letter::new(true, false, 0)), Scalar::one())
    }

    /// The odd generator "ψ_a*" of the current presentation (φ_a* in φ).
    pub fn lowering(ctx: &AlgebraContext, a: usize) -> Result<Self> {
        ctx.check_index(a)?;
        Element::from_monomial(ctx, Monomial::single(ctx.n(), a, Letter::new(false, true, 0)), Scalar::one())
    }

    /// Normal form of ω_a^e for any integer e.
    pub fn omega_power(ctx: &AlgebraContext, a: usize, e: i64) -> Result<Self> {
        ctx.check_index(a)?;
        let local = ctx.table().omega_power(e)?;
        Ok(Element::embed_local(ctx, a, &local))
    }

    /// Place a rank-1 element at index a.
    pub(crate) fn embed_local(ctx: &AlgebraContext, a: usize, local: &LocalTerms) -> Self {
        let terms = local
            .iter()
            .map(|(l, c)| (Monomial::single(ctx.n(), a, *l), c.clone()))
            .collect();
        Element { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_identity() && c.is_one())
    }

    /// Scalar multiple of the identity?
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_identity().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check_ctx(&self, o: &Self) -> Result<()> {
        if self.ctx.same_as(&o.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check_ctx(o)?;
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            add_term(&mut terms, m.clone(), c.clone())?;
        }
        Ok(Element { ctx: self.ctx.clone(), terms })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Element {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.checked_neg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self> {
        if s.is_zero() {
            return Ok(Element::zero(&self.ctx));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), c.checked_mul(s)?);
        }
        Ok(Element { ctx: self.ctx.clone(), terms })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check_ctx(o)?;
        let table = self.ctx.table();
        let mut out = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                table.mul_monomials_into(m1, m2, &c1.checked_mul(c2)?, &mut out)?;
            }
        }
        Ok(Element { ctx: self.ctx.clone(), terms: out })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Element::one(&self.ctx);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Apply a map to every coefficient (dropping zeros).
    pub fn map_coefficients(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Ok(Element { ctx: self.ctx.clone(), terms })
    }

    /// Common ℤ^n-degree of all terms.
    pub fn degree(&self) -> Degree {
        let mut it = self.terms.keys().map(|m| m.degree());
        let Some(first) = it.next() else {
            return Degree::Homogeneous(vec![0; self.ctx.n()]);
        };
        if it.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Inhomogeneous
        }
    }

    /// Same coefficients, re-attached to an equal context.
    pub fn with_context(&self, ctx: &AlgebraContext) -> Result<Self> {
        if !self.ctx.same_as(ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Element { ctx: ctx.clone(), terms: self.terms.clone() })
    }

    /// Canonical text form (see [`crate::algebra::text`]).
    pub fn to_text(&self) -> String {
        super::text::element_text(self)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        self.checked_add(o).expect("element addition")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        self.checked_sub(o).expect("element subtraction")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, o: &Element) -> Element {
        self.checked_mul(o).expect("element multiplication")
    }
}

impl Mul<&Scalar> for &Element {
    type Output = Element;
    fn mul(self, s: &Scalar) -> Element {
        self.scale(s).expect("scalar multiplication")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, o: Element) -> Element {
        &self + &o
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, o: Element) -> Element {
        &self - &o
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, o: Element) -> Element {
        &self * &o
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(&self)
    }
}
