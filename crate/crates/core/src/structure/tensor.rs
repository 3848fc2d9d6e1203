use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::volume_element;
use crate::algebra::{AlgebraContext, Element, Monomial, MonomialRecord};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An element of the ordinary tensor power Cl_q(n,k)^{⊗m}.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    ctx: AlgebraContext,
    m: usize,
    terms: BTreeMap<Vec<Monomial>, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorRecord {
    pub factors: Vec<MonomialRecord>,
    pub coeff: String,
}

fn add_tuple(out: &mut BTreeMap<Vec<Monomial>, Scalar>, key: Vec<Monomial>, c: Scalar) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    match out.get_mut(&key) {
        Some(x) => {
            *x = x.checked_add(&c)?;
            if x.is_zero() {
                out.remove(&key);
            }
        }
        None => {
            out.insert(key, c);
        }
    }
    Ok(())
}

/// c · slots[0] ⊗ … ⊗ slots[m−1], expanded on tuples.
fn expand(slots: &[Element], c: &Scalar, out: &mut BTreeMap<Vec<Monomial>, Scalar>) -> Result<()> {
    fn go(
        slots: &[Element],
        j: usize,
        key: &mut Vec<Monomial>,
        acc: Scalar,
        out: &mut BTreeMap<Vec<Monomial>, Scalar>,
    ) -> Result<()> {
        if j == slots.len() {
            return add_tuple(out, key.clone(), acc);
        }
        for (mono, c) in slots[j].terms() {
            key.push(mono.clone());
            go(slots, j + 1, key, acc.checked_mul(c)?, out)?;
            key.pop();
        }
        Ok(())
    }
    go(slots, 0, &mut Vec::with_capacity(slots.len()), c.clone(), out)
}

impl TensorElement {
    pub fn zero(ctx: &AlgebraContext, m: usize) -> Self {
        TensorElement { ctx: ctx.clone(), m, terms: BTreeMap::new() }
    }

    pub fn one(ctx: &AlgebraContext, m: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![Monomial::identity(ctx.n()); m], Scalar::one());
        TensorElement { ctx: ctx.clone(), m, terms }
    }

    /// x_1 ⊗ ⋯ ⊗ x_m.
    pub fn pure(factors: &[Element]) -> Result<Self> {
        let first = factors.first().ok_or_else(|| Error::Precondition("empty tensor".into()))?;
        let ctx = first.ctx().clone();
        if factors.iter().any(|x| !x.ctx().same_as(&ctx)) {
            return Err(Error::ContextMismatch);
        }
        let mut terms = BTreeMap::new();
        expand(factors, &Scalar::one(), &mut terms)?;
        Ok(TensorElement { ctx, m: factors.len(), terms })
    }

    /// 1 ⊗ ⋯ ⊗ x ⊗ ⋯ ⊗ 1 with x in slot j (1-based).
    pub fn slot(m: usize, j: usize, x: &Element) -> Result<Self> {
        if j == 0 || j > m {
            return Err(Error::IndexOutOfRange { index: j as i64, max: m });
        }
        let ctx = x.ctx();
        let factors: Vec<Element> =
            (1..=m).map(|i| if i == j { x.clone() } else { Element::one(ctx) }).collect();
        Self::pure(&factors)
    }

    pub fn from_terms(
        ctx: &AlgebraContext,
        m: usize,
        terms: impl IntoIterator<Item = (Vec<Monomial>, Scalar)>,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (key, c) in terms {
            if key.len() != m {
                return Err(Error::RankMismatch { expected: m, found: key.len() });
            }
            for mono in &key {
                mono.validate(ctx)?;
            }
            add_tuple(&mut out, key, c)?;
        }
        Ok(TensorElement { ctx: ctx.clone(), m, terms: out })
    }

    pub fn ctx(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if !self.ctx.same_as(&o.ctx) || self.m != o.m {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut out = self.terms.clone();
        for (k, c) in &o.terms {
            add_tuple(&mut out, k.clone(), c.clone())?;
        }
        Ok(TensorElement { ctx: self.ctx.clone(), m: self.m, terms: out })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.scale(&Scalar::from_int(-1))?)
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            add_tuple(&mut out, k.clone(), c.checked_mul(s)?)?;
        }
        Ok(TensorElement { ctx: self.ctx.clone(), m: self.m, terms: out })
    }

    /// Slot-wise product (ordinary tensor product, no Koszul signs).
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut out = BTreeMap::new();
        for (x, cx) in &self.terms {
            for (y, cy) in &o.terms {
                let slots: Vec<Element> = x
                    .iter()
                    .zip(y)
                    .map(|(a, b)| {
                        let ea = Element::from_monomial(&self.ctx, a.clone(), Scalar::one())?;
                        let eb = Element::from_monomial(&self.ctx, b.clone(), Scalar::one())?;
                        ea.checked_mul(&eb)
                    })
                    .collect::<Result<_>>()?;
                expand(&slots, &cx.checked_mul(cy)?, &mut out)?;
            }
        }
        Ok(TensorElement { ctx: self.ctx.clone(), m: self.m, terms: out })
    }

    pub fn to_records(&self) -> Vec<TensorRecord> {
        self.terms
            .iter()
            .map(|(k, c)| TensorRecord {
                factors: k.iter().map(MonomialRecord::from_monomial).collect(),
                coeff: self.ctx.scalar_text(c),
            })
            .collect()
    }

    /// `c*[m1 | m2 | …]` summands.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let slots: Vec<String> = k
                .iter()
                .map(|m| {
                    let t = crate::algebra::text::monomial_text(m);
                    if t.is_empty() { "1".into() } else { t }
                })
                .collect();
            let body = format!("[{}]", slots.join(" | "));
            let (neg, coeff, unit) = crate::algebra::text::scalar_factor(&self.ctx, c);
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !unit {
                out.push_str(&coeff);
                out.push('*');
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn shifted(big: &AlgebraContext, n: usize, j: usize, mono: &Monomial) -> Result<Element> {
    let parts: Vec<Monomial> = (0..big.n() / n)
        .map(|i| if i == j { mono.clone() } else { Monomial::identity(n) })
        .collect();
    Element::from_monomial(big, Monomial::concat(&parts), Scalar::one())
}

/// Γ: Cl_q(n,k)^{⊗m} → Cl_q(nm,k); φ_{a,j} ↦ f_{(j−1)n} φ_{a+(j−1)n}, ω_{a,j} ↦ ω_{a+(j−1)n}.
pub fn gamma(t: &TensorElement) -> Result<Element> {
    let n = t.ctx.n();
    let m = t.m;
    let big = t.ctx.with_rank(n * m)?;
    let vols: Vec<Element> = (0..m).map(|j| volume_element(&big, j * n)).collect::<Result<_>>()?;
    let mut out = Element::zero(&big);
    for (key, c) in &t.terms {
        let mut acc = Element::from_scalar(&big, c.clone());
        for (j, mono) in key.iter().enumerate() {
            if mono.parity() {
                acc = acc.checked_mul(&vols[j])?;
            }
            acc = acc.checked_mul(&shifted(&big, n, j, mono)?)?;
        }
        out = out.checked_add(&acc)?;
    }
    Ok(out)
}

/// Γ^{-1}: slot i receives B_i · f_n^{Σ_{j>i} |B_j|} for x's block decomposition B_1⋯B_m.
pub fn gamma_inverse(x: &Element, n: usize, m: usize) -> Result<TensorElement> {
    if n == 0 || x.ctx().n() != n * m {
        return Err(Error::RankMismatch { expected: n * m, found: x.ctx().n() });
    }
    let small = x.ctx().with_rank(n)?;
    let f = volume_element(&small, n)?;
    let mut out = BTreeMap::new();
    for (mono, c) in x.terms() {
        let blocks: Vec<Monomial> = (0..m).map(|i| mono.slice(i * n, n)).collect();
        let mut later = 0usize;
        let mut slots = vec![Element::zero(&small); m];
        for i in (0..m).rev() {
            let mut e = Element::from_monomial(&small, blocks[i].clone(), Scalar::one())?;
            if later % 2 == 1 {
                e = e.checked_mul(&f)?;
            }
            slots[i] = e;
            later += blocks[i].parity() as usize;
        }
        expand(&slots, c, &mut out)?;
    }
    Ok(TensorElement { ctx: small, m, terms: out })
}
