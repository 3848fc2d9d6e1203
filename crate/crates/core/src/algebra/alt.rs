//! The ω-heavy basis B′: per index either ω^v with 0 ≤ v < 4k, or ψ ω^v /
//! ψ* ω^v with 0 ≤ v < 2k. Needs q^{2k} ≠ 1.

use std::collections::BTreeMap;

use super::context::{AlgebraContext, Convention};
use super::convention::tensor_into;
use super::element::Element;
use super::engine::{add_term, LocalTerms};
use super::monomial::{Letter, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An element written on the basis B′ (not reduced by the engine).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltElement {
    ctx: AlgebraContext,
    terms: BTreeMap<Monomial, Scalar>,
}

fn check(ctx: &AlgebraContext) -> Result<u32> {
    if ctx.convention() != Convention::Psi {
        return Err(Error::Precondition("the alternative basis is defined in the psi presentation".into()));
    }
    let k = ctx.k_integer()?;
    if !ctx.q2k_generic() {
        return Err(Error::Precondition("the alternative basis needs q^(2k) != 1".into()));
    }
    Ok(k)
}

/// Is `l` a letter of B′ for twist k?
pub fn is_alt_letter(l: Letter, k: u32) -> bool {
    match (l.p, l.d) {
        (true, true) => false,
        (false, false) => (l.v as u32) < 4 * k,
        _ => (l.v as u32) < 2 * k,
    }
}

/// All monomials of B′, sorted.
pub fn enumerate_alt_basis(ctx: &AlgebraContext) -> Result<Vec<Monomial>> {
    let k = check(ctx)?;
    let mut local: Vec<Letter> = Vec::new();
    for (p, d) in [(false, false), (false, true), (true, false)] {
        for v in 0..4 * k {
            let l = Letter::new(p, d, v as u16);
            if is_alt_letter(l, k) {
                local.push(l);
            }
        }
    }
    local.sort();
    let mut out = vec![Vec::new()];
    for _ in 0..ctx.n() {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                local.iter().map(move |l| {
                    let mut w = w.clone();
                    w.push(*l);
                    w
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(Monomial::from_letters).collect())
}

impl AltElement {
    pub fn from_terms(ctx: &AlgebraContext, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let k = check(ctx)?;
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if m.n() != ctx.n() || !m.letters().iter().all(|l| is_alt_letter(*l, k)) {
                return Err(Error::InvalidMonomial(format!("{m:?} is not in the alternative basis")));
            }
            add_term(&mut map, m, c)?;
        }
        Ok(AltElement { ctx: ctx.clone(), terms: map })
    }

    pub fn ctx(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_text(&self) -> String {
        let e = Element::from_map(&self.ctx, self.terms.clone());
        e.to_text()
    }
}

/// Expand `x` on B′.
pub fn to_alt_basis(x: &Element) -> Result<AltElement> {
    let ctx = x.ctx();
    let k = check(ctx)?;
    let q2k = ctx.q_pow(2 * k as i64);
    let den = q2k.checked_sub(&Scalar::one())?.inv()?;
    let twice = 2 * k;
    let local: Vec<LocalTerms> = (0..4 * twice as usize)
        .map(|i| {
            let l = Letter::from_local_index(i, twice);
            if !(l.p && l.d) {
                return vec![(l, Scalar::one())];
            }
            // ψψ*ω^v = (q^{2k} ω^{v+k} − ω^{v−k}) / (q^{2k} − 1), shifting by 2k when v < k.
            let v = l.v as u32;
            let (hi, lo) = if v < k { (3 * k + v, k + v) } else { (v + k, v - k) };
            vec![
                (Letter::new(false, false, lo as u16), -&den),
                (Letter::new(false, false, hi as u16), &q2k * &den),
            ]
        })
        .collect();
    let mut out = BTreeMap::new();
    for (m, c) in x.terms() {
        let parts: Vec<&LocalTerms> = m.letters().iter().map(|l| &local[l.local_index(twice)]).collect();
        tensor_into(&parts, c, &mut out)?;
    }
    Ok(AltElement { ctx: ctx.clone(), terms: out })
}

/// Evaluate a B′ expansion back to normal form.
pub fn from_alt_basis(x: &AltElement) -> Result<Element> {
    let ctx = x.ctx();
    let k = check(ctx)?;
    let table = ctx.table();
    let mut cache: BTreeMap<Letter, LocalTerms> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for (m, c) in x.terms() {
        for l in m.letters() {
            if !cache.contains_key(l) {
                debug_assert!(is_alt_letter(*l, k));
                let head = vec![(Letter::new(l.p, l.d, 0), Scalar::one())];
                let v = table.mul_local(&head, &table.omega_power(l.v as i64)?)?;
                cache.insert(*l, v);
            }
        }
        let parts: Vec<&LocalTerms> = m.letters().iter().map(|l| &cache[l]).collect();
        tensor_into(&parts, c, &mut out)?;
    }
    Ok(Element::from_map(ctx, out))
}
