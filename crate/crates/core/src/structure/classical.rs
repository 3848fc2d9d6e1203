//! The classical Clifford algebra Cl(F^n ⊕ (F^n)*) with the canonical
//! anticommutation relations, implemented directly on bitmasks.
//!
//! This is deliberately independent of the rewriting engine so the k = ½
//! degeneration can be checked against it.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraContext, Convention, Element, Letter, Monomial, Twist};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The φ-presentation context at k = ½ used as the target of ϑ; it shares
/// the conductor (and q) of `ctx`.
pub fn classical_context(ctx: &AlgebraContext) -> Result<AlgebraContext> {
    AlgebraContext::with_options(
        ctx.n(),
        Twist::half(),
        Convention::Phi,
        ctx.qmode().clone(),
        Some(ctx.conductor()),
    )
}

/// Basis word ∏_a v_a^{p_a} (v_a*)^{d_a}: bit a−1 of `p` / `d`.
pub type CarWord = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarElement {
    n: usize,
    terms: BTreeMap<CarWord, Scalar>,
}

/// Arithmetic in the classical algebra of rank n.
#[derive(Clone, Copy, Debug)]
pub struct CarAlgebra {
    pub n: usize,
}

/// (index, starred)
type Sym = (usize, bool);

fn word_syms(w: CarWord, n: usize) -> Vec<Sym> {
    let mut out = Vec::new();
    for a in 0..n {
        if w.0 >> a & 1 == 1 {
            out.push((a, false));
        }
        if w.1 >> a & 1 == 1 {
            out.push((a, true));
        }
    }
    out
}

fn add(out: &mut BTreeMap<CarWord, Scalar>, w: CarWord, c: Scalar) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    match out.get_mut(&w) {
        Some(x) => {
            *x = x.checked_add(&c)?;
            if x.is_zero() {
                out.remove(&w);
            }
        }
        None => {
            out.insert(w, c);
        }
    }
    Ok(())
}

/// Normal-order a word of generators using v_a v_b = −v_b v_a (a ≠ b and the
/// starred analogues), v_a² = 0 and v_a* v_a = 1 − v_a v_a*.
fn normal_order(word: Vec<Sym>, sign: i64, c: &Scalar, out: &mut BTreeMap<CarWord, Scalar>) -> Result<()> {
    for i in 0..word.len().saturating_sub(1) {
        let (x, y) = (word[i], word[i + 1]);
        if x == y {
            return Ok(());
        }
        if x > y {
            if x.0 == y.0 {
                // v* v = 1 − v v*
                let mut dropped = word.clone();
                dropped.drain(i..i + 2);
                normal_order(dropped, sign, c, out)?;
                let mut swapped = word;
                swapped.swap(i, i + 1);
                return normal_order(swapped, -sign, c, out);
            }
            let mut swapped = word;
            swapped.swap(i, i + 1);
            return normal_order(swapped, -sign, c, out);
        }
    }
    let mut w = (0u32, 0u32);
    for (a, star) in word {
        if star {
            w.1 |= 1 << a;
        } else {
            w.0 |= 1 << a;
        }
    }
    add(out, w, c.checked_mul(&Scalar::from_int(sign))?)
}

impl CarAlgebra {
    pub fn new(n: usize) -> Self {
        CarAlgebra { n }
    }

    pub fn zero(&self) -> CarElement {
        CarElement { n: self.n, terms: BTreeMap::new() }
    }

    pub fn one(&self) -> CarElement {
        self.word((0, 0), Scalar::one())
    }

    pub fn word(&self, w: CarWord, c: Scalar) -> CarElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        CarElement { n: self.n, terms }
    }

    /// v_a (1-based).
    pub fn v(&self, a: usize) -> CarElement {
        self.word((1 << (a - 1), 0), Scalar::one())
    }

    /// v_a*.
    pub fn vd(&self, a: usize) -> CarElement {
        self.word((0, 1 << (a - 1)), Scalar::one())
    }

    /// All 4^n basis words in index-major order.
    pub fn basis(&self) -> Vec<CarWord> {
        let full = 1u32 << self.n;
        let mut out: Vec<CarWord> = (0..full).flat_map(|p| (0..full).map(move |d| (p, d))).collect();
        out.sort();
        out
    }

    pub fn add(&self, x: &CarElement, y: &CarElement) -> Result<CarElement> {
        let mut terms = x.terms.clone();
        for (w, c) in &y.terms {
            add(&mut terms, *w, c.clone())?;
        }
        Ok(CarElement { n: self.n, terms })
    }

    pub fn mul(&self, x: &CarElement, y: &CarElement) -> Result<CarElement> {
        let mut out = BTreeMap::new();
        for (wx, cx) in &x.terms {
            for (wy, cy) in &y.terms {
                let mut word = word_syms(*wx, self.n);
                word.extend(word_syms(*wy, self.n));
                normal_order(word, 1, &cx.checked_mul(cy)?, &mut out)?;
            }
        }
        Ok(CarElement { n: self.n, terms: out })
    }

    /// Read an element of the k = ½ φ-algebra (all ω-exponents are 0 there).
    pub fn from_element(&self, x: &Element) -> Result<CarElement> {
        if x.ctx().n() != self.n || x.ctx().twice_k() != 1 || x.ctx().convention() != Convention::Phi {
            return Err(Error::Precondition("expected an element of the k = 1/2 phi algebra".into()));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in x.terms() {
            let mut w = (0u32, 0u32);
            for (a, l) in m.letters().iter().enumerate() {
                w.0 |= (l.p as u32) << a;
                w.1 |= (l.d as u32) << a;
            }
            add(&mut terms, w, c.clone())?;
        }
        Ok(CarElement { n: self.n, terms })
    }

    /// The same word in the k = ½ φ-algebra.
    pub fn to_element(&self, x: &CarElement, ctx: &AlgebraContext) -> Result<Element> {
        Element::from_terms(
            ctx,
            x.terms.iter().map(|((p, d), c)| {
                let letters =
                    (0..self.n).map(|a| Letter::new(p >> a & 1 == 1, d >> a & 1 == 1, 0)).collect();
                (Monomial::from_letters(letters), c.clone())
            }),
        )
    }
}

impl CarElement {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CarWord, &Scalar)> {
        self.terms.iter()
    }
}
