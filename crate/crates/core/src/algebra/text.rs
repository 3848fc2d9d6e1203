//! Canonical text and record forms of elements.
//!
//! Text: terms in monomial order, e.g. `q*w1 - q*p1*d1`, where `p`, `d`, `w`
//! stand for the raising, lowering and ω generators of the context's
//! presentation. Records: `{p, d, v, coeff}` with `coeff` in scalar text form.

use serde::{Deserialize, Serialize};

use super::context::AlgebraContext;
use super::element::Element;
use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Word part of a monomial, empty for the identity.
pub fn monomial_text(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, l) in m.letters().iter().enumerate() {
        let a = i + 1;
        if l.p {
            parts.push(format!("p{a}"));
        }
        if l.d {
            parts.push(format!("d{a}"));
        }
        match l.v {
            0 => {}
            1 => parts.push(format!("w{a}")),
            v => parts.push(format!("w{a}^{v}")),
        }
    }
    parts.join("*")
}

/// A scalar placed as a factor: (negative?, text, is ±1).
pub(crate) fn scalar_factor(ctx: &AlgebraContext, c: &Scalar) -> (bool, String, bool) {
    let text = ctx.scalar_text(c);
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    // A single product term needs no parentheses.
    let simple = !body.contains(' ') && !body.contains('/') && !body.starts_with('(');
    if simple {
        let unit = body == "1";
        return (neg, body, unit);
    }
    (false, format!("({})", ctx.scalar_text(c)), false)
}

pub(crate) fn element_text(x: &Element) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, c) in x.terms() {
        let (neg, body, unit) = scalar_factor(x.ctx(), c);
        let word = monomial_text(m);
        let term = match (word.is_empty(), unit) {
            (true, _) => body,
            (false, true) => word,
            (false, false) => format!("{body}*{word}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    out
}

/// Bit-exact serialised term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRecord {
    pub p: Vec<u8>,
    pub d: Vec<u8>,
    pub v: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub p: Vec<u8>,
    pub d: Vec<u8>,
    pub v: Vec<u32>,
    pub coeff: String,
}

impl MonomialRecord {
    pub fn from_monomial(m: &Monomial) -> Self {
        MonomialRecord {
            p: m.letters().iter().map(|l| l.p as u8).collect(),
            d: m.letters().iter().map(|l| l.d as u8).collect(),
            v: m.letters().iter().map(|l| l.v as u32).collect(),
        }
    }

    pub fn to_monomial(&self) -> Result<Monomial> {
        let bit = |b: u8| match b {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::InvalidMonomial(format!("bit value {b} is not 0 or 1"))),
        };
        let p = self.p.iter().map(|&b| bit(b)).collect::<Result<Vec<_>>>()?;
        let d = self.d.iter().map(|&b| bit(b)).collect::<Result<Vec<_>>>()?;
        let v = self
            .v
            .iter()
            .map(|&x| u16::try_from(x).map_err(|_| Error::InvalidMonomial(format!("exponent {x} too large"))))
            .collect::<Result<Vec<_>>>()?;
        Monomial::new(&p, &d, &v)
    }
}

impl Element {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(m, c)| {
                let r = MonomialRecord::from_monomial(m);
                TermRecord { p: r.p, d: r.d, v: r.v, coeff: self.ctx().scalar_text(c) }
            })
            .collect()
    }

    pub fn from_records(ctx: &AlgebraContext, recs: &[TermRecord]) -> Result<Self> {
        let mut terms = Vec::with_capacity(recs.len());
        for r in recs {
            let m = MonomialRecord { p: r.p.clone(), d: r.d.clone(), v: r.v.clone() }.to_monomial()?;
            terms.push((m, ctx.parse_scalar(&r.coeff)?));
        }
        Element::from_terms(ctx, terms)
    }
}
