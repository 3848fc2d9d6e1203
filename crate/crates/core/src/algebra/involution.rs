//! Grade involution, transpose, dagger, duality and their composites.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::context::{AlgebraContext, Convention, QMode};
use super::convention::{convert_convention, tensor_into};
use super::element::Element;
use super::engine::LocalTerms;
use super::monomial::Letter;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionKind {
    Grade,
    GradeTilde,
    Transpose,
    Dagger,
    Duality,
    Conjugation,
    DualDagger,
    TransposeDuality,
    KappaCheck,
}

impl InvolutionKind {
    pub const ALL: [InvolutionKind; 9] = [
        InvolutionKind::Grade,
        InvolutionKind::GradeTilde,
        InvolutionKind::Transpose,
        InvolutionKind::Dagger,
        InvolutionKind::Duality,
        InvolutionKind::Conjugation,
        InvolutionKind::DualDagger,
        InvolutionKind::TransposeDuality,
        InvolutionKind::KappaCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InvolutionKind::Grade => "grade",
            InvolutionKind::GradeTilde => "grade_tilde",
            InvolutionKind::Transpose => "transpose",
            InvolutionKind::Dagger => "dagger",
            InvolutionKind::Duality => "duality",
            InvolutionKind::Conjugation => "conjugation",
            InvolutionKind::DualDagger => "dual_dagger",
            InvolutionKind::TransposeDuality => "transpose_duality",
            InvolutionKind::KappaCheck => "kappa_check",
        }
    }

    /// Reverses products.
    pub fn is_anti(self) -> bool {
        matches!(
            self,
            InvolutionKind::Transpose | InvolutionKind::Dagger | InvolutionKind::Duality | InvolutionKind::Conjugation
        )
    }

    /// Acts on coefficients by q ↦ q^{-1}.
    pub fn inverts_q(self) -> bool {
        matches!(
            self,
            InvolutionKind::Duality
                | InvolutionKind::DualDagger
                | InvolutionKind::TransposeDuality
                | InvolutionKind::KappaCheck
        )
    }

    /// Whether the map is defined on `ctx`.
    pub fn check(self, ctx: &AlgebraContext) -> Result<()> {
        if self == InvolutionKind::Grade {
            return Ok(());
        }
        let k = ctx.k_integer()?;
        match self {
            InvolutionKind::GradeTilde if k % 2 != 0 => {
                Err(Error::Precondition(format!("grade_tilde needs an even twist (k = {k})")))
            }
            InvolutionKind::KappaCheck => {
                if !matches!(ctx.qmode(), QMode::Numeric(_)) || ctx.q2k_generic() {
                    return Err(Error::Precondition("kappa_check needs numeric q with q^(2k) = 1".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvolutionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        InvolutionKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Config(format!("unknown involution `{s}`")))
    }
}

/// Images of ψ, ψ*, ω in the ψ presentation (rank 1).
fn generator_images(kind: InvolutionKind, ctx: &AlgebraContext) -> Result<[LocalTerms; 3]> {
    let table = ctx.table();
    let p = vec![(Letter::new(true, false, 0), Scalar::one())];
    let d = vec![(Letter::new(false, true, 0), Scalar::one())];
    let w = vec![(Letter::new(false, false, 1), Scalar::one())];
    let winv = table.omega_power(-1)?;
    let scale = |t: &LocalTerms, s: Scalar| -> LocalTerms {
        t.iter().map(|(l, c)| (*l, c * &s)).collect()
    };
    let m1 = Scalar::from_int(-1);
    let qinv = ctx.q_pow(-1);
    use InvolutionKind::*;
    Ok(match kind {
        Grade => [scale(&p, m1.clone()), scale(&d, m1), w],
        GradeTilde => [scale(&p, m1.clone()), scale(&d, m1.clone()), scale(&w, m1)],
        Transpose => [p, d, scale(&winv, qinv)],
        Dagger => [d, p, w],
        Duality => [d, p, winv],
        Conjugation => [scale(&p, m1.clone()), scale(&d, m1), scale(&winv, qinv)],
        DualDagger => [p, d, winv],
        TransposeDuality => [d, p, scale(&w, ctx.q().clone())],
        KappaCheck => [d, p, scale(&w, qinv)],
    })
}

/// Apply one of the nine (anti-)involutions.
pub fn involution(kind: InvolutionKind, x: &Element) -> Result<Element> {
    Involution::new(kind, x.ctx())?.apply(x)
}

/// An (anti-)involution prepared for one context: the images of the local
/// letters are computed once and reused by every [`Involution::apply`].
#[derive(Clone, Debug)]
pub struct Involution {
    kind: InvolutionKind,
    ctx: AlgebraContext,
    /// Images of the local letters in the ψ presentation (empty for `Grade`).
    local: Vec<LocalTerms>,
}

impl Involution {
    pub fn new(kind: InvolutionKind, ctx: &AlgebraContext) -> Result<Self> {
        kind.check(ctx)?;
        let mut inv = Involution { kind, ctx: ctx.clone(), local: Vec::new() };
        if kind == InvolutionKind::Grade {
            return Ok(inv);
        }
        let psi_ctx = ctx.with_convention(Convention::Psi)?;
        let table = psi_ctx.table();
        let [ip, id, iw] = generator_images(kind, &psi_ctx)?;
        let twice = psi_ctx.twice_k();
        let one: LocalTerms = vec![(Letter::ONE, Scalar::one())];
        inv.local = (0..4 * twice as usize)
            .map(|i| {
                let l = Letter::from_local_index(i, twice);
                let mut factors: Vec<&LocalTerms> = Vec::new();
                if l.p {
                    factors.push(&ip);
                }
                if l.d {
                    factors.push(&id);
                }
                for _ in 0..l.v {
                    factors.push(&iw);
                }
                if kind.is_anti() {
                    factors.reverse();
                }
                let mut acc = one.clone();
                for f in factors {
                    acc = table.mul_local(&acc, f)?;
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        Ok(inv)
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !x.ctx().same_as(&self.ctx) {
            return Err(Error::Config(format!("{} was prepared for a different context", self.kind)));
        }
        if self.kind == InvolutionKind::Grade {
            return x.map_terms_signed(|m| m.parity());
        }
        if self.ctx.convention() == Convention::Phi {
            let y = convert_convention(x, Convention::Psi)?;
            let z = self.apply_psi(&y)?;
            return convert_convention(&z, Convention::Phi)?.with_context(&self.ctx);
        }
        self.apply_psi(x)
    }

    fn apply_psi(&self, x: &Element) -> Result<Element> {
        let ctx = x.ctx();
        let twice = ctx.twice_k();
        let mut out = BTreeMap::new();
        for (m, c) in x.terms() {
            let mut c = if self.kind.inverts_q() { ctx.invert_q(c)? } else { c.clone() };
            if self.kind.is_anti() {
                // Reversing the order of the index blocks.
                let odd = m.letters().iter().filter(|l| l.is_odd()).count();
                if (odd * odd.saturating_sub(1) / 2) % 2 == 1 {
                    c = c.checked_neg();
                }
            }
            let parts: Vec<&LocalTerms> = m.letters().iter().map(|l| &self.local[l.local_index(twice)]).collect();
            tensor_into(&parts, &c, &mut out)?;
        }
        Ok(Element::from_map(ctx, out))
    }
}

impl Element {
    /// Negate the terms whose monomial satisfies `odd`.
    pub(crate) fn map_terms_signed(&self, odd: impl Fn(&super::monomial::Monomial) -> bool) -> Result<Element> {
        let map = self
            .terms()
            .map(|(m, c)| (m.clone(), if odd(m) { c.checked_neg() } else { c.clone() }))
            .collect();
        Ok(Element::from_map(self.ctx(), map))
    }
}
