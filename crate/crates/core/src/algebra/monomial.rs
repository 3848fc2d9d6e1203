use std::fmt;

use serde::{Deserialize, Serialize};

use super::context::AlgebraContext;
use crate::error::{Error, Result};

/// One index of a normal-form word: ψ^p (ψ*)^d ω^v (or φ, φ* in the φ presentation).
///
/// The derived order is (p, d, v) lexicographic, which is the canonical print order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Letter {
    pub p: bool,
    pub d: bool,
    pub v: u16,
}

impl Letter {
    pub const ONE: Letter = Letter { p: false, d: false, v: 0 };

    pub fn new(p: bool, d: bool, v: u16) -> Self {
        Letter { p, d, v }
    }

    /// Odd if exactly one of ψ, ψ* occurs.
    pub fn is_odd(self) -> bool {
        self.p != self.d
    }

    pub fn degree(self) -> i64 {
        self.p as i64 - self.d as i64
    }

    /// Position inside the rank-1 basis of size 4·(2k).
    pub(crate) fn local_index(self, twice: u32) -> usize {
        ((self.p as usize) * 2 + self.d as usize) * twice as usize + self.v as usize
    }

    pub(crate) fn from_local_index(i: usize, twice: u32) -> Self {
        let t = twice as usize;
        let pd = i / t;
        Letter { p: pd >= 2, d: pd % 2 == 1, v: (i % t) as u16 }
    }
}

/// A basis monomial ∏_a ψ_a^{p_a} (ψ_a*)^{d_a} ω_a^{v_a}, indices ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub(crate) Box<[Letter]>);

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial(vec![Letter::ONE; n].into_boxed_slice())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Monomial(letters.into_boxed_slice())
    }

    /// Build from bit vectors and ω-exponents (all of length n).
    pub fn new(p: &[bool], d: &[bool], v: &[u16]) -> Result<Self> {
        if p.len() != d.len() || p.len() != v.len() {
            return Err(Error::InvalidMonomial("p, d and v must have equal length".into()));
        }
        Ok(Monomial(
            (0..p.len()).map(|a| Letter::new(p[a], d[a], v[a])).collect(),
        ))
    }

    /// The single letter `l` at (1-based) index `a`.
    pub fn single(n: usize, a: usize, l: Letter) -> Self {
        let mut v = vec![Letter::ONE; n];
        v[a - 1] = l;
        Monomial(v.into_boxed_slice())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn letter(&self, a: usize) -> Letter {
        self.0[a - 1]
    }

    pub fn p(&self) -> Vec<bool> {
        self.0.iter().map(|l| l.p).collect()
    }

    pub fn d(&self) -> Vec<bool> {
        self.0.iter().map(|l| l.d).collect()
    }

    pub fn v(&self) -> Vec<u16> {
        self.0.iter().map(|l| l.v).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|l| *l == Letter::ONE)
    }

    /// ℤ^n-degree p − d.
    pub fn degree(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.degree()).collect()
    }

    /// Number of odd letters mod 2.
    pub fn parity(&self) -> bool {
        self.0.iter().filter(|l| l.is_odd()).count() % 2 == 1
    }

    /// Valid in basis B (or the φ analogue) of `ctx`.
    pub fn validate(&self, ctx: &AlgebraContext) -> Result<()> {
        if self.n() != ctx.n() {
            return Err(Error::InvalidMonomial(format!(
                "monomial has {} indices, context has rank {}",
                self.n(),
                ctx.n()
            )));
        }
        let bound = ctx.twice_k();
        if let Some(l) = self.0.iter().find(|l| l.v as u32 >= bound) {
            return Err(Error::InvalidMonomial(format!(
                "omega exponent {} outside [0, {bound})",
                l.v
            )));
        }
        Ok(())
    }

    /// Concatenate blocks of letters (no reordering signs).
    pub fn concat(parts: &[Monomial]) -> Self {
        Monomial(parts.iter().flat_map(|m| m.0.iter().copied()).collect())
    }

    /// Letters `start..start+len` (0-based start).
    pub fn slice(&self, start: usize, len: usize) -> Self {
        Monomial(self.0[start..start + len].to_vec().into_boxed_slice())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits = |g: fn(&Letter) -> bool| -> String {
            self.0.iter().map(|l| if g(l) { '1' } else { '0' }).collect()
        };
        write!(f, "M(p={},d={},v={:?})", bits(|l| l.p), bits(|l| l.d), self.v())
    }
}

/// All basis monomials of `ctx` in canonical (sorted) order.
pub fn enumerate_basis(ctx: &AlgebraContext) -> Vec<Monomial> {
    let twice = ctx.twice_k();
    let local: Vec<Letter> = (0..4 * twice as usize)
        .map(|i| Letter::from_local_index(i, twice))
        .collect();
    let mut out = vec![Vec::<Letter>::new()];
    for _ in 0..ctx.n() {
        let mut next = Vec::with_capacity(out.len() * local.len());
        for prefix in &out {
            for l in &local {
                let mut w = prefix.clone();
                w.push(*l);
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().map(Monomial::from_letters).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Convention, Twist};

    #[test]
    fn local_indices_round_trip_in_order() {
        for twice in 1..5 {
            let mut prev = None;
            for i in 0..4 * twice as usize {
                let l = Letter::from_local_index(i, twice);
                assert_eq!(l.local_index(twice), i);
                assert!(prev < Some(l));
                prev = Some(l);
            }
        }
    }

    #[test]
    fn basis_counts_and_order() {
        let ctx = AlgebraContext::psi(2, 2).unwrap();
        let b = enumerate_basis(&ctx);
        assert_eq!(b.len(), 256);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert!(b[0].is_identity());
        let half = AlgebraContext::new(1, Twist::half(), Convention::Phi).unwrap();
        assert_eq!(enumerate_basis(&half).len(), 4);
    }

    #[test]
    fn degree_and_validation() {
        let m = Monomial::new(&[true, false], &[false, true], &[0, 3]).unwrap();
        assert_eq!(m.degree(), vec![1, -1]);
        let ctx = AlgebraContext::psi(2, 1).unwrap();
        assert!(m.validate(&ctx).is_err());
        let ctx = AlgebraContext::psi(2, 2).unwrap();
        assert!(m.validate(&ctx).is_ok());
    }
}
