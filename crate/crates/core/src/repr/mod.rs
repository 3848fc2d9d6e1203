//! Spinor representations π_p on the braided exterior algebra ⋀_q(F^n).
//!
//! Basis vectors v(ℓ), ℓ ∈ {0,1}^n, are stored as bitmasks with ℓ_1 the
//! least significant bit; matrices use the same binary counting order.

mod certificate;

pub use certificate::{
    rep_generator_images, relation_kill, semisimple_certificate, splitting_report, volume_splitting,
    MatrixAlgebra, SemisimpleReport, SplittingReport,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, Convention, Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::structure::TensorElement;

/// Largest rank for which Fock spaces are materialised.
pub const MAX_FOCK_RANK: usize = 16;

/// p ∈ (ℤ_{2k})^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepLabel {
    p: Vec<u32>,
}

impl RepLabel {
    /// Components are reduced mod 2k.
    pub fn new(ctx: &AlgebraContext, p: &[i64]) -> Result<Self> {
        if p.len() != ctx.n() {
            return Err(Error::RankMismatch { expected: ctx.n(), found: p.len() });
        }
        let t = ctx.twice_k() as i64;
        Ok(RepLabel { p: p.iter().map(|x| x.rem_euclid(t) as u32).collect() })
    }

    pub fn zero(ctx: &AlgebraContext) -> Self {
        RepLabel { p: vec![0; ctx.n()] }
    }

    pub fn components(&self) -> &[u32] {
        &self.p
    }

    /// All (2k)^n labels, row-major with p_1 varying slowest.
    pub fn all(ctx: &AlgebraContext) -> Vec<RepLabel> {
        crate::structure::component_exponents(ctx).into_iter().map(|p| RepLabel { p }).collect()
    }

    /// The same label repeated m times (a label for rank n·m).
    pub fn repeated(&self, m: usize) -> RepLabel {
        RepLabel { p: (0..m).flat_map(|_| self.p.iter().copied()).collect() }
    }

    fn check(&self, ctx: &AlgebraContext) -> Result<()> {
        if self.p.len() != ctx.n() || self.p.iter().any(|&x| x >= ctx.twice_k()) {
            return Err(Error::Precondition(format!("label {:?} is not in (Z_2k)^n for this context", self.p)));
        }
        if ctx.n() > MAX_FOCK_RANK {
            return Err(Error::ScaleGuard(format!("Fock spaces are limited to rank {MAX_FOCK_RANK}")));
        }
        Ok(())
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.p.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A vector Σ c_ℓ v(ℓ) of ⋀_q(F^n).
#[derive(Clone, PartialEq, Eq)]
pub struct FockVector {
    n: usize,
    amps: BTreeMap<u64, Scalar>,
}

fn add_amp(amps: &mut BTreeMap<u64, Scalar>, l: u64, c: Scalar) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    match amps.get_mut(&l) {
        Some(x) => {
            *x = x.checked_add(&c)?;
            if x.is_zero() {
                amps.remove(&l);
            }
        }
        None => {
            amps.insert(l, c);
        }
    }
    Ok(())
}

impl FockVector {
    pub fn zero(n: usize) -> Self {
        FockVector { n, amps: BTreeMap::new() }
    }

    /// v(ℓ) for a bitmask ℓ.
    pub fn basis(n: usize, l: u64) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert(l, Scalar::one());
        FockVector { n, amps }
    }

    /// v(ℓ) for an occupancy list (ℓ_1, …, ℓ_n).
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Precondition("occupancies must be 0 or 1".into()));
        }
        Ok(Self::basis(bits.len(), bits_to_mask(bits)))
    }

    pub fn from_amplitudes(n: usize, amps: impl IntoIterator<Item = (u64, Scalar)>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (l, c) in amps {
            if n < 64 && l >> n != 0 {
                return Err(Error::Precondition(format!("occupancy mask {l:#b} exceeds rank {n}")));
            }
            add_amp(&mut out, l, c)?;
        }
        Ok(FockVector { n, amps: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitude(&self, l: u64) -> Scalar {
        self.amps.get(&l).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&u64, &Scalar)> {
        self.amps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::RankMismatch { expected: self.n, found: o.n });
        }
        let mut amps = self.amps.clone();
        for (l, c) in &o.amps {
            add_amp(&mut amps, *l, c.clone())?;
        }
        Ok(FockVector { n: self.n, amps })
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self> {
        Self::from_amplitudes(self.n, self.amps.iter().map(|(l, c)| Ok((*l, c.checked_mul(s)?))).collect::<Result<Vec<_>>>()?)
    }

    /// `c*v(ℓ_1…ℓ_n)` summands, ℓ written left to right from index 1.
    pub fn to_text(&self, ctx: &AlgebraContext) -> String {
        if self.amps.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (l, c)) in self.amps.iter().enumerate() {
            let (neg, body, unit) = crate::algebra::text::scalar_factor(ctx, c);
            let word = format!("v({})", mask_text(*l, self.n));
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !unit {
                out.push_str(&body);
                out.push('*');
            }
            out.push_str(&word);
        }
        out
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.amps.iter().map(|(l, c)| format!("{c}*v({})", mask_text(*l, self.n))).collect();
        write!(f, "[{}]", parts.join(" + "))
    }
}

pub fn bits_to_mask(bits: &[u8]) -> u64 {
    bits.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as u64) << i))
}

/// ℓ_1 … ℓ_n as a digit string.
pub fn mask_text(l: u64, n: usize) -> String {
    (0..n).map(|i| if l >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Legend for matrix rows/columns: the ℓ of each position.
pub fn fock_order(n: usize) -> Vec<String> {
    (0..1u64 << n).map(|l| mask_text(l, n)).collect()
}

/// Per-context data for evaluating π_p on monomials.
struct Action<'a> {
    ctx: &'a AlgebraContext,
    zeta: Scalar,
    phi: bool,
}

impl<'a> Action<'a> {
    fn new(ctx: &'a AlgebraContext) -> Self {
        Action { ctx, zeta: ctx.zeta_2k(), phi: ctx.convention() == Convention::Phi }
    }

    /// π_p(m) v(ℓ) = c v(ℓ′), or None when it vanishes. Letters act right to left.
    fn monomial(&self, p: &[u32], m: &Monomial, l: u64) -> Result<Option<(u64, Scalar)>> {
        let mut l = l;
        let mut c = Scalar::one();
        for (i, letter) in m.letters().iter().enumerate().rev() {
            let bit = 1u64 << i;
            if letter.v > 0 {
                let occ = (l & bit != 0) as i64;
                let e = letter.v as i64;
                let z = self.zeta.pow(p[i] as i64 * e)?;
                c = c.checked_mul(&z)?.checked_mul(&self.ctx.q_pow(e * (occ - 1)))?;
            }
            let prefix = (l & (bit - 1)).count_ones() % 2 == 1;
            if letter.d {
                if l & bit == 0 {
                    return Ok(None);
                }
                l &= !bit;
                // ψ* picks up ζ^{k p} = (−1)^p; φ* = ψ*ω^k does not.
                let odd_label = !self.phi && p[i] % 2 == 1;
                if prefix ^ odd_label {
                    c = c.checked_neg();
                }
            }
            let prefix = (l & (bit - 1)).count_ones() % 2 == 1;
            if letter.p {
                if l & bit != 0 {
                    return Ok(None);
                }
                l |= bit;
                if prefix {
                    c = c.checked_neg();
                }
            }
        }
        Ok(Some((l, c)))
    }
}

/// π_p(m) on v(ℓ) for a single monomial.
pub fn monomial_action(ctx: &AlgebraContext, label: &RepLabel, m: &Monomial, l: u64) -> Result<Option<(u64, Scalar)>> {
    label.check(ctx)?;
    Action::new(ctx).monomial(&label.p, m, l)
}

/// π_p(x) ▷ vec.
pub fn act(label: &RepLabel, x: &Element, vec: &FockVector) -> Result<FockVector> {
    let ctx = x.ctx();
    label.check(ctx)?;
    if vec.n != ctx.n() {
        return Err(Error::RankMismatch { expected: ctx.n(), found: vec.n });
    }
    let action = Action::new(ctx);
    let mut amps = BTreeMap::new();
    for (l, a) in &vec.amps {
        for (m, c) in x.terms() {
            if let Some((l2, s)) = action.monomial(&label.p, m, *l)? {
                add_amp(&mut amps, l2, a.checked_mul(c)?.checked_mul(&s)?)?;
            }
        }
    }
    Ok(FockVector { n: vec.n, amps })
}

/// The 2^n × 2^n matrix of π_p(x); column ℓ is π_p(x) v(ℓ).
pub fn rep_matrix(label: &RepLabel, x: &Element) -> Result<Matrix> {
    let ctx = x.ctx();
    label.check(ctx)?;
    let dim = 1usize << ctx.n();
    let action = Action::new(ctx);
    let mut out = Matrix::zeros(dim, dim);
    for l in 0..dim as u64 {
        for (m, c) in x.terms() {
            if let Some((l2, s)) = action.monomial(&label.p, m, l)? {
                let cur = out.get(l2 as usize, l as usize).checked_add(&c.checked_mul(&s)?)?;
                out.set(l2 as usize, l as usize, cur);
            }
        }
    }
    Ok(out)
}

/// Conjugate by ℓ ↦ 1 − ℓ (the "dual" spinor convention); an involution.
pub fn dualize(m: &Matrix) -> Matrix {
    let dim = m.rows();
    let mask = dim - 1;
    let mut out = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..m.cols() {
            out.set(i ^ mask, j ^ mask, m.get(i, j).clone());
        }
    }
    out
}

/// π_p(x) in the dual convention.
pub fn rep_matrix_dual(label: &RepLabel, x: &Element) -> Result<Matrix> {
    Ok(dualize(&rep_matrix(label, x)?))
}

/// Product in ⋀_q(F^n): v_j v_k = −q v_k v_j (j < k), v_j² = 0.
pub fn braided_mul(ctx: &AlgebraContext, u: &FockVector, w: &FockVector) -> Result<FockVector> {
    if u.n != w.n {
        return Err(Error::RankMismatch { expected: u.n, found: w.n });
    }
    let step = ctx.q_pow(-1).checked_neg();
    let mut amps = BTreeMap::new();
    for (a, ca) in &u.amps {
        for (b, cb) in &w.amps {
            if a & b != 0 {
                continue;
            }
            // Each v_k of w passes every v_j of u with j > k.
            let swaps: u32 = (0..u.n).filter(|k| b >> k & 1 == 1).map(|k| (a >> (k + 1)).count_ones()).sum();
            add_amp(&mut amps, a | b, ca.checked_mul(cb)?.checked_mul(&step.pow(swaps as i64)?)?)?;
        }
    }
    Ok(FockVector { n: u.n, amps })
}

fn prefix_op(ctx: &AlgebraContext, j: usize, vec: &FockVector, base: Scalar, raise: bool) -> Result<FockVector> {
    if j == 0 || j > vec.n {
        return Err(Error::IndexOutOfRange { index: j as i64, max: vec.n });
    }
    let _ = ctx;
    let bit = 1u64 << (j - 1);
    let mut amps = BTreeMap::new();
    for (l, c) in &vec.amps {
        if (l & bit != 0) == raise {
            continue;
        }
        let e = (l & (bit - 1)).count_ones() as i64;
        add_amp(&mut amps, l ^ bit, c.checked_mul(&base.pow(e)?)?)?;
    }
    Ok(FockVector { n: vec.n, amps })
}

/// ι_j^q v(ℓ) = (−q)^{ℓ_1+⋯+ℓ_{j−1}} v(ℓ − e_j).
pub fn quantum_inner(ctx: &AlgebraContext, j: usize, vec: &FockVector) -> Result<FockVector> {
    prefix_op(ctx, j, vec, ctx.q().checked_neg(), false)
}

/// ε_j^q v(ℓ) = (−q^{-1})^{ℓ_1+⋯+ℓ_{j−1}} v(ℓ + e_j).
pub fn quantum_exterior(ctx: &AlgebraContext, j: usize, vec: &FockVector) -> Result<FockVector> {
    prefix_op(ctx, j, vec, ctx.q_pow(-1).checked_neg(), true)
}

fn reshuffle_with(vs: &[FockVector], sign: impl Fn(&[u64]) -> bool) -> Result<FockVector> {
    let n = vs.first().map_or(0, |v| v.n);
    if vs.iter().any(|v| v.n != n) {
        return Err(Error::Precondition("all factors must have the same rank".into()));
    }
    let m = vs.len();
    let mut amps = BTreeMap::new();
    let mut idx: Vec<Vec<(u64, Scalar)>> = vs.iter().map(|v| v.amps.iter().map(|(l, c)| (*l, c.clone())).collect()).collect();
    fn go(
        idx: &mut [Vec<(u64, Scalar)>],
        j: usize,
        n: usize,
        picked: &mut Vec<u64>,
        acc: Scalar,
        sign: &dyn Fn(&[u64]) -> bool,
        out: &mut BTreeMap<u64, Scalar>,
    ) -> Result<()> {
        if j == idx.len() {
            let l = picked.iter().enumerate().fold(0u64, |a, (i, b)| a | (b << (i * n)));
            let c = if sign(picked) { acc.checked_neg() } else { acc };
            return add_amp(out, l, c);
        }
        for t in 0..idx[j].len() {
            let (l, c) = idx[j][t].clone();
            picked.push(l);
            go(idx, j + 1, n, picked, acc.checked_mul(&c)?, sign, out)?;
            picked.pop();
        }
        Ok(())
    }
    go(&mut idx, 0, n, &mut Vec::with_capacity(m), Scalar::one(), &sign, &mut amps)?;
    Ok(FockVector { n: n * m, amps })
}

/// T(v(ℓ^{(1)}) ⊗ ⋯ ⊗ v(ℓ^{(m)})) = v(concatenated ℓ).
pub fn tensor_reshuffle(vs: &[FockVector]) -> Result<FockVector> {
    reshuffle_with(vs, |_| false)
}

/// T with the sign ∏_j c_j^{|ℓ^{(j)}|}, c_j = (−1)^{(j−1)(n + Σ_a p_a)}: this
/// version intertwines Γ with the slot-wise (unsigned) tensor action for every p.
pub fn signed_reshuffle(label: &RepLabel, vs: &[FockVector]) -> Result<FockVector> {
    let n = label.p.len();
    let per_block = (n as u64 + label.p.iter().map(|&x| x as u64).sum::<u64>()) % 2 == 1;
    reshuffle_with(vs, move |picked| {
        per_block
            && picked.iter().enumerate().filter(|(j, l)| j % 2 == 1 && l.count_ones() % 2 == 1).count() % 2 == 1
    })
}

/// Matrix of the slot-wise action (⊗_j π_p)(t) on ⋀_q(F^n)^{⊗m}, indexed by
/// concatenated occupancies (the unsigned T identifies the two spaces).
pub fn tensor_rep_matrix(label: &RepLabel, t: &TensorElement) -> Result<Matrix> {
    let ctx = t.ctx();
    label.check(ctx)?;
    let n = ctx.n();
    let m = t.m();
    if n * m > MAX_FOCK_RANK {
        return Err(Error::ScaleGuard(format!("Fock spaces are limited to rank {MAX_FOCK_RANK}")));
    }
    let dim = 1usize << (n * m);
    let block = (1u64 << n) - 1;
    let action = Action::new(ctx);
    let mut out = Matrix::zeros(dim, dim);
    for l in 0..dim as u64 {
        for (key, c) in t.terms() {
            let mut target = 0u64;
            let mut coeff = c.clone();
            let mut alive = true;
            for (j, mono) in key.iter().enumerate() {
                let lj = (l >> (j * n)) & block;
                match action.monomial(&label.p, mono, lj)? {
                    Some((l2, s)) => {
                        target |= l2 << (j * n);
                        coeff = coeff.checked_mul(&s)?;
                    }
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
            if alive {
                let cur = out.get(target as usize, l as usize).checked_add(&coeff)?;
                out.set(target as usize, l as usize, cur);
            }
        }
    }
    Ok(out)
}

/// Diagonal matrix of the signed reshuffle (relative to the unsigned one).
pub fn signed_reshuffle_matrix(label: &RepLabel, n: usize, m: usize) -> Result<Matrix> {
    let dim = 1usize << (n * m);
    let block = (1u64 << n) - 1;
    let mut out = Matrix::zeros(dim, dim);
    for l in 0..dim as u64 {
        let parts: Vec<FockVector> = (0..m).map(|j| FockVector::basis(n, (l >> (j * n)) & block)).collect();
        let v = signed_reshuffle(label, &parts)?;
        out.set(l as usize, l as usize, v.amplitude(l));
    }
    Ok(out)
}

/// Does π_P(Γ(t)) ∘ T′ = T′ ∘ (⊗ π_p)(t) hold (P = p repeated m times, T′ the signed reshuffle)?
pub fn intertwines(label: &RepLabel, t: &TensorElement) -> Result<bool> {
    let n = t.ctx().n();
    let m = t.m();
    let big = crate::structure::gamma(t)?;
    let lhs = rep_matrix(&label.repeated(m), &big)?;
    let s = signed_reshuffle_matrix(label, n, m)?;
    let rhs = tensor_rep_matrix(label, t)?;
    Ok(lhs.checked_mul(&s)? == s.checked_mul(&rhs)?)
}

#[cfg(test)]
mod tests;
