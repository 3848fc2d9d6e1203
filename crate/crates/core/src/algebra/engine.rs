//! The rank-1 rewriting engine.
//!
//! Every product of two rank-1 normal-form letters ψ^p (ψ*)^d ω^v is reduced
//! once, when a context is built, and stored in a (8k)² table. Products at
//! rank n are then Cartesian products of table entries times a Koszul sign.

use std::collections::BTreeMap;

use super::context::{Convention, Twist};
use super::monomial::{Letter, Monomial};
use crate::error::Result;
use crate::scalar::Scalar;

pub(crate) type LocalTerms = Vec<(Letter, Scalar)>;

struct Rewriter {
    twice: u32,
    convention: Convention,
    q: Scalar,
    /// q^{-2k}
    q_m2k: Scalar,
    /// 1 - q^{-2k}
    one_minus: Scalar,
    /// q^k (integer k only)
    q_k: Scalar,
}

impl Rewriter {
    fn add(out: &mut BTreeMap<Letter, Scalar>, l: Letter, c: Scalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match out.get_mut(&l) {
            Some(x) => {
                *x = x.checked_add(&c)?;
                if x.is_zero() {
                    out.remove(&l);
                }
            }
            None => {
                out.insert(l, c);
            }
        }
        Ok(())
    }

    /// c · ψ^p (ψ*)^d ω^e with e possibly ≥ 2k, reduced into `out`.
    fn reduce_into(&self, p: bool, d: bool, e: u32, c: Scalar, out: &mut BTreeMap<Letter, Scalar>) -> Result<()> {
        let t = self.twice;
        if e < t {
            return Self::add(out, Letter::new(p, d, e as u16), c);
        }
        match (p, d) {
            // ψ ω^{2k} = q^{-2k} ψ
            (true, false) => self.reduce_into(p, d, e - t, c.checked_mul(&self.q_m2k)?, out),
            // ψ* ω^{2k} = ψ*,  ψψ* ω^{2k} = ψψ*
            (false, true) | (true, true) => self.reduce_into(p, d, e - t, c, out),
            (false, false) => {
                // ψ: ω^{2k} = (1 - q^{-2k}) ψψ* ω^k + q^{-2k}
                // φ: ω^{2k} = (1 - q^{-2k}) φφ* + q^{-2k}
                let back = match self.convention {
                    Convention::Psi => t / 2,
                    Convention::Phi => t,
                };
                self.reduce_into(true, true, e - back, c.checked_mul(&self.one_minus)?, out)?;
                self.reduce_into(false, false, e - t, c.checked_mul(&self.q_m2k)?, out)
            }
        }
    }

    /// ψ^{p1} (ψ*)^{d1} ψ^{p2} (ψ*)^{d2} as a list of (p, d, extra ω-exponent, coeff).
    fn middle(&self, p1: bool, d1: bool, p2: bool, d2: bool) -> Vec<(bool, bool, u32, Scalar)> {
        let one = Scalar::one;
        if !d1 {
            if p1 && p2 {
                return vec![];
            }
            return vec![(p1 || p2, d2, 0, one())];
        }
        if !p2 {
            if d2 {
                return vec![];
            }
            return vec![(p1, true, 0, one())];
        }
        // d1 = p2 = 1: the word contains ψ* ψ.
        match self.convention {
            Convention::Psi => {
                // ψ*ψ = q^k ω^k − q^k ψψ*
                let k = self.twice / 2;
                match (p1, d2) {
                    (false, false) => vec![
                        (false, false, k, self.q_k.clone()),
                        (true, true, 0, -&self.q_k),
                    ],
                    (true, false) => vec![(true, false, k, self.q_k.clone())],
                    (false, true) => vec![(false, true, k, one())],
                    (true, true) => vec![(true, true, k, one())],
                }
            }
            Convention::Phi => match (p1, d2) {
                // φ*φ = 1 − φφ*
                (false, false) => vec![(false, false, 0, one()), (true, true, 0, -one())],
                (p, d) => vec![(p, d, 0, one())],
            },
        }
    }

    fn product(&self, a: Letter, b: Letter) -> Result<LocalTerms> {
        // ω^v ψ = q^v ψ ω^v,  ω^v ψ* = q^{-v} ψ* ω^v
        let shift = a.v as i64 * (b.p as i64 - b.d as i64);
        let c0 = self.q.pow(shift)?;
        let mut out = BTreeMap::new();
        for (p, d, e, c) in self.middle(a.p, a.d, b.p, b.d) {
            self.reduce_into(p, d, e + a.v as u32 + b.v as u32, c.checked_mul(&c0)?, &mut out)?;
        }
        Ok(out.into_iter().collect())
    }
}

pub(crate) struct LocalTable {
    twice: u32,
    products: Vec<LocalTerms>,
    omega_inv: LocalTerms,
    rewriter_pows: Vec<LocalTerms>,
    rw: Rewriter,
}

impl LocalTable {
    pub(crate) fn build(twist: Twist, convention: Convention, q: &Scalar) -> Result<Self> {
        let twice = twist.twice();
        let q_m2k = q.pow(-(twice as i64))?;
        let rw = Rewriter {
            twice,
            convention,
            q: q.clone(),
            one_minus: Scalar::one().checked_sub(&q_m2k)?,
            q_m2k,
            q_k: if twist.is_integer() { q.pow(twice as i64 / 2)? } else { Scalar::zero() },
        };
        let size = 4 * twice as usize;
        let mut products = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                products.push(rw.product(
                    Letter::from_local_index(i, twice),
                    Letter::from_local_index(j, twice),
                )?);
            }
        }
        // Pure ω-powers ω^0 … ω^{4k-1}, then ω^{-1} = (q^{2k}+1) ω^{2k-1} − q^{2k} ω^{4k-1}.
        let mut rewriter_pows = Vec::new();
        for e in 0..2 * twice {
            let mut out = BTreeMap::new();
            rw.reduce_into(false, false, e, Scalar::one(), &mut out)?;
            rewriter_pows.push(out.into_iter().collect::<LocalTerms>());
        }
        let q2k = q.pow(twice as i64)?;
        let mut inv = BTreeMap::new();
        rw.reduce_into(false, false, twice - 1, q2k.checked_add(&Scalar::one())?, &mut inv)?;
        rw.reduce_into(false, false, 2 * twice - 1, -&q2k, &mut inv)?;
        Ok(LocalTable { twice, products, omega_inv: inv.into_iter().collect(), rewriter_pows, rw })
    }

    pub(crate) fn product(&self, a: Letter, b: Letter) -> &LocalTerms {
        let size = 4 * self.twice as usize;
        &self.products[a.local_index(self.twice) * size + b.local_index(self.twice)]
    }

    /// Product of two rank-1 elements.
    pub(crate) fn mul_local(&self, x: &[(Letter, Scalar)], y: &[(Letter, Scalar)]) -> Result<LocalTerms> {
        let mut out = BTreeMap::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let cab = ca.checked_mul(cb)?;
                for (l, c) in self.product(*a, *b) {
                    Rewriter::add(&mut out, *l, cab.checked_mul(c)?)?;
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Normal form of the rank-1 ω^e, any integer e.
    pub(crate) fn omega_power(&self, e: i64) -> Result<LocalTerms> {
        if e >= 0 {
            if (e as usize) < self.rewriter_pows.len() {
                return Ok(self.rewriter_pows[e as usize].clone());
            }
            let mut out = BTreeMap::new();
            self.rw.reduce_into(false, false, e as u32, Scalar::one(), &mut out)?;
            return Ok(out.into_iter().collect());
        }
        let mut acc = self.omega_inv.clone();
        for _ in 1..(-e) {
            acc = self.mul_local(&acc, &self.omega_inv)?;
        }
        Ok(acc)
    }

    /// Multiply two monomials, adding `coeff ·` the result into `out`.
    pub(crate) fn mul_monomials_into(
        &self,
        x: &Monomial,
        y: &Monomial,
        coeff: &Scalar,
        out: &mut BTreeMap<Monomial, Scalar>,
    ) -> Result<()> {
        let n = x.n();
        let mut locals: Vec<&LocalTerms> = Vec::with_capacity(n);
        for a in 0..n {
            let t = self.product(x.0[a], y.0[a]);
            if t.is_empty() {
                return Ok(());
            }
            locals.push(t);
        }
        // Moving y_b left past x_a for a > b.
        let mut odd_after = false;
        let mut sign = false;
        for a in (0..n).rev() {
            if y.0[a].is_odd() && odd_after {
                sign = !sign;
            }
            if x.0[a].is_odd() {
                odd_after = !odd_after;
            }
        }
        let c = if sign { coeff.checked_neg() } else { coeff.clone() };
        if locals.iter().all(|t| t.len() == 1) {
            let mut letters = Vec::with_capacity(n);
            let mut acc = c;
            for t in &locals {
                letters.push(t[0].0);
                if !t[0].1.is_one() {
                    acc = acc.checked_mul(&t[0].1)?;
                }
            }
            return add_term(out, Monomial::from_letters(letters), acc);
        }
        let mut letters = vec![Letter::ONE; n];
        expand(&locals, 0, &mut letters, c, out)
    }
}

fn expand(
    locals: &[&LocalTerms],
    a: usize,
    letters: &mut Vec<Letter>,
    acc: Scalar,
    out: &mut BTreeMap<Monomial, Scalar>,
) -> Result<()> {
    if a == locals.len() {
        return add_term(out, Monomial::from_letters(letters.clone()), acc);
    }
    for (l, c) in locals[a] {
        letters[a] = *l;
        let next = if c.is_one() { acc.clone() } else { acc.checked_mul(c)? };
        expand(locals, a + 1, letters, next, out)?;
    }
    Ok(())
}

pub(crate) fn add_term(out: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    match out.get_mut(&m) {
        Some(x) => {
            *x = x.checked_add(&c)?;
            if x.is_zero() {
                out.remove(&m);
            }
        }
        None => {
            out.insert(m, c);
        }
    }
    Ok(())
}
