//! Change of presentation φ_a = ψ_a, φ_a* = ψ_a* ω_a^k (integer k).

use std::collections::BTreeMap;

use super::context::Convention;
use super::element::Element;
use super::engine::{add_term, LocalTerms};
use super::monomial::{Letter, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Re-express `x` in the `target` presentation.
pub fn convert_convention(x: &Element, target: Convention) -> Result<Element> {
    let src = x.ctx();
    if src.convention() == target {
        return Ok(x.clone());
    }
    let k = src
        .twist()
        .as_integer()
        .ok_or_else(|| Error::Precondition(format!("k = {} has no psi presentation", src.twist())))?
        as i64;
    let dst = src.with_convention(target)?;
    let table = dst.table();
    // ψ^p ψ*^d ω^v = φ^p φ*^d ω^{v − kd};  φ^p φ*^d ω^v = ψ^p ψ*^d ω^{v + kd}.
    let dir = if target == Convention::Phi { -k } else { k };
    let twice = src.twice_k();
    let local: Vec<LocalTerms> = (0..4 * twice as usize)
        .map(|i| {
            let l = Letter::from_local_index(i, twice);
            let head = vec![(Letter::new(l.p, l.d, 0), Scalar::one())];
            let w = table.omega_power(l.v as i64 + dir * l.d as i64)?;
            table.mul_local(&head, &w)
        })
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for (m, c) in x.terms() {
        let parts: Vec<&LocalTerms> = m.letters().iter().map(|l| &local[l.local_index(twice)]).collect();
        tensor_into(&parts, c, &mut out)?;
    }
    Ok(Element::from_map(&dst, out))
}

/// Σ c · ⊗_a parts[a] with indices already in ascending order (no signs).
pub(crate) fn tensor_into(
    parts: &[&LocalTerms],
    c: &Scalar,
    out: &mut BTreeMap<Monomial, Scalar>,
) -> Result<()> {
    fn go(
        parts: &[&LocalTerms],
        a: usize,
        letters: &mut Vec<Letter>,
        acc: Scalar,
        out: &mut BTreeMap<Monomial, Scalar>,
    ) -> Result<()> {
        if a == parts.len() {
            return add_term(out, Monomial::from_letters(letters.clone()), acc);
        }
        for (l, c) in parts[a] {
            letters[a] = *l;
            go(parts, a + 1, letters, acc.checked_mul(c)?, out)?;
        }
        Ok(())
    }
    let mut letters = vec![Letter::ONE; parts.len()];
    go(parts, 0, &mut letters, c.clone(), out)
}

