//! Certificates about the family {π_p}: the relations hold in every π_p, the
//! joint image is the whole matrix algebra ⊕_p End(⋀_q), and the volume
//! element splits each π_p into its ±1 eigenspaces.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use super::{rep_matrix, Action, RepLabel};
use crate::algebra::{enumerate_basis, relation_residuals, AlgebraContext, Element, GeneratorImages, Monomial, Realization};
use crate::error::{Error, Result};
use crate::linalg::{rank, rank_specialized, Matrix};
use crate::scalar::modp::Specialization;
use crate::scalar::Scalar;
use crate::structure::volume_element;

/// Largest algebra dimension the certificate will stack.
const MAX_BASIS: usize = 4096;

/// Square matrices of a fixed size as a [`Realization`].
pub struct MatrixAlgebra {
    pub dim: usize,
}

impl Realization for MatrixAlgebra {
    type Value = Matrix;
    fn one(&self) -> Matrix {
        Matrix::identity(self.dim)
    }
    fn add(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.checked_add(b)
    }
    fn sub(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.checked_sub(b)
    }
    fn mul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.checked_mul(b)
    }
    fn scale(&self, a: &Matrix, s: &Scalar) -> Result<Matrix> {
        a.scale(s)
    }
    fn is_zero(&self, a: &Matrix) -> bool {
        a.is_zero()
    }
}

/// π_p of every generator, ω_a and ω_a^{-1}.
pub fn rep_generator_images(ctx: &AlgebraContext, label: &RepLabel) -> Result<GeneratorImages<Matrix>> {
    let img = crate::algebra::generator_images(ctx)?;
    let m = |v: &Vec<Element>| v.iter().map(|x| rep_matrix(label, x)).collect::<Result<Vec<_>>>();
    Ok(GeneratorImages { raising: m(&img.raising)?, lowering: m(&img.lowering)?, w: m(&img.w)?, winv: m(&img.winv)? })
}

/// (relation id, holds in π_p) for every defining relation.
pub fn relation_kill(ctx: &AlgebraContext, label: &RepLabel) -> Result<Vec<(String, bool)>> {
    let r = MatrixAlgebra { dim: 1 << ctx.n() };
    let img = rep_generator_images(ctx, label)?;
    Ok(relation_residuals(ctx, &r, &img)?.into_iter().map(|(id, m)| (id, m.is_zero())).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct SemisimpleReport {
    pub n: usize,
    pub k: String,
    pub labels: Vec<Vec<u32>>,
    /// Rank of x ↦ (π_p(x))_p over the normal-form basis.
    pub rank: usize,
    /// (2k)^n · 4^n = dim Cl_q(n,k).
    pub expected: usize,
    /// π_p(Cl_q) = End(⋀_q) for each p (Burnside).
    pub irreducible: Vec<bool>,
    /// Rank after a random reduction mod a large prime (a lower bound for `rank`).
    pub modular_rank: Option<usize>,
}

impl SemisimpleReport {
    /// Joint surjectivity onto ⊕_p End: the π_p are irreducible and pairwise
    /// non-isomorphic, and together they are injective.
    pub fn passed(&self) -> bool {
        self.rank == self.expected && self.irreducible.iter().all(|&b| b)
    }
}

/// Entry (label index, source ℓ, column, coefficient) of the stacked map;
/// the target ℓ′ = ℓ + δ is fixed inside a degree block.
type Entry = (usize, u64, usize, Scalar);

/// Block-diagonal by ℤ^n-degree: a monomial of degree δ sends v(ℓ) to a
/// multiple of v(ℓ + δ), so each degree contributes an independent block
/// whose rows are (p, ℓ).
pub fn semisimple_certificate(ctx: &AlgebraContext) -> Result<SemisimpleReport> {
    let basis = enumerate_basis(ctx);
    if basis.len() > MAX_BASIS {
        return Err(Error::ScaleGuard(format!(
            "the semisimplicity certificate is limited to {MAX_BASIS} basis monomials (got {})",
            basis.len()
        )));
    }
    let labels = RepLabel::all(ctx);
    for l in &labels {
        l.check(ctx)?;
    }
    let mut blocks: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    for m in basis {
        blocks.entry(m.degree()).or_default().push(m);
    }
    let action = Action::new(ctx);
    let dim = 1u64 << ctx.n();
    let sp = Specialization::random(ctx.conductor(), &mut StdRng::seed_from_u64(0x5eed));
    let mut total = 0;
    let mut modular = Some(0);
    let mut per_label = vec![0usize; labels.len()];
    for cols in blocks.values() {
        let mut entries: Vec<Entry> = Vec::new();
        for (j, m) in cols.iter().enumerate() {
            for (li, label) in labels.iter().enumerate() {
                for l in 0..dim {
                    if let Some((_, c)) = action.monomial(&label.p, m, l)? {
                        entries.push((li, l, j, c));
                    }
                }
            }
        }
        let stacked = assemble(&entries, cols.len(), |_| true);
        total += rank(&stacked)?;
        modular = modular.zip(rank_specialized(&stacked, &sp)).map(|(a, b)| a + b);
        for (li, slot) in per_label.iter_mut().enumerate() {
            *slot += rank(&assemble(&entries, cols.len(), |x| x == li))?;
        }
    }
    let fock = 1usize << (2 * ctx.n());
    Ok(SemisimpleReport {
        n: ctx.n(),
        k: ctx.twist().to_string(),
        labels: labels.iter().map(|l| l.p.clone()).collect(),
        rank: total,
        expected: labels.len() * fock,
        irreducible: per_label.iter().map(|&r| r == fock).collect(),
        modular_rank: modular,
    })
}

fn assemble(entries: &[Entry], cols: usize, keep: impl Fn(usize) -> bool) -> Matrix {
    let mut rows: BTreeMap<(usize, u64), usize> = BTreeMap::new();
    for (li, l, _, _) in entries {
        if keep(*li) {
            let next = rows.len();
            rows.entry((*li, *l)).or_insert(next);
        }
    }
    let mut m = Matrix::zeros(rows.len(), cols);
    for (li, l, j, c) in entries {
        if let Some(&i) = rows.get(&(*li, *l)) {
            m.set(i, *j, c.clone());
        }
    }
    m
}

/// P_± = (1 ± π_p(f_n)) / 2.
pub fn volume_splitting(ctx: &AlgebraContext, label: &RepLabel) -> Result<(Matrix, Matrix)> {
    let f = rep_matrix(label, &volume_element(ctx, ctx.n())?)?;
    let id = Matrix::identity(f.rows());
    let half = Scalar::from_ratio(1, 2);
    Ok((id.checked_add(&f)?.scale(&half)?, id.checked_sub(&f)?.scale(&half)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub label: Vec<u32>,
    pub rank_plus: usize,
    pub rank_minus: usize,
    /// P_+ + P_- = 1, P_±² = P_±, P_+P_- = 0.
    pub complementary: bool,
    /// Both eigenspaces are stable under the even generators.
    pub even_invariant: bool,
    /// Some odd generator maps one eigenspace into the other.
    pub odd_swaps: bool,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.complementary && self.even_invariant && self.odd_swaps && self.rank_plus > 0 && self.rank_minus > 0
    }
}

pub fn splitting_report(ctx: &AlgebraContext, label: &RepLabel) -> Result<SplittingReport> {
    let (pp, pm) = volume_splitting(ctx, label)?;
    let id = Matrix::identity(pp.rows());
    let complementary = pp.checked_add(&pm)? == id
        && pp.checked_mul(&pp)? == pp
        && pm.checked_mul(&pm)? == pm
        && pp.checked_mul(&pm)?.is_zero();
    let img = rep_generator_images(ctx, label)?;
    let odd: Vec<&Matrix> = img.raising.iter().chain(img.lowering.iter()).collect();
    let mut even: Vec<Matrix> = img.w.clone();
    for x in &odd {
        for y in &odd {
            even.push(x.checked_mul(y)?);
        }
    }
    let mut even_invariant = true;
    for m in &even {
        for p in [&pp, &pm] {
            if m.checked_mul(p)? != p.checked_mul(&m.checked_mul(p)?)? {
                even_invariant = false;
            }
        }
    }
    let mut odd_swaps = false;
    for x in &odd {
        if !pm.checked_mul(&x.checked_mul(&pp)?)?.is_zero() {
            odd_swaps = true;
        }
    }
    Ok(SplittingReport {
        label: label.p.clone(),
        rank_plus: rank(&pp)?,
        rank_minus: rank(&pm)?,
        complementary,
        even_invariant,
        odd_swaps,
    })
}
