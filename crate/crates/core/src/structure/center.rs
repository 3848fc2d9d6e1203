//! The center by brute force: solve [x, g] = 0 for all generators g.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{central_generator, commutator};
use crate::algebra::{enumerate_basis, AlgebraContext, Element, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, Matrix};
use crate::scalar::Scalar;

/// Largest basis the dense solve is allowed to touch.
const MAX_BASIS: usize = 1024;

#[derive(Clone, Debug, Serialize)]
pub struct CenterReport {
    pub n: usize,
    pub k: String,
    /// Dimension of the solution space of [x, g] = 0.
    pub dimension: usize,
    /// (2k)^n
    pub expected: usize,
    /// Number of z-monomials ∏ z_a^{r_a}, 0 ≤ r_a < 2k.
    pub z_monomials: usize,
    /// Every z-monomial commutes with every generator.
    pub z_central: bool,
    /// The z-monomials are independent and span the solution space.
    pub span_equal: bool,
    #[serde(skip)]
    pub basis: Vec<Element>,
}

impl CenterReport {
    pub fn passed(&self) -> bool {
        self.dimension == self.expected && self.z_monomials == self.expected && self.z_central && self.span_equal
    }
}

/// All products ∏_a z_a^{r_a}, tagged by r, with r in row-major order.
pub fn z_monomials(ctx: &AlgebraContext) -> Result<Vec<(Vec<u32>, Element)>> {
    let t = ctx.twice_k();
    let mut powers = Vec::new();
    for a in 1..=ctx.n() {
        let z = central_generator(ctx, a)?;
        let mut row = vec![Element::one(ctx)];
        for r in 1..t as usize {
            row.push(row[r - 1].checked_mul(&z)?);
        }
        powers.push(row);
    }
    let mut out = vec![(Vec::new(), Element::one(ctx))];
    for row in &powers {
        let mut next = Vec::new();
        for (r, x) in &out {
            for (e, p) in row.iter().enumerate() {
                let mut r = r.clone();
                r.push(e as u32);
                next.push((r, x.checked_mul(p)?));
            }
        }
        out = next;
    }
    Ok(out)
}

fn generators(ctx: &AlgebraContext) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for a in 1..=ctx.n() {
        out.push(Element::raising(ctx, a)?);
        out.push(Element::lowering(ctx, a)?);
        out.push(Element::omega_power(ctx, a, 1)?);
    }
    Ok(out)
}

/// Solve [x, g] = 0 block by block in the ℤ^n-degree (commutators with
/// homogeneous generators keep distinct degrees apart), then compare with
/// the span of the z-monomials.
pub fn center_basis(ctx: &AlgebraContext) -> Result<CenterReport> {
    let basis = enumerate_basis(ctx);
    if basis.len() > MAX_BASIS {
        return Err(Error::ScaleGuard(format!(
            "the centralizer solve is limited to {MAX_BASIS} basis monomials (got {})",
            basis.len()
        )));
    }
    let gens = generators(ctx)?;
    let mut blocks: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    for m in basis {
        blocks.entry(m.degree()).or_default().push(m);
    }
    let zero_degree = vec![0i64; ctx.n()];
    let mut solutions = Vec::new();
    let mut zero_block_kernel = Vec::new();
    for (deg, cols) in &blocks {
        let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        let mut entries: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(cols.len());
        for b in cols {
            let x = Element::from_monomial(ctx, b.clone(), Scalar::one())?;
            let mut col = Vec::new();
            for (gi, g) in gens.iter().enumerate() {
                for (m, c) in commutator(&x, g)?.terms() {
                    let next = rows.len();
                    let r = *rows.entry((gi, m.clone())).or_insert(next);
                    col.push((r, c.clone()));
                }
            }
            entries.push(col);
        }
        let mut mat = Matrix::zeros(rows.len(), cols.len());
        for (j, col) in entries.into_iter().enumerate() {
            for (i, c) in col {
                mat.set(i, j, c);
            }
        }
        for v in kernel(&mat)? {
            let x = Element::from_terms(ctx, cols.iter().cloned().zip(v.iter().cloned()))?;
            if *deg == zero_degree {
                zero_block_kernel.push(v);
            }
            solutions.push(x);
        }
    }
    let zs = z_monomials(ctx)?;
    let mut z_central = true;
    for (_, z) in &zs {
        for g in &gens {
            if !commutator(z, g)?.is_zero() {
                z_central = false;
            }
        }
    }
    // Span comparison inside the degree-0 block (all z-monomials live there).
    let cols = blocks.get(&zero_degree).cloned().unwrap_or_default();
    let index: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut z_rows = Vec::new();
    for (_, z) in &zs {
        let mut row = vec![Scalar::zero(); cols.len()];
        for (m, c) in z.terms() {
            match index.get(m) {
                Some(&i) => row[i] = c.clone(),
                None => z_central = false,
            }
        }
        z_rows.push(row);
    }
    let z_rank = rank(&Matrix::from_rows(z_rows.clone())?)?;
    let mut both = z_rows;
    both.extend(zero_block_kernel.iter().cloned());
    let joint = rank(&Matrix::from_rows(both)?)?;
    let dimension = solutions.len();
    let span_equal = z_rank == zs.len() && joint == z_rank && dimension == zero_block_kernel.len() && joint == dimension;
    Ok(CenterReport {
        n: ctx.n(),
        k: ctx.twist().to_string(),
        dimension,
        expected: (ctx.twice_k() as usize).pow(ctx.n() as u32),
        z_monomials: zs.len(),
        z_central,
        span_equal,
        basis: solutions,
    })
}
