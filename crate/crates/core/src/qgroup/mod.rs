//! Homomorphisms Θ: U_q(g, k) → Cl_q(n, k) for g = sl_n, so_2n, so_2n+1.
//!
//! U_q(g, k) is never built; the images are checked against its relations.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{involution, AlgebraContext, Convention, Degree, Element, InvolutionKind, QMode};
use crate::error::{Error, Result};
use crate::scalar::q_binomial;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// sl_n
    A,
    /// so_{2n+1}
    B,
    /// so_{2n}
    D,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::Config(format!("unknown family `{s}` (expected A, B or D)"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
        })
    }
}

/// Generalized Cartan matrix with symmetrizing root lengths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanDatum {
    pub family: Family,
    pub a: Vec<Vec<i64>>,
    pub d: Vec<u32>,
}

impl CartanDatum {
    /// The datum matching Θ on Cl_q(n, k): rank n−1 for A, n for B and D.
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("type {family} needs n >= 2 (got {n})")));
        }
        let r = if family == Family::A { n - 1 } else { n };
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        // The sl_n chain on the first n−1 nodes.
        for i in 0..n - 2 {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
        let mut d = vec![1; r];
        match family {
            Family::A => {}
            Family::D => {
                if n >= 3 {
                    a[n - 3][n - 1] = -1;
                    a[n - 1][n - 3] = -1;
                }
            }
            Family::B => {
                a[n - 2][n - 1] = -1;
                a[n - 1][n - 2] = -2;
                d = vec![2; r];
                d[n - 1] = 1;
            }
        }
        let datum = CartanDatum { family, a, d };
        datum.validate()?;
        Ok(datum)
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.rank();
        for i in 0..r {
            if self.a[i][i] != 2 {
                return Err(Error::Precondition("Cartan diagonal must be 2".into()));
            }
            for j in 0..r {
                if i != j && self.a[i][j] > 0 {
                    return Err(Error::Precondition("Cartan off-diagonal entries must be <= 0".into()));
                }
                if self.d[i] as i64 * self.a[i][j] != self.d[j] as i64 * self.a[j][i] {
                    return Err(Error::Precondition("D·A is not symmetric".into()));
                }
            }
        }
        Ok(())
    }
}

/// Θ(E_i), Θ(F_i), Θ(K_i), Θ(K_i^{-1}) (0-based vectors, node i+1).
#[derive(Clone, Debug)]
pub struct ThetaImage {
    pub datum: CartanDatum,
    pub ctx: AlgebraContext,
    /// Quantum-group parameter: q, or s = q^{1/2} for type B.
    pub base: Scalar,
    pub e: Vec<Element>,
    pub f: Vec<Element>,
    pub k: Vec<Element>,
    pub kinv: Vec<Element>,
}

impl ThetaImage {
    /// q_i = base^{d_i}.
    pub fn q_i(&self, i: usize) -> Result<Scalar> {
        self.base.pow(self.datum.d[i] as i64)
    }
}

/// Re-base a formal context at s with q = s², as type B requires.
pub fn sqrt_base_context(ctx: &AlgebraContext) -> Result<AlgebraContext> {
    match ctx.qmode() {
        QMode::FormalSqrt => Ok(ctx.clone()),
        QMode::Formal => AlgebraContext::with_options(
            ctx.n(),
            ctx.twist(),
            ctx.convention(),
            QMode::FormalSqrt,
            Some(ctx.conductor()),
        ),
        QMode::Numeric(_) => Err(Error::Precondition("type B needs a formal square root of q (use a formal q)".into())),
    }
}

fn w(ctx: &AlgebraContext, a: usize, e: i64) -> Result<Element> {
    Element::omega_power(ctx, a, e)
}

fn pair(x: Result<Element>, y: Result<Element>) -> Result<Element> {
    x?.checked_mul(&y?)
}

/// Images of the Chevalley generators. Type B needs the s² = q base (a formal
/// context is re-based automatically).
pub fn theta_image(ctx: &AlgebraContext, family: Family) -> Result<ThetaImage> {
    let mut ctx = ctx.with_convention(Convention::Psi)?;
    let n = ctx.n();
    let datum = CartanDatum::new(family, n)?;
    if family == Family::B {
        ctx = sqrt_base_context(&ctx)?;
    }
    let c = &ctx;
    let psi = |a| Element::raising(c, a);
    let psid = |a| Element::lowering(c, a);
    let (mut e, mut f, mut k, mut kinv) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for i in 1..n {
        e.push(pair(psi(i), psid(i + 1))?);
        f.push(pair(psi(i + 1), psid(i))?);
        k.push(pair(w(c, i, 1), w(c, i + 1, -1))?);
        kinv.push(pair(w(c, i, -1), w(c, i + 1, 1))?);
    }
    let base = match family {
        Family::B => Scalar::t(),
        _ => c.q().clone(),
    };
    match family {
        Family::A => {}
        Family::D => {
            e.push(pair(psi(n - 1), psi(n))?);
            f.push(pair(psid(n), psid(n - 1))?);
            k.push(pair(w(c, n - 1, 1), w(c, n, 1))?.scale(c.q())?);
            kinv.push(pair(w(c, n - 1, -1), w(c, n, -1))?.scale(&c.q_pow(-1))?);
        }
        Family::B => {
            e.push(psi(n)?);
            f.push(psid(n)?);
            k.push(w(c, n, 1)?.scale(&base)?);
            kinv.push(w(c, n, -1)?.scale(&base.inv()?)?);
        }
    }
    Ok(ThetaImage { datum, ctx, base, e, f, k, kinv })
}

/// One checked relation: `residual` is lhs − rhs in normal form.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation_id: String,
    pub lhs_text: String,
    pub residual_text: String,
    pub pass: bool,
    #[serde(skip)]
    pub residual: Element,
}

impl RelationCheck {
    fn new(id: String, lhs_text: String, residual: Element) -> Self {
        RelationCheck { relation_id: id, lhs_text, residual_text: residual.to_text(), pass: residual.is_zero(), residual }
    }
}

fn bracket(x: &Element, y: &Element, t: &Scalar) -> Result<Element> {
    x.checked_mul(y)?.checked_sub(&y.checked_mul(x)?.scale(t)?)
}

/// Σ_m (−1)^m [1−a; m]_b X_i^{1−a−m} X_j X_i^m.
fn serre(xi: &Element, xj: &Element, a: i64, b: &Scalar) -> Result<Element> {
    let top = (1 - a) as u32;
    let mut pows = vec![Element::one(xi.ctx())];
    for m in 1..=top as usize {
        pows.push(pows[m - 1].checked_mul(xi)?);
    }
    let mut acc = Element::zero(xi.ctx());
    for m in 0..=top {
        let mut c = q_binomial(top, m, b)?;
        if m % 2 == 1 {
            c = c.checked_neg();
        }
        let term = pows[(top - m) as usize].checked_mul(xj)?.checked_mul(&pows[m as usize])?;
        acc = acc.checked_add(&term.scale(&c)?)?;
    }
    Ok(acc)
}

/// Every defining relation of U_q(g, k) evaluated on the images.
pub fn check_uqgk_relations(img: &ThetaImage) -> Result<Vec<RelationCheck>> {
    let ctx = &img.ctx;
    if !ctx.q2k_generic() {
        return Err(Error::Precondition("the quantum-group relations need q^{2k} != 1".into()));
    }
    let k = ctx.k_integer()? as i64;
    let r = img.datum.rank();
    let a = &img.datum.a;
    let one = Element::one(ctx);
    let mut out = Vec::new();
    for i in 0..r {
        let (ii, qi) = (i + 1, img.q_i(i)?);
        for (x, y, tag) in [(&img.k[i], &img.kinv[i], "K*Kinv"), (&img.kinv[i], &img.k[i], "Kinv*K")] {
            out.push(RelationCheck::new(
                format!("{tag}[{ii}]"),
                format!("{tag}_{ii} - 1"),
                x.checked_mul(y)?.checked_sub(&one)?,
            ));
        }
        for j in 0..r {
            let jj = j + 1;
            if i < j {
                out.push(RelationCheck::new(
                    format!("KK[{ii},{jj}]"),
                    format!("K{ii}*K{jj} - K{jj}*K{ii}"),
                    bracket(&img.k[i], &img.k[j], &Scalar::one())?,
                ));
            }
            for (x, tag, sign) in [(&img.e[j], "E", 1), (&img.f[j], "F", -1)] {
                let lhs = img.k[i].checked_mul(x)?.checked_mul(&img.kinv[i])?;
                let rhs = x.scale(&qi.pow(sign * a[i][j])?)?;
                out.push(RelationCheck::new(
                    format!("K{tag}[{ii},{jj}]"),
                    format!("K{ii}*{tag}{jj}*K{ii}^-1 - q_{ii}^({})*{tag}{jj}", sign * a[i][j]),
                    lhs.checked_sub(&rhs)?,
                ));
            }
            let mut res = bracket(&img.e[i], &img.f[j], &Scalar::one())?;
            if i == j {
                let num = img.k[i].pow(k as u32)?.checked_sub(&img.kinv[i].pow(k as u32)?)?;
                let den = qi.pow(k)?.checked_sub(&qi.pow(-k)?)?;
                res = res.checked_sub(&num.scale(&den.inv()?)?)?;
            }
            out.push(RelationCheck::new(
                format!("EF[{ii},{jj}]"),
                if i == j {
                    format!("E{ii}*F{ii} - F{ii}*E{ii} - (K{ii}^k - K{ii}^-k)/(q_{ii}^k - q_{ii}^-k)")
                } else {
                    format!("E{ii}*F{jj} - F{jj}*E{ii}")
                },
                res,
            ));
            if i != j {
                let b = qi.pow(k)?;
                for (xs, tag) in [(&img.e, "E"), (&img.f, "F")] {
                    out.push(RelationCheck::new(
                        format!("serre{tag}[{ii},{jj}]"),
                        format!(
                            "sum_m (-1)^m [{}; m]_(q_{ii}^k) {tag}{ii}^({}-m)*{tag}{jj}*{tag}{ii}^m",
                            1 - a[i][j],
                            1 - a[i][j]
                        ),
                        serre(&xs[i], &xs[j], a[i][j], &b)?,
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// (generator, expected degree, pass) for every E_i and F_i.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub generator: String,
    pub expected: Vec<i64>,
    pub pass: bool,
}

/// deg Θ(E_i) = e_i − e_{i+1}; the last node gives e_{n−1} + e_n (D) or e_n (B).
pub fn degree_bookkeeping(img: &ThetaImage) -> Vec<DegreeCheck> {
    let n = img.ctx.n();
    let mut out = Vec::new();
    for i in 0..img.datum.rank() {
        let mut deg = vec![0i64; n];
        if i + 1 < n {
            deg[i] = 1;
            deg[i + 1] = -1;
        } else if img.datum.family == Family::D {
            deg[n - 2] = 1;
            deg[n - 1] = 1;
        } else {
            deg[n - 1] = 1;
        }
        let neg: Vec<i64> = deg.iter().map(|x| -x).collect();
        for (x, tag, want) in [(&img.e[i], "E", deg), (&img.f[i], "F", neg)] {
            let pass = matches!(x.degree(), Degree::Homogeneous(ref d) if *d == want);
            out.push(DegreeCheck { generator: format!("{tag}{}", i + 1), expected: want, pass });
        }
    }
    out
}

/// Induced rules: E^† = F, K^† = K; E^∨ = F, K^∨ = K^{-1}; E^t = E, K^t = K^{-1}.
pub fn induced_involution_check(img: &ThetaImage) -> Result<Vec<RelationCheck>> {
    let mut out = Vec::new();
    for i in 0..img.datum.rank() {
        let ii = i + 1;
        let rules: [(InvolutionKind, &Element, &Element, &str); 6] = [
            (InvolutionKind::Dagger, &img.e[i], &img.f[i], "E^dagger = F"),
            (InvolutionKind::Dagger, &img.k[i], &img.k[i], "K^dagger = K"),
            (InvolutionKind::Duality, &img.e[i], &img.f[i], "E^duality = F"),
            (InvolutionKind::Duality, &img.k[i], &img.kinv[i], "K^duality = K^-1"),
            (InvolutionKind::Transpose, &img.e[i], &img.e[i], "E^t = E"),
            (InvolutionKind::Transpose, &img.k[i], &img.kinv[i], "K^t = K^-1"),
        ];
        for (kind, x, want, text) in rules {
            let res = involution(kind, x)?.checked_sub(want)?;
            out.push(RelationCheck::new(format!("{}[{ii}]", kind.name()), format!("{text} at node {ii}"), res));
        }
    }
    Ok(out)
}

/// The commutator identities behind Θ, checked as elements for all
/// admissible index tuples of `ctx` (ψ presentation, integer k).
pub fn identity_checks(ctx: &AlgebraContext) -> Result<Vec<RelationCheck>> {
    let ctx = &ctx.with_convention(Convention::Psi)?;
    let k = ctx.k_integer()? as i64;
    let n = ctx.n();
    let psi = |a| Element::raising(ctx, a);
    let psid = |a| Element::lowering(ctx, a);
    let one = Scalar::one();
    let qk = ctx.q_pow(k);
    let den = qk.checked_sub(&ctx.q_pow(-k))?.inv()?;
    let mut out = Vec::new();
    for a in 1..=n {
        // ψψ* ± ψ*ψ = (q^k ω^k ± ω^{-k}) / (q^k ± 1)
        for (sign, tag) in [(1i64, "+"), (-1, "-")] {
            let s = Scalar::from_int(sign);
            let lhs = psi(a)?.checked_mul(&psid(a)?)?.checked_add(&psid(a)?.checked_mul(&psi(a)?)?.scale(&s)?)?;
            let rhs = w(ctx, a, k)?
                .scale(&qk)?
                .checked_add(&w(ctx, a, -k)?.scale(&s)?)?
                .scale(&qk.checked_add(&s)?.inv()?)?;
            out.push(RelationCheck::new(
                format!("psi_psid{tag}[{a}]"),
                format!("p{a}*d{a} {tag} d{a}*p{a} - (q^k*w{a}^k {tag} w{a}^-k)/(q^k {tag} 1)"),
                lhs.checked_sub(&rhs)?,
            ));
        }
        for b in 1..=n {
            if a == b {
                continue;
            }
            let ratio = pair(w(ctx, a, 1), w(ctx, b, -1))?;
            let ratio_inv = pair(w(ctx, a, -1), w(ctx, b, 1))?;
            let lhs = bracket(&psi(a)?.checked_mul(&psid(b)?)?, &psi(b)?.checked_mul(&psid(a)?)?, &one)?;
            let rhs = ratio.pow(k as u32)?.checked_sub(&ratio_inv.pow(k as u32)?)?.scale(&den)?;
            out.push(RelationCheck::new(
                format!("mixed_comm[{a},{b}]"),
                format!("[p{a}*d{b}, p{b}*d{a}] - ((w{a}*w{b}^-1)^k - (w{a}*w{b}^-1)^-k)/(q^k - q^-k)"),
                lhs.checked_sub(&rhs)?,
            ));
            let prod = pair(w(ctx, a, 1), w(ctx, b, 1))?.scale(ctx.q())?;
            let prod_inv = pair(w(ctx, a, -1), w(ctx, b, -1))?.scale(&ctx.q_pow(-1))?;
            let lhs = bracket(&psi(a)?.checked_mul(&psi(b)?)?, &psid(b)?.checked_mul(&psid(a)?)?, &one)?;
            let rhs = prod.pow(k as u32)?.checked_sub(&prod_inv.pow(k as u32)?)?.scale(&den)?;
            out.push(RelationCheck::new(
                format!("pair_comm[{a},{b}]"),
                format!("[p{a}*p{b}, d{b}*d{a}] - ((q*w{a}*w{b})^k - (q*w{a}*w{b})^-k)/(q^k - q^-k)"),
                lhs.checked_sub(&rhs)?,
            ));
            for c in 1..=n {
                if c == a || c == b {
                    continue;
                }
                for (xa, na) in [(psi(a)?, format!("p{a}")), (psid(a)?, format!("d{a}"))] {
                    for (xc, nc) in [(psi(c)?, format!("p{c}")), (psid(c)?, format!("d{c}"))] {
                        for (sign, tag) in [(1i64, "+"), (-1, "-")] {
                            let x = xa.checked_mul(&psi(b)?)?;
                            let y = psid(b)?.checked_mul(&xc)?;
                            let lhs = bracket(&x, &y, &ctx.q_pow(sign * k))?;
                            let rhs = w(ctx, b, -sign * k)?.checked_mul(&xa)?.checked_mul(&xc)?;
                            out.push(RelationCheck::new(
                                format!("q_comm{tag}[{na},{b},{nc}]"),
                                format!("[{na}*p{b}, d{b}*{nc}]_(q^{tag}k) - w{b}^({}k)*{na}*{nc}", if sign > 0 { "-" } else { "" }),
                                lhs.checked_sub(&rhs)?,
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
