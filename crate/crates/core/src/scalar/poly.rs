//! Dense univariate polynomials with cyclotomic coefficients.

use super::cyclotomic::Cyclotomic;
use crate::error::Result;

/// Ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub(crate) Vec<Cyclotomic>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Cyclotomic::one()])
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Poly::from_vec(vec![c])
    }

    pub fn from_vec(mut v: Vec<Cyclotomic>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        Poly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.0
    }

    pub fn lead(&self) -> &Cyclotomic {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    /// Number of leading zero coefficients (the t-adic valuation).
    pub fn valuation(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        Poly(self.0[k..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Cyclotomic::zero(); k];
        v.extend(self.0.iter().cloned());
        Poly(v)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (self.0.get(i), o.0.get(i)) {
                (Some(a), Some(b)) => a.checked_add(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Ok(Poly::from_vec(v))
    }

    pub fn neg(&self) -> Self {
        Poly(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        if o.0.len() == 1 {
            return self.scale(&o.0[0]);
        }
        if self.0.len() == 1 {
            return o.scale(&self.0[0]);
        }
        let mut v = vec![Cyclotomic::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        Ok(Poly::from_vec(v))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Result<Self> {
        if c.is_one() {
            return Ok(self.clone());
        }
        let v = self
            .0
            .iter()
            .map(|a| a.checked_mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_vec(v))
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree();
        if self.0.len() < d.0.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = d.lead().inv()?;
        let mut r = self.0.clone();
        let mut q = vec![Cyclotomic::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].checked_mul(&lead_inv)?;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    r[i + j] = r[i + j].checked_sub(&c.checked_mul(b)?)?;
                }
            }
            q[i] = c;
        }
        Ok((Poly::from_vec(q), Poly::from_vec(r)))
    }

    pub fn make_monic(&self) -> Result<(Self, Cyclotomic)> {
        let l = self.lead().clone();
        if l.is_one() {
            return Ok((self.clone(), l));
        }
        Ok((self.scale(&l.inv()?)?, l))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = std::mem::replace(&mut b, r);
        }
        if a.is_zero() {
            return Ok(a);
        }
        Ok(a.make_monic()?.0)
    }

    /// Coefficient list reversed (t^deg · p(1/t)).
    pub fn reversed(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        Poly::from_vec(v)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        Poly::from_vec(self.0.iter().map(f).collect())
    }

    /// Horner evaluation at a cyclotomic point.
    pub fn eval(&self, x: &Cyclotomic) -> Result<Cyclotomic> {
        let mut acc = Cyclotomic::zero();
        for c in self.0.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(c)?;
        }
        Ok(acc)
    }
}
