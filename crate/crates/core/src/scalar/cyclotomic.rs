//! Elements of the cyclotomic field Q(ζ_m), stored as rational vectors
//! reduced modulo Φ_m.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

type QPoly = Vec<BigRational>;

fn cache() -> &'static Mutex<HashMap<u32, Arc<QPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<QPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The m-th cyclotomic polynomial, ascending coefficients (monic).
pub fn cyclotomic_polynomial(m: u32) -> Arc<QPoly> {
    assert!(m >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d.
    let mut p: Vec<BigInt> = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let f = cyclotomic_polynomial(d);
            let f: Vec<BigInt> = f.iter().map(|c| c.to_integer()).collect();
            p = div_monic_int(&p, &f);
        }
    }
    let out: Arc<QPoly> = Arc::new(p.into_iter().map(BigRational::from_integer).collect());
    cache().lock().unwrap().insert(m, out.clone());
    out
}

fn div_monic_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

/// Euler's totient, i.e. the degree of Φ_m.
pub fn totient(m: u32) -> usize {
    cyclotomic_polynomial(m).len() - 1
}

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Reduce modulo a monic polynomial in place.
fn reduce_mod(p: &mut QPoly, f: &[BigRational]) {
    let df = f.len() - 1;
    if df == 0 {
        p.clear();
        return;
    }
    while p.len() > df {
        let top = p.pop().unwrap();
        if !top.is_zero() {
            let off = p.len() - df;
            for j in 0..df {
                p[off + j] -= &top * &f[j];
            }
        }
    }
    trim(p);
}

fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Smallest conductor containing both, if one divides the other.
pub(crate) fn common_conductor(a: u32, b: u32) -> Result<u32> {
    if a == b || b == 1 {
        Ok(a)
    } else if a == 1 {
        Ok(b)
    } else if a % b == 0 {
        Ok(a)
    } else if b % a == 0 {
        Ok(b)
    } else {
        Err(Error::ConductorMismatch(a, b))
    }
}

/// An element of Q(ζ_m). Rational values always carry conductor 1.
#[derive(Clone)]
pub struct Cyclotomic {
    m: u32,
    c: QPoly,
}

impl Cyclotomic {
    fn from_raw(m: u32, mut c: QPoly) -> Self {
        if m > 1 {
            let f = cyclotomic_polynomial(m);
            reduce_mod(&mut c, &f);
        } else {
            trim(&mut c);
        }
        if c.len() <= 1 {
            return Cyclotomic { m: 1, c };
        }
        Cyclotomic { m, c }
    }

    pub fn zero() -> Self {
        Cyclotomic { m: 1, c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Cyclotomic { m: 1, c: vec![r] }
        }
    }

    /// ζ_m^e for any integer e.
    pub fn root_power(m: u32, e: i64) -> Self {
        assert!(m >= 1);
        let e = e.rem_euclid(m as i64) as usize;
        let mut c = vec![BigRational::zero(); e + 1];
        c[e] = BigRational::one();
        Self::from_raw(m, c)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.m == 1 && self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.c.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    /// Coefficients on the power basis 1, ζ_m, ζ_m², ...
    pub fn coefficients(&self) -> &[BigRational] {
        &self.c
    }

    /// Re-express in Q(ζ_target); requires m | target.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if self.m == target || self.c.len() <= 1 {
            return Ok(self.clone());
        }
        if target % self.m != 0 {
            return Err(Error::ConductorMismatch(self.m, target));
        }
        let r = (target / self.m) as usize;
        let mut c = vec![BigRational::zero(); (self.c.len() - 1) * r + 1];
        for (j, x) in self.c.iter().enumerate() {
            c[j * r] = x.clone();
        }
        Ok(Self::from_raw(target, c))
    }

    /// Coefficients of the embedding into Q(ζ_target), not normalised down.
    pub(crate) fn coefficients_at(&self, target: u32) -> Result<QPoly> {
        if self.c.len() <= 1 {
            return Ok(self.c.clone());
        }
        Ok(self.embed(target)?.c)
    }

    fn aligned(&self, other: &Self) -> Result<(u32, QPoly, QPoly)> {
        let m = common_conductor(self.m, other.m)?;
        Ok((m, self.coefficients_at(m)?, other.coefficients_at(m)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.m == 1 && other.m == 1 {
            return Ok(Self::from_rational(
                self.as_rational().unwrap() + other.as_rational().unwrap(),
            ));
        }
        let (m, mut a, b) = self.aligned(other)?;
        if a.len() < b.len() {
            a.resize(b.len(), BigRational::zero());
        }
        for (i, y) in b.into_iter().enumerate() {
            a[i] += y;
        }
        Ok(Self::from_raw(m, a))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        if self.m == 1 && other.m == 1 {
            return Ok(Self::from_rational(&self.c[0] * &other.c[0]));
        }
        if self.m == 1 {
            return Ok(other.scale(&self.c[0]));
        }
        if other.m == 1 {
            return Ok(self.scale(&other.c[0]));
        }
        let (m, a, b) = self.aligned(other)?;
        Ok(Self::from_raw(m, qpoly_mul(&a, &b)))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            m: self.m,
            c: self.c.iter().map(|x| x * r).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            m: self.m,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.m == 1 {
            return Ok(Self::from_rational(self.c[0].recip()));
        }
        // Extended Euclid against Φ_m; the gcd is a nonzero constant.
        let f = cyclotomic_polynomial(self.m);
        let (mut r0, mut r1) = (f.to_vec(), self.c.clone());
        let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1);
        let k = r0[0].recip();
        Ok(Self::from_raw(self.m, s0.into_iter().map(|x| x * &k).collect()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        if self.m == 1 {
            return self.clone();
        }
        let m = self.m as usize;
        let mut c = vec![BigRational::zero(); m];
        for (j, x) in self.c.iter().enumerate() {
            c[(m - j) % m] += x;
        }
        Self::from_raw(self.m, c)
    }

    fn render(&self, conductor: u32) -> String {
        let c = match self.coefficients_at(conductor) {
            Ok(c) => c,
            Err(_) => self.c.clone(),
        };
        if c.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (j, x) in c.iter().enumerate().rev() {
            if x.is_zero() {
                continue;
            }
            let neg = x.is_negative();
            let a = x.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let z = match j {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{j}"),
            };
            if z.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&z);
            } else {
                out.push_str(&format!("{a}*{z}"));
            }
        }
        out
    }

    /// Text form relative to ζ = ζ_conductor (the value must embed there).
    pub fn to_text(&self, conductor: u32) -> String {
        self.render(conductor)
    }

    /// Number of nonzero power-basis terms once embedded at `conductor`.
    pub(crate) fn term_count(&self, conductor: u32) -> usize {
        self.coefficients_at(conductor)
            .map(|c| c.iter().filter(|x| !x.is_zero()).count())
            .unwrap_or(self.c.len())
    }

}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.c == other.c;
        }
        if self.c.len() <= 1 || other.c.len() <= 1 {
            return false;
        }
        let l = self.m.lcm(&other.m);
        self.embed(l).map(|a| a.c) == other.embed(l).map(|b| b.c)
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({})", self.m, self.render(self.m))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.m))
    }
}
