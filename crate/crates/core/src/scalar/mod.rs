//! The coefficient field K = Q(ζ_m)(t).
//!
//! A [`Scalar`] is stored as `t^shift · num(t) / den(t)` with `num(0) ≠ 0`,
//! `den(0) ≠ 0`, `den` monic and `gcd(num, den) = 1`, so structural equality
//! is field equality. In formal mode `t` is q itself (or q^{1/2}, see
//! [`crate::algebra::QMode`]).

mod cyclotomic;
pub mod modp;
mod poly;
mod qnum;
mod text;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};
pub use poly::Poly;
pub use qnum::{q_binomial, q_factorial, q_integer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::constant(Cyclotomic::from_int(v))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::constant(Cyclotomic::from_rational(r))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Scalar { shift: 0, num: Poly::constant(c), den: Poly::one() }
    }

    /// The formal variable t.
    pub fn t() -> Self {
        Scalar::t_pow(1)
    }

    /// t^e for any integer e.
    pub fn t_pow(e: i64) -> Self {
        Scalar { shift: e, num: Poly::one(), den: Poly::one() }
    }

    /// A primitive m-th root of unity ζ_m.
    pub fn cyclotomic_root(m: u32) -> Self {
        Scalar::constant(Cyclotomic::root_power(m, 1))
    }

    /// Canonicalise `t^shift · num / den`.
    pub fn from_parts(shift: i64, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let vn = num.valuation();
        let vd = den.valuation();
        let mut num = num.shift_down(vn);
        let mut den = den.shift_down(vd);
        let shift = shift + vn as i64 - vd as i64;
        if den.degree() > 0 {
            let g = num.gcd(&den)?;
            if g.degree() > 0 {
                num = num.divrem(&g)?.0;
                den = den.divrem(&g)?.0;
            }
        }
        let (den, lead) = den.make_monic()?;
        if !lead.is_one() {
            num = num.scale(&lead.inv()?)?;
        }
        Ok(Scalar { shift, num, den })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True if the value does not involve t.
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.shift == 0 && self.num.degree() == 0 && self.den.is_one())
    }

    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return Some(Cyclotomic::zero());
        }
        self.is_constant().then(|| self.num.coeffs()[0].clone())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_constant().and_then(|c| c.as_rational())
    }

    /// Laurent polynomial (denominator 1)?
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// lcm of the conductors of all coefficients.
    pub fn conductor(&self) -> u32 {
        self.num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .fold(1u32, |acc, c| acc.lcm(&c.conductor()))
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.clone());
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        let s = self.shift.min(o.shift);
        let a = self.num.shift_up((self.shift - s) as usize);
        let b = o.num.shift_up((o.shift - s) as usize);
        if self.den.is_one() && o.den.is_one() {
            let num = a.add(&b)?;
            if num.is_zero() {
                return Ok(Scalar::zero());
            }
            let v = num.valuation();
            return Ok(Scalar { shift: s + v as i64, num: num.shift_down(v), den: Poly::one() });
        }
        if self.den == o.den {
            return Scalar::from_parts(s, a.add(&b)?, self.den.clone());
        }
        let num = a.mul(&o.den)?.add(&b.mul(&self.den)?)?;
        Scalar::from_parts(s, num, self.den.mul(&o.den)?)
    }

    pub fn checked_neg(&self) -> Self {
        Scalar { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.checked_neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.is_zero() || o.is_zero() {
            return Ok(Scalar::zero());
        }
        let shift = self.shift + o.shift;
        if self.den.is_one() && o.den.is_one() {
            // Product of polynomials with nonzero constant terms keeps that property.
            return Ok(Scalar { shift, num: self.num.mul(&o.num)?, den: Poly::one() });
        }
        Scalar::from_parts(shift, self.num.mul(&o.num)?, self.den.mul(&o.den)?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Scalar::from_parts(-self.shift, self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.checked_mul(&o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Scalar::one());
        }
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one();
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

    /// Substitute t ↦ t^{-1}, fixing the constants.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        // t^s N(t)/D(t) ↦ t^{-s - deg N + deg D} rev(N)/rev(D)
        let shift = -self.shift - self.num.degree() as i64 + self.den.degree() as i64;
        Scalar::from_parts(shift, self.num.reversed(), self.den.reversed())
            .expect("reversal of a canonical fraction is well defined")
    }

    /// Apply ζ ↦ ζ^{-1} to every coefficient, fixing t.
    pub fn conj_coefficients(&self) -> Self {
        let num = self.num.map_coeffs(|c| c.conj());
        let den = self.den.map_coeffs(|c| c.conj());
        Scalar::from_parts(self.shift, num, den).expect("conjugation preserves nonzero denominators")
    }

    /// Substitute t ↦ value (e.g. to specialise the formal variable).
    pub fn substitute(&self, value: &Scalar) -> Result<Self> {
        let eval = |p: &Poly| -> Result<Scalar> {
            let mut acc = Scalar::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc.checked_mul(value)?.checked_add(&Scalar::constant(c.clone()))?;
            }
            Ok(acc)
        };
        let n = eval(&self.num)?;
        let d = eval(&self.den)?;
        value.pow(self.shift)?.checked_mul(&n)?.checked_div(&d)
    }

    /// Canonical text, with `var` naming t and `z` naming ζ_conductor.
    pub fn to_text(&self, var: &str, conductor: u32) -> String {
        text::render(self, var, conductor)
    }

    /// Inverse of [`Scalar::to_text`].
    pub fn parse(src: &str, var: &str, conductor: u32) -> Result<Self> {
        text::parse(src, var, conductor)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("q", self.conductor()))
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$checked(o).expect(concat!("scalar ", stringify!($m)))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.checked_neg()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.checked_neg()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}
