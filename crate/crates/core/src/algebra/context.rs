use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::engine::LocalTable;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The twist k ∈ ½ℤ_{>0}, stored as 2k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Twist {
    twice: u32,
}

impl Twist {
    pub fn integer(k: u32) -> Self {
        assert!(k > 0, "twist must be positive");
        Twist { twice: 2 * k }
    }

    /// k = twice / 2.
    pub fn from_twice(twice: u32) -> Self {
        assert!(twice > 0, "twist must be positive");
        Twist { twice }
    }

    pub fn half() -> Self {
        Twist { twice: 1 }
    }

    /// 2k, which is also the bound on ω-exponents in normal form.
    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn as_integer(self) -> Option<u32> {
        self.is_integer().then_some(self.twice / 2)
    }

    /// (numerator, denominator) of k in lowest terms.
    pub fn as_fraction(self) -> (u32, u32) {
        if self.is_integer() {
            (self.twice / 2, 1)
        } else {
            (self.twice, 2)
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_fraction() {
            (k, 1) => write!(f, "{k}"),
            (n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl FromStr for Twist {
    type Err = Error;

    /// Accepts `2` or `3/2` (no floats).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid twist `{s}` (expected a positive integer or p/2)"));
        let s = s.trim();
        let twice = match s.split_once('/') {
            None => s.parse::<u32>().map_err(|_| bad())?.checked_mul(2).ok_or_else(bad)?,
            Some((n, "2")) => n.trim().parse::<u32>().map_err(|_| bad())?,
            Some((n, "1")) => n.trim().parse::<u32>().map_err(|_| bad())?.checked_mul(2).ok_or_else(bad)?,
            Some(_) => return Err(bad()),
        };
        if twice == 0 {
            return Err(bad());
        }
        Ok(Twist { twice })
    }
}

/// Which generating set elements are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// ψ_a, ψ_a*, ω_a (integer k only).
    Psi,
    /// φ_a = ψ_a, φ_a* = ψ_a* ω_a^k (any k ∈ ½ℤ_{>0}).
    Phi,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Psi => "psi",
            Convention::Phi => "phi",
        })
    }
}

/// How q enters the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QMode {
    /// q is the formal variable t.
    Formal,
    /// The formal variable is s and q = s² (gives q^{1/2} = s).
    FormalSqrt,
    /// q is a fixed nonzero constant.
    Numeric(Scalar),
}

pub(crate) struct Inner {
    pub n: usize,
    pub twist: Twist,
    pub convention: Convention,
    pub qmode: QMode,
    pub conductor: u32,
    pub q: Scalar,
    pub table: LocalTable,
}

/// Shared, immutable description of one algebra Cl_q(n, k).
#[derive(Clone)]
pub struct AlgebraContext(pub(crate) Arc<Inner>);

impl AlgebraContext {
    /// Formal-q context with the default conductor.
    pub fn new(n: usize, twist: Twist, convention: Convention) -> Result<Self> {
        Self::with_options(n, twist, convention, QMode::Formal, None)
    }

    pub fn psi(n: usize, k: u32) -> Result<Self> {
        Self::new(n, Twist::integer(k), Convention::Psi)
    }

    pub fn phi(n: usize, twist: Twist) -> Result<Self> {
        Self::new(n, twist, Convention::Phi)
    }

    /// Default conductor: 2k for integer k, 4k for half-integer k.
    pub fn default_conductor(twist: Twist) -> u32 {
        if twist.is_integer() {
            twist.twice()
        } else {
            2 * twist.twice()
        }
    }

    /// Full constructor. `conductor` must be a multiple of the default.
    pub fn with_options(
        n: usize,
        twist: Twist,
        convention: Convention,
        qmode: QMode,
        conductor: Option<u32>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("rank n must be positive".into()));
        }
        if convention == Convention::Psi && !twist.is_integer() {
            return Err(Error::Config(format!(
                "the psi presentation needs an integer twist (got k = {twist}); use phi"
            )));
        }
        let base = Self::default_conductor(twist);
        let conductor = conductor.unwrap_or(base);
        if conductor == 0 || conductor % base != 0 {
            return Err(Error::Config(format!(
                "conductor {conductor} is not a multiple of {base}"
            )));
        }
        let q = match &qmode {
            QMode::Formal => Scalar::t(),
            QMode::FormalSqrt => Scalar::t_pow(2),
            QMode::Numeric(v) => {
                if v.is_zero() || !v.is_constant() {
                    return Err(Error::Config("numeric q must be a nonzero constant".into()));
                }
                if conductor % v.conductor() != 0 {
                    return Err(Error::ConductorMismatch(v.conductor(), conductor));
                }
                v.clone()
            }
        };
        let table = LocalTable::build(twist, convention, &q)?;
        Ok(AlgebraContext(Arc::new(Inner { n, twist, convention, qmode, conductor, q, table })))
    }

    /// Same algebra data at a different rank.
    pub fn with_rank(&self, n: usize) -> Result<Self> {
        if n == self.n() {
            return Ok(self.clone());
        }
        let i = &self.0;
        Self::with_options(n, i.twist, i.convention, i.qmode.clone(), Some(i.conductor))
    }

    /// Same data in the other presentation (integer k only for psi).
    pub fn with_convention(&self, convention: Convention) -> Result<Self> {
        if convention == self.convention() {
            return Ok(self.clone());
        }
        let i = &self.0;
        Self::with_options(i.n, i.twist, convention, i.qmode.clone(), Some(i.conductor))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn twist(&self) -> Twist {
        self.0.twist
    }

    /// The integer 2k.
    pub fn twice_k(&self) -> u32 {
        self.0.twist.twice()
    }

    /// k as an integer; errors for half-integer twists.
    pub fn k_integer(&self) -> Result<u32> {
        self.0.twist.as_integer().ok_or_else(|| {
            Error::Precondition(format!("integer twist required (k = {})", self.0.twist))
        })
    }

    pub fn convention(&self) -> Convention {
        self.0.convention
    }

    pub fn qmode(&self) -> &QMode {
        &self.0.qmode
    }

    pub fn conductor(&self) -> u32 {
        self.0.conductor
    }

    /// The parameter q as a scalar.
    pub fn q(&self) -> &Scalar {
        &self.0.q
    }

    /// q^e.
    pub fn q_pow(&self, e: i64) -> Scalar {
        self.0.q.pow(e).expect("q is invertible")
    }

    /// ζ_{2k}; for half-integer k this is a primitive (2k)-th root in Q(ζ_{4k}).
    pub fn zeta_2k(&self) -> Scalar {
        let m = self.conductor();
        let twice = self.twice_k();
        Scalar::constant(crate::scalar::Cyclotomic::root_power(m, (m / twice) as i64))
    }

    /// Name of the formal variable in text forms.
    pub fn var_name(&self) -> &'static str {
        match self.0.qmode {
            QMode::FormalSqrt => "s",
            _ => "q",
        }
    }

    pub fn is_formal(&self) -> bool {
        !matches!(self.0.qmode, QMode::Numeric(_))
    }

    /// True unless q is numeric with q^{2k} = 1.
    pub fn q2k_generic(&self) -> bool {
        !self.q_pow(self.twice_k() as i64).is_one()
    }

    pub fn scalar_text(&self, s: &Scalar) -> String {
        s.to_text(self.var_name(), self.conductor())
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        Scalar::parse(text, self.var_name(), self.conductor())
    }

    pub(crate) fn table(&self) -> &LocalTable {
        &self.0.table
    }

    /// Coefficient map induced by q ↦ q^{-1}.
    pub fn invert_q(&self, s: &Scalar) -> Result<Scalar> {
        match &self.0.qmode {
            QMode::Formal | QMode::FormalSqrt => Ok(s.invert_variable()),
            QMode::Numeric(q) => {
                if !q.checked_mul(&q.conj_coefficients())?.is_one() {
                    return Err(Error::Precondition(
                        "q -> q^-1 needs |q| = 1 for numeric q (complex conjugation must invert q)".into(),
                    ));
                }
                Ok(s.conj_coefficients())
            }
        }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.n == other.0.n
                && self.0.twist == other.0.twist
                && self.0.convention == other.0.convention
                && self.0.qmode == other.0.qmode
                && self.0.conductor == other.0.conductor)
    }

    pub(crate) fn check_index(&self, a: usize) -> Result<()> {
        if a == 0 || a > self.n() {
            return Err(Error::IndexOutOfRange { index: a as i64, max: self.n() });
        }
        Ok(())
    }
}

impl PartialEq for AlgebraContext {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for AlgebraContext {}

impl fmt::Debug for AlgebraContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cl_q(n={}, k={}, {}, {:?}, m={})",
            self.n(),
            self.twist(),
            self.convention(),
            self.0.qmode,
            self.conductor()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_parsing() {
        assert_eq!("1/2".parse::<Twist>().unwrap(), Twist::half());
        assert_eq!("2".parse::<Twist>().unwrap(), Twist::integer(2));
        assert_eq!("4/2".parse::<Twist>().unwrap(), Twist::integer(2));
        assert_eq!("3/2".parse::<Twist>().unwrap().to_string(), "3/2");
        assert!("0".parse::<Twist>().is_err());
        assert!("1.5".parse::<Twist>().is_err());
        assert!("1/3".parse::<Twist>().is_err());
    }

    #[test]
    fn conductors() {
        assert_eq!(AlgebraContext::default_conductor(Twist::integer(2)), 4);
        assert_eq!(AlgebraContext::default_conductor(Twist::from_twice(3)), 6);
        assert_eq!(AlgebraContext::default_conductor(Twist::half()), 2);
    }

    #[test]
    fn psi_needs_integer_twist() {
        assert!(AlgebraContext::new(1, Twist::half(), Convention::Psi).is_err());
        assert!(AlgebraContext::new(1, Twist::half(), Convention::Phi).is_ok());
    }

    #[test]
    fn zeta_has_order_2k() {
        for twice in 1..=6 {
            let ctx = AlgebraContext::phi(1, Twist::from_twice(twice)).unwrap();
            let z = ctx.zeta_2k();
            assert!(z.pow(twice as i64).unwrap().is_one());
            for j in 1..twice {
                assert!(!z.pow(j as i64).unwrap().is_one());
            }
        }
    }
}
