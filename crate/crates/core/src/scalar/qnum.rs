use super::Scalar;
use crate::error::{Error, Result};

/// `[n]_b = (b^n - b^{-n}) / (b - b^{-1})`.
pub fn q_integer(n: i64, base: &Scalar) -> Result<Scalar> {
    let binv = base.inv()?;
    let den = base.checked_sub(&binv)?;
    if den.is_zero() {
        return Err(Error::DegenerateBase);
    }
    let num = base.pow(n)?.checked_sub(&base.pow(-n)?)?;
    num.checked_div(&den)
}

/// `[n]_b! = [1]_b [2]_b ⋯ [n]_b`.
pub fn q_factorial(n: u32, base: &Scalar) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for i in 1..=n as i64 {
        acc = acc.checked_mul(&q_integer(i, base)?)?;
    }
    // Still reject degenerate bases for n ≤ 1.
    if n < 2 {
        q_integer(1, base)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[n; m]_b`, for `0 ≤ m ≤ n`.
pub fn q_binomial(n: u32, m: u32, base: &Scalar) -> Result<Scalar> {
    if m > n {
        return Err(Error::Precondition(format!("q_binomial needs m <= n (got {m} > {n})")));
    }
    let num = q_factorial(n, base)?;
    let den = q_factorial(m, base)?.checked_mul(&q_factorial(n - m, base)?)?;
    num.checked_div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let q = Scalar::t();
        assert_eq!(q_integer(1, &q).unwrap(), Scalar::one());
        assert_eq!(q_integer(2, &q).unwrap(), &q + &q.inv().unwrap());
        assert_eq!(q_integer(0, &q).unwrap(), Scalar::zero());
        assert_eq!(q_integer(-2, &q).unwrap(), -q_integer(2, &q).unwrap());
        assert_eq!(q_binomial(2, 1, &q).unwrap(), &q + &q.inv().unwrap());
        assert_eq!(q_binomial(4, 0, &q).unwrap(), Scalar::one());
    }

    #[test]
    fn gaussian_binomial_pascal_rule() {
        // [n; m] = q^{-m}[n-1; m] + q^{n-m}[n-1; m-1]
        let q = Scalar::t();
        for n in 1..6u32 {
            for m in 1..n {
                let lhs = q_binomial(n, m, &q).unwrap();
                let rhs = q.pow(-(m as i64)).unwrap() * q_binomial(n - 1, m, &q).unwrap()
                    + q.pow((n - m) as i64).unwrap() * q_binomial(n - 1, m - 1, &q).unwrap();
                assert_eq!(lhs, rhs, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn degenerate_bases_rejected() {
        assert_eq!(q_integer(2, &Scalar::one()), Err(Error::DegenerateBase));
        assert_eq!(q_integer(2, &Scalar::from_int(-1)), Err(Error::DegenerateBase));
        assert_eq!(q_factorial(0, &Scalar::one()), Err(Error::DegenerateBase));
        assert!(q_binomial(1, 2, &Scalar::t()).is_err());
    }
}
