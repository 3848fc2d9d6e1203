//! Reduction of scalars to a prime field: ζ_M ↦ a root of exact order M,
//! t ↦ a chosen residue. A ring map on the scalars it is defined on, so
//! ranks can only drop under it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::{Cyclotomic, Poly, Scalar};

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| pow_mod(a, p - 2, p))
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= m {
        if m % f == 0 {
            out.push(f);
            while m % f == 0 {
                m /= f;
            }
        }
        f += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// A specialisation K → F_p.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub p: u64,
    pub conductor: u32,
    /// Image of ζ_conductor (exact multiplicative order `conductor`).
    pub zeta: u64,
    /// Image of the formal variable.
    pub t: u64,
}

impl Specialization {
    /// Pick a prime p ≡ 1 (mod conductor) near 2^61 and random images.
    pub fn random<R: Rng>(conductor: u32, rng: &mut R) -> Self {
        let m = conductor.max(1) as u64;
        let mut p = ((1u64 << 61) / m) * m + 1;
        while !is_prime(p) {
            p -= m;
        }
        let factors = prime_factors(m);
        let zeta = loop {
            let g = rng.gen_range(2..p - 1);
            let z = pow_mod(g, (p - 1) / m, p);
            if factors.iter().all(|&r| pow_mod(z, m / r, p) != 1) {
                break z;
            }
        };
        let t = rng.gen_range(2..p - 1);
        Specialization { p, conductor, zeta, t }
    }

    pub fn with_t(&self, t: u64) -> Self {
        Specialization { t: t % self.p, ..self.clone() }
    }

    fn rational(&self, r: &num_rational::BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let n = r.numer().mod_floor(&p).to_u64().unwrap();
        let d = r.denom().mod_floor(&p).to_u64().unwrap();
        inv_mod(d, self.p).map(|di| mul_mod(n, di, self.p))
    }

    pub fn cyclotomic(&self, c: &Cyclotomic) -> Option<u64> {
        if c.is_zero() {
            return Some(0);
        }
        let m = c.conductor();
        if self.conductor % m != 0 {
            return None;
        }
        let root = pow_mod(self.zeta, (self.conductor / m) as u64, self.p);
        let mut acc = 0u64;
        let mut pw = 1u64;
        for x in c.coefficients() {
            if !x.is_zero() {
                acc = (acc + mul_mod(self.rational(x)?, pw, self.p)) % self.p;
            }
            pw = mul_mod(pw, root, self.p);
        }
        Some(acc)
    }

    fn poly(&self, f: &Poly) -> Option<u64> {
        let mut acc = 0u64;
        for c in f.coeffs().iter().rev() {
            acc = (mul_mod(acc, self.t, self.p) + self.cyclotomic(c)?) % self.p;
        }
        Some(acc)
    }

    /// Image of a scalar, or `None` if its denominator vanishes at this point.
    pub fn eval(&self, s: &Scalar) -> Option<u64> {
        if s.is_zero() {
            return Some(0);
        }
        let n = self.poly(s.numerator())?;
        let d = inv_mod(self.poly(s.denominator())?, self.p)?;
        let tp = if s.shift() >= 0 {
            pow_mod(self.t, s.shift() as u64, self.p)
        } else {
            inv_mod(pow_mod(self.t, (-s.shift()) as u64, self.p), self.p)?
        };
        Some(mul_mod(mul_mod(n, d, self.p), tp, self.p))
    }
}

/// Rank of a dense matrix over F_p (destroys its input).
pub fn rank_mod_p(rows: &mut [Vec<u64>], p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p).unwrap();
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if *y != 0 {
                        *x = (*x + p - mul_mod(f, *y, p)) % p;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}
