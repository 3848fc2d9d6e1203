//! Dense exact linear algebra over K, plus modular rank via a specialisation.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::modp::{rank_mod_p, Specialization};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Precondition("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() })
            })
    }

    /// Diagonal entries if the matrix is diagonal.
    pub fn diagonal(&self) -> Option<Vec<Scalar>> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some((0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect())
    }

    pub fn checked_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::Precondition("matrix shapes do not compose".into()));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).checked_add(&a.checked_mul(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Result<Scalar>) -> Result<Matrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Precondition("matrix shapes differ".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, o: &Matrix) -> Result<Matrix> {
        self.zip(o, |a, b| a.checked_add(b))
    }

    pub fn checked_sub(&self, o: &Matrix) -> Result<Matrix> {
        self.zip(o, |a, b| a.checked_sub(b))
    }

    pub fn scale(&self, s: &Scalar) -> Result<Matrix> {
        let data = self.data.iter().map(|a| a.checked_mul(s)).collect::<Result<_>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// Row-major text entries.
    pub fn to_text_rows(&self, fmt_scalar: impl Fn(&Scalar) -> String) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(&fmt_scalar).collect()).collect()
    }

    /// Entries under a specialisation (None if some denominator vanishes).
    pub fn specialize(&self, sp: &Specialization) -> Option<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| sp.eval(x)).collect::<Option<Vec<_>>>())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

fn cost(s: &Scalar) -> usize {
    s.numerator().coeffs().len() + s.denominator().coeffs().len()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Result<Vec<usize>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        // Cheapest nonzero pivot keeps intermediate fractions small.
        let Some(piv) = (r..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| cost(&rows[i][col]))
        else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][col].inv()?;
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.checked_mul(&inv)?;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.checked_sub(&f.checked_mul(y)?)?;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    Ok(pivots)
}

/// Exact rank over K.
pub fn rank(m: &Matrix) -> Result<usize> {
    let mut rows = m.to_rows();
    Ok(rref(&mut rows)?.len())
}

/// A basis of the right kernel {x : m x = 0}.
pub fn kernel(m: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    let mut rows = m.to_rows();
    let pivots = rref(&mut rows)?;
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = rows[r][free].checked_neg();
        }
        out.push(v);
    }
    Ok(out)
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &Matrix) -> Result<Option<Matrix>> {
    if m.rows != m.cols {
        return Err(Error::Precondition("inverse of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut rows)?;
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    Matrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()).map(Some)
}

/// Rank of the image under a specialisation; `None` if an entry is undefined there.
pub fn rank_specialized(m: &Matrix, sp: &Specialization) -> Option<usize> {
    let mut rows = m.specialize(sp)?;
    Some(rank_mod_p(&mut rows, sp.p))
}
