//! Dense matrices over GF(q), semilinear maps and GF(p)-subspaces of GF(q).

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize, f: &Field) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn scalar(n: usize, c: Fe) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diagonal(d: &[Fe]) -> Matrix {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, &c) in d.iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> Fe) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn map(&self, g: impl Fn(Fe) -> Fe) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| g(x)).collect() }
    }

    pub fn frobenius(&self, k: u32, f: &Field) -> Matrix {
        self.map(|x| f.frobenius(x, k))
    }

    pub fn add(&self, other: &Matrix, f: &Field) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form; zero rows end up at the bottom.
    pub fn rref(&self, f: &Field) -> Matrix {
        let mut m = self.clone();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(piv) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(piv, lead);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let x = m.get(lead, j);
                m.set(lead, j, f.mul(x, inv));
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                    m.set(r, j, v);
                }
            }
            lead += 1;
        }
        m
    }

    pub fn rank(&self, f: &Field) -> usize {
        let r = self.rref(f);
        (0..r.rows).filter(|&i| r.row(i).iter().any(|x| !x.is_zero())).count()
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                f.one()
            } else {
                Fe::ZERO
            }
        });
        let r = aug.rref(f);
        if (0..n).any(|i| r.get(i, i) != f.one()) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r.get(i, j + n)))
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    /// Kronecker product: entry `((i, j), (a, b))` is `self[i][a] * other[j][b]`.
    pub fn kron(&self, other: &Matrix, f: &Field) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            let (i, j) = (r / other.rows, r % other.rows);
            let (a, b) = (c / other.cols, c % other.cols);
            f.mul(self.get(i, a), other.get(j, b))
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j)
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols)
            } else {
                Fe::ZERO
            }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Fe], m: &Matrix, f: &Field) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; m.cols()];
    for (i, &a) in v.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = f.add(*slot, f.mul(a, m.get(i, j)));
        }
    }
    out
}

pub fn dot(u: &[Fe], v: &[Fe], f: &Field) -> Fe {
    u.iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

/// Row-major reshape of a length `k * m` vector into a `k x m` matrix.
pub fn reshape_to_matrix(v: &[Fe], k: usize, m: usize) -> Result<Matrix> {
    if v.len() != k * m {
        return Err(Error::DimensionMismatch { expected: k * m, got: v.len() });
    }
    Ok(Matrix { rows: k, cols: m, data: v.to_vec() })
}

/// Rank of a set of vectors, stopping early once `cap` is reached.
pub fn span_rank<'a>(vectors: impl Iterator<Item = &'a [Fe]>, n: usize, f: &Field) -> usize {
    // echelon basis keyed by pivot column
    let mut basis: Vec<Option<Vec<Fe>>> = vec![None; n];
    let mut rank = 0;
    for v in vectors {
        let mut w = v.to_vec();
        for c in 0..n {
            if w[c].is_zero() {
                continue;
            }
            match &basis[c] {
                Some(b) => {
                    let factor = w[c];
                    for j in c..n {
                        w[j] = f.sub(w[j], f.mul(factor, b[j]));
                    }
                }
                None => {
                    let inv = f.inv(w[c]).expect("nonzero");
                    for x in w.iter_mut().skip(c) {
                        *x = f.mul(*x, inv);
                    }
                    basis[c] = Some(w);
                    rank += 1;
                    break;
                }
            }
        }
        if rank == n {
            break;
        }
    }
    rank
}

/// A semilinear map `v -> frob^k(v) * M` acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemilinearMap {
    pub matrix: Matrix,
    pub frob: u32,
}

impl SemilinearMap {
    pub fn linear(matrix: Matrix) -> SemilinearMap {
        SemilinearMap { matrix, frob: 0 }
    }

    pub fn identity(n: usize, f: &Field) -> SemilinearMap {
        SemilinearMap::linear(Matrix::identity(n, f))
    }

    pub fn frobenius(n: usize, k: u32, f: &Field) -> SemilinearMap {
        SemilinearMap { matrix: Matrix::identity(n, f), frob: k % f.degree() }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Fe], f: &Field) -> Result<Vec<Fe>> {
        if v.len() != self.matrix.rows() {
            return Err(Error::DimensionMismatch { expected: self.matrix.rows(), got: v.len() });
        }
        Ok(self.apply_unchecked(v, f))
    }

    pub fn apply_unchecked(&self, v: &[Fe], f: &Field) -> Vec<Fe> {
        if self.frob == 0 {
            vec_mul(v, &self.matrix, f)
        } else {
            let w: Vec<Fe> = v.iter().map(|&x| f.frobenius(x, self.frob)).collect();
            vec_mul(&w, &self.matrix, f)
        }
    }

    /// The map `v -> next(self(v))`.
    pub fn then(&self, next: &SemilinearMap, f: &Field) -> Result<SemilinearMap> {
        let m1 = self.matrix.frobenius(next.frob, f);
        Ok(SemilinearMap { matrix: m1.mul(&next.matrix, f)?, frob: (self.frob + next.frob) % f.degree() })
    }
}

/// Row-reduces field elements viewed as vectors in GF(p)^e and returns the
/// nonzero rows of the reduced echelon form, again as field elements.
/// Equal GF(p)-spans give equal results.
pub fn prime_span_key(f: &Field, elems: impl IntoIterator<Item = Fe>) -> Vec<Fe> {
    let p = f.characteristic();
    let e = f.degree() as usize;
    let mut rows: Vec<Vec<u32>> = elems.into_iter().filter(|a| !a.is_zero()).map(|a| f.coeffs(a)).collect();
    let inv_mod = |a: u32| -> u32 { (1..p).find(|&b| a * b % p == 1).expect("p is prime") };
    let mut lead = 0;
    for c in 0..e {
        if lead == rows.len() {
            break;
        }
        let Some(piv) = (lead..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(piv, lead);
        let inv = inv_mod(rows[lead][c]);
        for x in rows[lead].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r == lead || rows[r][c] == 0 {
                continue;
            }
            let factor = rows[r][c];
            for j in 0..e {
                rows[r][j] = (rows[r][j] + p * p - factor * rows[lead][j] % p) % p;
            }
        }
        lead += 1;
    }
    rows.truncate(lead);
    rows.iter().map(|r| f.from_coeffs(r)).collect()
}

/// Greedily selects elements that are independent over GF(p), in the order
/// given, until `target` of them are found.
pub fn greedy_prime_basis(f: &Field, candidates: impl Iterator<Item = Fe>, target: usize) -> Vec<Fe> {
    let mut basis = Vec::new();
    for a in candidates {
        if basis.len() == target {
            break;
        }
        let mut trial = basis.clone();
        trial.push(a);
        if prime_span_key(f, trial.iter().copied()).len() == trial.len() {
            basis = trial;
        }
    }
    basis
}
