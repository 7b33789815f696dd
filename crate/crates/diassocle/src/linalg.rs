//! Exact linear algebra over ℚ.
//!
//! Forward elimination is fraction-free (Bareiss) on integer-scaled rows;
//! reduced echelon forms are finished with exact rational back-substitution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p/q"` or `"p"`; zero denominators are rejected.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in fraction {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in fraction {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in fraction {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Reduced `p/q` form (`p` when the denominator is 1).
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += b;
        }
    }
}

pub fn sub_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a -= b;
        }
    }
}

/// `acc += c · v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

pub fn vadd(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {} instead of {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| int(x)).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = zeros(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let m = &self.data[i * self.cols + j];
                if !m.is_zero() {
                    *o += m * x;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: vadd(&self.data, &other.data),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: vsub(&self.data, &other.data),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: vscale(c, &self.data),
        }
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Stack `[self | other]` horizontally.
    pub fn hcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hcat row counts differ".into()));
        }
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * m.cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                m.data[i * m.cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        eliminate(self, false).1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = eliminate(self, true);
        let mut m = Matrix::zeros(rows.len(), self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                m.data[i * self.cols + j] = x;
            }
        }
        (m, pivots)
    }
}

/// Gaussian elimination over ℚ that only touches rows with a nonzero entry in
/// the pivot column and only the nonzero entries of the pivot row. Among the
/// candidate rows the sparsest is chosen as pivot (ties: lowest index), which
/// keeps fill-in small on the very sparse coboundary matrices. With `reduce`
/// the result is the reduced echelon form; otherwise only the pivots are
/// meaningful.
fn eliminate(m: &Matrix, reduce: bool) -> (Vec<Vector>, Vec<usize>) {
    let mut pending: Vec<Vector> = (0..m.rows)
        .map(|i| m.row(i).to_vec())
        .filter(|r| !is_zero_vec(r))
        .collect();
    let mut done: Vec<Vector> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..m.cols {
        if pending.is_empty() {
            break;
        }
        let best = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[c].is_zero())
            .min_by_key(|(i, r)| (r.iter().filter(|x| !x.is_zero()).count(), *i))
            .map(|(i, _)| i);
        let Some(p) = best else { continue };
        let mut prow = pending.swap_remove(p);
        let inv = prow[c].recip();
        for x in prow.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let nz: Vec<usize> = (c..m.cols).filter(|&j| !prow[j].is_zero()).collect();
        let targets = pending.iter_mut().chain(if reduce { done.iter_mut() } else { [].iter_mut() });
        for row in targets {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                row[j] -= d;
            }
        }
        pending.retain(|r| !is_zero_vec(r));
        done.push(prow);
        pivots.push(c);
    }
    (done, pivots)
}

/// Basis of `{v : Mv = 0}` from the reduced echelon form: one vector per free
/// column, with a 1 in that column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&j| !is_pivot[j]) {
        let mut v = zeros(m.cols);
        v[free] = Scalar::one();
        for (k, &p) in pivots.iter().enumerate() {
            let x = r.get(k, free);
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `Mx = v`, or `None` when `v` is not in the image.
pub fn coset_solve(m: &Matrix, v: &[Scalar]) -> Result<Option<Vector>> {
    if v.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            v.len(),
            m.rows
        )));
    }
    let rhs = Matrix::from_columns(m.rows, &[v.to_vec()])?;
    let aug = m.hcat(&rhs)?;
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = zeros(m.cols);
    for (k, &p) in pivots.iter().enumerate() {
        x[p] = r.get(k, m.cols).clone();
    }
    Ok(Some(x))
}

/// `dim ker B − dim im A` for a two-step complex `A` then `B`.
pub fn quotient_dim(b: &Matrix, a: &Matrix) -> Result<usize> {
    if b.cols != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "B has {} columns but A has {} rows",
            b.cols, a.rows
        )));
    }
    if !b.mul(a)?.is_zero() {
        return Err(Error::NotAComplex("B∘A ≠ 0".into()));
    }
    Ok(b.nullity() - a.rank())
}

/// Rank of a list of vectors of common length `n`.
pub fn span_rank(n: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(vectors).expect("vectors of common length");
    debug_assert_eq!(m.cols, n);
    m.rank()
}

/// Whether two finite families span the same subspace of `ℚⁿ`.
pub fn same_span(n: usize, a: &[Vector], b: &[Vector]) -> bool {
    let ra = span_rank(n, a);
    let rb = span_rank(n, b);
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    ra == rb && span_rank(n, &all) == ra
}

/// Echelon basis (rows of the rref) of the span of `vectors`.
pub fn span_basis(n: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return vec![];
    }
    let m = Matrix::from_rows(vectors).expect("vectors of common length");
    debug_assert_eq!(m.cols, n);
    let (r, _) = m.rref();
    (0..r.rows).map(|i| r.row(i).to_vec()).collect()
}
