//! Exact linear algebra over `Q(zeta_N)`.
//!
//! Elimination runs on sparse rows. At every step the pivot is taken from the
//! eligible row with the fewest nonzero entries (ties broken by coefficient
//! size), which keeps fill-in and coefficient growth down. Subspaces always
//! carry a reduced row echelon basis, so two subspaces are equal exactly when
//! their bases are.

use std::fmt;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};

pub type Vector = Vec<CycNum>;

type SparseRow = Vec<(usize, CycNum)>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vector>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![vec![CycNum::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = CycNum::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, data: Vec<Vector>) -> Result<Matrix> {
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: bad.len() });
        }
        Ok(Matrix { rows: data.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: col.len() });
            }
            for (i, v) in col.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i]
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        self.data.clone()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.data[j][i] = v.clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(CycNum::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let t = other.transpose();
        let data = self.data.iter().map(|row| t.mul_vec(row)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn trace(&self) -> CycNum {
        (0..self.rows.min(self.cols)).fold(CycNum::zero(), |acc, i| acc + &self.data[i][i])
    }

    fn sparse_rows(&self) -> Vec<SparseRow> {
        self.data.iter().map(|r| to_sparse(r)).filter(|r| !r.is_empty()).collect()
    }
}

fn to_sparse(v: &[CycNum]) -> SparseRow {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j, c.clone())).collect()
}

fn to_dense(row: &SparseRow, cols: usize) -> Vector {
    let mut v = vec![CycNum::zero(); cols];
    for (j, c) in row {
        v[*j] = c.clone();
    }
    v
}

/// `a - factor * b` on sparse rows.
fn axpy(a: &SparseRow, factor: &CycNum, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(factor * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(factor * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(row: &SparseRow, factor: &CycNum) -> SparseRow {
    row.iter().map(|(j, c)| (*j, c * factor)).collect()
}

fn entry(row: &SparseRow, col: usize) -> Option<&CycNum> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// Reduced row echelon form of sparse rows; returns (rows, pivot columns).
fn rref_sparse(mut pending: Vec<SparseRow>, cols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    let mut done: Vec<SparseRow> = Vec::new();
    let mut pivots = Vec::new();
    pending.retain(|r| !r.is_empty());
    for col in 0..cols {
        if pending.is_empty() {
            break;
        }
        let best = pending
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0].0 == col)
            .min_by_key(|(_, r)| (r.len(), r[0].1.weight()))
            .map(|(k, _)| k);
        let Some(k) = best else { continue };
        let row = pending.swap_remove(k);
        let inv = row[0].1.inv().expect("pivot is nonzero");
        let row = scale(&row, &inv);
        for other in pending.iter_mut() {
            if other[0].0 == col {
                let f = other[0].1.clone();
                *other = axpy(other, &f, &row);
            }
        }
        pending.retain(|r| !r.is_empty());
        for prev in done.iter_mut() {
            if let Some(f) = entry(prev, col).cloned() {
                *prev = axpy(prev, &f, &row);
            }
        }
        done.push(row);
        pivots.push(col);
    }
    (done, pivots)
}

/// Reduced row echelon form together with its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, pivots) = rref_sparse(m.sparse_rows(), m.cols);
    let mut data: Vec<Vector> = rows.iter().map(|r| to_dense(r, m.cols)).collect();
    data.resize(m.rows, vec![CycNum::zero(); m.cols]);
    (Matrix { rows: m.rows, cols: m.cols, data }, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref_sparse(m.sparse_rows(), m.cols).1.len()
}

/// Right null space `{v : m v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (rows, pivots) = rref_sparse(m.sparse_rows(), m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![CycNum::zero(); m.cols];
        v[free] = CycNum::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if let Some(c) = entry(row, free) {
                v[p] = -c;
            }
        }
        basis.push(v);
    }
    Subspace::span(m.cols, basis).expect("kernel vectors have matching length")
}

/// Some solution of `m x = b`, if one exists.
pub fn solve(m: &Matrix, b: &[CycNum]) -> Result<Option<Vector>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, got: b.len() });
    }
    // eliminate on [m | b] and read the solution off the pivots
    let aug: Vec<SparseRow> = m
        .data
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = to_sparse(row);
            if !rhs.is_zero() {
                r.push((m.cols, rhs.clone()));
            }
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    let (rows, pivots) = rref_sparse(aug, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![CycNum::zero(); m.cols];
    for (row, &p) in rows.iter().zip(&pivots) {
        if let Some(c) = entry(row, m.cols) {
            x[p] = c.clone();
        }
    }
    Ok(Some(x))
}

/// A subspace of `k^n` with a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        let rows: Vec<Vec<String>> =
            self.basis.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Matrix::identity(ambient).data, pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Result<Subspace> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch { expected: ambient, got: bad.len() });
        }
        let rows = vectors.iter().map(|v| to_sparse(v)).collect();
        let (rows, pivots) = rref_sparse(rows, ambient);
        Ok(Subspace { ambient, basis: rows.iter().map(|r| to_dense(r, ambient)).collect(), pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis when `v` lies in the subspace.
    pub fn member(&self, v: &[CycNum]) -> Result<Option<Vector>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        let mut residual = to_sparse(v);
        let mut coords = Vec::with_capacity(self.dim());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = entry(&residual, p).cloned().unwrap_or_else(CycNum::zero);
            if !c.is_zero() {
                residual = axpy(&residual, &c, &to_sparse(row));
            }
            coords.push(c);
        }
        Ok(if residual.is_empty() { Some(coords) } else { None })
    }

    pub fn contains(&self, v: &[CycNum]) -> Result<bool> {
        Ok(self.member(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if other.ambient != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // a.u = b.w  <=>  [U | -W] (a, b) = 0
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|c| -c).collect()));
        let ker = kernel(&Matrix::from_columns(self.ambient, &cols)?);
        let vecs = ker
            .basis
            .iter()
            .map(|coef| combine(&self.basis, &coef[..self.dim()], self.ambient))
            .collect();
        Subspace::span(self.ambient, vecs)
    }

    /// Walks `candidates` in order and keeps those independent of the
    /// subspace and of the ones kept so far.
    pub fn extend_with(&self, candidates: &[Vector]) -> Result<(Subspace, Vec<usize>)> {
        let mut cur = self.clone();
        let mut kept = Vec::new();
        for (k, v) in candidates.iter().enumerate() {
            if !cur.contains(v)? {
                cur = cur.sum(&Subspace::span(self.ambient, vec![v.clone()])?)?;
                kept.push(k);
            }
        }
        Ok((cur, kept))
    }
}

/// `sum_i coef[i] * vectors[i]`.
pub fn combine(vectors: &[Vector], coef: &[CycNum], ambient: usize) -> Vector {
    let mut out = vec![CycNum::zero(); ambient];
    for (v, c) in vectors.iter().zip(coef) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = &*o + &(c * x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> CycNum {
        CycNum::zeta(n)
    }

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| CycNum::from_int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Matrix::identity(3));
        assert_eq!(r, Matrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        // det = z3 * z3^2 - 1 = 0
        let m = Matrix::from_rows(2, vec![vec![z(3), CycNum::one()], vec![CycNum::one(), z(3).pow(2).unwrap()]])
            .unwrap();
        assert_eq!(rank(&m), 1);

        let (r, p) = rref(&Matrix::zeros(2, 3));
        assert_eq!(r, Matrix::zeros(2, 3));
        assert!(p.is_empty());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(4)).is_zero());
        assert_eq!(kernel(&Matrix::zeros(2, 3)).dim(), 3);
        let m = Matrix::from_rows(2, vec![vec![CycNum::one(), -z(4)]]).unwrap();
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[z(4), CycNum::one()]).unwrap());
    }

    #[test]
    fn member_examples() {
        let s = Subspace::span(2, vec![ints(&[1, 0])]).unwrap();
        assert_eq!(s.member(&ints(&[1, 0])).unwrap(), Some(ints(&[1])));
        assert_eq!(s.member(&ints(&[0, 1])).unwrap(), None);
        let s = Subspace::span(2, vec![ints(&[1, 1])]).unwrap();
        assert_eq!(s.member(&[z(6), z(6)]).unwrap(), Some(vec![z(6)]));
        assert!(matches!(s.member(&ints(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn solve_and_intersection() {
        let m = Matrix::from_rows(2, vec![ints(&[1, 1]), ints(&[1, -1])]).unwrap();
        let x = solve(&m, &ints(&[2, 0])).unwrap().unwrap();
        assert_eq!(x, ints(&[1, 1]));
        let singular = Matrix::from_rows(2, vec![ints(&[1, 1]), ints(&[2, 2])]).unwrap();
        assert_eq!(solve(&singular, &ints(&[1, 0])).unwrap(), None);

        let u = Subspace::span(3, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])]).unwrap();
        let w = Subspace::span(3, vec![ints(&[0, 1, 0]), ints(&[0, 0, 1])]).unwrap();
        let i = u.intersection(&w).unwrap();
        assert_eq!(i, Subspace::span(3, vec![ints(&[0, 1, 0])]).unwrap());
    }

    #[test]
    fn extend_with_keeps_first_independent() {
        let s = Subspace::span(3, vec![ints(&[1, 0, 0])]).unwrap();
        let (t, kept) = s.extend_with(&[ints(&[2, 0, 0]), ints(&[0, 1, 0]), ints(&[1, 1, 0])]).unwrap();
        assert_eq!(kept, vec![1]);
        assert_eq!(t.dim(), 2);
    }
}
