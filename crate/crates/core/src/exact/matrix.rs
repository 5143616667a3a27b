//! Dense matrices over [`CycloScalar`] with exact row reduction.

use std::fmt;

use super::CycloScalar;
use crate::error::{Error, Result};

pub type Vector = Vec<CycloScalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![CycloScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CycloScalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycloScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| CycloScalar::from_int(x)).collect()).collect())
    }

    pub fn diagonal(entries: Vector) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycloScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycloScalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloScalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &CycloScalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// self − s·I.
    pub fn shift(&self, s: &CycloScalar) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - s;
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Reduced row echelon form and the pivot columns.
    ///
    /// Pivots are the first nonzero entry in each column scan; every
    /// operation is exact.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows: Vec<Vector> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols);
        let m = if rows.is_empty() { Self::zeros(0, self.cols) } else { Self::from_rows(rows) };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, certified by re-multiplication.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(k);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![CycloScalar::zero(); self.cols];
            v[free] = CycloScalar::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(k, free);
            }
            basis.push(v);
        }
        for v in &basis {
            assert!(self.mul_vec(v).iter().all(CycloScalar::is_zero), "kernel certification failed");
        }
        basis
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut rows: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { CycloScalar::one() } else { CycloScalar::zero() }));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, n);
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &p)| k != p) {
            return Err(Error::Singular);
        }
        Ok(Self::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Some solution x of self·x = b, or None if inconsistent.
    pub fn solve(&self, b: &[CycloScalar]) -> Option<Vector> {
        self.solve_many(&[b.to_vec()]).map(|mut v| v.remove(0))
    }

    /// Solve self·x = b for several right-hand sides at once.
    pub fn solve_many(&self, rhs: &[Vector]) -> Option<Vec<Vector>> {
        let n = self.cols;
        let mut rows: Vec<Vector> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(rhs.iter().map(|b| b[i].clone()));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, n);
        // inconsistent if a zero row of the coefficient part has nonzero rhs
        for row in rows.iter().skip(pivots.len()) {
            if row[n..].iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
        let sols = (0..rhs.len())
            .map(|s| {
                let mut x = vec![CycloScalar::zero(); n];
                for (k, &p) in pivots.iter().enumerate() {
                    x[p] = rows[k][n + s].clone();
                }
                x
            })
            .collect();
        Some(sols)
    }
}

/// Row-reduce in place over the first `ncols` columns; returns pivot columns.
fn rref_in_place(rows: &mut [Vector], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a list of vectors.
pub fn span_rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(vectors.to_vec()).rank()
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
