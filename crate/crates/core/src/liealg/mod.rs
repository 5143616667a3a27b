//! Algebras given by structure constants.
//!
//! [`AlgebraData`] stores the product of every pair of basis elements as a
//! sparse coordinate vector. It is used for d4 in both of its models, for the
//! composition algebras, and for derivation algebras.

mod d4;

pub use d4::{DIM as D4_DIM, bracket_words_for_negative_roots, bracket_words_for_positive_roots, build_d4_split, d4_model, BracketWord, D4Model, RootDatum};

use crate::exact::{CycloScalar, ExactMatrix, SpanReader, Vector};
use crate::error::{Error, Result};

pub type SparseVec = Vec<(usize, CycloScalar)>;

#[derive(Clone, Debug)]
pub struct AlgebraData {
    dim: usize,
    names: Vec<String>,
    table: Vec<SparseVec>,
}

/// Lie algebras use the same representation; the name documents intent.
pub type LieAlgebraData = AlgebraData;

fn to_sparse(v: &[CycloScalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl AlgebraData {
    /// Build from a closure returning the coordinates of `e_i · e_j`.
    pub fn from_products(names: Vec<String>, mut product: impl FnMut(usize, usize) -> Vector) -> Self {
        let dim = names.len();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                assert_eq!(v.len(), dim, "product coordinates have wrong length");
                table.push(to_sparse(&v));
            }
        }
        AlgebraData { dim, names, table }
    }

    /// Like [`from_products`](Self::from_products) but verifies antisymmetry and Jacobi.
    pub fn lie(names: Vec<String>, product: impl FnMut(usize, usize) -> Vector) -> Result<Self> {
        let a = Self::from_products(names, product);
        a.check_lie()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, CycloScalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_product_dense(&self, i: usize, j: usize) -> Vector {
        let mut v = vec![CycloScalar::zero(); self.dim];
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn unit_vector(&self, i: usize) -> Vector {
        let mut v = vec![CycloScalar::zero(); self.dim];
        v[i] = CycloScalar::one();
        v
    }

    /// Product of two arbitrary elements.
    pub fn product(&self, x: &[CycloScalar], y: &[CycloScalar]) -> Vector {
        let mut out = vec![CycloScalar::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let entries = self.basis_product(i, j);
                if entries.is_empty() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in entries {
                    out[*k] += &(&s * c);
                }
            }
        }
        out
    }

    fn product_sparse(&self, x: &[(usize, CycloScalar)], y: &[(usize, CycloScalar)]) -> Vector {
        let mut out = vec![CycloScalar::zero(); self.dim];
        for (i, xi) in x {
            for (j, yj) in y {
                let s = xi * yj;
                for (k, c) in self.basis_product(*i, *j) {
                    out[*k] += &(&s * c);
                }
            }
        }
        out
    }

    /// Antisymmetry on basis pairs and the Jacobi identity on all basis triples.
    pub fn check_lie(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            if !self.basis_product(i, i).is_empty() {
                return Err(Error::NotLie(format!("[{0},{0}] != 0", self.names[i])));
            }
            for j in 0..i {
                let a = self.basis_product_dense(i, j);
                let b = self.basis_product_dense(j, i);
                if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                    return Err(Error::NotLie(format!("[{0},{1}] != -[{1},{0}]", self.names[i], self.names[j])));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let xy = to_sparse(&self.basis_product_dense(i, j));
                for k in 0..n {
                    let yz = to_sparse(&self.basis_product_dense(j, k));
                    let zx = to_sparse(&self.basis_product_dense(k, i));
                    let mut s = self.product_sparse(&xy, &[(k, CycloScalar::one())]);
                    let t = self.product_sparse(&yz, &[(i, CycloScalar::one())]);
                    let u = self.product_sparse(&zx, &[(j, CycloScalar::one())]);
                    for ((a, b), c) in s.iter_mut().zip(&t).zip(&u) {
                        *a += b;
                        *a += c;
                    }
                    if s.iter().any(|x| !x.is_zero()) {
                        return Err(Error::NotLie(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Copy with a single structure constant replaced; used for fault injection.
    pub fn with_perturbed_constant(&self, i: usize, j: usize, k: usize, delta: CycloScalar) -> Self {
        let mut out = self.clone();
        let mut v = self.basis_product_dense(i, j);
        v[k] += &delta;
        out.table[i * self.dim + j] = to_sparse(&v);
        out
    }

    /// Whether a linear map (matrix acting on coordinate columns) preserves the product.
    pub fn is_homomorphism(&self, m: &ExactMatrix) -> Option<(usize, usize)> {
        let images: Vec<Vector> = m.columns();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = m.mul_vec(&self.basis_product_dense(i, j));
                let rhs = self.product(&images[i], &images[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Structure matrix of left multiplication by `x`.
    pub fn left_mul_matrix(&self, x: &[CycloScalar]) -> ExactMatrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.product(x, &self.unit_vector(j))).collect();
        ExactMatrix::from_columns(&cols)
    }
}

/// A Lie algebra of linear maps together with the maps realizing its basis.
#[derive(Clone, Debug)]
pub struct LinearLieAlgebra {
    pub algebra: AlgebraData,
    /// Basis elements as square matrices, in basis order.
    pub maps: Vec<ExactMatrix>,
    reader: SpanReader,
}

impl LinearLieAlgebra {
    /// Close a linearly independent family of matrices under commutators.
    ///
    /// Errors if some commutator leaves the span.
    pub fn from_maps(names: Vec<String>, maps: Vec<ExactMatrix>) -> Result<Self> {
        let flat: Vec<Vector> = maps.iter().map(flatten).collect();
        let reader = SpanReader::new(&flat)?;
        let mut failure = None;
        let algebra = AlgebraData::from_products(names, |i, j| {
            let c = maps[i].mul(&maps[j]).sub(&maps[j].mul(&maps[i]));
            match reader.coordinates(&flatten(&c)) {
                Some(v) => v,
                None => {
                    failure.get_or_insert((i, j));
                    vec![CycloScalar::zero(); maps.len()]
                }
            }
        });
        if let Some((i, j)) = failure {
            return Err(Error::NotLie(format!("commutator of basis maps {i}, {j} leaves the span")));
        }
        algebra.check_lie()?;
        Ok(LinearLieAlgebra { algebra, maps, reader })
    }

    /// Coordinates of a matrix in this algebra, or None if outside.
    pub fn coordinates(&self, m: &ExactMatrix) -> Option<Vector> {
        self.reader.coordinates(&flatten(m))
    }

    /// The matrix with the given coordinates.
    pub fn element(&self, coords: &[CycloScalar]) -> ExactMatrix {
        let n = self.maps.first().map_or(0, ExactMatrix::rows);
        let mut acc = ExactMatrix::zeros(n, n);
        for (c, m) in coords.iter().zip(&self.maps) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// The map g ↦ f g f⁻¹ restricted to this algebra, as a matrix on coordinates.
    pub fn conjugation_matrix(&self, f: &ExactMatrix) -> Result<ExactMatrix> {
        let finv = f.inverse()?;
        let mut cols = Vec::with_capacity(self.maps.len());
        for m in &self.maps {
            let c = f.mul(m).mul(&finv);
            cols.push(
                self.coordinates(&c)
                    .ok_or_else(|| Error::Internal("conjugate leaves the algebra".into()))?,
            );
        }
        Ok(ExactMatrix::from_columns(&cols))
    }
}

fn flatten(m: &ExactMatrix) -> Vector {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// so(b) = { g : b(gx, y) + b(x, gy) = 0 } for a symmetric nondegenerate form.
///
/// The basis is x ↦ b(e_p, x) e_q − b(e_q, x) e_p for p < q, in lexicographic
/// order of (p, q).
pub fn build_so_of_form(b: &ExactMatrix) -> Result<LinearLieAlgebra> {
    if !b.is_square() || b.transpose() != *b {
        return Err(Error::Dimension("form must be a symmetric square matrix".into()));
    }
    if b.inverse().is_err() {
        return Err(Error::DegenerateForm);
    }
    let n = b.rows();
    let mut names = Vec::new();
    let mut maps = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            // column x ↦ b(e_p, x) e_q − b(e_q, x) e_p, i.e. (e_q e_pᵀ − e_p e_qᵀ)·B
            let e = ExactMatrix::from_fn(n, n, |i, j| {
                let mut v = CycloScalar::zero();
                if i == q {
                    v += b.get(p, j);
                }
                if i == p {
                    v -= b.get(q, j);
                }
                v
            });
            names.push(format!("E{},{}", p + 1, q + 1));
            maps.push(e);
        }
    }
    LinearLieAlgebra::from_maps(names, maps)
}

/// Whether `g` is skew for the form `b`: gᵀ·b + b·g = 0.
pub fn is_skew(g: &ExactMatrix, b: &ExactMatrix) -> bool {
    g.transpose().mul(b).add(&b.mul(g)).is_zero()
}

/// All linear maps D with D(xy) = D(x)y + xD(y), closed under commutator.
pub fn derivation_algebra(a: &AlgebraData) -> Result<LinearLieAlgebra> {
    let n = a.dim();
    // unknown D[r][c] has index r·n + c; one equation per (i, j, k)
    let mut rows: Vec<Vector> = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let eij = a.basis_product_dense(i, j);
            for k in 0..n {
                let mut row = vec![CycloScalar::zero(); n * n];
                for (m, c) in eij.iter().enumerate() {
                    if !c.is_zero() {
                        row[k * n + m] += c;
                    }
                }
                for r in 0..n {
                    // D(e_i)·e_j: coefficient D[r][i] times (e_r e_j)_k
                    for (kk, c) in a.basis_product(r, j) {
                        if *kk == k {
                            row[r * n + i] -= c;
                        }
                    }
                    for (kk, c) in a.basis_product(i, r) {
                        if *kk == k {
                            row[r * n + j] -= c;
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = if rows.is_empty() { ExactMatrix::zeros(0, n * n) } else { ExactMatrix::from_rows(rows) };
    let kernel = sys.kernel();
    let maps: Vec<ExactMatrix> = kernel
        .iter()
        .map(|v| ExactMatrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
        .collect();
    let names = (0..maps.len()).map(|k| format!("D{}", k + 1)).collect();
    LinearLieAlgebra::from_maps(names, maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so_of_identity_form() {
        let so = build_so_of_form(&ExactMatrix::identity(8)).unwrap();
        assert_eq!(so.algebra.dim(), 28);
        for m in &so.maps {
            assert_eq!(m.transpose(), m.scale(&CycloScalar::from_int(-1)));
        }
    }

    #[test]
    fn degenerate_form_rejected() {
        let mut b = ExactMatrix::identity(4);
        b.set(3, 3, CycloScalar::zero());
        assert!(matches!(build_so_of_form(&b), Err(Error::DegenerateForm)));
    }

    #[test]
    fn derivations_of_trivial_line() {
        let a = AlgebraData::from_products(vec!["e".into()], |_, _| vec![CycloScalar::zero()]);
        assert_eq!(derivation_algebra(&a).unwrap().algebra.dim(), 1);
    }

    #[test]
    fn perturbed_constant_breaks_jacobi_or_antisymmetry() {
        let so = build_so_of_form(&ExactMatrix::identity(4)).unwrap();
        let bad = so.algebra.with_perturbed_constant(0, 1, 5, CycloScalar::one());
        assert!(bad.check_lie().is_err());
    }
}
