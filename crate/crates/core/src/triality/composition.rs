//! The Cayley algebra and the two symmetric composition algebras built on its norm.

use crate::error::{Error, Result};
use crate::exact::{CycloScalar, ExactMatrix, Vector};
use crate::liealg::AlgebraData;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionKind {
    Cayley,
    ParaHurwitz,
    Okubo,
}

#[derive(Clone, Debug)]
pub struct CompositionAlgebraData {
    pub kind: CompositionKind,
    pub algebra: AlgebraData,
    /// Polar form b, with q(x) = b(x, x)/2.
    pub form: ExactMatrix,
    /// x ↦ x̄ on the Cayley algebra.
    pub conjugation: Option<ExactMatrix>,
}

fn s(n: i64) -> CycloScalar {
    CycloScalar::from_int(n)
}

fn unit(i: usize) -> Vector {
    let mut v = vec![CycloScalar::zero(); 8];
    v[i] = CycloScalar::one();
    v
}

fn bilinear(form: &ExactMatrix, x: &[CycloScalar], y: &[CycloScalar]) -> CycloScalar {
    let bx = form.mul_vec(y);
    let mut acc = CycloScalar::zero();
    for (a, b) in x.iter().zip(&bx) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    acc
}

impl CompositionAlgebraData {
    pub fn b(&self, x: &[CycloScalar], y: &[CycloScalar]) -> CycloScalar {
        bilinear(&self.form, x, y)
    }

    pub fn q(&self, x: &[CycloScalar]) -> CycloScalar {
        self.b(x, x).div(&s(2)).expect("2 is invertible")
    }

    pub fn mul(&self, x: &[CycloScalar], y: &[CycloScalar]) -> Vector {
        self.algebra.product(x, y)
    }

    /// q(xy) = q(x)q(y), checked in its fully polarized form on basis quadruples:
    /// b(x₁y₁, x₂y₂) + b(x₁y₂, x₂y₁) = b(x₁, x₂) b(y₁, y₂).
    pub fn check_multiplicative(&self) -> Result<()> {
        let prods: Vec<Vec<Vector>> =
            (0..8).map(|i| (0..8).map(|j| self.algebra.basis_product_dense(i, j)).collect()).collect();
        for x1 in 0..8 {
            for x2 in 0..8 {
                for y1 in 0..8 {
                    for y2 in 0..8 {
                        let lhs = &self.b(&prods[x1][y1], &prods[x2][y2]) + &self.b(&prods[x1][y2], &prods[x2][y1]);
                        let rhs = self.form.get(x1, x2) * self.form.get(y1, y2);
                        if lhs != rhs {
                            return Err(Error::Composition(format!("norm not multiplicative at ({x1},{x2},{y1},{y2})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// (x*y)*x = q(x)y on basis pairs, and its linearization
    /// (x*y)*z + (z*y)*x = b(x,z)y on basis triples.
    pub fn check_symmetric_composition(&self) -> Result<()> {
        for x in 0..8 {
            for y in 0..8 {
                let xy = self.algebra.basis_product_dense(x, y);
                let lhs = self.mul(&xy, &unit(x));
                let q = self.q(&unit(x));
                let rhs: Vector = unit(y).iter().map(|c| c * &q).collect();
                if lhs != rhs {
                    return Err(Error::Composition(format!("(x*y)*x != q(x)y for basis pair ({x},{y})")));
                }
                for z in 0..8 {
                    let zy = self.algebra.basis_product_dense(z, y);
                    let mut lhs = self.mul(&xy, &unit(z));
                    for (a, b) in lhs.iter_mut().zip(self.mul(&zy, &unit(x))) {
                        *a += &b;
                    }
                    let bxz = self.form.get(x, z);
                    let rhs: Vector = unit(y).iter().map(|c| c * bxz).collect();
                    if lhs != rhs {
                        return Err(Error::Composition(format!("linearized identity fails at ({x},{y},{z})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether a linear map preserves the product.
    pub fn is_automorphism(&self, f: &ExactMatrix) -> bool {
        self.algebra.is_homomorphism(f).is_none()
    }

    /// λ with fᵀ b f = λ b, if f is a similitude.
    pub fn multiplier(&self, f: &ExactMatrix) -> Option<CycloScalar> {
        multiplier(&self.form, f)
    }
}

pub(crate) fn multiplier(form: &ExactMatrix, f: &ExactMatrix) -> Option<CycloScalar> {
    let g = f.transpose().mul(form).mul(f);
    let (i, j) = (0..form.rows()).flat_map(|i| (0..form.cols()).map(move |j| (i, j))).find(|&(i, j)| !form.get(i, j).is_zero())?;
    let lambda = g.get(i, j).div(form.get(i, j)).ok()?;
    (!lambda.is_zero() && g == form.scale(&lambda)).then_some(lambda)
}

pub const CAYLEY_NAMES: [&str; 8] = ["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"];
const E1: usize = 0;
const E2: usize = 1;
const fn u(i: usize) -> usize {
    1 + i
}
const fn v(i: usize) -> usize {
    4 + i
}

fn cayley_table() -> Vec<Vec<Vec<(usize, i64)>>> {
    let mut t = vec![vec![Vec::new(); 8]; 8];
    t[E1][E1].push((E1, 1));
    t[E2][E2].push((E2, 1));
    for j in 1..=3 {
        t[E1][u(j)].push((u(j), 1));
        t[u(j)][E2].push((u(j), 1));
        t[E2][v(j)].push((v(j), 1));
        t[v(j)][E1].push((v(j), 1));
        t[u(j)][v(j)].push((E1, 1));
        t[v(j)][u(j)].push((E2, 1));
    }
    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        t[u(i)][u(j)].push((v(k), 1));
        t[u(j)][u(i)].push((v(k), -1));
        t[v(i)][v(j)].push((u(k), -1));
        t[v(j)][v(i)].push((u(k), 1));
    }
    t
}

/// The split Cayley algebra in its standard basis e₁, e₂, u₁, u₂, u₃, v₁, v₂, v₃.
pub fn build_cayley() -> Result<CompositionAlgebraData> {
    let table = cayley_table();
    let names = CAYLEY_NAMES.iter().map(|s| s.to_string()).collect();
    let algebra = AlgebraData::from_products(names, |i, j| {
        let mut out = vec![CycloScalar::zero(); 8];
        for &(k, c) in &table[i][j] {
            out[k] += &s(c);
        }
        out
    });
    let mut conj = ExactMatrix::zeros(8, 8);
    conj.set(E2, E1, s(1));
    conj.set(E1, E2, s(1));
    for k in 2..8 {
        conj.set(k, k, s(-1));
    }
    // b(x,y)·1 = x ȳ + y x̄
    let one = {
        let mut o = unit(E1);
        o[E2] = CycloScalar::one();
        o
    };
    let mut form = ExactMatrix::zeros(8, 8);
    for i in 0..8 {
        for j in 0..8 {
            let mut w = algebra.product(&unit(i), &conj.column(j));
            for (a, b) in w.iter_mut().zip(algebra.product(&unit(j), &conj.column(i))) {
                *a += &b;
            }
            let c = w[E1].clone();
            let expected: Vector = one.iter().map(|o| o * &c).collect();
            if w != expected {
                return Err(Error::Composition(format!("x ȳ + y x̄ is not scalar for basis pair ({i},{j})")));
            }
            form.set(i, j, c);
        }
    }
    Ok(CompositionAlgebraData { kind: CompositionKind::Cayley, algebra, form, conjugation: Some(conj) })
}

/// x*y = x̄ ȳ on the Cayley algebra.
pub fn build_para_hurwitz(c: &CompositionAlgebraData) -> Result<CompositionAlgebraData> {
    let conj = c.conjugation.as_ref().ok_or_else(|| Error::Composition("para-Hurwitz needs a conjugation".into()))?;
    let algebra = AlgebraData::from_products(c.algebra.names().to_vec(), |i, j| {
        c.algebra.product(&conj.column(i), &conj.column(j))
    });
    let s = CompositionAlgebraData { kind: CompositionKind::ParaHurwitz, algebra, form: c.form.clone(), conjugation: None };
    s.check_symmetric_composition()?;
    Ok(s)
}

pub const OKUBO_NAMES: [&str; 8] = ["E12", "E13", "E21", "E23", "E31", "E32", "E11-E22", "E22-E33"];

/// Basis of trace-zero 3×3 matrices in the order of [`OKUBO_NAMES`].
pub fn okubo_basis_matrix(k: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(3, 3);
    let off = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    if k < 6 {
        m.set(off[k].0, off[k].1, s(1));
    } else {
        let d = k - 6;
        m.set(d, d, s(1));
        m.set(d + 1, d + 1, s(-1));
    }
    m
}

/// Coordinates of a trace-zero matrix in the Okubo basis.
pub fn okubo_coordinates(m: &ExactMatrix) -> Result<Vector> {
    let trace = &(m.get(0, 0) + m.get(1, 1)) + m.get(2, 2);
    if !trace.is_zero() {
        return Err(Error::Composition("matrix is not trace-zero".into()));
    }
    let off = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    let mut v: Vector = off.iter().map(|&(i, j)| m.get(i, j).clone()).collect();
    v.push(m.get(0, 0).clone());
    v.push(-m.get(2, 2));
    Ok(v)
}

pub fn okubo_matrix(x: &[CycloScalar]) -> ExactMatrix {
    let mut acc = ExactMatrix::zeros(3, 3);
    for (k, c) in x.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&okubo_basis_matrix(k).scale(c));
        }
    }
    acc
}

/// μ = (1 − ω)/3.
pub fn okubo_mu() -> Result<CycloScalar> {
    let w = CycloScalar::root_of_unity(3)?;
    (&CycloScalar::one() - &w).div(&s(3))
}

/// Pseudo-octonions: x*y = μxy + (1−μ)yx − tr(xy)/3 on trace-zero 3×3 matrices.
///
/// The norm is recovered from the linearized identity (x*y)*z + (z*y)*x = b(x,z)y.
pub fn build_okubo() -> Result<CompositionAlgebraData> {
    let mu = okubo_mu()?;
    let one_minus_mu = &CycloScalar::one() - &mu;
    let third = CycloScalar::from_ratio(1, 3);
    let names = OKUBO_NAMES.iter().map(|s| s.to_string()).collect();
    let mut failure = None;
    let algebra = AlgebraData::from_products(names, |i, j| {
        let x = okubo_basis_matrix(i);
        let y = okubo_basis_matrix(j);
        let xy = x.mul(&y);
        let yx = y.mul(&x);
        let tr = &(xy.get(0, 0) + xy.get(1, 1)) + xy.get(2, 2);
        let p = xy.scale(&mu).add(&yx.scale(&one_minus_mu)).shift(&(&tr * &third));
        okubo_coordinates(&p).unwrap_or_else(|e| {
            failure.get_or_insert(e.to_string());
            vec![CycloScalar::zero(); 8]
        })
    });
    if let Some(e) = failure {
        return Err(Error::Composition(e));
    }
    let mut form = ExactMatrix::zeros(8, 8);
    for x in 0..8 {
        for z in 0..8 {
            let mut value: Option<CycloScalar> = None;
            for y in 0..8 {
                let xy = algebra.basis_product_dense(x, y);
                let zy = algebra.basis_product_dense(z, y);
                let mut w = algebra.product(&xy, &unit(z));
                for (a, b) in w.iter_mut().zip(algebra.product(&zy, &unit(x))) {
                    *a += &b;
                }
                let c = w[y].clone();
                let expected: Vector = unit(y).iter().map(|u| u * &c).collect();
                if w != expected || value.as_ref().is_some_and(|v| *v != c) {
                    return Err(Error::Internal(format!("norm recovery inconsistent at ({x},{y},{z})")));
                }
                value = Some(c);
            }
            form.set(x, z, value.unwrap());
        }
    }
    let s = CompositionAlgebraData { kind: CompositionKind::Okubo, algebra, form, conjugation: None };
    s.check_symmetric_composition()?;
    Ok(s)
}

/// (2μ − 1)⁻¹ = 1 + 2ω, the constant with [x,y] = c(x*y − y*x).
pub fn okubo_commutator_factor() -> Result<CycloScalar> {
    (&(&okubo_mu()? * &s(2)) - &CycloScalar::one()).inv()
}

/// (2ω − 1)⁻¹, the other candidate constant for the commutator identity.
pub fn okubo_literal_commutator_factor() -> Result<CycloScalar> {
    (&(&CycloScalar::root_of_unity(3)? * &s(2)) - &CycloScalar::one()).inv()
}

/// [x,y] = c(x*y − y*x) on basis pairs.
pub fn check_okubo_commutator(s: &CompositionAlgebraData, c: &CycloScalar) -> Result<()> {
    for i in 0..8 {
        for j in 0..8 {
            let x = okubo_basis_matrix(i);
            let y = okubo_basis_matrix(j);
            let comm = okubo_coordinates(&x.mul(&y).sub(&y.mul(&x)))?;
            let a = s.algebra.basis_product_dense(i, j);
            let b = s.algebra.basis_product_dense(j, i);
            let rhs: Vector = a.iter().zip(&b).map(|(p, q)| &(p - q) * c).collect();
            if comm != rhs {
                return Err(Error::Composition(format!("commutator identity fails at ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// x ↦ p x p⁻¹ on the Okubo basis.
pub fn inner_automorphism(p: &ExactMatrix) -> Result<ExactMatrix> {
    let pinv = p.inverse()?;
    let cols = (0..8)
        .map(|k| okubo_coordinates(&p.mul(&okubo_basis_matrix(k)).mul(&pinv)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactMatrix::from_columns(&cols))
}
