use super::{CycloScalar, ExactMatrix, Vector};
use crate::error::{Error, Result};

/// Reads coordinates of vectors with respect to a fixed independent family.
///
/// Picks rows where the basis is invertible once; every read is then a small
/// matrix-vector product followed by an exact reconstruction check.
#[derive(Clone, Debug)]
pub struct SpanReader {
    basis: Vec<Vector>,
    rows: Vec<usize>,
    inv: ExactMatrix,
}

impl SpanReader {
    pub fn new(basis: &[Vector]) -> Result<Self> {
        if basis.is_empty() {
            return Ok(SpanReader { basis: vec![], rows: vec![], inv: ExactMatrix::zeros(0, 0) });
        }
        let t = ExactMatrix::from_rows(basis.to_vec());
        let (_, pivots) = t.rref();
        if pivots.len() != basis.len() {
            return Err(Error::Dimension("span basis is linearly dependent".into()));
        }
        let square = ExactMatrix::from_fn(basis.len(), basis.len(), |i, j| basis[j][pivots[i]].clone());
        let inv = square.inverse()?;
        Ok(SpanReader { basis: basis.to_vec(), rows: pivots, inv })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[CycloScalar]) -> Option<Vector> {
        if self.basis.is_empty() {
            return v.iter().all(CycloScalar::is_zero).then(Vec::new);
        }
        let picked: Vector = self.rows.iter().map(|&r| v[r].clone()).collect();
        let c = self.inv.mul_vec(&picked);
        let mut recon = vec![CycloScalar::zero(); v.len()];
        for (ck, b) in c.iter().zip(&self.basis) {
            if ck.is_zero() {
                continue;
            }
            for (r, x) in recon.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r += &(ck * x);
                }
            }
        }
        (recon.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[CycloScalar]) -> bool {
        self.coordinates(v).is_some()
    }
}
