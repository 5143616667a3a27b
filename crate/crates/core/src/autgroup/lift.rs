use serde::Serialize;

use super::bracket_violation;
use crate::error::{Error, Result};
use crate::exact::{CycloScalar, ExactMatrix, Vector};
use crate::liealg::{d4_model, D4Model, RootDatum};
use crate::weyl::{apply_to_root, IsoMatrix};

/// [v_α, v_{−α}] as a Cartan vector and κ with [v_α, v_{−α}] = κ·h_α, α(h_α) = 2.
fn coroot(m: &D4Model, slot: usize) -> (Vector, CycloScalar) {
    let rd = &m.roots;
    let root = rd.root_of_basis[slot].expect("root slot");
    let neg = rd.slot_of(&root.map(|c| -c)).expect("negative root");
    let x = m.algebra.basis_product_dense(slot, neg);
    let w = rd.weight(slot);
    let mut pairing = CycloScalar::zero();
    for j in 0..4 {
        pairing += &(&x[j] * &CycloScalar::from_int(w[j] as i64));
    }
    let kappa = pairing.div(&CycloScalar::from_int(2)).expect("nonzero");
    (x[..4].to_vec(), kappa)
}

fn slot_of_image(rd: &RootDatum, sigma: &IsoMatrix, slot: usize) -> usize {
    let r = rd.root_of_basis[slot].expect("root slot");
    rd.slot_of(&apply_to_root(sigma, &r)).expect("isometry maps roots to roots")
}

/// The automorphism σ̃ with σ̃(v_{αᵢ}) = v_{σ(αᵢ)} on the simple slots.
///
/// Negative simple images are scaled to respect [v_α, v_{−α}], the rest come
/// from the bracket words, and all basis brackets are checked before return.
pub fn extend_isometry(sigma: &IsoMatrix) -> Result<ExactMatrix> {
    let m = d4_model();
    let rd = &m.roots;
    let alg = &m.algebra;
    let n = alg.dim();
    let mut cols: Vec<Option<Vector>> = vec![None; n];

    // Cartan block: rows of H are h_{αᵢ} in the h₁..h₄ basis; the block is (H⁻¹σH)ᵀ
    let h_rows: Vec<Vector> = (0..4)
        .map(|i| {
            let (x, k) = coroot(m, rd.simple_slot(i));
            x.iter().map(|c| c.div(&k).unwrap()).collect()
        })
        .collect();
    let h = ExactMatrix::from_rows(h_rows);
    let s = ExactMatrix::from_fn(4, 4, |i, j| CycloScalar::from_int(sigma[i][j] as i64));
    let block = h.inverse()?.mul(&s).mul(&h);
    for j in 0..4 {
        let mut v = vec![CycloScalar::zero(); n];
        v[..4].clone_from_slice(block.row(j));
        cols[j] = Some(v);
    }

    let mut pos_letters = Vec::with_capacity(4);
    let mut neg_letters = Vec::with_capacity(4);
    for i in 0..4 {
        let p = rd.simple_slot(i);
        let q = rd.negative_simple_slot(i);
        let target = slot_of_image(rd, sigma, p);
        let target_neg = slot_of_image(rd, sigma, q);
        let (_, k_src) = coroot(m, p);
        let (_, k_dst) = coroot(m, target);
        let mut vp = vec![CycloScalar::zero(); n];
        vp[target] = CycloScalar::one();
        let mut vq = vec![CycloScalar::zero(); n];
        vq[target_neg] = k_src.div(&k_dst)?;
        cols[p] = Some(vp.clone());
        cols[q] = Some(vq.clone());
        pos_letters.push(vp);
        neg_letters.push(vq);
    }
    for w in m.words() {
        let letters = if w.negative { &neg_letters } else { &pos_letters };
        let inv = w.scalar.inv()?;
        let v = w.evaluate(alg, letters).iter().map(|x| x * &inv).collect();
        cols[w.slot] = Some(v);
    }
    let cols: Vec<Vector> = cols
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.ok_or_else(|| Error::Internal(format!("slot {k} has no image"))))
        .collect::<Result<_>>()?;
    let mat = ExactMatrix::from_columns(&cols);
    if let Some((i, j)) = bracket_violation(alg, &mat) {
        return Err(Error::LiftVerification(i, j));
    }
    Ok(mat)
}

/// σ̃(v_k) = coefficient · v_{image}.
#[derive(Clone, Debug, Serialize)]
pub struct LiftCoefficient {
    pub slot: String,
    pub image: String,
    pub coefficient: String,
}

/// The scalar by which σ̃ sends each root vector onto the root vector of the image root.
pub fn lift_coefficients(sigma: &IsoMatrix) -> Result<Vec<LiftCoefficient>> {
    let m = d4_model();
    let mat = extend_isometry(sigma)?;
    let names = m.algebra.names();
    let mut out = Vec::new();
    for k in 4..m.algebra.dim() {
        let t = slot_of_image(&m.roots, sigma, k);
        out.push(LiftCoefficient {
            slot: names[k].clone(),
            image: names[t].clone(),
            coefficient: mat.get(t, k).to_string(),
        });
    }
    Ok(out)
}
