use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::Grading;
use crate::exact::{cokernel_invariants, hermite_normal_form, AbelianInvariants, IntMatrix};

/// Coordinates of `v` in a row-echelon lattice basis, if it lies in the lattice.
fn lattice_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis {
        let p = b.iter().position(|x| !x.is_zero())?;
        let (q, r) = rest[p].div_rem(&b[p]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in rest.iter_mut().zip(b) {
            *x -= &q * y;
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// The subgroup of Z_{n₁}×…×Z_{n_k}×Z^r generated by `labels`.
pub fn support_group(labels: &[Vec<i64>], moduli: &[u32], params: usize) -> AbelianInvariants {
    let m = moduli.len() + params;
    let relations: Vec<Vec<BigInt>> = moduli
        .iter()
        .enumerate()
        .map(|(i, &n)| (0..m).map(|j| if i == j { BigInt::from(n) } else { BigInt::zero() }).collect())
        .collect();
    let mut rows: Vec<Vec<BigInt>> = labels.iter().map(|l| l.iter().map(|&x| BigInt::from(x)).collect()).collect();
    rows.extend(relations.iter().cloned());
    let basis = hermite_normal_form(&rows);
    if basis.is_empty() {
        return AbelianInvariants::trivial();
    }
    let coords: Vec<Vec<BigInt>> = relations
        .iter()
        .map(|r| lattice_coordinates(&basis, r).expect("relations lie in the lattice they span"))
        .collect();
    if coords.is_empty() {
        return AbelianInvariants::new(basis.len(), vec![]);
    }
    let inv = cokernel_invariants(&IntMatrix::from_rows(coords));
    AbelianInvariants::new(inv.rank, inv.torsion)
}

/// The group generated by the support of the grading.
pub fn grading_group(g: &Grading) -> AbelianInvariants {
    let labels: Vec<Vec<i64>> = g.components.iter().map(|c| c.label.flat()).collect();
    support_group(&labels, &g.moduli, g.params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        // {0, 1} in Z4 generates Z4; {0, 2} generates Z2
        assert_eq!(support_group(&[vec![0], vec![1]], &[4], 0), AbelianInvariants::new(0, vec![4]));
        assert_eq!(support_group(&[vec![0], vec![2]], &[4], 0), AbelianInvariants::new(0, vec![2]));
        // (1, 3) in Z2 × Z generates Z
        assert_eq!(support_group(&[vec![1, 3]], &[2], 1), AbelianInvariants::new(1, vec![]));
        // (1, 0) and (0, 1) in Z2 × Z
        assert_eq!(support_group(&[vec![1, 0], vec![0, 1]], &[2], 1), AbelianInvariants::new(1, vec![2]));
        assert!(support_group(&[vec![0, 0]], &[3], 1).is_trivial());
        // trivial factor Z1 vanishes
        assert_eq!(support_group(&[vec![0, 1]], &[1, 2], 0), AbelianInvariants::new(0, vec![2]));
    }
}
